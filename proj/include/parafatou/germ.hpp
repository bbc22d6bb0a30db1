#pragma once

// Local data of the parabolic germ: Taylor coefficients by discrete Cauchy
// integrals on a circle, the iterative residue gamma = 1 - a3/a2^2, the
// residue of dz/(f(z)-z) (which equals gamma - 1), and the attracting and
// repelling axis directions arg(-1/a2), arg(1/a2).
//
// The quadrature samples at half-offset angles theta_j = 2pi(j+1/2)/N. For an
// analytic germ the trapezoid rule on a circle is exact up to aliasing, and
// the offset keeps every sample off the positive real axis, where the C_d
// evaluator has its branch cut.

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "parafatou/complexfn.hpp"
#include "parafatou/maps.hpp"

namespace parafatou {

struct TaylorResult {
    std::vector<Cplx> coeffs;  // a_0 .. a_n
    double err_estimate = 0.0; // max coefficient shift when doubling samples
    Status status = Status::ok;
};

struct GermData {
    Cplx a2, a3;
    Cplx gamma;         // 1 - a3/a2^2
    double alpha_attr;  // arg(-1/a2)
    double alpha_rep;   // arg(1/a2)
    double radius;      // analysis radius used
    double err_estimate;
};

inline double default_analysis_radius(const ParabolicMap& m) {
    switch (m.kind) {
        case MapKind::c_d:
        case MapKind::c_inf:
            return 0.05;  // keep the circle well clear of the slit geometry
        case MapKind::blaschke:
            // B_d has a pole at distance 2/(d-1) from the parabolic point
            return std::min(0.1, 0.5 / m.d);
        default:
            return 0.1;
    }
}

namespace detail {

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// a_k for k = 0..n at a fixed sample count; ok cleared on a bad sample.
inline std::vector<Cplx> cauchy_pass(const ParabolicMap& m, int n, double radius,
                                     int samples, bool& ok) {
    const long double r = radius;
    const long double two_pi = 2.0L * 3.14159265358979323846264338327950288L;
    std::vector<CplxL> vals(samples);
    for (int j = 0; j < samples; ++j) {
        long double th = two_pi * (j + 0.5L) / samples;
        CplxL z = std::polar(r, th);
        bool step_ok = true;
        CplxL f = germ_step(m, z, step_ok);
        if (!step_ok || !is_finite(f)) { ok = false; return {}; }
        vals[j] = f;
    }
    std::vector<Cplx> out(n + 1);
    long double rk = 1.0L;
    for (int k = 0; k <= n; ++k) {
        CplxL acc(0.0L);
        for (int j = 0; j < samples; ++j) {
            long double th = two_pi * (j + 0.5L) / samples;
            acc += vals[j] * std::polar(1.0L, -k * th);
        }
        acc /= (long double)samples * rk;
        out[k] = Cplx(double(acc.real()), double(acc.imag()));
        rk *= r;
    }
    return out;
}

}  // namespace detail

// Taylor coefficients a_0..a_n of the recentered germ. The error estimate is
// the largest coefficient movement when the sample count doubles; above 1e-6
// the result is flagged ill conditioned rather than trusted.
inline TaylorResult taylor_coeffs(const ParabolicMap& m, int n, double radius, int samples) {
    if (n < 1) throw std::invalid_argument("taylor_coeffs: need n >= 1");
    if (!(radius > 0.0) || radius > m.safe_radius / 2.0)
        throw std::invalid_argument("taylor_coeffs: radius must be in (0, safe_radius/2]");
    if (!detail::is_power_of_two(samples) || samples < 4 * n || samples < 8)
        throw std::invalid_argument("taylor_coeffs: samples must be a power of two >= max(4n, 8)");

    TaylorResult res;
    bool ok = true;
    auto coarse = detail::cauchy_pass(m, n, radius, samples, ok);
    auto fine   = ok ? detail::cauchy_pass(m, n, radius, 2 * samples, ok)
                     : std::vector<Cplx>{};
    if (!ok) {
        res.status = Status::non_finite;
        return res;
    }
    double err = 0.0;
    for (int k = 0; k <= n; ++k)
        err = std::max(err, std::abs(fine[k] - coarse[k]));
    res.coeffs = std::move(fine);
    res.err_estimate = err;
    res.status = err > 1e-6 ? Status::ill_conditioned : Status::ok;
    return res;
}

namespace detail {

inline GermData compute_germ(const ParabolicMap& m) {
    double radius = default_analysis_radius(m);
    TaylorResult t = taylor_coeffs(m, 3, radius, 256);
    if (t.status != Status::ok)
        throw ParabolicError(t.status, std::string("germ analysis failed for ") + kind_name(m.kind));
    GermData g;
    g.a2 = t.coeffs[2];
    g.a3 = t.coeffs[3];
    if (std::abs(g.a2) < 1e-8)
        throw ParabolicError(Status::degenerate_germ,
                             std::string(kind_name(m.kind)) +
                                 ": a2 vanishes, not a single-petal parabolic point");
    g.gamma = Cplx(1.0) - g.a3 / (g.a2 * g.a2);
    g.alpha_attr = std::arg(-1.0 / g.a2);
    g.alpha_rep = std::arg(1.0 / g.a2);
    g.radius = radius;
    g.err_estimate = t.err_estimate;
    return g;
}

}  // namespace detail

// Cached germ data; the first caller computes, everyone after reads.
inline const GermData& germ(const ParabolicMap& m) {
    std::call_once(m.cache->germ_once, [&] {
        m.cache->germ = std::make_shared<const GermData>(detail::compute_germ(m));
    });
    return *m.cache->germ;
}

inline Cplx iterative_residue(const ParabolicMap& m) { return germ(m).gamma; }

struct Axes {
    double attr, rep;
};

inline Axes axes(const ParabolicMap& m) {
    const GermData& g = germ(m);
    return {g.alpha_attr, g.alpha_rep};
}

// (1/2pi i) oint dz/(f(z)-z) over |z| = radius, half-offset trapezoid.
// Independent of the Taylor route; tests compare it against gamma - 1.
inline Cplx residue_integral(const ParabolicMap& m, double radius, int samples) {
    if (!(radius > 0.0) || radius > m.safe_radius / 2.0)
        throw std::invalid_argument("residue_integral: radius must be in (0, safe_radius/2]");
    if (samples < 8) throw std::invalid_argument("residue_integral: need samples >= 8");
    const long double two_pi = 2.0L * 3.14159265358979323846264338327950288L;
    CplxL acc(0.0L);
    for (int j = 0; j < samples; ++j) {
        long double th = two_pi * (j + 0.5L) / samples;
        CplxL z = std::polar((long double)radius, th);
        bool ok = true;
        CplxL f = detail::germ_step(m, z, ok);
        if (!ok || !is_finite(f))
            throw ParabolicError(Status::non_finite, "residue_integral: evaluation failed on the contour");
        CplxL den = f - z;
        if (den == CplxL(0.0L))
            throw ParabolicError(Status::contour_through_zero,
                                 "residue_integral: contour passes through a zero of f(z)-z");
        acc += z / den;
    }
    acc /= (long double)samples;
    return Cplx(double(acc.real()), double(acc.imag()));
}

}  // namespace parafatou

#pragma once

// Petals and Fatou coordinates.
//
// In the coordinate u = -1/(a2 z) the germ becomes u -> u + 1 + gamma/u + O(u^-2).
// A petal is the disk of diameter [0, r0 e^{i alpha}] (alpha the attracting or
// repelling axis), which u maps exactly onto the half plane Re u > u_min,
// u_min = 1/(r0 |a2|). The disk is accepted once all 64 probe points satisfy
// |u(f(z)) - (u(z)+1)| <= 1/4 (inverse branch and u-1 on the repelling side);
// that bound makes the petal forward (resp. backward) invariant.
//
// With w = u - gamma log_p(u) (repelling: log_p(-u)) the Fatou coordinate is
// the limit of w_n - n along the orbit, and the limit normalizes itself: no
// constant is added, phi(z) = w(z) + o(1) deep in the petal. The sequence
// e_n = w_n - n converges like c/n, so we extrapolate first order between
// checkpoints n = 2^k: e_hat = 2 e(n) - e(n/2). Doubling the stride instead
// of extrapolating step by step keeps the roundoff amplification O(1); the
// orbit itself runs in 80-bit floats for the same reason.

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "parafatou/complexfn.hpp"
#include "parafatou/germ.hpp"
#include "parafatou/maps.hpp"

namespace parafatou {

enum class PetalKind { attracting, repelling };

struct Petal {
    PetalKind kind = PetalKind::attracting;
    double r0 = 0.0;     // disk diameter
    double alpha = 0.0;  // axis direction
    Cplx a2, gamma;      // germ snapshot used by the coordinate
    double u_min = 0.0;  // the petal is Re u > u_min in the u coordinate
    // The Fatou image provably contains the half plane Re Z > threshold
    // (attracting) resp. Re Z < -threshold (repelling); calibrated below.
    double threshold = 0.0;
    int halvings = 0;  // validation retries that halved r0
};

struct FatouValue {
    Cplx value{std::numeric_limits<double>::quiet_NaN(),
               std::numeric_limits<double>::quiet_NaN()};
    Status status = Status::ok;
    long iterations = 0;
    double err_estimate = std::numeric_limits<double>::quiet_NaN();
};

template <class T>
bool in_petal(const Petal& p, std::complex<T> z) {
    std::complex<T> c = std::polar(T(p.r0) / 2, T(p.alpha));
    return std::abs(z - c) < T(p.r0) / 2;
}

template <class T>
bool in_petal_closed(const Petal& p, std::complex<T> z) {
    std::complex<T> c = std::polar(T(p.r0) / 2, T(p.alpha));
    return std::abs(z - c) <= T(p.r0) / 2 * (T(1) + T(1e-9));
}

namespace detail {

// One dynamical step in the direction the petal flows: forward for the
// attracting petal, the inverse branch for the repelling one.
template <class T>
std::complex<T> petal_step(const ParabolicMap& m, const Petal& p, std::complex<T> z, bool& ok) {
    if (p.kind == PetalKind::attracting) return germ_step(m, z, ok);
    return germ_inverse_step(m, z, ok);
}

template <class T>
std::complex<T> w_coord(const Petal& p, std::complex<T> z) {
    std::complex<T> a2(T(p.a2.real()), T(p.a2.imag()));
    std::complex<T> gamma(T(p.gamma.real()), T(p.gamma.imag()));
    std::complex<T> u = T(-1) / (a2 * z);
    return u - gamma * log_p(p.kind == PetalKind::attracting ? u : -u);
}

inline bool petal_bound_holds(const ParabolicMap& m, PetalKind kind, double r0,
                              double alpha, Cplx a2) {
    const double pi = 3.14159265358979323846;
    Cplx c = std::polar(r0 / 2, alpha);
    for (int k = 1; k <= 8; ++k) {
        double rho = (r0 / 2) * k / 8.0;
        for (int j = 0; j < 8; ++j) {
            double th = 2.0 * pi * (j + 0.5) / 8.0;
            Cplx z = c + std::polar(rho, th);
            if (std::abs(z) < r0 * 1e-12) continue;
            bool ok = true;
            Cplx z2 = kind == PetalKind::attracting ? germ_step(m, z, ok)
                                                    : germ_inverse_step(m, z, ok);
            if (!ok || !is_finite(z2) || z2 == Cplx(0.0)) return false;
            Cplx u = -1.0 / (a2 * z);
            Cplx u2 = -1.0 / (a2 * z2);
            double shift = kind == PetalKind::attracting ? 1.0 : -1.0;
            if (std::abs(u2 - (u + shift)) > 0.25) return false;
        }
    }
    return true;
}

// Newton for u - gamma log_p(s u) = target, s = +1 (attracting) or -1.
template <class T>
std::complex<T> solve_w(std::complex<T> target, std::complex<T> gamma, int s, bool& ok) {
    using C = std::complex<T>;
    C u = target + gamma * log_p(s > 0 ? target : -target);
    T tol = T(32) * std::numeric_limits<T>::epsilon() * (T(1) + std::abs(target));
    for (int it = 0; it < 60; ++it) {
        C su = s > 0 ? u : -u;
        C r = u - gamma * log_p(su) - target;
        if (std::abs(r) <= tol) return u;
        C du = C(T(1)) - gamma / u;
        u -= r / du;
        if (!is_finite(u) || u == C(0)) { ok = false; return C(0); }
    }
    ok = false;
    return C(0);
}

// Pick the vertical line bounding the petal's Fatou image: start conservative
// and push it out until w-space probes at a spread of heights solve back into
// the petal. Membership is tested in the u coordinate, where the petal disk
// is exactly the half plane s Re u > u_min; a 1/2 margin keeps the solved
// point strictly inside. The Newton inversion re-verifies every real query.
inline double calibrate_threshold(const ParabolicMap&, const Petal& p) {
    const int s = p.kind == PetalKind::attracting ? +1 : -1;
    const double ys[] = {0.0, 1.0, -1.0, 3.0, -3.0, 10.0, -10.0, 30.0, -30.0,
                         100.0, -100.0, 1000.0, -1000.0};
    double x = 2.0 * p.u_min + 16.0 * (1.0 + std::abs(p.gamma));
    for (int round = 0; round < 20; ++round, x += 5.0) {
        bool all_in = true;
        for (double y : ys) {
            Cplx target(s * (x + 1.0), y);
            bool ok = true;
            Cplx u = solve_w(target, p.gamma, s, ok);
            if (!ok || s * u.real() < p.u_min + 0.5) { all_in = false; break; }
        }
        if (all_in) return x;
    }
    throw ParabolicError(Status::no_petal, "petal: could not calibrate the Fatou image threshold");
}

}  // namespace detail

// Validated petal; r0 starts at 1/(8|a2|) unless forced and halves until the
// 64-point bound holds.
inline Petal choose_petal(const ParabolicMap& m, PetalKind kind, double r0_start = 0.0,
                          int max_halvings = 20) {
    const GermData& g = germ(m);
    double r0 = r0_start > 0.0 ? r0_start : 1.0 / (8.0 * std::abs(g.a2));
    double alpha = kind == PetalKind::attracting ? g.alpha_attr : g.alpha_rep;
    for (int h = 0; h <= max_halvings; ++h, r0 /= 2.0) {
        if (!detail::petal_bound_holds(m, kind, r0, alpha, g.a2)) continue;
        Petal p;
        p.kind = kind;
        p.r0 = r0;
        p.alpha = alpha;
        p.a2 = g.a2;
        p.gamma = g.gamma;
        p.u_min = 1.0 / (r0 * std::abs(g.a2));
        p.halvings = h;
        p.threshold = detail::calibrate_threshold(m, p);
        return p;
    }
    throw ParabolicError(Status::no_petal,
                         std::string(kind_name(m.kind)) + ": no petal radius validated");
}

// Cached petals (write-once, like the germ data).
inline const Petal& petal(const ParabolicMap& m, PetalKind kind) {
    if (kind == PetalKind::attracting) {
        std::call_once(m.cache->attr_once, [&] {
            m.cache->attr = std::make_shared<const Petal>(choose_petal(m, kind));
        });
        return *m.cache->attr;
    }
    std::call_once(m.cache->rep_once, [&] {
        m.cache->rep = std::make_shared<const Petal>(choose_petal(m, kind));
    });
    return *m.cache->rep;
}

// Fatou coordinate inside the petal: the self-normalizing limit of w_n -+ n.
inline FatouValue phi_petal(const ParabolicMap& m, const Petal& p, Cplx z,
                            double tol = 1e-10, long max_iter = 1'000'000) {
    FatouValue out;
    if (!is_finite(z) || z == Cplx(0.0) || !in_petal_closed(p, z)) {
        out.status = Status::petal_escape;
        return out;
    }
    // e_n = w_n -+ n converges like Phi + C/n + (D log n + E)/n^2 + ...
    // Checkpoint at powers of two; the first difference 2e(2n) - e(n) removes
    // C/n, the second (4ê(2n) - ê(n))/3 removes the n^{-2} pair up to a slowly
    // varying log remainder. Geometric strides keep roundoff amplification
    // O(1); the 80-bit orbit still accumulates ~eps n^{3/2} of roundoff, which
    // the error estimate reports as a floor since it is invisible to the
    // checkpoint differences.
    const long double drift = p.kind == PetalKind::attracting ? -1.0L : 1.0L;
    const CplxL c(std::polar((long double)p.r0 / 2, (long double)p.alpha));
    const long double rr = ((long double)p.r0 / 2) * (1.0L + 1e-9L);
    const long double rr2 = rr * rr;
    CplxL cur(z);
    CplxL e_prev, ehat_prev, ehat2_prev;
    int level = 0;
    long n = 0;
    for (long checkpoint = 1; checkpoint <= max_iter; checkpoint *= 2) {
        for (; n < checkpoint; ++n) {
            bool ok = true;
            cur = detail::petal_step(m, p, cur, ok);
            long double dx = cur.real() - c.real(), dy = cur.imag() - c.imag();
            if (!ok || !is_finite(cur) || cur == CplxL(0.0L) || dx * dx + dy * dy > rr2) {
                out.status = Status::petal_escape;
                out.iterations = n + 1;
                return out;
            }
        }
        CplxL e = detail::w_coord(p, cur) + drift * (long double)n;
        if (level >= 1) {
            CplxL ehat = 2.0L * e - e_prev;
            if (level >= 2) {
                CplxL ehat2 = (4.0L * ehat - ehat_prev) / 3.0L;
                if (level >= 3) {
                    long double diff = std::abs(ehat2 - ehat2_prev);
                    double floor = 1e-19 * (double)n * std::sqrt((double)n);
                    out.value = Cplx(double(ehat2.real()), double(ehat2.imag()));
                    out.err_estimate = std::max(double(diff), floor);
                    out.iterations = n;
                    // A tolerance below the roundoff floor is not attainable;
                    // once the checkpoint difference drops under a small
                    // multiple of the floor, iterating further only feeds the
                    // eps n^{3/2} term, so stop there and let err_estimate
                    // carry the honest accuracy.
                    if (diff < std::max((long double)tol, 4.0L * (long double)floor))
                        return out;
                }
                ehat2_prev = ehat2;
            }
            ehat_prev = ehat;
        }
        e_prev = e;
        if (level < 3) ++level;
    }
    out.status = Status::no_convergence;
    return out;
}

// Attracting Fatou coordinate extended to the whole basin: run the orbit to
// the petal, take the petal value minus the entry time.
inline FatouValue phi_attr_extended(const ParabolicMap& m, Cplx z, long max_iter = 1'000'000,
                                    double tol = 1e-10) {
    const Petal& p = petal(m, PetalKind::attracting);
    FatouValue out;
    if (!is_finite(z)) { out.status = Status::non_finite; return out; }
    const Cplx c = std::polar(p.r0 / 2, p.alpha);
    const double rr2 = (p.r0 / 2) * (p.r0 / 2);
    const double safe2 = m.safe_radius * m.safe_radius;
    Cplx cur = z;
    long n = 0;
    while (std::norm(cur - c) >= rr2) {
        if (n >= max_iter) {
            out.status = Status::undecided;
            out.iterations = n;
            return out;
        }
        bool ok = true;
        cur = detail::germ_step(m, cur, ok);
        ++n;
        if (!ok || !is_finite(cur) || std::norm(cur) > safe2) {
            out.status = Status::escaped;
            out.iterations = n;
            return out;
        }
    }
    out = phi_petal(m, p, cur, tol, max_iter);
    out.iterations += n;
    if (out.status == Status::ok) out.value -= (double)n;
    return out;
}

struct BasinResult {
    Status status = Status::ok;  // ok = attracted
    long steps = 0;              // first entry time into the open petal
};

inline BasinResult basin_test(const ParabolicMap& m, Cplx z, long max_iter = 100'000) {
    const Petal& p = petal(m, PetalKind::attracting);
    if (!is_finite(z)) return {Status::escaped, 0};
    const Cplx c = std::polar(p.r0 / 2, p.alpha);
    const double rr2 = (p.r0 / 2) * (p.r0 / 2);
    const double safe2 = m.safe_radius * m.safe_radius;
    Cplx cur = z;
    for (long n = 0; n <= max_iter; ++n) {
        if (std::norm(cur - c) < rr2) return {Status::ok, n};
        bool ok = true;
        cur = detail::germ_step(m, cur, ok);
        if (!ok || !is_finite(cur) || std::norm(cur) > safe2)
            return {Status::escaped, n + 1};
    }
    return {Status::undecided, max_iter};
}

namespace detail {

struct PetalInverse {
    CplxL z{};
    Status status = Status::ok;
    long iterations = 0;
    double err = std::numeric_limits<double>::quiet_NaN();
};

// Solve phi_petal(z) = target inside the petal. Newton against the explicit
// w coordinate does almost all the work; the remaining o(1) gap between w and
// phi is removed by retargeting w with the measured defect, which contracts
// quadratically because d(phi - w)/dZ = O(u^-2).
inline PetalInverse invert_petal(const ParabolicMap& m, const Petal& p, Cplx target,
                                 double tol, long max_iter) {
    PetalInverse out;
    const int s = p.kind == PetalKind::attracting ? +1 : -1;
    if (s * target.real() < p.threshold) {
        out.status = Status::not_in_domain;  // not deep enough for the validated image
        return out;
    }
    CplxL a2(p.a2.real(), p.a2.imag());
    CplxL gamma(p.gamma.real(), p.gamma.imag());
    CplxL t(target);
    // 5e-11 is above the orbit roundoff floor of every catalog map at the
    // default budget; asking for less only burns iterations without improving
    // the defect correction, which is limited by the coordinate evaluations.
    const double inner_tol = std::max(tol * 0.25, 5e-11);
    for (int round = 0; round < 12; ++round) {
        bool ok = true;
        CplxL u = solve_w(t, gamma, s, ok);
        if (!ok) { out.status = Status::no_convergence; return out; }
        CplxL zl = -1.0L / (a2 * u);
        if (!in_petal_closed(p, zl)) { out.status = Status::no_convergence; return out; }
        FatouValue fv = phi_petal(m, p, Cplx(double(zl.real()), double(zl.imag())),
                                  inner_tol, max_iter);
        if (fv.status != Status::ok) { out.status = fv.status; return out; }
        out.iterations += fv.iterations;
        CplxL delta = CplxL(fv.value) - CplxL(target);
        out.z = zl;
        out.err = double(std::abs(delta));
        if (out.err <= tol) return out;
        t -= delta;
    }
    out.status = Status::no_convergence;
    return out;
}

}  // namespace detail

// Inverse of the repelling Fatou coordinate, extended by Psi(Z) = f^n(Psi(Z-n)):
// shift deep into the validated image, invert in the petal, push forward.
inline FatouValue psi_rep_extended(const ParabolicMap& m, Cplx Z, long max_iter = 1'000'000,
                                   double tol = 1e-10) {
    const Petal& p = petal(m, PetalKind::repelling);
    FatouValue out;
    if (!is_finite(Z)) { out.status = Status::non_finite; return out; }
    long n = (long)std::ceil(Z.real() + p.threshold + 2.0);
    if (n < 0) n = 0;
    if (n > max_iter) { out.status = Status::undecided; return out; }
    detail::PetalInverse inv = detail::invert_petal(m, p, Z - (double)n, tol, max_iter);
    if (inv.status != Status::ok) {
        out.status = inv.status;
        out.iterations = inv.iterations;
        return out;
    }
    CplxL cur = inv.z;
    for (long k = 0; k < n; ++k) {
        bool ok = true;
        cur = detail::germ_step(m, cur, ok);
        if (!ok || !is_finite(cur) || std::abs(cur) > (long double)m.safe_radius) {
            out.status = Status::not_in_domain;
            out.iterations = inv.iterations + k + 1;
            return out;
        }
    }
    out.value = Cplx(double(cur.real()), double(cur.imag()));
    out.iterations = inv.iterations + n;
    out.err_estimate = inv.err;
    return out;
}

}  // namespace parafatou

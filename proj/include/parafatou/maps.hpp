#pragma once

// Catalog of maps with a simple parabolic fixed point (multiplier 1).
//
// Everything downstream (coefficient extraction, Fatou coordinates, horn
// maps) works on the recentered germ: the parabolic point moved to 0, so the
// map looks like z + a2 z^2 + a3 z^3 + ... near the origin. For most catalog
// entries the fixed point already is 0; the Blaschke family is recentered
// from z = 1. Germ evaluation is templated on the real type because the
// petal limits run in 80-bit floats.

#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "parafatou/complexfn.hpp"

namespace parafatou {

enum class MapKind {
    quad,            // z + z^2
    expm1_map,       // e^z - 1
    zexpz,           // z e^z
    blaschke,        // B_d(z) = ((z+a)/(1+az))^d, a = (d-1)/(d+1), parabolic at 1
    blaschke_tilde,  // (z^d+a)/(1+a z^d), critical point at the origin
    b_inf,           // exp(2(z-1)/(z+1)), the d->inf limit of B_d
    c_d,             // S o B_d o S^{-1} on C \ [0,+inf)
    c_inf,           // (tan sqrt(v))^2, the d->inf limit of C_d
    poly,            // z + c2 z^2 + ... from explicit coefficients
};

inline const char* kind_name(MapKind k) {
    switch (k) {
        case MapKind::quad: return "quad";
        case MapKind::expm1_map: return "expm1";
        case MapKind::zexpz: return "zexpz";
        case MapKind::blaschke: return "blaschke";
        case MapKind::blaschke_tilde: return "blaschke_tilde";
        case MapKind::b_inf: return "b_inf";
        case MapKind::c_d: return "c_d";
        case MapKind::c_inf: return "c_inf";
        case MapKind::poly: return "poly";
    }
    return "?";
}

struct GermData;
struct Petal;

// Lazily computed, write-once per-map data. Copies of a map share the slots,
// so the first thread to ask for germ data or a petal does the work and every
// later reader sees the same object.
struct MapCache {
    std::once_flag germ_once;
    std::shared_ptr<const GermData> germ;
    std::once_flag attr_once, rep_once;
    std::shared_ptr<const Petal> attr, rep;
};

struct ParabolicMap {
    MapKind kind = MapKind::quad;
    int d = 0;                 // blaschke / blaschke_tilde / c_d
    std::vector<Cplx> coeffs;  // poly only: c0=0, c1=1, c2, ...
    Cplx fixed_point{0.0, 0.0};
    double safe_radius = 10.0;  // evaluation beyond this is best effort
    std::shared_ptr<MapCache> cache = std::make_shared<MapCache>();

    double blaschke_a() const { return double(d - 1) / double(d + 1); }
};

struct EvalResult {
    Cplx value{};
    Status status = Status::ok;
};

inline ParabolicMap make_map(MapKind kind, int d = 0) {
    ParabolicMap m;
    m.kind = kind;
    switch (kind) {
        case MapKind::quad:
            m.safe_radius = 10.0;
            break;
        case MapKind::expm1_map:
        case MapKind::zexpz:
            m.safe_radius = 20.0;
            break;
        case MapKind::blaschke:
        case MapKind::blaschke_tilde:
            if (d < 2) throw std::invalid_argument("blaschke: need d >= 2");
            m.d = d;
            m.fixed_point = 1.0;
            m.safe_radius = 0.999;
            break;
        case MapKind::b_inf:
            m.fixed_point = 1.0;
            m.safe_radius = 0.999;
            break;
        case MapKind::c_d:
            if (d < 2) throw std::invalid_argument("c_d: need d >= 2");
            m.d = d;
            m.safe_radius = 5.0;
            break;
        case MapKind::c_inf:
            m.safe_radius = 5.0;
            break;
        case MapKind::poly:
            throw std::invalid_argument("poly maps take explicit coefficients, use make_poly");
    }
    return m;
}

inline ParabolicMap make_poly(std::vector<Cplx> coeffs) {
    if (coeffs.size() < 3)
        throw std::invalid_argument("poly: need coefficients 0, 1, a2, ...");
    if (coeffs[0] != Cplx(0.0) || coeffs[1] != Cplx(1.0))
        throw std::invalid_argument("poly: coefficients must start 0, 1 (parabolic at the origin)");
    if (std::abs(coeffs[2]) == 0.0)
        throw std::invalid_argument("poly: a2 = 0 has no single-petal parabolic point");
    ParabolicMap m;
    m.kind = MapKind::poly;
    m.coeffs = std::move(coeffs);
    m.safe_radius = 10.0;
    return m;
}

// S(z) = (i(1-z)/(1+z))^2 maps the unit disk onto C \ [0,+inf),
// with S(1) = 0, S(0) = -1, S(-1) = infinity.
inline EvalResult s_map(Cplx z) {
    if (z == Cplx(-1.0)) return {Cplx(0.0), Status::non_finite};
    Cplx w = Cplx(0.0, 1.0) * (Cplx(1.0) - z) / (Cplx(1.0) + z);
    Cplx v = w * w;
    if (!is_finite(v)) return {v, Status::non_finite};
    return {v, Status::ok};
}

// Branch of S^{-1} landing in the unit disk: take the square root of v in the
// upper half plane, then z = (i-w)/(i+w). Points of [0,+inf) have no such
// root, which is exactly the slit where the branch breaks down.
inline EvalResult s_inverse(Cplx v) {
    if (v.imag() == 0.0 && v.real() >= 0.0)
        return {Cplx(0.0), Status::branch_error};
    Cplx w = std::sqrt(v);
    if (w.imag() < 0.0 || (w.imag() == 0.0 && v.imag() != 0.0))
        w = -w;
    if (w.imag() <= 0.0) return {Cplx(0.0), Status::branch_error};
    Cplx i(0.0, 1.0);
    Cplx z = (i - w) / (i + w);
    if (!is_finite(z)) return {z, Status::non_finite};
    return {z, Status::ok};
}

namespace detail {

template <class T>
std::complex<T> horner_tail(const std::vector<Cplx>& c, std::complex<T> z) {
    // sum_{k>=2} c_k z^{k-2}
    std::complex<T> t(0);
    for (size_t k = c.size(); k-- > 2;)
        t = t * z + std::complex<T>(T(c[k].real()), T(c[k].imag()));
    return t;
}

// One application of the recentered germ. ok is cleared (and 0 returned) when
// the input leaves the domain of the evaluator, e.g. the slit of C_d.
template <class T>
std::complex<T> germ_step(const ParabolicMap& m, std::complex<T> z, bool& ok) {
    using C = std::complex<T>;
    switch (m.kind) {
        case MapKind::quad:
            return z + z * z;
        case MapKind::expm1_map:
            return cexpm1(z);
        case MapKind::zexpz:
            return z * std::exp(z);
        case MapKind::poly:
            return z + z * (z * horner_tail(m.coeffs, z));
        case MapKind::blaschke: {
            // B_d(1+z) - 1, written through expm1/log1p so nothing cancels.
            // The Moebius factor is normalized as (x/d)/(1 + kappa x) with
            // kappa = a/(1+a) = (d-1)/(2d); dividing by the integer d keeps
            // the multiplier at the fixed point equal to 1 exactly, instead
            // of d(1-a)/(1+a) with a rounded a, which would leave a residual
            // linear term that ruins the parabolic asymptotics.
            T kappa = T(m.d - 1) / T(2 * m.d);
            C inner = (z / T(m.d)) / (C(T(1)) + kappa * z);
            return cexpm1(T(m.d) * clog1p(inner));
        }
        case MapKind::blaschke_tilde: {
            T kappa = T(m.d - 1) / T(2 * m.d);
            C q = cexpm1(T(m.d) * clog1p(z));  // (1+z)^d - 1
            return (q / T(m.d)) / (C(T(1)) + kappa * q);
        }
        case MapKind::b_inf:
            return cexpm1(T(2) * z / (T(2) + z));
        case MapKind::c_d: {
            if (z == C(0)) return C(0);
            if (z.imag() == T(0) && z.real() > T(0)) { ok = false; return C(0); }
            C w = std::sqrt(z);
            if (w.imag() < T(0)) w = -w;
            if (w.imag() <= T(0)) { ok = false; return C(0); }
            C i(T(0), T(1));
            C delta = T(2) * w / (i + w);          // 1 - S^{-1}(z)
            // same exact normalization as the blaschke case
            T kappa = T(m.d - 1) / T(2 * m.d);
            C eta = (delta / T(m.d)) / (C(T(1)) - kappa * delta);
            C delta_b = -cexpm1(T(m.d) * clog1p(-eta));  // 1 - B_d(S^{-1}(z))
            C out = i * delta_b / (T(2) - delta_b);
            return out * out;
        }
        case MapKind::c_inf: {
            if (z == C(0)) return C(0);
            C s = std::sqrt(z);
            C t = std::tan(s);
            return t * t;
        }
    }
    ok = false;
    return std::complex<T>(0);
}

template <class T>
std::complex<T> germ_derivative(const ParabolicMap& m, std::complex<T> z, bool& ok);

}  // namespace detail

// f(z) in the map's native coordinates.
inline EvalResult eval(const ParabolicMap& m, Cplx z) {
    if (!is_finite(z)) return {z, Status::non_finite};
    bool ok = true;
    Cplx v;
    switch (m.kind) {
        case MapKind::blaschke: {
            double a = m.blaschke_a();
            Cplx den = Cplx(1.0) + a * z;
            if (den == Cplx(0.0)) return {Cplx(0.0), Status::non_finite};
            v = powi((z + a) / den, m.d);
            break;
        }
        case MapKind::blaschke_tilde: {
            double a = m.blaschke_a();
            Cplx zd = powi(z, m.d);
            Cplx den = Cplx(1.0) + a * zd;
            if (den == Cplx(0.0)) return {Cplx(0.0), Status::non_finite};
            v = (zd + a) / den;
            break;
        }
        case MapKind::b_inf: {
            if (z == Cplx(-1.0)) return {Cplx(0.0), Status::non_finite};
            v = std::exp(2.0 * (z - Cplx(1.0)) / (z + Cplx(1.0)));
            break;
        }
        case MapKind::c_d: {
            if (z == Cplx(0.0)) return {Cplx(0.0), Status::ok};
            if (z.imag() == 0.0 && z.real() > 0.0) return {Cplx(0.0), Status::branch_error};
            v = detail::germ_step(m, z, ok);
            if (!ok) return {Cplx(0.0), Status::branch_error};
            break;
        }
        default:
            v = detail::germ_step(m, z, ok);
            if (!ok) return {Cplx(0.0), Status::branch_error};
            break;
    }
    if (!is_finite(v)) return {v, Status::non_finite};
    return {v, Status::ok};
}

namespace detail {

template <class T>
std::complex<T> germ_derivative(const ParabolicMap& m, std::complex<T> z, bool& ok) {
    using C = std::complex<T>;
    switch (m.kind) {
        case MapKind::quad:
            return T(1) + T(2) * z;
        case MapKind::expm1_map:
            return std::exp(z);
        case MapKind::zexpz:
            return (C(T(1)) + z) * std::exp(z);
        case MapKind::poly: {
            C acc(0);
            for (size_t k = m.coeffs.size(); k-- > 1;)
                acc = acc * z + T(k) * std::complex<T>(T(m.coeffs[k].real()), T(m.coeffs[k].imag()));
            return acc;
        }
        case MapKind::blaschke: {
            // derivative of B_d at 1+z, in the normalized variables of
            // germ_step: B' = mu^{d-1} / (1 + kappa z)^2 with
            // mu = (1 + nu z)/(1 + kappa z), nu = (d+1)/(2d), kappa = (d-1)/(2d)
            T kappa = T(m.d - 1) / T(2 * m.d);
            T nu = T(m.d + 1) / T(2 * m.d);
            C den = C(T(1)) + kappa * z;
            if (den == C(0)) { ok = false; return C(0); }
            C mu = (C(T(1)) + nu * z) / den;
            return powi(mu, m.d - 1) / (den * den);
        }
        case MapKind::blaschke_tilde: {
            T kappa = T(m.d - 1) / T(2 * m.d);
            C w = C(T(1)) + z;
            C wd = powi(w, m.d - 1);
            C q = wd * w - C(T(1));  // (1+z)^d - 1
            C den = C(T(1)) + kappa * q;
            if (den == C(0)) { ok = false; return C(0); }
            return wd / (den * den);
        }
        case MapKind::b_inf: {
            C w = C(T(1)) + z;
            C den = w + C(T(1));
            if (den == C(0)) { ok = false; return C(0); }
            return std::exp(T(2) * (w - C(T(1))) / den) * T(4) / (den * den);
        }
        case MapKind::c_d: {
            // chain rule through C_d = S o B_d o S^{-1}; S'(z) = 4(1-z)/(1+z)^3
            if (z == C(0)) return C(T(1));
            if (z.imag() == T(0) && z.real() > T(0)) { ok = false; return C(0); }
            C w = std::sqrt(z);
            if (w.imag() < T(0)) w = -w;
            C i(T(0), T(1));
            C zz = (i - w) / (i + w);
            C one(T(1));
            auto sprime = [&](C x) { C p = one + x; return T(4) * (one - x) / (p * p * p); };
            T kappa = T(m.d - 1) / T(2 * m.d);
            T nu = T(m.d + 1) / T(2 * m.d);
            C delta = one - zz;
            C den = one - kappa * delta;
            if (den == C(0)) { ok = false; return C(0); }
            C mu = (one - nu * delta) / den;
            C b = powi(mu, m.d);
            C bp = powi(mu, m.d - 1) / (den * den);
            C sz = sprime(zz);
            if (sz == C(0)) { ok = false; return C(0); }
            return sprime(b) * bp / sz;
        }
        case MapKind::c_inf: {
            if (z == C(0)) return C(T(1));
            C s = std::sqrt(z);
            C t = std::tan(s);
            return t * (C(T(1)) + t * t) / s;
        }
    }
    ok = false;
    return C(0);
}

}  // namespace detail

// f'(z) in native coordinates, by the analytic formula for each kind.
inline EvalResult derivative(const ParabolicMap& m, Cplx z) {
    if (!is_finite(z)) return {z, Status::non_finite};
    bool ok = true;
    Cplx zg = z - m.fixed_point;  // germ formulas are written around 0
    Cplx v = detail::germ_derivative(m, zg, ok);
    if (!ok) return {Cplx(0.0), Status::branch_error};
    if (!is_finite(v)) return {v, Status::non_finite};
    return {v, Status::ok};
}

namespace detail {

// Newton solve of germ(x) = z for the inverse branch fixing 0.
template <class T>
std::complex<T> germ_inverse_step(const ParabolicMap& m, std::complex<T> z, bool& ok,
                                  int max_steps = 50) {
    using C = std::complex<T>;
    if (z == C(0)) return C(0);
    C x = z;  // near the parabolic point the identity is an excellent seed
    // The residual bound must scale with |z|: an absolute bound lets a single
    // Newton update pass deep in a repelling orbit, and its z^4 truncation
    // bias is coherent step to step, integrating into an O(1e-5) error of the
    // repelling Fatou coordinate. Relative to |z| the bound stays reachable
    // because the residual evaluation noise is itself ~eps|z|.
    T scale = std::max(std::abs(z), T(64) * std::numeric_limits<T>::min());
    T tol = scale * T(64) * std::numeric_limits<T>::epsilon();
    C best = x;
    T best_res = std::numeric_limits<T>::infinity();
    for (int it = 0; it < max_steps; ++it) {
        bool step_ok = true;
        C fx = germ_step(m, x, step_ok);
        if (!step_ok || !is_finite(fx)) { ok = false; return C(0); }
        C r = fx - z;
        T res = std::abs(r);
        if (res < best_res) { best_res = res; best = x; }
        if (res <= tol) return x;
        C dfx = germ_derivative(m, x, step_ok);
        if (!step_ok || !is_finite(dfx) || dfx == C(0)) { ok = false; return C(0); }
        x -= r / dfx;
        if (!is_finite(x)) { ok = false; return C(0); }
    }
    if (best_res <= scale * T(1e4) * std::numeric_limits<T>::epsilon())
        return best;  // stagnated at roundoff level, good enough
    ok = false;
    return C(0);
}

}  // namespace detail

// Inverse branch of the germ fixing the origin, by Newton from the seed x0=z.
inline EvalResult inverse_branch_zero(const ParabolicMap& m, Cplx z) {
    if (!is_finite(z)) return {z, Status::non_finite};
    bool ok = true;
    Cplx v = detail::germ_inverse_step(m, z, ok);
    if (!ok) return {Cplx(0.0), Status::no_convergence};
    return {v, Status::ok};
}

}  // namespace parafatou

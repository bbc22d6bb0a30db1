#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace parafatou {

using Cplx  = std::complex<double>;
using CplxL = std::complex<long double>;

// Outcome of a numerical operation. Ok means the value can be trusted to the
// reported error estimate; everything else names the first thing that went wrong.
enum class Status {
    ok,
    non_finite,           // evaluation overflowed or produced NaN
    branch_error,         // input sits on a branch cut (e.g. the slit [0,inf) of C_d)
    degenerate_germ,      // |a2| too small, no single-petal machinery applies
    ill_conditioned,      // coefficient extraction error estimate too large
    contour_through_zero, // a quadrature sample hit a zero of f(z)-z
    no_petal,             // petal validation failed down to the smallest radius
    petal_escape,         // an orbit left the validated petal
    no_convergence,       // iteration/Newton budget exhausted without meeting tol
    escaped,              // orbit left the safe radius (not in the basin)
    undecided,            // budget exhausted before a classification was reached
    not_in_domain,        // point outside the domain of the requested map
    not_in_basin,         // point outside the parabolic basin
    height_too_low,       // horn asymptote sampled below its validated height
};

inline const char* to_string(Status s) {
    switch (s) {
        case Status::ok: return "ok";
        case Status::non_finite: return "non_finite";
        case Status::branch_error: return "branch_error";
        case Status::degenerate_germ: return "degenerate_germ";
        case Status::ill_conditioned: return "ill_conditioned";
        case Status::contour_through_zero: return "contour_through_zero";
        case Status::no_petal: return "no_petal";
        case Status::petal_escape: return "petal_escape";
        case Status::no_convergence: return "no_convergence";
        case Status::escaped: return "escaped";
        case Status::undecided: return "undecided";
        case Status::not_in_domain: return "not_in_domain";
        case Status::not_in_basin: return "not_in_basin";
        case Status::height_too_low: return "height_too_low";
    }
    return "unknown";
}

// Thrown by operations whose contract has no in-band way to report failure
// (cached germ data, petal construction, quadrature preconditions).
struct ParabolicError : std::runtime_error {
    Status status;
    ParabolicError(Status s, const std::string& what)
        : std::runtime_error(what), status(s) {}
};

template <class T>
bool is_finite(const std::complex<T>& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Principal-branch log; points exactly on the cut are nudged to the upper side
// so repeated evaluations cannot flap between the two shores.
template <class T>
std::complex<T> log_p(std::complex<T> z) {
    if (z.imag() == T(0) && z.real() < T(0))
        z = std::complex<T>(z.real(), T(1e-300));
    return std::log(z);
}

// exp(z)-1 with full relative accuracy near z=0 (the naive form loses
// everything once |z| ~ 1e-8, which is exactly where parabolic orbits live).
template <class T>
std::complex<T> cexpm1(std::complex<T> z) {
    T u = std::expm1(z.real());
    T s = std::sin(z.imag() / 2);
    return {u * std::cos(z.imag()) - 2 * s * s, (u + 1) * std::sin(z.imag())};
}

// log(1+z), principal branch, accurate for small |z|.
template <class T>
std::complex<T> clog1p(std::complex<T> z) {
    std::complex<T> w = std::complex<T>(1) + z;
    if (w == std::complex<T>(1))
        return z;
    return std::log(w) * (z / (w - std::complex<T>(1)));
}

// Integer power by squaring; keeps Blaschke evaluation exact-ish for large d.
template <class T>
std::complex<T> powi(std::complex<T> base, int e) {
    std::complex<T> r(1);
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

// splitmix64: tiny deterministic generator for seeded sample sets. The same
// seed yields the same points on every platform, which the reproducibility
// contract needs and std::uniform_real_distribution does not promise.
struct SplitMix {
    std::uint64_t state;
    explicit SplitMix(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    Cplx box(Cplx lo, Cplx hi) {
        return {uniform(lo.real(), hi.real()), uniform(lo.imag(), hi.imag())};
    }
};

}  // namespace parafatou

#pragma once

// Extended horn map h = Phi_attr o Psi_rep, parabolic renormalization and
// Lavaurs maps.
//
// Operationally h(zeta) = Phi_attr(f^m(z)) - m + n where z inverts the
// repelling coordinate at zeta - n (n chosen so zeta - n is deep in the
// validated image) and m runs the orbit forward into the attracting petal.
// h commutes with the unit translation and has the asymptotes
// h(zeta) - zeta -> -i pi gamma (Im -> +inf), +i pi gamma (Im -> -inf).
//
// The renormalization acts downstairs through E(z) = exp(2 pi i z):
// R[f](w) = a E(h(log w / 2 pi i)). With a = exp(-2 pi^2 gamma) the fixed
// point at 0 has |R'(0)| = 1; the alternative normalization a = 1/E(v')
// puts the critical value of R at 1 instead.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

#include "parafatou/complexfn.hpp"
#include "parafatou/fatou.hpp"
#include "parafatou/germ.hpp"
#include "parafatou/maps.hpp"

namespace parafatou {

inline constexpr double pf_pi = 3.14159265358979323846;

// E: cylinder coordinate to the punctured plane.
inline Cplx cyl_exp(Cplx z) { return std::exp(Cplx(0.0, 2.0 * pf_pi) * z); }

// Marked singular value of each catalog germ (the critical or asymptotic
// value that seeds the basin), in germ coordinates.
inline Cplx singular_value(const ParabolicMap& m) {
    switch (m.kind) {
        case MapKind::quad: return {-0.25, 0.0};
        case MapKind::expm1_map: return {-1.0, 0.0};
        case MapKind::zexpz: return {-std::exp(-1.0), 0.0};
        case MapKind::c_d:
        case MapKind::c_inf: return {-1.0, 0.0};
        default:
            throw std::invalid_argument(std::string(kind_name(m.kind)) +
                                        ": no marked singular value in the catalog");
    }
}

struct HornContext {
    ParabolicMap map;
    Cplx gamma;
    Petal attr, rep;
    Cplx v_f;      // marked singular value
    Cplx v_prime;  // Phi_attr(v_f)
    Cplx a_norm;   // exp(-2 pi^2 gamma)
    double tol = 1e-10;
};

inline HornContext make_horn_context(const ParabolicMap& m, double tol = 1e-10) {
    HornContext ctx;
    ctx.map = m;
    ctx.gamma = germ(m).gamma;
    ctx.attr = petal(m, PetalKind::attracting);
    ctx.rep = petal(m, PetalKind::repelling);
    ctx.v_f = singular_value(m);
    FatouValue vp = phi_attr_extended(m, ctx.v_f, 1'000'000, tol);
    if (vp.status != Status::ok)
        throw ParabolicError(vp.status, "horn context: Phi_attr(singular value) failed");
    ctx.v_prime = vp.value;
    ctx.a_norm = std::exp(Cplx(-2.0 * pf_pi * pf_pi, 0.0) * ctx.gamma);
    ctx.tol = tol;
    return ctx;
}

// h(zeta): invert the repelling coordinate at zeta - n, run forward into the
// attracting petal, read off the attracting coordinate and undo the shifts.
inline FatouValue horn_eval(const HornContext& ctx, Cplx zeta, long max_iter = 1'000'000,
                            double tol = 0.0) {
    if (tol <= 0.0) tol = ctx.tol;
    FatouValue out;
    if (!is_finite(zeta)) { out.status = Status::non_finite; return out; }
    long n = (long)std::ceil(zeta.real() + ctx.rep.threshold + 2.0);
    if (n < 0) n = 0;
    detail::PetalInverse inv =
        detail::invert_petal(ctx.map, ctx.rep, zeta - (double)n, tol, max_iter);
    if (inv.status != Status::ok) {
        out.status = inv.status == Status::not_in_domain ? Status::not_in_domain
                                                         : inv.status;
        out.iterations = inv.iterations;
        return out;
    }
    const CplxL c(std::polar((long double)ctx.attr.r0 / 2, (long double)ctx.attr.alpha));
    const long double rr2 = ((long double)ctx.attr.r0 / 2) * ((long double)ctx.attr.r0 / 2);
    const long double safe2 =
        (long double)ctx.map.safe_radius * (long double)ctx.map.safe_radius;
    CplxL cur = inv.z;
    long m_steps = 0;
    while (std::norm(cur - c) >= rr2) {
        if (m_steps >= max_iter) {
            out.status = Status::undecided;
            out.iterations = inv.iterations + m_steps;
            return out;
        }
        bool ok = true;
        cur = detail::germ_step(ctx.map, cur, ok);
        ++m_steps;
        if (!ok || !is_finite(cur) || std::norm(cur) > safe2) {
            out.status = Status::not_in_domain;  // this orbit never reaches the basin
            out.iterations = inv.iterations + m_steps;
            return out;
        }
    }
    FatouValue phi = phi_petal(ctx.map, ctx.attr,
                               Cplx(double(cur.real()), double(cur.imag())), tol, max_iter);
    if (phi.status != Status::ok) {
        out.status = phi.status;
        out.iterations = inv.iterations + m_steps + phi.iterations;
        return out;
    }
    out.value = phi.value - (double)m_steps + (double)n;
    out.status = Status::ok;
    out.iterations = inv.iterations + m_steps + phi.iterations;
    out.err_estimate = std::max(inv.err, phi.err_estimate);
    return out;
}

struct HornAsymptotes {
    Cplx a_up{}, a_down{};
    Status status = Status::ok;
};

// Average h(zeta) - zeta over one period at +/- height. Below Im = 3 the
// periodic part is not yet negligible, so lower heights are rejected.
inline HornAsymptotes a_up_down_estimate(const HornContext& ctx, double height,
                                         long max_iter = 1'000'000) {
    if (!(height >= 3.0))
        throw std::invalid_argument("a_up_down_estimate: need height >= 3");
    HornAsymptotes res;
    Cplx acc[2] = {Cplx(0.0), Cplx(0.0)};
    for (int side = 0; side < 2; ++side) {
        double y = side == 0 ? height : -height;
        for (int j = 0; j < 8; ++j) {
            Cplx zeta((j + 0.5) / 8.0, y);
            FatouValue h = horn_eval(ctx, zeta, max_iter);
            if (h.status != Status::ok) {
                res.status = Status::height_too_low;
                return res;
            }
            acc[side] += h.value - zeta;
        }
        acc[side] /= 8.0;
    }
    res.a_up = acc[0];
    res.a_down = acc[1];
    return res;
}

enum class RenormNorm {
    derivative_one,     // a = exp(-2 pi^2 gamma): |R'(0)| = 1
    critical_value_one  // a = 1/E(v'): critical value of R at 1
};

// R[f](w) = a E(h(E^{-1} w)) with the principal branch of E^{-1}; R(0) = 0.
inline FatouValue renorm_eval(const HornContext& ctx, Cplx w, long max_iter = 1'000'000,
                              RenormNorm norm = RenormNorm::derivative_one,
                              double tol = 0.0) {
    FatouValue out;
    if (!is_finite(w)) { out.status = Status::non_finite; return out; }
    if (w == Cplx(0.0)) {
        out.value = Cplx(0.0);
        return out;
    }
    Cplx zeta = log_p(w) / Cplx(0.0, 2.0 * pf_pi);
    FatouValue h = horn_eval(ctx, zeta, max_iter, tol);
    if (h.status != Status::ok) {
        out.status = h.status;
        out.iterations = h.iterations;
        return out;
    }
    Cplx a = norm == RenormNorm::derivative_one ? ctx.a_norm : Cplx(1.0) / cyl_exp(ctx.v_prime);
    out.value = a * cyl_exp(h.value);
    out.iterations = h.iterations;
    out.err_estimate = h.err_estimate;
    return out;
}

// Lavaurs map g_sigma = Psi_rep o T_sigma o Phi_attr on the basin.
inline FatouValue lavaurs_eval(const HornContext& ctx, Cplx sigma, Cplx z,
                               long max_iter = 1'000'000, double tol = 0.0) {
    if (tol <= 0.0) tol = ctx.tol;
    FatouValue out;
    FatouValue phi = phi_attr_extended(ctx.map, z, max_iter, tol);
    if (phi.status != Status::ok) {
        out.status = (phi.status == Status::escaped || phi.status == Status::undecided)
                         ? Status::not_in_basin
                         : phi.status;
        out.iterations = phi.iterations;
        return out;
    }
    FatouValue psi = psi_rep_extended(ctx.map, phi.value + sigma, max_iter, tol);
    psi.iterations += phi.iterations;
    return psi;
}

}  // namespace parafatou

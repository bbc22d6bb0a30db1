#pragma once

// Hyperbolic toolbox on the three model domains. The metric normalization is
// |dz|/(1-|z|^2) on the unit disk and |dz|/(2 Im z) on the upper half plane,
// so dist(0, x) = argtanh(x) on the disk and dist(i, 2i) = (log 2)/2 upstairs.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "parafatou/complexfn.hpp"

namespace parafatou {

struct ModelDomain {
    enum class Kind { unit_disk, upper_half_plane, disk };
    Kind kind = Kind::unit_disk;
    Cplx center{0.0, 0.0};  // disk
    double radius = 1.0;    // disk
    double floor = 0.0;     // upper_half_plane: {Im z > floor}

    static ModelDomain unit_disk() { return {}; }
    static ModelDomain upper_half_plane(double floor = 0.0) {
        ModelDomain d;
        d.kind = Kind::upper_half_plane;
        d.floor = floor;
        return d;
    }
    static ModelDomain disk(Cplx center, double radius) {
        if (!(radius > 0.0)) throw std::domain_error("disk: radius must be positive");
        ModelDomain d;
        d.kind = Kind::disk;
        d.center = center;
        d.radius = radius;
        return d;
    }

    bool contains(Cplx z) const {
        switch (kind) {
            case Kind::unit_disk: return std::abs(z) < 1.0;
            case Kind::upper_half_plane: return z.imag() > floor;
            case Kind::disk: return std::abs(z - center) < radius;
        }
        return false;
    }
};

namespace detail {

inline double dist_disk_model(Cplx a, Cplx b) {
    // pseudo-hyperbolic distance, then argtanh for the |dz|/(1-|z|^2) metric
    double p = std::abs((a - b) / (Cplx(1.0) - std::conj(b) * a));
    if (p >= 1.0) throw std::domain_error("dist_h: points must lie inside the domain");
    return std::atanh(p);
}

}  // namespace detail

inline double dist_h(const ModelDomain& dom, Cplx a, Cplx b) {
    switch (dom.kind) {
        case ModelDomain::Kind::unit_disk:
            if (std::abs(a) >= 1.0 || std::abs(b) >= 1.0)
                throw std::domain_error("dist_h: points must lie inside the unit disk");
            return detail::dist_disk_model(a, b);
        case ModelDomain::Kind::upper_half_plane: {
            double ya = a.imag() - dom.floor, yb = b.imag() - dom.floor;
            if (ya <= 0.0 || yb <= 0.0)
                throw std::domain_error("dist_h: points must lie above the floor");
            return std::asinh(std::abs(b - a) / (2.0 * std::sqrt(ya * yb)));
        }
        case ModelDomain::Kind::disk: {
            if (!dom.contains(a) || !dom.contains(b))
                throw std::domain_error("dist_h: points must lie inside the disk");
            return detail::dist_disk_model((a - dom.center) / dom.radius,
                                           (b - dom.center) / dom.radius);
        }
    }
    throw std::domain_error("dist_h: bad domain");
}

// ell(x): hyperbolic distance from 0 to x in the unit disk.
inline double ell(double x) {
    if (!(x >= 0.0) || x >= 1.0) throw std::domain_error("ell: need 0 <= x < 1");
    return std::atanh(x);
}

// L(eps) = argtanh(1-eps) = (1/2) log((2-eps)/eps); stable for tiny eps.
inline double big_l(double eps) {
    if (!(eps > 0.0) || eps > 1.0) throw std::domain_error("big_l: need 0 < eps <= 1");
    return 0.5 * std::log((2.0 - eps) / eps);
}

// Hyperbolic subdomain: the image of B(0, r) under an origin-preserving
// conformal map D -> U, i.e. the set of points at hyperbolic distance < ell(r)
// from the origin. A Moebius image of a round disk is round, so the result is
// always returned as a disk.
inline ModelDomain sub_domain(const ModelDomain& dom, double r) {
    if (!(r >= 0.0) || r >= 1.0) throw std::domain_error("sub_domain: need 0 <= r < 1");
    switch (dom.kind) {
        case ModelDomain::Kind::unit_disk:
            return ModelDomain::disk(Cplx(0.0), r == 0.0 ? 1e-300 : r);
        case ModelDomain::Kind::disk: {
            if (!dom.contains(Cplx(0.0)))
                throw std::domain_error("sub_domain: domain must contain the origin");
            // phi(z) = c + R (z+alpha)/(1+conj(alpha) z) with alpha = -c/R
            Cplx alpha = -dom.center / dom.radius;
            double a2 = std::norm(alpha);
            double den = 1.0 - a2 * r * r;
            Cplx center = dom.center + dom.radius * alpha * ((1.0 - r * r) / den);
            double radius = dom.radius * r * (1.0 - a2) / den;
            return ModelDomain::disk(center, radius == 0.0 ? 1e-300 : radius);
        }
        case ModelDomain::Kind::upper_half_plane: {
            if (!(dom.floor < 0.0))
                throw std::domain_error("sub_domain: domain must contain the origin");
            // phi(z) = 2i floor z/(1+z) sends D to {Im > floor} with phi(0)=0
            double h = -dom.floor;
            double den = 1.0 - r * r;
            Cplx center(0.0, 2.0 * h * r * r / den);
            double radius = 2.0 * h * r / den;
            return ModelDomain::disk(center, radius == 0.0 ? 1e-300 : radius);
        }
    }
    throw std::domain_error("sub_domain: bad domain");
}

}  // namespace parafatou

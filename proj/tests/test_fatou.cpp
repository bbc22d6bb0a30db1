// Fatou coordinates: validated petals, the normalized coordinate and its
// Abel equation, basin classification, and the inverse coordinate on the
// repelling side.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "parafatou/fatou.hpp"

using namespace parafatou;

TEST_CASE("petal selection") {
    auto quad = make_map(MapKind::quad);
    const Petal& attr = petal(quad, PetalKind::attracting);
    CHECK(attr.kind == PetalKind::attracting);
    // a2 = 1: first candidate radius 1/(8|a2|) already validates
    CHECK(std::abs(attr.r0 - 0.125) < 1e-12);
    CHECK(attr.halvings == 0);
    CHECK(std::abs(std::remainder(attr.alpha - 3.14159265358979323846,
                                  2.0 * 3.14159265358979323846)) < 1e-9);
    CHECK(std::abs(attr.u_min - 8.0) < 1e-9);
    CHECK(std::abs(attr.threshold - 48.0) < 1e-6);

    const Petal& rep = petal(quad, PetalKind::repelling);
    CHECK(std::abs(rep.alpha) < 1e-9);
    CHECK(std::abs(rep.r0 - 0.125) < 1e-12);

    auto em = make_map(MapKind::expm1_map);
    const Petal& ea = petal(em, PetalKind::attracting);
    CHECK(std::abs(ea.r0 - 0.25) < 1e-12);
    CHECK(std::abs(petal(em, PetalKind::repelling).alpha) < 1e-9);

    // an oversized starting radius fails validation and gets halved
    Petal forced = choose_petal(quad, PetalKind::attracting, 0.9);
    CHECK(forced.halvings >= 1);
    CHECK(forced.r0 <= 0.45);

    // petal membership is the open disk of diameter r0 along the axis
    CHECK(in_petal(attr, Cplx(-0.0625, 0.0)));
    CHECK(in_petal(attr, Cplx(-0.001, 0.0)));
    CHECK(!in_petal(attr, Cplx(0.0)));
    CHECK(!in_petal(attr, Cplx(0.05, 0.0)));
    CHECK(in_petal_closed(attr, Cplx(0.0)));
}

TEST_CASE("Fatou coordinate satisfies the Abel equation on the petal") {
    auto quad = make_map(MapKind::quad);
    const Petal& p = petal(quad, PetalKind::attracting);
    SplitMix rng(41);
    for (int k = 0; k < 20; ++k) {
        // random point of the open petal disk
        Cplx c = std::polar(p.r0 / 2, p.alpha);
        Cplx z = c + std::polar(0.95 * (p.r0 / 2) * std::sqrt(rng.uniform()),
                                rng.uniform(0.0, 6.28));
        EvalResult fz = eval(quad, z);
        REQUIRE(fz.status == Status::ok);
        FatouValue a = phi_petal(quad, p, z, 1e-9);
        FatouValue b = phi_petal(quad, p, fz.value, 1e-9);
        REQUIRE(a.status == Status::ok);
        REQUIRE(b.status == Status::ok);
        INFO("z=" << z);
        CHECK(std::abs(b.value - a.value - Cplx(1.0)) < 1e-8);
    }

    // outside the closed petal the coordinate refuses
    CHECK(phi_petal(quad, p, Cplx(0.05, 0.0)).status == Status::petal_escape);
    CHECK(phi_petal(quad, p, Cplx(0.0)).status == Status::petal_escape);
}

TEST_CASE("Fatou coordinate against a raw-orbit extrapolation") {
    // independent oracle: run the orbit of z + z^2 in long double, read off
    // e_n = w_n - n at n and 2n, remove the C/n term with one Richardson step
    auto quad = make_map(MapKind::quad);
    const Petal& p = petal(quad, PetalKind::attracting);

    const Cplx z0(-0.1, 0.0);
    std::complex<long double> z(z0);
    auto e_at = [&](long n0, long n1, std::complex<long double>& cur) {
        for (long n = n0; n < n1; ++n) cur += cur * cur;
        std::complex<long double> u = -1.0L / cur;
        return u - std::log(u) - (long double)n1;
    };
    std::complex<long double> cur = z;
    auto e1 = e_at(0, 50'000, cur);
    auto e2 = e_at(50'000, 100'000, cur);
    std::complex<long double> ehat = 2.0L * e2 - e1;

    FatouValue phi = phi_petal(quad, p, z0, 1e-10);
    REQUIRE(phi.status == Status::ok);
    CHECK(std::abs(phi.value - Cplx((double)ehat.real(), (double)ehat.imag())) < 1e-6);

    // frozen reference for the same point
    CHECK(std::abs(phi.value - Cplx(7.751164097009959, 0.0)) < 1e-9);
    CHECK(phi.err_estimate < 1e-9);
}

TEST_CASE("tighter tolerances cost more iterations and move the value less") {
    auto quad = make_map(MapKind::quad);
    const Petal& p = petal(quad, PetalKind::attracting);
    FatouValue a = phi_petal(quad, p, Cplx(-0.1, 0.02), 1e-6);
    FatouValue b = phi_petal(quad, p, Cplx(-0.1, 0.02), 1e-8);
    FatouValue c = phi_petal(quad, p, Cplx(-0.1, 0.02), 1e-10);
    REQUIRE(a.status == Status::ok);
    REQUIRE(b.status == Status::ok);
    REQUIRE(c.status == Status::ok);
    CHECK(a.iterations < b.iterations);
    CHECK(b.iterations < c.iterations);
    CHECK(std::abs(a.value - c.value) < 1e-6);
    CHECK(std::abs(b.value - c.value) < 1e-8);
}

TEST_CASE("extended coordinate pulls back along the orbit") {
    auto quad = make_map(MapKind::quad);
    const Petal& p = petal(quad, PetalKind::attracting);

    // on the petal the extension is the petal coordinate itself
    FatouValue inner = phi_petal(quad, p, Cplx(-0.06, 0.01), 1e-9);
    FatouValue ext = phi_attr_extended(quad, Cplx(-0.06, 0.01), 1'000'000, 1e-9);
    REQUIRE(inner.status == Status::ok);
    REQUIRE(ext.status == Status::ok);
    CHECK(std::abs(inner.value - ext.value) < 1e-15);

    // basin point far outside the petal
    auto em = make_map(MapKind::expm1_map);
    FatouValue at = phi_attr_extended(em, Cplx(-1.0, 0.0), 1'000'000, 1e-9);
    REQUIRE(at.status == Status::ok);
    EvalResult f = eval(em, Cplx(-1.0, 0.0));
    FatouValue at2 = phi_attr_extended(em, f.value, 1'000'000, 1e-9);
    REQUIRE(at2.status == Status::ok);
    CHECK(std::abs(at2.value - at.value - Cplx(1.0)) < 1e-8);

    // points that leave the safe radius report escape
    CHECK(phi_attr_extended(quad, Cplx(1.0, 0.0)).status == Status::escaped);
}

TEST_CASE("Abel equation across the whole sampled basin") {
    struct Box { MapKind k; int d; Cplx lo, hi; };
    const Box boxes[] = {
        {MapKind::quad, 0, Cplx(-1.2, -0.7), Cplx(0.2, 0.7)},
        {MapKind::expm1_map, 0, Cplx(-2.0, -1.0), Cplx(-0.1, 1.0)},
        {MapKind::c_d, 2, Cplx(-2.0, -0.5), Cplx(-0.05, 0.5)},
    };
    SplitMix rng(20260814ULL);
    for (const auto& bx : boxes) {
        auto m = bx.d ? make_map(bx.k, bx.d) : make_map(bx.k);
        int used = 0;
        double worst = 0.0;
        for (int i = 0; i < 60 && used < 25; ++i) {
            Cplx z = rng.box(bx.lo, bx.hi);
            if (basin_test(m, z, 20'000).status != Status::ok) continue;
            FatouValue a = phi_attr_extended(m, z, 300'000, 2.5e-9);
            EvalResult fz = eval(m, z);
            if (a.status != Status::ok || fz.status != Status::ok) continue;
            FatouValue b = phi_attr_extended(m, fz.value, 300'000, 2.5e-9);
            if (b.status != Status::ok) continue;
            worst = std::max(worst, std::abs(b.value - a.value - Cplx(1.0)));
            ++used;
        }
        INFO(kind_name(bx.k));
        CHECK(used >= 15);
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("basin classification") {
    auto quad = make_map(MapKind::quad);
    BasinResult in = basin_test(quad, Cplx(-0.5, 0.0));
    CHECK(in.status == Status::ok);
    CHECK(in.steps > 0);
    CHECK(basin_test(quad, Cplx(1.0, 0.0)).status == Status::escaped);
    // the fixed point itself never enters the open petal
    BasinResult fp = basin_test(quad, Cplx(0.0), 500);
    CHECK(fp.status == Status::undecided);
    CHECK(fp.steps == 500);
}

TEST_CASE("coordinate matches its leading model along the axis") {
    auto quad = make_map(MapKind::quad);
    const Petal& p = petal(quad, PetalKind::attracting);
    double gap_prev = 1e300, scaled_prev = 1e300;
    for (double x : {-1e-2, -1e-3, -1e-4}) {
        Cplx z(x, 0.0);
        // a start this deep (u_0 up to 1e4) shifts the checkpoint ladder,
        // so give the limit more room than the default budget
        FatouValue phi = phi_petal(quad, p, z, 1e-8, 4'000'000);
        REQUIRE(phi.status == Status::ok);
        // Phi ~ u - gamma log u, so Phi * a2 z -> -1 and Phi - w -> 0
        Cplx u = -1.0 / z;
        Cplx w = u - std::log(u);
        double gap = std::abs(phi.value - w);
        double scaled = std::abs(phi.value * z + Cplx(1.0));
        INFO("x=" << x);
        CHECK(gap < gap_prev);
        CHECK(scaled < scaled_prev);
        gap_prev = gap;
        scaled_prev = scaled;
    }
    CHECK(gap_prev < 1e-3);
    CHECK(scaled_prev < 1e-2);
}

TEST_CASE("repelling inverse coordinate") {
    auto quad = make_map(MapKind::quad);
    const Petal& rep = petal(quad, PetalKind::repelling);

    // deep in the image, phi_petal o psi is the identity
    SplitMix rng(43);
    for (int k = 0; k < 5; ++k) {
        Cplx Z(-rep.threshold - 3.0 - rng.uniform(), rng.uniform(-2.0, 2.0));
        FatouValue z = psi_rep_extended(quad, Z, 1'000'000, 1e-9);
        REQUIRE(z.status == Status::ok);
        REQUIRE(in_petal_closed(rep, z.value));
        FatouValue back = phi_petal(quad, rep, z.value, 1e-9);
        REQUIRE(back.status == Status::ok);
        INFO("Z=" << Z);
        CHECK(std::abs(back.value - Z) < 1e-8);
    }

    // psi semiconjugates the shift to the map wherever the forward images
    // stay representable; near the repelling axis they blow past double range
    for (MapKind kk : {MapKind::quad, MapKind::expm1_map}) {
        auto m = make_map(kk);
        int tested = 0;
        for (int k = 0; k < 10; ++k) {
            Cplx Z(rng.uniform(-6.0, 4.0), rng.uniform(1.0, 3.0));
            FatouValue a = psi_rep_extended(m, Z, 1'000'000, 1e-9);
            FatouValue b = psi_rep_extended(m, Z + Cplx(1.0), 1'000'000, 1e-9);
            if (a.status != Status::ok || b.status != Status::ok) continue;
            EvalResult fa = eval(m, a.value);
            REQUIRE(fa.status == Status::ok);
            INFO(kind_name(kk) << " Z=" << Z);
            CHECK(std::abs(fa.value - b.value) < 1e-8);
            ++tested;
        }
        CHECK(tested >= 8);
    }

    // far out the negative axis, u(psi(Z)) tracks Z + gamma log(-Z); the
    // inversion runs at depth 1000, so ask for a tolerance the default
    // budget can deliver from there
    Cplx Z(-1000.0, 0.5);
    FatouValue z = psi_rep_extended(quad, Z, 1'000'000, 1e-6);
    REQUIRE(z.status == Status::ok);
    Cplx u = -1.0 / z.value;
    Cplx model = Z + std::log(-Z);
    CHECK(std::abs(u - model) < 0.05);
}

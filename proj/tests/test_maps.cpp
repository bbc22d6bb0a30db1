// Map catalog: fixed points, pointwise values, the slit chart S, the
// Blaschke degree limit, inverse branches and the JSON descriptors.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "parafatou/map_json.hpp"
#include "parafatou/maps.hpp"

using namespace parafatou;

namespace {

std::vector<ParabolicMap> catalog() {
    return {
        make_map(MapKind::quad),
        make_map(MapKind::expm1_map),
        make_map(MapKind::zexpz),
        make_map(MapKind::blaschke, 2),
        make_map(MapKind::blaschke, 5),
        make_map(MapKind::blaschke_tilde, 3),
        make_map(MapKind::b_inf),
        make_map(MapKind::c_d, 2),
        make_map(MapKind::c_d, 3),
        make_map(MapKind::c_inf),
        make_poly({Cplx(0.0), Cplx(1.0), Cplx(0.0, 1.0), Cplx(0.25, 0.0)}),
    };
}

}  // namespace

TEST_CASE("every catalog map fixes its marked point with multiplier 1") {
    for (const auto& m : catalog()) {
        INFO(kind_name(m.kind) << " d=" << m.d);
        EvalResult f = eval(m, m.fixed_point);
        REQUIRE(f.status == Status::ok);
        CHECK(std::abs(f.value - m.fixed_point) < 1e-12);
        EvalResult df = derivative(m, m.fixed_point);
        REQUIRE(df.status == Status::ok);
        CHECK(std::abs(df.value - Cplx(1.0)) < 1e-9);
    }
}

TEST_CASE("pointwise values match closed forms") {
    auto b2 = make_map(MapKind::blaschke, 2);
    // B_2(0) = a^2 with a = 1/3
    CHECK(std::abs(eval(b2, Cplx(0.0)).value - Cplx(1.0 / 9.0)) < 1e-15);
    CHECK(std::abs(eval(b2, Cplx(1.0)).value - Cplx(1.0)) < 1e-15);

    auto binf = make_map(MapKind::b_inf);
    CHECK(std::abs(eval(binf, Cplx(0.0)).value - Cplx(std::exp(-2.0))) < 1e-15);

    // (tan sqrt(v))^2 at v = 0.01
    auto cinf = make_map(MapKind::c_inf);
    CHECK(std::abs(eval(cinf, Cplx(0.01)).value - Cplx(0.01006704642249489)) < 1e-15);

    auto quad = make_map(MapKind::quad);
    CHECK(std::abs(derivative(quad, Cplx(0.0)).value - Cplx(1.0)) < 1e-15);
    CHECK(std::abs(derivative(quad, Cplx(0.2)).value - Cplx(1.4)) < 1e-15);
    CHECK(std::abs(derivative(b2, Cplx(1.0)).value - Cplx(1.0)) < 1e-12);
    // B_inf'(0) = 4 e^{-2}
    CHECK(std::abs(derivative(binf, Cplx(0.0)).value - Cplx(4.0 * std::exp(-2.0))) < 1e-12);
}

TEST_CASE("derivative agrees with a central difference") {
    SplitMix rng(11);
    for (const auto& m : catalog()) {
        if (m.kind == MapKind::c_d || m.kind == MapKind::c_inf) continue;  // slit nearby
        for (int i = 0; i < 25; ++i) {
            Cplx z = m.fixed_point + Cplx(rng.uniform(-0.05, 0.05), rng.uniform(-0.05, 0.05));
            const double h = 1e-6;
            EvalResult fp = eval(m, z + h), fm = eval(m, z - h);
            EvalResult d = derivative(m, z);
            if (fp.status != Status::ok || fm.status != Status::ok || d.status != Status::ok)
                continue;
            Cplx fd = (fp.value - fm.value) / (2.0 * h);
            INFO(kind_name(m.kind) << " z=" << z);
            CHECK(std::abs(fd - d.value) < 1e-7);
        }
    }
}

TEST_CASE("slit chart S and its inverse branch") {
    CHECK(std::abs(s_map(Cplx(1.0)).value - Cplx(0.0)) < 1e-15);
    CHECK(std::abs(s_map(Cplx(0.0)).value - Cplx(-1.0)) < 1e-15);
    CHECK(s_map(Cplx(-1.0)).status == Status::non_finite);
    // the slit [0, inf) has no preimage in the disk
    CHECK(s_inverse(Cplx(2.0)).status == Status::branch_error);
    CHECK(s_inverse(Cplx(0.0)).status == Status::branch_error);

    SplitMix rng(7);
    for (int i = 0; i < 200; ++i) {
        double r = 0.9 * std::sqrt(rng.uniform());
        double th = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
        Cplx z = std::polar(r, th);
        EvalResult v = s_map(z);
        REQUIRE(v.status == Status::ok);
        EvalResult back = s_inverse(v.value);
        if (back.status != Status::ok) continue;  // landed on the slit, measure zero
        CHECK(std::abs(back.value - z) < 1e-12);
    }
}

TEST_CASE("C_d is the S-conjugate of B_d") {
    SplitMix rng(13);
    for (int d : {2, 3, 5}) {
        auto bd = make_map(MapKind::blaschke, d);
        auto cd = make_map(MapKind::c_d, d);
        int checked = 0;
        for (int i = 0; i < 200; ++i) {
            double r = 0.9 * std::sqrt(rng.uniform());
            double th = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
            Cplx z = std::polar(r, th);
            EvalResult sz = s_map(z);
            EvalResult bz = eval(bd, z);
            if (sz.status != Status::ok || bz.status != Status::ok) continue;
            EvalResult sbz = s_map(bz.value);
            EvalResult cz = eval(cd, sz.value);
            if (sbz.status != Status::ok || cz.status != Status::ok) continue;
            INFO("d=" << d << " z=" << z);
            CHECK(std::abs(cz.value - sbz.value) < 1e-10);
            ++checked;
        }
        CHECK(checked >= 180);
    }
}

TEST_CASE("B_d approaches B_inf as the degree grows") {
    auto binf = make_map(MapKind::b_inf);
    double prev = 1e300;
    for (int d : {10, 30, 100}) {
        auto bd = make_map(MapKind::blaschke, d);
        double sup = 0.0;
        SplitMix rng(17);
        for (int i = 0; i < 100; ++i) {
            Cplx z = std::polar(0.5 * std::sqrt(rng.uniform()),
                                rng.uniform(0.0, 2.0 * 3.14159265358979323846));
            EvalResult a = eval(bd, z), b = eval(binf, z);
            REQUIRE(a.status == Status::ok);
            REQUIRE(b.status == Status::ok);
            sup = std::max(sup, std::abs(a.value - b.value));
        }
        INFO("d=" << d);
        CHECK(sup < prev);
        prev = sup;
    }
    CHECK(prev < 0.02);
}

TEST_CASE("inverse branch fixing the origin") {
    auto quad = make_map(MapKind::quad);
    CHECK(std::abs(inverse_branch_zero(quad, Cplx(0.0)).value) == 0.0);

    // f(0.1) = 0.11, back to 0.1
    EvalResult f = eval(quad, Cplx(0.1));
    EvalResult back = inverse_branch_zero(quad, f.value);
    REQUIRE(back.status == Status::ok);
    CHECK(std::abs(back.value - Cplx(0.1)) < 1e-12);

    // z + z^2 = 0.01 has root (-1 + sqrt(1.04))/2
    EvalResult inv = inverse_branch_zero(quad, Cplx(0.01));
    REQUIRE(inv.status == Status::ok);
    CHECK(std::abs(inv.value - Cplx(0.009901951359278449)) < 1e-15);

    // roundtrip f^{-1}(f(z)) = z on germs fixing 0
    SplitMix rng(23);
    for (MapKind k : {MapKind::quad, MapKind::expm1_map, MapKind::zexpz, MapKind::c_inf}) {
        auto m = make_map(k);
        for (int i = 0; i < 50; ++i) {
            Cplx z = Cplx(rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1));
            if (k == MapKind::c_inf && z.imag() == 0.0 && z.real() >= 0.0) continue;
            EvalResult fz = eval(m, z);
            if (fz.status != Status::ok) continue;
            EvalResult b = inverse_branch_zero(m, fz.value);
            if (b.status != Status::ok) continue;
            INFO(kind_name(k) << " z=" << z);
            CHECK(std::abs(b.value - z) < 1e-12);
        }
    }
}

TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(make_map(MapKind::blaschke, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_map(MapKind::c_d, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_map(MapKind::poly), std::invalid_argument);
    CHECK_THROWS_AS(make_poly({Cplx(0.0), Cplx(1.0)}), std::invalid_argument);
    CHECK_THROWS_AS(make_poly({Cplx(0.1), Cplx(1.0), Cplx(1.0)}), std::invalid_argument);
    CHECK_THROWS_AS(make_poly({Cplx(0.0), Cplx(2.0), Cplx(1.0)}), std::invalid_argument);
    CHECK_THROWS_AS(make_poly({Cplx(0.0), Cplx(1.0), Cplx(0.0)}), std::invalid_argument);
}

TEST_CASE("JSON descriptors round trip") {
    for (const auto& m : catalog()) {
        auto j = map_to_json(m);
        ParabolicMap back = map_from_json(j);
        CHECK(back.kind == m.kind);
        CHECK(back.d == m.d);
        REQUIRE(back.coeffs.size() == m.coeffs.size());
        for (size_t i = 0; i < m.coeffs.size(); ++i)
            CHECK(back.coeffs[i] == m.coeffs[i]);
        CHECK(j["v"] == 1);
    }

    ParabolicMap p = map_from_json_text(R"({"kind":"poly","coeffs":[[0,0],[1,0],[0,1]]})");
    CHECK(p.kind == MapKind::poly);
    CHECK(p.coeffs[2] == Cplx(0.0, 1.0));

    ParabolicMap c = map_from_json_text(R"({"v":1,"kind":"c_d","d":4})");
    CHECK(c.kind == MapKind::c_d);
    CHECK(c.d == 4);

    CHECK_THROWS_AS(map_from_json_text(R"({"kind":"cubic"})"), std::invalid_argument);
    CHECK_THROWS_AS(map_from_json_text(R"({"kind":"blaschke"})"), std::invalid_argument);
    CHECK_THROWS_AS(map_from_json_text(R"({"kind":"blaschke","d":1})"), std::invalid_argument);
    CHECK_THROWS_AS(map_from_json_text(R"({"v":2,"kind":"quad"})"), std::invalid_argument);
    CHECK_THROWS_AS(map_from_json_text("not json"), std::invalid_argument);
    CHECK_THROWS_AS(map_from_json_text(R"({"kind":"poly","coeffs":[[0,0],[1,0],[3]]})"),
                    std::invalid_argument);
}

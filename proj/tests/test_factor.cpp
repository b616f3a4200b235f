#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cmtor/divpoly.hpp"
#include "cmtor/factorizer.hpp"

using namespace cmtor;

namespace {
ZPoly zp(std::initializer_list<long> asc) {
    std::vector<ExactInt> c;
    for (long v : asc) c.emplace_back(v);
    return ZPoly(std::move(c));
}
} // namespace

TEST_CASE("squarefree decomposition") {
    // x^2 -> (x, 2)
    auto sf = squarefree_decomp(zp({0, 0, 1}));
    REQUIRE(sf.factors.size() == 1);
    CHECK(sf.factors[0].poly == ZPoly::x());
    CHECK(sf.factors[0].mult == 2);

    // psi_3 of E(3,1) = 3x(x^3+64): squarefree, single part
    DivPolyEngine eng(curve_by_df(3, 1));
    auto sf2 = squarefree_decomp(eng.psi(3).xpart);
    CHECK(sf2.unit == 3);
    REQUIRE(sf2.factors.size() == 1);
    CHECK(sf2.factors[0].mult == 1);
    CHECK(sf2.factors[0].poly.degree() == 4);
    // oracle: gcd with the derivative is constant
    CHECK(gcd_z(eng.psi(3).xpart, eng.psi(3).xpart.derivative()).degree() == 0);

    // (x-1)^2 (x+1): parts {x+1 mult 1, x-1 mult 2} in canonical coefficient order
    ZPoly f = zp({1, -1}) * zp({1, -1}) * zp({-1, -1});
    auto sf3 = squarefree_decomp(f);
    REQUIRE(sf3.factors.size() == 2);
    CHECK(sf3.factors[0].poly == zp({-1, 1}));
    CHECK(sf3.factors[0].mult == 2);
    CHECK(sf3.factors[1].poly == zp({1, 1}));
    CHECK(sf3.factors[1].mult == 1);
    CHECK(sf3.multiply_back() == f);
}

TEST_CASE("factorization over small prime fields") {
    // x^2 + 1 over F_5 = (x+2)(x+3)
    FpPoly f(5, {1, 0, 1});
    auto fl = fp::factor(f, 0);
    REQUIRE(fl.factors.size() == 2);
    CHECK(fl.factors[0].poly == FpPoly(5, {2, 1}));
    CHECK(fl.factors[1].poly == FpPoly(5, {3, 1}));
    // over F_7: irreducible
    auto fl7 = fp::factor(FpPoly(7, {1, 0, 1}), 0);
    REQUIRE(fl7.factors.size() == 1);
    CHECK(fl7.factors[0].poly.degree() == 2);

    // count of monic irreducible quadratics over F_5: enumeration oracle vs (p^2-p)/2
    int count = 0;
    for (std::uint64_t b = 0; b < 5; ++b)
        for (std::uint64_t c = 0; c < 5; ++c) {
            bool has_root = false;
            for (std::uint64_t x = 0; x < 5; ++x)
                if ((x * x + b * x + c) % 5 == 0) has_root = true;
            if (!has_root) ++count;
        }
    CHECK(count == 10);
    int via_factor = 0;
    for (std::uint64_t b = 0; b < 5; ++b)
        for (std::uint64_t c = 0; c < 5; ++c) {
            auto g = fp::factor(FpPoly(5, {c, b, 1}), 1);
            if (g.factors.size() == 1 && g.factors[0].poly.degree() == 2) ++via_factor;
        }
    CHECK(via_factor == 10);
}

TEST_CASE("fp factorization multiplies back") {
    std::mt19937_64 rng(7);
    for (std::uint64_t p : {3ull, 5ull, 101ull}) {
        for (int rep = 0; rep < 10; ++rep) {
            FpPoly f;
            f.p = p;
            f.c.resize(9);
            for (auto& x : f.c) x = rng() % p;
            f.trim();
            if (f.degree() < 1) continue;
            auto fl = fp::factor(f, rep);
            FpPoly back = fp::constant(p, fl.unit);
            for (const auto& [poly, mult] : fl.factors)
                for (int i = 0; i < mult; ++i) back = fp::mul(back, poly);
            CHECK(back == f);
        }
    }
}

TEST_CASE("pattern_mod") {
    ZPoly f = zp({1, 0, 1}); // x^2 + 1
    auto p5 = pattern_mod(f, 5);
    REQUIRE(p5.has_value());
    CHECK(*p5 == std::vector<int>{1, 1});
    auto p7 = pattern_mod(f, 7);
    REQUIRE(p7.has_value());
    CHECK(*p7 == std::vector<int>{2});
    CHECK(!pattern_mod(f, 2).has_value()); // ramified: (x+1)^2 mod 2
}

TEST_CASE("factor_z small examples") {
    // Psi_2 of E(3,2) = x^3 - 15x + 22 = (x-2)(x^2+2x-11)
    ZPoly f = zp({22, -15, 0, 1});
    auto fl = factor_z(f);
    CHECK(fl.unit == 1);
    REQUIRE(fl.factors.size() == 2);
    CHECK(fl.factors[0].poly == zp({-2, 1}));
    CHECK(fl.factors[1].poly == zp({-11, 2, 1}));
    CHECK(fl.multiply_back() == f);

    // content and unit handling
    auto fl2 = factor_z(zp({0, -12, 0, 0, -6}));
    CHECK(fl2.unit == -6);
    CHECK(fl2.multiply_back() == zp({0, -12, 0, 0, -6}));

    // irreducible quartic stays whole
    auto fl3 = factor_z(zp({-1, 0, 6, 0, 3}));
    REQUIRE(fl3.factors.size() == 1);
    CHECK(fl3.factors[0].poly.degree() == 4);
}

TEST_CASE("factor_z on division polynomials: lemma degree shapes") {
    FactorConfig cfg;
    for (auto [D, f] : {std::pair{7, 1}, std::pair{7, 2}, std::pair{11, 1}}) {
        const int p = D;
        DivPolyEngine eng(curve_by_df(D, f));
        ZPoly psi = eng.big_psi(p);
        auto fl = factor_z(psi, cfg);
        REQUIRE(fl.factors.size() == 2);
        CHECK(fl.factors[0].poly.degree() == (p - 1) / 2);
        CHECK(fl.factors[1].poly.degree() == p * (p - 1) / 2);
        CHECK(fl.multiply_back() == psi);
    }
}

TEST_CASE("factor_fp output independent of the seed") {
    DivPolyEngine eng(curve_by_df(7, 2));
    FpPoly f = fp::from_z(eng.big_psi(7), 13);
    auto a = fp::factor(f, 0);
    auto b = fp::factor(f, 424242);
    CHECK(a.unit == b.unit);
    REQUIRE(a.factors.size() == b.factors.size());
    for (std::size_t i = 0; i < a.factors.size(); ++i) {
        CHECK(a.factors[i].poly == b.factors[i].poly);
        CHECK(a.factors[i].mult == b.factors[i].mult);
    }
}

TEST_CASE("factor_z output independent of the seed") {
    DivPolyEngine eng(curve_by_df(11, 1));
    ZPoly psi = eng.big_psi(11);
    FactorConfig a, b;
    a.seed = 0;
    b.seed = 987654321;
    auto fa = factor_z(psi, a);
    auto fb = factor_z(psi, b);
    REQUIRE(fa.factors.size() == fb.factors.size());
    for (std::size_t i = 0; i < fa.factors.size(); ++i) {
        CHECK(fa.factors[i].poly == fb.factors[i].poly);
        CHECK(fa.factors[i].mult == fb.factors[i].mult);
    }
}

TEST_CASE("multiply-back identity for Psi_m across the table, m <= 9") {
    FactorConfig cfg;
    for (const auto& E : cm_table()) {
        DivPolyEngine eng(E);
        for (int m = 2; m <= 9; ++m) {
            ZPoly psi = eng.big_psi(m);
            auto fl = factor_z(psi, cfg);
            CHECK(fl.multiply_back() == psi);
        }
    }
}

TEST_CASE("degree ceiling raises a resource error") {
    FactorConfig cfg;
    cfg.degree_ceiling = 8;
    DivPolyEngine eng(curve_by_df(7, 1));
    CHECK_THROWS_AS(factor_z(eng.big_psi(7), cfg), resource_limit_error);
}

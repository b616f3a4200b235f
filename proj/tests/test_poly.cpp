#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cmtor/fppoly.hpp"
#include "cmtor/divpoly.hpp"

#include <random>

using namespace cmtor;

namespace {
ZPoly random_poly(std::mt19937_64& rng, int deg, long height) {
    std::vector<ExactInt> c(deg + 1);
    for (auto& x : c) x = ExactInt(static_cast<long>(rng() % (2 * height)) - height);
    if (c.back() == 0) c.back() = 1;
    return ZPoly(std::move(c));
}

// independent schoolbook oracle, local to the tests
ZPoly naive_mul(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<ExactInt> r(a.degree() + b.degree() + 1, ExactInt(0));
    for (int i = 0; i <= a.degree(); ++i)
        for (int j = 0; j <= b.degree(); ++j) r[i + j] += a[i] * b[j];
    return ZPoly(std::move(r));
}
} // namespace

TEST_CASE("basic products and exact division") {
    ZPoly x = ZPoly::x();
    CHECK(x * x == ZPoly::monomial(1, 2));
    ZPoly f({ExactInt(0), ExactInt(1), ExactInt(0), ExactInt(1)}); // x^3 + x
    auto q = f.divide_exact(x);
    REQUIRE(q.has_value());
    CHECK(*q == ZPoly({ExactInt(1), ExactInt(0), ExactInt(1)}));
    CHECK(!f.divide_exact(ZPoly({ExactInt(1), ExactInt(1)})).has_value());
    CHECK_THROWS(f.divide_exact(ZPoly{}));
}

TEST_CASE("fast multiplication matches the schoolbook oracle") {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 12; ++rep) {
        ZPoly a = random_poly(rng, 50, 1000000);
        ZPoly b = random_poly(rng, 47, 1000000);
        CHECK(a * b == naive_mul(a, b));
        CHECK(ZPoly::mul_schoolbook(a, b) == naive_mul(a, b));
    }
    // large coefficients through the Kronecker path
    ZPoly big1 = random_poly(rng, 80, 1000);
    ZPoly big2 = random_poly(rng, 75, 1000);
    ExactInt scale = pow_int(ExactInt(10), 50);
    CHECK((big1 * scale) * (big2 * scale) == naive_mul(big1, big2) * (scale * scale));
}

TEST_CASE("evaluation") {
    ZPoly f({ExactInt(0), ExactInt(1), ExactInt(0), ExactInt(1)});
    CHECK(f.eval(ExactRat(0)) == 0);
    ZPoly psi31({ExactInt(0), ExactInt(192), ExactInt(0), ExactInt(0), ExactInt(3)});
    CHECK(psi31.eval(ExactRat(-4)) == 0);
    ZPoly psi2_32({ExactInt(22), ExactInt(-15), ExactInt(0), ExactInt(1)});
    CHECK(psi2_32.eval(ExactRat(2)) == 0);
    CHECK(psi2_32.eval(ExactRat(1, 2)) == ExactRat(117, 8));
}

TEST_CASE("eval is multiplicative") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        ZPoly a = random_poly(rng, 8, 50);
        ZPoly b = random_poly(rng, 9, 50);
        ExactRat x(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 7));
        ExactRat lhs = (a * b).eval(x);
        ExactRat rhs = a.eval(x) * b.eval(x);
        rhs.canonicalize();
        CHECK(lhs == rhs);
    }
}

TEST_CASE("content and primitive part") {
    ZPoly f({ExactInt(0), ExactInt(192), ExactInt(0), ExactInt(0), ExactInt(3)});
    auto [c, prim] = f.content_primitive();
    CHECK(c == 3);
    CHECK(prim == ZPoly({ExactInt(0), ExactInt(64), ExactInt(0), ExactInt(0), ExactInt(1)}));

    ZPoly monic({ExactInt(5), ExactInt(3), ExactInt(1)});
    CHECK(monic.content_primitive().first == 1);

    ZPoly neg({ExactInt(-4), ExactInt(-2)});
    auto [cn, pn] = neg.content_primitive();
    CHECK(cn == -2);
    CHECK(pn == ZPoly({ExactInt(2), ExactInt(1)}));
}

TEST_CASE("rational divrem reconstructs the dividend") {
    std::mt19937_64 rng(23);
    for (int rep = 0; rep < 20; ++rep) {
        ZPoly f = random_poly(rng, 12, 100);
        ZPoly g = random_poly(rng, 5, 30);
        auto [q, r] = ZPoly::divrem_rational(f, g);
        CHECK(static_cast<int>(r.size()) - 1 < g.degree());
        // f = q g + r over Q
        for (int i = 0; i <= f.degree(); ++i) {
            ExactRat acc = i < static_cast<int>(r.size()) ? r[i] : ExactRat(0);
            for (int j = 0; j <= g.degree(); ++j)
                if (i >= j && i - j < static_cast<int>(q.size())) acc += q[i - j] * ExactRat(g[j]);
            acc.canonicalize();
            CHECK(acc == ExactRat(f[i]));
        }
    }
}

TEST_CASE("reduction commutes with multiplication") {
    std::mt19937_64 rng(31);
    for (std::uint64_t p : {5ull, 101ull, 65537ull}) {
        for (int rep = 0; rep < 10; ++rep) {
            ZPoly a = random_poly(rng, 20, 100000);
            ZPoly b = random_poly(rng, 15, 100000);
            CHECK(fp::from_z(a * b, p) == fp::mul(fp::from_z(a, p), fp::from_z(b, p)));
        }
    }
}

TEST_CASE("fp gcd") {
    FpPoly zero{5, {}};
    zero.p = 5;
    FpPoly f(5, {4, 0, 3}); // 3x^2 + 4
    CHECK(fp::gcd(f, zero) == fp::make_monic(f));
    // gcd(x^2-1, x-1) = x-1 over F_5
    FpPoly a(5, {4, 0, 1});
    FpPoly b(5, {4, 1});
    CHECK(fp::gcd(a, b) == fp::make_monic(b));
    // Psi_7 of E(7,1) is squarefree mod 5
    DivPolyEngine eng(curve_by_df(7, 1));
    FpPoly g = fp::from_z(eng.big_psi(7), 5);
    CHECK(fp::gcd(g, fp::derivative(g)).degree() == 0);
}

TEST_CASE("fp xgcd bezout identity") {
    std::mt19937_64 rng(41);
    const std::uint64_t p = 101;
    for (int rep = 0; rep < 20; ++rep) {
        FpPoly a = fp::from_z(random_poly(rng, 9, 1000), p);
        FpPoly b = fp::from_z(random_poly(rng, 7, 1000), p);
        if (a.is_zero() || b.is_zero()) continue;
        auto [g, s, t] = fp::xgcd(a, b);
        CHECK(fp::add(fp::mul(s, a), fp::mul(t, b)) == g);
    }
}

TEST_CASE("polynomial json round trip is exact") {
    std::mt19937_64 rng(53);
    ZPoly f = random_poly(rng, 30, 5);
    f = f * pow_int(ExactInt(7), 80); // force multi-limb coefficients
    std::string j = f.to_json();
    CHECK(ZPoly::from_json(j) == f);
    CHECK(ZPoly::from_json(ZPoly{}.to_json()) == ZPoly{});
    // serialized form is stable
    CHECK(ZPoly({ExactInt(1), ExactInt(2)}).to_json() ==
          "{\"var\":\"x\",\"coeffs\":[\"1\",\"2\"]}");
}

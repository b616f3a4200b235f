#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cmtor/curves.hpp"
#include "cmtor/divpoly.hpp"
#include "cmtor/fppoly.hpp"

#include <random>

using namespace cmtor;

TEST_CASE("cm table matches the published models") {
    const auto& t = cm_table();
    REQUIRE(t.size() == 13);
    CHECK(curve_by_df(4, 1).a == 1);
    CHECK(curve_by_df(4, 1).b == 0);
    CHECK(curve_by_df(3, 3).a == -480);
    CHECK(curve_by_df(3, 3).b == 4048);
    CHECK(curve_by_df(163, 1).a == -34790720);
    CHECK(curve_by_df(163, 1).b == ExactRat(ExactInt("78984748304")));
    CHECK(curve_by_df(3, 1).nE == 6);
    CHECK(curve_by_df(4, 1).nE == 4);
    CHECK(curve_by_df(4, 2).nE == 2);
    for (const auto& E : t) {
        // nonsingular and nE consistent with j
        ExactRat j = j_invariant(E);
        CHECK(E.nE == (j == 0 ? 6 : j == 1728 ? 4 : 2));
    }
    CHECK_THROWS_AS(curve_by_df(5, 1), std::invalid_argument);
}

TEST_CASE("twists") {
    CurveModel E41 = curve_by_df(4, 1);
    CurveModel T = twist(E41, 7);
    CHECK(T.a == 7);
    CHECK(T.b == 0);
    CurveModel E31 = curve_by_df(3, 1);
    CHECK(twist(E31, 5).b == 80); // 16 d
    CurveModel E71 = curve_by_df(7, 1);
    CurveModel T7 = twist(E71, -2);
    CHECK(T7.a == E71.a * 4);
    CHECK(T7.b == E71.b * -8);
    CHECK(twist(E71, 1).a == E71.a);
    // d reduced mod n-th powers
    CHECK(twist(E41, 16).a == 1);
    CHECK(twist(E31, 64).b == 16);
    CHECK(twist(E71, 9).a == E71.a);
    CHECK_THROWS_AS(twist(E71, 0), std::invalid_argument);
}

TEST_CASE("j invariants") {
    CHECK(j_invariant(curve_by_df(4, 1)) == 1728);
    CHECK(j_invariant(curve_by_df(3, 1)) == 0);
    CHECK(j_invariant(curve_by_df(7, 1)) == -3375);
}

TEST_CASE("reduction") {
    auto C = reduce(curve_by_df(4, 1), 3);
    REQUIRE(C.has_value());
    CHECK(C->a == 1);
    CHECK(C->b == 0);
    // E(11,1) at q=3: both coefficients vanish -> singular model
    CHECK(!reduce(curve_by_df(11, 1), 3).has_value());
    // E(3,2) at q=2: singular
    CHECK(!reduce(curve_by_df(3, 2), 2).has_value());
}

TEST_CASE("group law") {
    auto C = *reduce(curve_by_df(3, 2), 101);
    AffinePointFp P{3, 2, false};
    REQUIRE(on_curve(C, P));
    AffinePointFp O;
    CHECK(add(C, P, O) == P);
    CHECK(add(C, P, neg(C, P)).inf);
    CHECK(smul(C, P, 3).inf);       // (3, 2) is a 3-torsion point
    CHECK(!smul(C, P, 2).inf);
    // psi_3(3) = 0 for this curve
    DivPolyEngine eng(curve_by_df(3, 2));
    CHECK(eng.psi(3).xpart.eval(ExactRat(3)) == 0);
}

namespace {
// independent affine count
long count_oracle(const CurveFp& E) {
    long n = 1;
    for (std::uint64_t x = 0; x < E.q; ++x) {
        std::uint64_t fx = (fp::mulmod(fp::mulmod(x, x, E.q), x, E.q) + fp::mulmod(E.a, x, E.q) + E.b) % E.q;
        for (std::uint64_t y = 0; y < E.q; ++y)
            if (fp::mulmod(y, y, E.q) == fx) ++n;
    }
    return n;
}
} // namespace

TEST_CASE("point counts") {
    CHECK(count_points(*reduce(curve_by_df(4, 1), 3)) == 4);
    CHECK(count_points(*reduce(curve_by_df(4, 1), 13)) == 20);
    CHECK(count_points(*reduce(curve_by_df(3, 1), 7)) == 9);
    // the quadratic-character count equals the naive double loop
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 6; ++rep) {
        CurveFp C{97, rng() % 97, rng() % 97};
        if ((4 * C.a * C.a % 97 * C.a + 27 * C.b * C.b) % 97 == 0) continue;
        CHECK(count_points_enumerate(C) == count_oracle(C));
    }
}

TEST_CASE("bsgs count agrees with enumeration in (10^3, 10^4)") {
    std::mt19937_64 rng(11);
    int done = 0;
    while (done < 5) {
        std::uint64_t q = next_prime(1000 + rng() % 9000);
        if (q > 10000) continue;
        CurveFp C{q, rng() % q, rng() % q};
        std::uint64_t disc = (4 * fp::mulmod(fp::mulmod(C.a, C.a, q), C.a, q) +
                              27 * fp::mulmod(C.b, C.b, q)) % q;
        if (disc == 0) continue;
        CHECK(count_points_bsgs(C) == count_points_enumerate(C));
        // and a prime above the dispatch threshold
        std::uint64_t q2 = next_prime(10000 + rng() % 40000);
        CurveFp C2{q2, rng() % q2, rng() % q2};
        std::uint64_t d2 = (4 * fp::mulmod(fp::mulmod(C2.a, C2.a, q2), C2.a, q2) +
                            27 * fp::mulmod(C2.b, C2.b, q2)) % q2;
        if (d2 == 0) continue;
        CHECK(count_points(C2) == count_points_enumerate(C2));
        ++done;
    }
}

TEST_CASE("trace records") {
    TraceRecord r = trace(curve_by_df(11, 1), 5);
    CHECK(r.good);
    CHECK(r.aq == -3);
    CHECK(r.status == SplitStatus::split);

    TraceRecord s = trace(curve_by_df(7, 2), 3);
    CHECK(s.good);
    CHECK(s.aq == 0);
    CHECK(s.status == SplitStatus::inert);

    TraceRecord t = trace(curve_by_df(7, 2), 11);
    CHECK(t.aq == -4);
    CHECK(t.status == SplitStatus::split);

    TraceRecord bad = trace(curve_by_df(11, 1), 3);
    CHECK(!bad.good);

    // Hasse bound on a sample
    for (std::uint64_t q = 2; (q = next_prime(q)) < 300;) {
        TraceRecord rec = trace(curve_by_df(19, 1), q);
        if (!rec.good) continue;
        CHECK(rec.aq * rec.aq <= 4 * ExactInt(static_cast<unsigned long>(q)));
    }
}

TEST_CASE("field discriminants") {
    CHECK(field_disc(3) == -3);
    CHECK(field_disc(4) == -4);
    CHECK(field_disc(7) == -7);
    CHECK(field_disc(8) == -8);
    CHECK(field_disc(163) == -163);
}

TEST_CASE("cm prediction: pinned convention reproduces counts") {
    const auto& c4 = pinned_convention(4);
    const auto& c6 = pinned_convention(6);
    CHECK(c4.survivors >= 1);
    CHECK(c6.survivors >= 1);
    CHECK(cm_prediction(4, 1, 1, 13) == 20);
    CHECK(cm_prediction(3, 1, 1, 7) == 9);
    // spot checks beyond the pinning range
    for (auto [d, p] : {std::pair<long, std::uint64_t>{5, 229}, {-3, 241}, {6, 257}}) {
        if (p % 4 == 1) {
            auto C = reduce(twist(curve_by_df(4, 1), ExactInt(d)), p);
            REQUIRE(C.has_value());
            CHECK(cm_prediction(4, 1, ExactInt(d), p) == count_points_enumerate(*C));
        }
    }
    CHECK_THROWS_AS(cm_prediction(4, 1, 1, 7), std::invalid_argument); // inert p
}

TEST_CASE("quadratic-twist trace relation at j != 0, 1728") {
    // a_q(E^d) = (d|q) a_q(E), 100 random (d, q) pairs across such curves
    std::mt19937_64 rng(13);
    const std::vector<long> ds = {-1, 2, -2, 3, -3, 5, 6, 7};
    int checked = 0;
    while (checked < 100) {
        const auto& E = cm_table()[rng() % 13];
        if (E.nE != 2) continue;
        long d = ds[rng() % ds.size()];
        std::uint64_t q = next_prime(3 + rng() % 500);
        if (d % static_cast<long>(q) == 0) continue;
        auto base = reduce(E, q);
        auto tw = reduce(twist(E, ExactInt(d)), q);
        if (!base || !tw) continue;
        ExactInt aq = ExactInt(static_cast<unsigned long>(q)) + 1 - count_points(*base);
        ExactInt aqd = ExactInt(static_cast<unsigned long>(q)) + 1 - count_points(*tw);
        CHECK(aqd == legendre(ExactInt(d), ExactInt(static_cast<unsigned long>(q))) * aq);
        ++checked;
    }
}

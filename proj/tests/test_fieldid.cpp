#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cmtor/fieldid.hpp"

using namespace cmtor;

namespace {
ZPoly zp(std::initializer_list<long> asc) {
    std::vector<ExactInt> c;
    for (long v : asc) c.emplace_back(v);
    return ZPoly(std::move(c));
}

// oracle: t^n * M(t + 1/t) must vanish mod Phi_p(t)
bool vanishes_on_cyclotomic(const ZPoly& M, std::uint64_t p) {
    int n = M.degree();
    ZPoly acc; // sum_k c_k t^(n-k) (t^2+1)^k
    ZPoly t2p1 = zp({1, 0, 1});
    for (int k = 0; k <= n; ++k) {
        ZPoly term = ZPoly::constant(M[k]);
        for (int i = 0; i < k; ++i) term = term * t2p1;
        acc = acc + term * ZPoly::monomial(1, n - k);
    }
    std::vector<ExactInt> phi(p, ExactInt(1)); // 1 + t + ... + t^(p-1)
    auto [q, r] = ZPoly::divrem_rational(acc, ZPoly(std::move(phi)));
    return r.empty();
}
} // namespace

TEST_CASE("real cyclotomic minimal polynomials") {
    CHECK(real_cyclotomic_minpoly(5) == zp({-1, 1, 1}));
    CHECK(real_cyclotomic_minpoly(7) == zp({-1, -2, 1, 1}));
    CHECK(real_cyclotomic_minpoly(43).degree() == 21);
    for (std::uint64_t p : {5ull, 7ull, 11ull, 19ull, 43ull})
        CHECK(vanishes_on_cyclotomic(real_cyclotomic_minpoly(p), p));
    CHECK_THROWS_AS(real_cyclotomic_minpoly(2), std::invalid_argument);
}

TEST_CASE("fingerprints") {
    Fingerprint one = fingerprint(zp({-1, 1}), 100);
    CHECK(one.patterns.size() == 100);
    for (auto& [q, pat] : one.patterns) CHECK(pat == std::vector<int>{1});

    Fingerprint gauss = fingerprint(zp({1, 0, 1}), 150);
    for (std::uint64_t q : gauss.split_set) CHECK(q % 4 == 1);
    int ones = 0;
    for (auto& [q, pat] : gauss.patterns)
        if (q % 4 == 1) ++ones;
    CHECK(static_cast<int>(gauss.split_set.size()) == ones);

    Fingerprint rc7 = fingerprint(real_cyclotomic_minpoly(7), 150);
    for (std::uint64_t q : rc7.split_set) CHECK((q % 7 == 1 || q % 7 == 6));
    for (auto& [q, pat] : rc7.patterns)
        if (q % 7 == 1 || q % 7 == 6)
            CHECK(std::count(rc7.split_set.begin(), rc7.split_set.end(), q) == 1);
}

TEST_CASE("split-set comparison verdicts") {
    auto same = same_galois_closure(zp({1, 0, 1}), zp({1, 0, 1}), 150);
    CHECK(same.verdict == Verdict::same_splitting_field);

    auto diff = same_galois_closure(zp({1, 0, 1}), zp({-2, 0, 1}), 150);
    CHECK(diff.verdict == Verdict::different);
    REQUIRE(diff.first_disagreement.has_value());
    // explicit disagreeing prime, e.g. q = 7: (-1|7) = -1 but (2|7) = +1
    std::uint64_t q = *diff.first_disagreement;
    CHECK(legendre(-1, ExactInt(static_cast<unsigned long>(q))) !=
          legendre(2, ExactInt(static_cast<unsigned long>(q))));

    // symmetry
    auto ba = same_galois_closure(zp({-2, 0, 1}), zp({1, 0, 1}), 150);
    CHECK(ba.verdict == Verdict::different);
    CHECK(ba.first_disagreement == diff.first_disagreement);

    // x^3+16 and x^3-2 generate the same splitting field
    auto kummer = same_galois_closure(zp({16, 0, 0, 1}), zp({-2, 0, 0, 1}), 200);
    CHECK(kummer.verdict == Verdict::same_splitting_field);
}

TEST_CASE("two torsion fields for selected rows") {
    auto r41 = two_torsion_field(curve_by_df(4, 1));
    CHECK(r41.splitting_degree == 2);
    REQUIRE(r41.quad_sf.has_value());
    CHECK(*r41.quad_sf == -1);
    CHECK(r41.lemma6_match);

    auto r81 = two_torsion_field(curve_by_df(8, 1));
    CHECK(r81.splitting_degree == 2);
    CHECK(*r81.quad_sf == 2);
    CHECK(r81.lemma6_match);

    auto r19 = two_torsion_field(curve_by_df(19, 1));
    CHECK(r19.splitting_degree == 6);
    CHECK(*r19.quad_sf == -19);
    REQUIRE(r19.cubic.has_value());
    CHECK(r19.lemma6_match);

    auto r31 = two_torsion_field(curve_by_df(3, 1));
    CHECK(r31.splitting_degree == 6);
    CHECK(*r31.quad_sf == -3);
    CHECK(r31.lemma6_match);
}

TEST_CASE("xy probe separates y-coordinate fields") {
    // E(4,1), g = x^2 + 1: roots are the abscissas of the 4-torsion points
    // (i, ...) and y-rationality differs from x-rationality
    CurveModel E = curve_by_df(4, 1);
    XYProbe probe = xy_field_probe(E, zp({1, 0, 1}), 150);
    CHECK(probe.primes.size() == 150);
    CHECK(!probe.x_split.empty());
    // x-splitting at q = 1 mod 4 always
    for (std::uint64_t q : probe.x_split) CHECK(q % 4 == 1);
    CHECK(probe.xy_split.size() <= probe.x_split.size());
}

TEST_CASE("three torsion analysis basics") {
    auto r31 = three_torsion_analysis(curve_by_df(3, 1), 400);
    REQUIRE(r31.psi3_closed_form.has_value());
    CHECK(*r31.psi3_closed_form);
    bool found_origin = false;
    for (auto& [x, y] : r31.rational_points)
        if (x == 0 && y == 4) found_origin = true;
    CHECK(found_origin);
    REQUIRE(r31.cubic_field_verdict.has_value());
    CHECK(*r31.cubic_field_verdict == Verdict::same_splitting_field);

    auto r32 = three_torsion_analysis(curve_by_df(3, 2), 400);
    bool found32 = false;
    for (auto& [x, y] : r32.rational_points)
        if (x == 3 && y == 2) found32 = true;
    CHECK(found32);

    auto r33 = three_torsion_analysis(curve_by_df(3, 3), 400);
    bool found33 = false;
    for (auto& [x, y] : r33.rational_points)
        if (x == 12 && y == 4) found33 = true;
    CHECK(found33);
}

TEST_CASE("three torsion: K(sqrt -3) containment for E(4,1)") {
    auto rep = three_torsion_analysis(curve_by_df(4, 1), 600);
    REQUIRE(!rep.nonlinear.empty());
    for (const auto& nl : rep.nonlinear) {
        CHECK(nl.contains_K_sqrt_m3);
        CHECK(nl.primes_checked >= 200);
    }
    REQUIRE(rep.image_order.has_value());
    CHECK((*rep.image_order == 8 || *rep.image_order == 16));
}

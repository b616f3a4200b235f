// Statistical identification of splitting fields through factorization
// patterns mod primes: fingerprints, split-set comparison, torsion fields.
#pragma once

#include "cmtor/divpoly.hpp"
#include "cmtor/factorizer.hpp"

#include <functional>

namespace cmtor {

// minimal polynomial of zeta_p + zeta_p^{-1}, monic of degree (p-1)/2
ZPoly real_cyclotomic_minpoly(std::uint64_t p);

struct Fingerprint {
    std::string source;
    std::vector<std::pair<std::uint64_t, std::vector<int>>> patterns; // good primes only
    std::vector<std::uint64_t> split_set; // primes with all-ones pattern
};

// patterns at the first prime_budget good (odd, unramified) primes
Fingerprint fingerprint(const ZPoly& f, int prime_budget, const std::string& label = "");

enum class Verdict { same_splitting_field, different, inconclusive };

struct FieldVerdict {
    Verdict verdict = Verdict::inconclusive;
    int primes_checked = 0;
    std::optional<std::uint64_t> first_disagreement;
};

// compares complete-splitting sets of two irreducible polynomials over their
// common good primes; statistical, never a proof
FieldVerdict same_galois_closure(const ZPoly& f, const ZPoly& g, int prime_budget);

// For each sampled good prime q records whether g splits completely mod q
// and whether additionally every corresponding y-coordinate is F_q-rational.
struct XYProbe {
    std::vector<std::uint64_t> primes;
    std::vector<std::uint64_t> x_split;
    std::vector<std::uint64_t> xy_split;
};
XYProbe xy_field_probe(const CurveModel& E, const ZPoly& g, int prime_budget);

// a candidate Galois field described by its complete-splitting predicate
struct CandidateField {
    std::string name;
    std::function<bool(std::uint64_t)> splits;
};

CandidateField cand_real_cyclotomic(std::uint64_t p);                      // q = +-1 mod p
CandidateField cand_cyclotomic(std::uint64_t p);                           // q = 1 mod p
CandidateField cand_real_cyclotomic_sqrt(std::uint64_t p, const ExactInt& m); // + (m|q) = 1
CandidateField cand_quad_joint(const std::vector<ExactInt>& ms);           // all (m_i|q) = 1
CandidateField cand_kummer_cbrt(const ExactInt& f);                        // K(cbrt(f))

struct MatchResult {
    bool match = false;
    std::optional<std::uint64_t> witness; // first prime where the sets disagree
};

// xy-split set equals the candidate's split set on every sampled prime
MatchResult probe_matches(const XYProbe& probe, const CandidateField& cand);
// candidate is a subfield: every xy-split prime satisfies the candidate
MatchResult probe_contains_field(const XYProbe& probe, const CandidateField& cand);

struct TwoTorsionReport {
    FactorList factors;      // of Psi_2
    int splitting_degree = 0; // 1, 2, 3 or 6
    std::optional<ExactInt> quad_sf; // squarefree delta, Q(sqrt(delta)) inside the splitting field
    std::optional<ZPoly> cubic;      // irreducible cubic factor, if any
    int rational_roots = 0;
    bool lemma6_match = false;       // comparison against the published 2-torsion table
    std::string lemma6_expected;
};
TwoTorsionReport two_torsion_field(const CurveModel& E, int prime_budget = 200);

struct ThreeTorsionReport {
    FactorList factors; // of Psi_3
    struct NonLinearFactor {
        ZPoly g;
        bool contains_K_sqrt_m3 = false;
        std::optional<std::uint64_t> violation;
        int primes_checked = 0;
    };
    std::vector<NonLinearFactor> nonlinear;
    std::vector<std::pair<ExactRat, ExactRat>> rational_points; // 3-torsion (x, y), y >= 0

    std::optional<Verdict> cubic_field_verdict; // D=3: Q(E[3]) = K(cbrt(f))
    std::optional<bool> psi3_closed_form;       // D=3, f=1: psi_3 = 3x(x^3+64d)
    std::optional<int> image_order;             // D != 3: snapped to 8 or 16
    double image_density = 0.0; // complete xy-splitting density among K-split primes
    int primes_checked = 0;
};
ThreeTorsionReport three_torsion_analysis(const CurveModel& E, int prime_budget = 2500);

// field-identification report in the module's persistence schema:
// {"curve": {...}, "claim": ..., "verdict": ..., "primes_checked": n, "witness": {...}}
std::string fieldid_report_json(const CurveModel& E, const std::string& claim,
                                const std::string& verdict, int primes_checked,
                                const std::string& witness_json);

} // namespace cmtor

// Mod-p Galois image analysis from trace data: character arithmetic, Borel
// structure search, irreducibility witnesses, dihedral statistics, and the
// theorem-level verification drivers.
#pragma once

#include "cmtor/fieldid.hpp"

namespace cmtor {

// A character (Z/N)* -> F_p*, stored as a value table indexed by residues;
// -1 marks non-units.
struct CharacterSpec {
    ExactInt modulus; // N
    ExactInt p;       // values live in F_p*
    std::vector<long> table;
    std::string label;

    static CharacterSpec trivial(const ExactInt& p);

    bool defined_at(std::uint64_t q) const;
    long operator()(std::uint64_t q) const;

    CharacterSpec times(const CharacterSpec& o) const;
    CharacterSpec inverse() const;

    // multiplicative order = degree of the kernel's fixed field
    int order() const;

    // same character after extending both to the lcm modulus
    bool same_as(const CharacterSpec& o) const;
};

// q |-> q^k mod p
CharacterSpec chi_power(const ExactInt& p, long k);
// quadratic character of Q(sqrt(d)), values mod p
CharacterSpec quad_char(const ExactInt& d, const ExactInt& p);
// the two order-6 characters of modulus 28 cutting out Q(zeta7 + zeta7bar, sqrt 7),
// with values in F_p (j in {1, 2} picks the cubic component)
CharacterSpec mu_char(int j, const ExactInt& p);

int order_of_kernel_field(const CharacterSpec& phi);

// unordered pair {phi1, phi2} with phi1*phi2 = chi, canonical order by (order, label)
struct CharPair {
    CharacterSpec a, b;
    bool same_as(const CharPair& o) const;
};

struct Phi1Result {
    std::vector<CharPair> survivors;
    int traces_used = 0;
    std::vector<std::uint64_t> excluded; // bad-model primes
    bool paper_match = false;            // published claim among the survivors
    std::string paper_claim;
};

// Searches all character pairs consistent with a_q = phi1(q) + phi2(q) mod p
// for every sampled good q <= qmax. p must divide D (Borel case).
Phi1Result determine_phi1(const CurveModel& E, std::uint64_t p, std::uint64_t qmax);
// same search over precollected trace records
Phi1Result determine_phi1_with(const CurveModel& E, std::uint64_t p,
                               const std::vector<TraceRecord>& traces);

// good inert q with a_q = 0 and -q a quadratic nonresidue mod p, which rules
// out every character pair and so witnesses irreducibility
std::optional<std::uint64_t> irreducibility_witness(const CurveModel& E, std::uint64_t p,
                                                    std::uint64_t qmax);

enum class ImageClass { borel_nonsplit, dihedral, inconclusive };

struct ImageReport {
    std::string curve;
    std::uint64_t p = 0;
    ImageClass classification = ImageClass::inconclusive;
    std::optional<Phi1Result> phi1;
    std::optional<std::uint64_t> witness;
    double zero_fraction = 0.0;
    int primes_sampled = 0;
    std::vector<std::uint64_t> excluded_primes;
    std::uint64_t seed = 0;

    std::string to_json() const;
};

ImageReport classify_image(const CurveModel& E, std::uint64_t p, std::uint64_t qmax,
                           std::uint64_t seed = 0,
                           const std::vector<TraceRecord>* traces = nullptr);

// ---------------------------------------------------------------------------
// theorem-level drivers
// ---------------------------------------------------------------------------

struct VerifyOptions {
    std::uint64_t qmax = 10000;      // trace sampling bound
    std::uint64_t phi1_qmax = 10000; // Borel search bound
    int prime_budget = 200;          // field-identification budget
    std::vector<long> twists = {1, -1, 2, -3, 5};
    bool include67 = false;
    bool enable163 = false;
    std::uint64_t seed = 0;
    std::string cache_dir;           // trace cache, empty = recompute
    long only_p = 0;                 // restrict L4/T3 to one bad prime, 0 = all
};

struct Claim {
    std::string description;
    bool pass = false;
    std::string witness;
};

struct ReportBundle {
    std::string id;
    std::vector<Claim> claims;
    std::uint64_t seed = 0;

    bool pass() const;
    std::string to_json() const;
};

ReportBundle verify_lemma4(const VerifyOptions& opt);
ReportBundle verify_lemma5(const VerifyOptions& opt);
ReportBundle verify_lemma6(const VerifyOptions& opt);
ReportBundle verify_theorem1(const VerifyOptions& opt);
ReportBundle verify_theorem2(const VerifyOptions& opt);
ReportBundle verify_theorem3(const VerifyOptions& opt);
ReportBundle verify_by_id(const std::string& id, const VerifyOptions& opt);

} // namespace cmtor

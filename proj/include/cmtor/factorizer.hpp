// Complete factorization over Z[x]: squarefree decomposition, reduction
// patterns, Hensel lifting and subset recombination.
#pragma once

#include "cmtor/fppoly.hpp"
#include "cmtor/zpoly.hpp"

namespace cmtor {

struct ZFactor {
    ZPoly poly;
    int mult;
};

// unit * prod(poly^mult) equals the input exactly; factors are primitive with
// positive leading coefficient, sorted by (degree, coefficient sequence)
struct FactorList {
    ExactInt unit;
    std::vector<ZFactor> factors;

    ZPoly multiply_back() const;
};

struct resource_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FactorConfig {
    int degree_ceiling = 2500;   // hard cap for the default suite
    int subset_cap = 12;         // max recombination subset cardinality
    int pattern_primes = 6;      // reduction primes sampled for degree patterns
    int ddf_stage_budget = 48;   // partial-DDF stage bound for pattern primes
    long test_budget = 4000000;  // max recombination candidates tested
    std::uint64_t seed = 0;
};

// Yun decomposition into pairwise-coprime squarefree parts.
FactorList squarefree_decomp(const ZPoly& f);

// Degree multiset of f mod q; empty when the reduction is ramified
// (q divides lc(f) or f mod q is not squarefree).
std::optional<std::vector<int>> pattern_mod(const ZPoly& f, std::uint64_t q);

// Irreducible factorization over Z.
FactorList factor_z(const ZPoly& f, const FactorConfig& cfg = {});

// gcd over Z[x] via small-prime images with exact-division verification
ZPoly gcd_z(const ZPoly& a, const ZPoly& b);

} // namespace cmtor

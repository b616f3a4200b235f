// Dense polynomials over F_p for word-sized odd primes p: arithmetic, gcd,
// distinct-degree / equal-degree factorization (Cantor-Zassenhaus).
#pragma once

#include "cmtor/zpoly.hpp"

#include <cstdint>
#include <random>

namespace cmtor {

// Coefficients in [0, p), ascending degree, trimmed. p < 2^31.
struct FpPoly {
    std::uint64_t p = 0;
    std::vector<std::uint64_t> c;

    FpPoly() = default;
    FpPoly(std::uint64_t mod, std::vector<std::uint64_t> coeffs);

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    std::uint64_t lc() const { return c.back(); }
    void trim();
    bool operator==(const FpPoly& o) const = default;
};

namespace fp {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t p);

FpPoly from_z(const ZPoly& f, std::uint64_t p);
FpPoly constant(std::uint64_t p, std::uint64_t v);
FpPoly x(std::uint64_t p);

FpPoly add(const FpPoly& a, const FpPoly& b);
FpPoly sub(const FpPoly& a, const FpPoly& b);
FpPoly mul(const FpPoly& a, const FpPoly& b);
FpPoly mul_scalar(const FpPoly& a, std::uint64_t k);
// quotient and remainder, b nonzero
std::pair<FpPoly, FpPoly> divrem(const FpPoly& a, const FpPoly& b);
FpPoly rem(const FpPoly& a, const FpPoly& b);
FpPoly make_monic(const FpPoly& a);
FpPoly derivative(const FpPoly& a);
std::uint64_t eval(const FpPoly& a, std::uint64_t x);

// monic gcd; gcd(f, 0) = monic(f)
FpPoly gcd(const FpPoly& a, const FpPoly& b);
// g = gcd(a,b) monic together with s,t such that s*a + t*b = g
struct XGcd { FpPoly g, s, t; };
XGcd xgcd(const FpPoly& a, const FpPoly& b);

// base^e mod f
FpPoly powmod(const FpPoly& base, const ExactInt& e, const FpPoly& f);

// roots in F_p of f (each once; multiplicity ignored), sorted
std::vector<std::uint64_t> roots(const FpPoly& f);

// distinct-degree decomposition of a squarefree monic polynomial:
// list of (degree d, product of all irreducible factors of degree d).
// max_stage bounds the number of Frobenius stages; factors of degree
// larger than max_stage end up in an "unsplit" trailing entry flagged
// by degree 0. max_stage = 0 means run to completion.
struct DDFPart { int d; FpPoly prod; };
std::vector<DDFPart> ddf(const FpPoly& f, int max_stage = 0);

// splits a product of distinct irreducible factors of equal degree d
std::vector<FpPoly> edf(const FpPoly& f, int d, std::mt19937_64& rng);

// full irreducible factorization; input need not be squarefree or monic.
struct FpFactor { FpPoly poly; int mult; };
struct FpFactorization {
    std::uint64_t unit; // leading scalar
    std::vector<FpFactor> factors; // monic, sorted by (degree, coeffs)
};
FpFactorization factor(const FpPoly& f, std::uint64_t seed);

// degree multiset of the irreducible factors of squarefree f, via ddf only
std::vector<int> pattern(const FpPoly& f);

bool is_squarefree(const FpPoly& f);

} // namespace fp
} // namespace cmtor

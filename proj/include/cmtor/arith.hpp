// Exact integer/rational arithmetic and elementary number theory:
// residue symbols, modular square roots, Cornacchia's algorithm.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace cmtor {

// Arbitrary-precision integers and rationals. GMP supplies the representation;
// these aliases are the only spelling used throughout the library.
using ExactInt = mpz_class;
using ExactRat = mpq_class;

inline ExactInt make_int(const std::string& decimal) { return ExactInt(decimal); }
inline std::string to_decimal(const ExactInt& n) { return n.get_str(); }

// n fits in a signed/unsigned 64-bit word?
bool fits_u64(const ExactInt& n);
bool fits_s64(const ExactInt& n);
std::uint64_t to_u64(const ExactInt& n);
std::int64_t to_s64(const ExactInt& n);

ExactInt pow_int(const ExactInt& base, unsigned long e);
ExactInt powmod(const ExactInt& base, const ExactInt& e, const ExactInt& m);
ExactInt gcd(const ExactInt& a, const ExactInt& b);
ExactInt isqrt(const ExactInt& n);
bool is_perfect_square(const ExactInt& n);
ExactInt invmod(const ExactInt& a, const ExactInt& m);

// Deterministic for word-sized inputs, Miller-Rabin w/ 40 rounds above.
bool is_prime(const ExactInt& n);

// Iteration over primes in ascending order.
std::uint64_t next_prime(std::uint64_t n);
std::vector<std::uint64_t> primes_below(std::uint64_t bound);

// Legendre symbol (a|p). p must be an odd prime.
int legendre(const ExactInt& a, const ExactInt& p);

// Jacobi symbol (a|n). n must be odd and positive.
int jacobi(const ExactInt& a, const ExactInt& n);

// Kronecker symbol (a|n), n any nonzero integer (used for quadratic
// characters at q = 2 and for negative discriminants).
int kronecker(const ExactInt& a, const ExactInt& n);

// Square root of a mod odd prime p, if one exists (Tonelli-Shanks).
std::optional<ExactInt> sqrt_mod(const ExactInt& a, const ExactInt& p);

// Solves p = a^2 + D b^2 with a, b > 0 for prime p not dividing 4D.
// Empty when no representation exists.
std::optional<std::pair<ExactInt, ExactInt>> cornacchia(const ExactInt& p, const ExactInt& D);

// Largest e-th-power-free divisor: strips e-th powers of every prime found by
// trial division (sufficient for the twist integers handled here).
ExactInt power_free_part(const ExactInt& d, unsigned e);

// Squarefree kernel of d, sign preserved.
inline ExactInt squarefree_part(const ExactInt& d) { return power_free_part(d, 2); }

// Discriminant of the quadratic field Q(sqrt(d)), d squarefree.
ExactInt quad_field_disc(const ExactInt& d_squarefree);

} // namespace cmtor

#include "cmtor/arith.hpp"

#include <algorithm>

namespace cmtor {

bool fits_u64(const ExactInt& n) { return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }
bool fits_s64(const ExactInt& n) { return mpz_fits_slong_p(n.get_mpz_t()); }

std::uint64_t to_u64(const ExactInt& n) {
    std::uint64_t lo = mpz_getlimbn(n.get_mpz_t(), 0);
    return mpz_size(n.get_mpz_t()) == 0 ? 0 : lo;
}

std::int64_t to_s64(const ExactInt& n) { return mpz_get_si(n.get_mpz_t()); }

ExactInt pow_int(const ExactInt& base, unsigned long e) {
    ExactInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

ExactInt powmod(const ExactInt& base, const ExactInt& e, const ExactInt& m) {
    ExactInt r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

ExactInt gcd(const ExactInt& a, const ExactInt& b) {
    ExactInt r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

ExactInt isqrt(const ExactInt& n) {
    ExactInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_perfect_square(const ExactInt& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t());
}

ExactInt invmod(const ExactInt& a, const ExactInt& m) {
    ExactInt r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
        throw std::invalid_argument("invmod: not invertible");
    return r;
}

bool is_prime(const ExactInt& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

std::uint64_t next_prime(std::uint64_t n) {
    ExactInt r;
    ExactInt m(static_cast<unsigned long>(n));
    mpz_nextprime(r.get_mpz_t(), m.get_mpz_t());
    return to_u64(r);
}

std::vector<std::uint64_t> primes_below(std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    if (bound <= 2) return out;
    std::vector<bool> composite(bound, false);
    for (std::uint64_t i = 2; i < bound; ++i) {
        if (!composite[i]) {
            out.push_back(i);
            for (std::uint64_t j = i * i; j < bound; j += i) composite[j] = true;
        }
    }
    return out;
}

int legendre(const ExactInt& a, const ExactInt& p) {
    if (p <= 2 || !is_prime(p))
        throw std::invalid_argument("legendre: modulus must be an odd prime");
    return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

int jacobi(const ExactInt& a_in, const ExactInt& n_in) {
    if (n_in <= 0 || n_in % 2 == 0)
        throw std::invalid_argument("jacobi: n must be odd and positive");
    // Binary reciprocity, kept independent of mpz_legendre so the two
    // routes cross-check each other in the tests.
    ExactInt a = a_in % n_in;
    if (a < 0) a += n_in;
    ExactInt n = n_in;
    int s = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            unsigned long r = mpz_fdiv_ui(n.get_mpz_t(), 8);
            if (r == 3 || r == 5) s = -s;
        }
        std::swap(a, n);
        if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(n.get_mpz_t(), 4) == 3) s = -s;
        a %= n;
    }
    return n == 1 ? s : 0;
}

int kronecker(const ExactInt& a, const ExactInt& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

std::optional<ExactInt> sqrt_mod(const ExactInt& a_in, const ExactInt& p) {
    ExactInt a = a_in % p;
    if (a < 0) a += p;
    if (a == 0) return ExactInt(0);
    if (legendre(a, p) != 1) return std::nullopt;
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    // Tonelli-Shanks
    ExactInt q = p - 1;
    unsigned long s = 0;
    while (q % 2 == 0) { q /= 2; ++s; }
    ExactInt z = 2;
    while (legendre(z, p) != -1) ++z;
    ExactInt m(static_cast<long>(s));
    ExactInt c = powmod(z, q, p);
    ExactInt t = powmod(a, q, p);
    ExactInt r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        ExactInt t2 = t;
        long i = 0;
        while (t2 != 1) { t2 = t2 * t2 % p; ++i; }
        ExactInt b = c;
        for (long j = 0; j < to_s64(m) - i - 1; ++j) b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return r;
}

std::optional<std::pair<ExactInt, ExactInt>> cornacchia(const ExactInt& p, const ExactInt& D) {
    if (D <= 0) throw std::invalid_argument("cornacchia: D must be positive");
    auto r0 = sqrt_mod((-D) % p + p, p);
    if (!r0) return std::nullopt;
    ExactInt x0 = *r0;
    if (2 * x0 < p) x0 = p - x0; // pick the root in (p/2, p)
    ExactInt a = p, b = x0;
    ExactInt lim = isqrt(p);
    while (b > lim) {
        ExactInt t = a % b;
        a = b;
        b = t;
    }
    ExactInt rem = p - b * b;
    if (rem % D != 0) return std::nullopt;
    ExactInt s = rem / D;
    if (!is_perfect_square(s)) return std::nullopt;
    return std::make_pair(b, isqrt(s));
}

ExactInt power_free_part(const ExactInt& d, unsigned e) {
    if (d == 0) throw std::invalid_argument("power_free_part: zero input");
    ExactInt n = abs(d);
    ExactInt out = d < 0 ? -1 : 1;
    // trial division; twist integers in this project are small
    for (ExactInt q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
        if (n % q != 0) continue;
        unsigned k = 0;
        while (n % q == 0) { n /= q; ++k; }
        for (unsigned i = 0; i < k % e; ++i) out *= q;
    }
    out *= n;
    return out;
}

ExactInt quad_field_disc(const ExactInt& d) {
    unsigned long m = mpz_fdiv_ui(d.get_mpz_t(), 4); // d mod 4 in {0..3}
    return m == 1 ? d : ExactInt(4 * d);
}

} // namespace cmtor

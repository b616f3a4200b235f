#include "cmtor/gaussian.hpp"

namespace cmtor {

static ExactInt mod_pos(const ExactInt& a, const ExactInt& m) {
    ExactInt r = a % m;
    if (r < 0) r += m;
    return r;
}

bool GaussInt::is_primary() const {
    if (mod_pos(re, 2) != 1 || mod_pos(im, 2) != 0) return false;
    return mod_pos(re + im, 4) == 1;
}

bool EisensteinInt::is_primary() const {
    return mod_pos(x, 3) == 2 && mod_pos(y, 3) == 0;
}

const std::vector<GaussInt>& gauss_units() {
    static const std::vector<GaussInt> u = {
        {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return u;
}

const std::vector<EisensteinInt>& eisen_units() {
    static const std::vector<EisensteinInt> u = {
        {1, 0}, {-1, 0}, {0, 1}, {0, -1}, {-1, -1}, {1, 1}};
    return u;
}

GaussInt primary_gauss_prime(const ExactInt& p) {
    if (p % 4 != 1 || !is_prime(p))
        throw std::invalid_argument("primary_gauss_prime: p must be a prime = 1 mod 4");
    auto ab = cornacchia(p, 1);
    if (!ab) throw std::logic_error("primary_gauss_prime: cornacchia failed on split prime");
    const auto& [a, b] = *ab;
    // exactly two of the eight unit-associates/conjugates are primary and
    // they are conjugate; pick the one with positive imaginary part
    for (const auto& z : {GaussInt{a, b}, GaussInt{a, -b}, GaussInt{-a, b}, GaussInt{-a, -b},
                          GaussInt{b, a}, GaussInt{b, -a}, GaussInt{-b, a}, GaussInt{-b, -a}}) {
        if (z.im > 0 && z.is_primary()) return z;
    }
    throw std::logic_error("primary_gauss_prime: no primary associate found");
}

EisensteinInt primary_eisen_prime(const ExactInt& p) {
    if (p % 3 != 1 || !is_prime(p))
        throw std::invalid_argument("primary_eisen_prime: p must be a prime = 1 mod 3");
    auto ab = cornacchia(p, 3); // p = a^2 + 3 b^2, pi = (a+b) + 2b*omega
    if (!ab) throw std::logic_error("primary_eisen_prime: cornacchia failed on split prime");
    EisensteinInt base{ab->first + ab->second, 2 * ab->second};
    for (const auto& u : eisen_units()) {
        EisensteinInt z = u * base;
        for (const auto& w : {z, z.conj()}) {
            if (w.y > 0 && w.is_primary()) return w;
        }
    }
    throw std::logic_error("primary_eisen_prime: no primary associate found");
}

GaussInt quartic_symbol(const ExactInt& d, const GaussInt& pi) {
    ExactInt p = pi.norm();
    if (gcd(d, p) != 1)
        throw std::invalid_argument("quartic_symbol: argument shares a factor with norm(pi)");
    // Z[i]/(pi) = F_p with i |-> u = -re * im^{-1}
    ExactInt u = mod_pos(-pi.re * invmod(pi.im, p), p);
    ExactInt r = powmod(mod_pos(d, p), (p - 1) / 4, p);
    if (r == 1) return {1, 0};
    if (r == p - 1) return {-1, 0};
    if (r == u) return {0, 1};
    if (r == p - u) return {0, -1};
    throw std::logic_error("quartic_symbol: value is not a 4th root of unity");
}

EisensteinInt sextic_symbol(const ExactInt& d, const EisensteinInt& pi) {
    ExactInt p = pi.norm();
    if (p % 3 != 1) throw std::invalid_argument("sextic_symbol: norm(pi) must be 1 mod 3");
    if (gcd(d, p) != 1)
        throw std::invalid_argument("sextic_symbol: argument shares a factor with norm(pi)");
    // Z[omega]/(pi) = F_p with omega |-> w = -x * y^{-1}
    ExactInt w = mod_pos(-pi.x * invmod(pi.y, p), p);
    ExactInt w2 = w * w % p;
    ExactInt r = powmod(mod_pos(d, p), (p - 1) / 6, p);
    if (r == 1) return {1, 0};
    if (r == p - 1) return {-1, 0};
    if (r == w) return {0, 1};
    if (r == p - w) return {0, -1};
    if (r == w2) return {-1, -1};
    if (r == p - w2) return {1, 1};
    throw std::logic_error("sextic_symbol: value is not a 6th root of unity");
}

} // namespace cmtor

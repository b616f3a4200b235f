// Gaussian and Eisenstein integers, primary primes above split rational
// primes, and the quartic/sextic power residue symbols.
#pragma once

#include "cmtor/arith.hpp"

namespace cmtor {

// a + b*i
struct GaussInt {
    ExactInt re, im;

    GaussInt() : re(0), im(0) {}
    GaussInt(ExactInt r, ExactInt i) : re(std::move(r)), im(std::move(i)) {}

    GaussInt operator*(const GaussInt& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussInt operator+(const GaussInt& o) const { return {re + o.re, im + o.im}; }
    GaussInt operator-() const { return {-re, -im}; }
    bool operator==(const GaussInt& o) const = default;

    GaussInt conj() const { return {re, -im}; }
    ExactInt norm() const { return re * re + im * im; }

    // primary normalization: congruent to 1 mod (1+i)^3, i.e. re odd,
    // im even, re + im = 1 mod 4
    bool is_primary() const;
};

// x + y*omega with omega^2 + omega + 1 = 0
struct EisensteinInt {
    ExactInt x, y;

    EisensteinInt() : x(0), y(0) {}
    EisensteinInt(ExactInt a, ExactInt b) : x(std::move(a)), y(std::move(b)) {}

    EisensteinInt operator*(const EisensteinInt& o) const {
        return {x * o.x - y * o.y, x * o.y + y * o.x - y * o.y};
    }
    EisensteinInt operator+(const EisensteinInt& o) const { return {x + o.x, y + o.y}; }
    EisensteinInt operator-() const { return {-x, -y}; }
    bool operator==(const EisensteinInt& o) const = default;

    EisensteinInt conj() const { return {x - y, -y}; }
    ExactInt norm() const { return x * x - x * y + y * y; }

    // primary normalization: congruent to 2 mod 3, i.e. x = 2 mod 3, y = 0 mod 3
    bool is_primary() const;

    // trace of x + y*omega as an algebraic number: 2x - y
    ExactInt trace() const { return 2 * x - y; }
};

const std::vector<GaussInt>& gauss_units();      // 1, i, -1, -i
const std::vector<EisensteinInt>& eisen_units(); // 1, -1, omega, -omega, omega^2, -omega^2

// Primary Gaussian prime above p = 1 mod 4 with positive imaginary part.
GaussInt primary_gauss_prime(const ExactInt& p);

// Primary Eisenstein prime above p = 1 mod 3 with positive omega part.
EisensteinInt primary_eisen_prime(const ExactInt& p);

// Quartic residue symbol chi_4(d) = d^((p-1)/4) mod pi, pi primary,
// p = norm(pi). Result is one of {1, i, -1, -i}. Throws when p | d.
GaussInt quartic_symbol(const ExactInt& d, const GaussInt& pi);

// Sextic residue symbol chi_6(d) = d^((p-1)/6) mod pi, p = norm(pi) = 1 mod 3.
EisensteinInt sextic_symbol(const ExactInt& d, const EisensteinInt& pi);

} // namespace cmtor

// Dense univariate polynomials with exact integer coefficients.
#pragma once

#include "cmtor/arith.hpp"

#include <span>

namespace cmtor {

class ZPoly {
public:
    ZPoly() = default;
    explicit ZPoly(std::vector<ExactInt> coeffs) : c_(std::move(coeffs)) { trim(); }
    static ZPoly constant(ExactInt v) { return ZPoly(std::vector<ExactInt>{std::move(v)}); }
    static ZPoly monomial(const ExactInt& v, std::size_t deg);
    static ZPoly x() { return monomial(1, 1); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    const ExactInt& lc() const;
    const ExactInt& operator[](std::size_t i) const;
    std::span<const ExactInt> coeffs() const { return c_; }

    ZPoly operator+(const ZPoly& o) const;
    ZPoly operator-(const ZPoly& o) const;
    ZPoly operator-() const;
    ZPoly operator*(const ZPoly& o) const;
    ZPoly operator*(const ExactInt& k) const;
    bool operator==(const ZPoly& o) const = default;

    ZPoly derivative() const;

    ExactRat eval(const ExactRat& x) const;
    ExactInt eval_int(const ExactInt& x) const;

    // content carries the sign of the leading coefficient, so the primitive
    // part always has a positive leading coefficient
    std::pair<ExactInt, ZPoly> content_primitive() const;

    // exact division; empty when g does not divide *this over Z
    std::optional<ZPoly> divide_exact(const ZPoly& g) const;

    // f = q*g + r over the rationals, deg r < deg g
    static std::pair<std::vector<ExactRat>, std::vector<ExactRat>>
    divrem_rational(const ZPoly& f, const ZPoly& g);

    // squared 2-norm of the coefficient vector
    ExactInt norm2_sq() const;
    // max |coefficient|
    ExactInt height() const;

    std::string to_string(const std::string& var = "x") const;

    std::string to_json() const;                       // {"var":"x","coeffs":[...]}
    static ZPoly from_json(const std::string& text);

    // schoolbook product, exposed as a cross-check oracle for the fast path
    static ZPoly mul_schoolbook(const ZPoly& a, const ZPoly& b);

private:
    void trim();
    static ZPoly mul_kronecker(const ZPoly& a, const ZPoly& b);

    std::vector<ExactInt> c_; // ascending degree, trimmed
};

} // namespace cmtor

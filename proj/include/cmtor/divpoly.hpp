// Division polynomials psi_m / Psi_m via the standard recurrences, with all
// even powers of y eliminated through y^2 = x^3 + ax + b.
#pragma once

#include "cmtor/curves.hpp"
#include "cmtor/zpoly.hpp"

#include <map>

namespace cmtor {

// psi_m = xpart * y when has_y_factor (m even), else psi_m = xpart
struct DivPoly {
    int m = 0;
    ZPoly xpart;
    bool has_y_factor = false;
};

// Memoizes psi over one curve. Not safe for concurrent mutation; distinct
// curves can be processed in parallel.
class DivPolyEngine {
public:
    explicit DivPolyEngine(const CurveModel& E);

    const CurveModel& curve() const { return E_; }

    DivPoly psi(int m);

    // the x-polynomial Psi_m: psi_m for m odd, psi_m/psi_2 for even m > 2,
    // and x^3 + ax + b for m = 2
    ZPoly big_psi(int m);

private:
    const ZPoly& xp(int m);

    CurveModel E_;
    ExactInt a_, b_;
    ZPoly cubic_; // x^3 + ax + b
    std::map<int, ZPoly> memo_;
};

// Psi_m of the d-twist computed from Psi_m of E through the substitution
// identity Psi_m^d(dx) = d^deg * Psi_m(x). Only valid for j(E) != 0, 1728.
ZPoly twist_divpoly(const CurveModel& E, const ExactInt& d, int m);

} // namespace cmtor

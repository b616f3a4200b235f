// CM curve models, twists, reduction mod primes, point counting, Frobenius
// traces, and the CM point-count prediction via power residue symbols.
#pragma once

#include "cmtor/gaussian.hpp"

#include <array>

namespace cmtor {

struct CmData {
    int D = 0;       // K = Q(sqrt(-D))
    int f = 0;       // conductor of the order Z + f*O_K
    ExactInt d = 1;  // twist class, reduced mod n(E)-th powers
};

// y^2 = x^3 + a x + b over Q
struct CurveModel {
    ExactRat a, b;
    std::optional<CmData> cm;
    int nE = 2; // 2, 4 or 6 according to j not in {0,1728}, j=1728, j=0

    std::string label() const;
    bool is_integral() const;
    ExactInt ia() const; // integer a (throws if not integral)
    ExactInt ib() const;
};

// the 13 curves of the rational CM classes, twist d = 1
const std::vector<CurveModel>& cm_table();
CurveModel curve_by_df(int D, int f);

CurveModel twist(const CurveModel& E, const ExactInt& d);
ExactRat j_invariant(const CurveModel& E);

// reduced curve over F_q, q < 2^31
struct CurveFp {
    std::uint64_t q = 0, a = 0, b = 0;
};

// empty when a coefficient denominator vanishes mod q or the reduced cubic
// is singular (bad model reduction; the curve itself may still have good
// reduction at q, see trace sampling policy)
std::optional<CurveFp> reduce(const CurveModel& E, std::uint64_t q);

struct AffinePointFp {
    std::uint64_t x = 0, y = 0;
    bool inf = true;

    bool operator==(const AffinePointFp& o) const = default;
};

bool on_curve(const CurveFp& E, const AffinePointFp& P);
AffinePointFp neg(const CurveFp& E, const AffinePointFp& P);
AffinePointFp add(const CurveFp& E, const AffinePointFp& P, const AffinePointFp& Q);
AffinePointFp smul(const CurveFp& E, const AffinePointFp& P, const ExactInt& k);

// exact group order: enumeration for q <= 10^4, otherwise baby-step/giant-step
// over the Hasse interval with enumeration fallback on ambiguity
ExactInt count_points(const CurveFp& E);
ExactInt count_points_enumerate(const CurveFp& E);
ExactInt count_points_bsgs(const CurveFp& E);

enum class SplitStatus { split, inert, ramified };

struct TraceRecord {
    std::uint64_t q = 0;
    ExactInt aq;
    SplitStatus status = SplitStatus::ramified;
    bool good = false; // false: excluded (bad model reduction at q)
};

// field discriminant of K = Q(sqrt(-D))
ExactInt field_disc(int D);

TraceRecord trace(const CurveModel& E, std::uint64_t q);

// ---------------------------------------------------------------------------
// CM point-count prediction (split p only). The unit normalization entering
// the formula is pinned empirically against brute-force counts and asserted
// once per process; see pinned_convention().
// ---------------------------------------------------------------------------

struct CmConvention {
    int unit;        // index into gauss_units()/eisen_units()
    bool conj_pi;    // use conjugate of the primary prime
    bool conj_sym;   // use conjugate of the residue symbol
    long arg_mul;    // symbol argument is arg_mul * d
    int survivors;   // how many equivalent conventions survived pinning
    std::string describe() const;
};

// pins (and caches) the convention for nE in {4, 6} against all split
// good p < 200 and d in {+-1, +-2, +-3, 5, 6}
const CmConvention& pinned_convention(int nE);

// predicted |E^d_{D,f}(F_p)| for split p of good reduction, gcd(d,p)=1
ExactInt cm_prediction(int D, int f, const ExactInt& d, std::uint64_t p);

} // namespace cmtor

#include "cmtor/divpoly.hpp"

namespace cmtor {

static CurveModel integralize(const CurveModel& E) {
    if (E.is_integral()) return E;
    // (x,y) -> (u^2 x, u^3 y) clears denominators with u = den(a)*den(b)
    ExactInt u = E.a.get_den() * E.b.get_den();
    CurveModel R = E;
    R.a = E.a * ExactRat(pow_int(u, 4));
    R.b = E.b * ExactRat(pow_int(u, 6));
    R.a.canonicalize();
    R.b.canonicalize();
    return R;
}

DivPolyEngine::DivPolyEngine(const CurveModel& E) : E_(integralize(E)) {
    a_ = E_.ia();
    b_ = E_.ib();
    cubic_ = ZPoly({b_, a_, ExactInt(0), ExactInt(1)});
}

const ZPoly& DivPolyEngine::xp(int m) {
    auto it = memo_.find(m);
    if (it != memo_.end()) return it->second;
    ZPoly r;
    const ExactInt& a = a_;
    const ExactInt& b = b_;
    if (m == 0) {
        r = ZPoly{};
    } else if (m == 1) {
        r = ZPoly::constant(1);
    } else if (m == 2) {
        r = ZPoly::constant(2);
    } else if (m == 3) {
        r = ZPoly({-a * a, 12 * b, 6 * a, ExactInt(0), ExactInt(3)});
    } else if (m == 4) {
        r = ZPoly({-4 * a * a * a - 32 * b * b, -16 * a * b, -20 * a * a, 80 * b,
                   20 * a, ExactInt(0), ExactInt(4)});
    } else if (m % 2 == 1) {
        int k = (m - 1) / 2;
        ZPoly t1 = xp(k + 2) * xp(k) * xp(k) * xp(k);
        ZPoly t2 = xp(k - 1) * xp(k + 1) * xp(k + 1) * xp(k + 1);
        ZPoly c2 = cubic_ * cubic_; // y^4 from the even-index cube
        r = (k % 2 == 0) ? c2 * t1 - t2 : t1 - c2 * t2;
    } else {
        int k = m / 2;
        ZPoly A = xp(k + 2) * xp(k - 1) * xp(k - 1);
        ZPoly B = xp(k - 2) * xp(k + 1) * xp(k + 1);
        ZPoly prod = xp(k) * (A - B);
        auto half = prod.divide_exact(ZPoly::constant(2));
        if (!half) throw std::logic_error("divpoly: even recurrence not divisible by 2");
        r = std::move(*half);
    }
    return memo_.emplace(m, std::move(r)).first->second;
}

DivPoly DivPolyEngine::psi(int m) {
    if (m < 1) throw std::invalid_argument("psi: m must be positive");
    return {m, xp(m), m % 2 == 0};
}

ZPoly DivPolyEngine::big_psi(int m) {
    if (m < 2) throw std::invalid_argument("big_psi: m must be >= 2");
    if (m == 2) return cubic_;
    if (m % 2 == 1) return xp(m);
    auto r = xp(m).divide_exact(ZPoly::constant(2));
    if (!r) throw std::logic_error("big_psi: psi_m not divisible by psi_2 factor");
    return *r;
}

ZPoly twist_divpoly(const CurveModel& E, const ExactInt& d_in, int m) {
    ExactRat j = j_invariant(E);
    if (j == 0 || j == 1728)
        throw std::invalid_argument("twist_divpoly: special j-invariant, use psi on the twisted model");
    ExactInt d = power_free_part(d_in, E.nE); // same class representative as twist()
    DivPolyEngine eng(E);
    ZPoly psi = eng.big_psi(m);
    const int N = psi.degree();
    // Psi^d(x) = d^N * Psi(x/d): coefficient i picks up d^(N-i)
    std::vector<ExactInt> c(N + 1);
    ExactInt pw(1);
    for (int i = N; i >= 0; --i) {
        c[i] = psi[i] * pw;
        pw *= d;
    }
    return ZPoly(std::move(c));
}

} // namespace cmtor

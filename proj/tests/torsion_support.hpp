// Test-only oracle: m-torsion abscissas computed with an independent group
// law over F_{q^2}, never through the division-polynomial path it checks.
#pragma once

#include "cmtor/curves.hpp"

#include <set>

namespace oracle {

using cmtor::fp::invmod_u64;
using cmtor::fp::mulmod;
using cmtor::fp::powmod_u64;

// a + b*s with s^2 = t, t a fixed nonresidue mod q
struct Fq2 {
    std::uint64_t a = 0, b = 0;
    bool operator==(const Fq2&) const = default;
};

struct Fq2Ctx {
    std::uint64_t q, t;

    Fq2 add(Fq2 x, Fq2 y) const { return {(x.a + y.a) % q, (x.b + y.b) % q}; }
    Fq2 sub(Fq2 x, Fq2 y) const { return {(x.a + q - y.a) % q, (x.b + q - y.b) % q}; }
    Fq2 mul(Fq2 x, Fq2 y) const {
        std::uint64_t a = (mulmod(x.a, y.a, q) + mulmod(t, mulmod(x.b, y.b, q), q)) % q;
        std::uint64_t b = (mulmod(x.a, y.b, q) + mulmod(x.b, y.a, q)) % q;
        return {a, b};
    }
    Fq2 scalar(std::uint64_t c, Fq2 x) const { return {mulmod(c, x.a, q), mulmod(c, x.b, q)}; }
    Fq2 inv(Fq2 x) const {
        // 1/(a+bs) = (a-bs)/(a^2 - t b^2)
        std::uint64_t n = (mulmod(x.a, x.a, q) + q - mulmod(t, mulmod(x.b, x.b, q), q)) % q;
        std::uint64_t ni = invmod_u64(n, q);
        return {mulmod(x.a, ni, q), mulmod((q - x.b) % q, ni, q)};
    }
    bool is_zero(Fq2 x) const { return x.a == 0 && x.b == 0; }
};

struct Pt {
    Fq2 x, y;
    bool inf = true;
};

inline Pt pt_add(const Fq2Ctx& F, std::uint64_t a4, Pt P, Pt Q) {
    if (P.inf) return Q;
    if (Q.inf) return P;
    Fq2 lambda;
    if (P.x == Q.x) {
        if (F.is_zero(F.add(P.y, Q.y))) return {};
        Fq2 num = F.add(F.scalar(3, F.mul(P.x, P.x)), Fq2{a4 % F.q, 0});
        lambda = F.mul(num, F.inv(F.scalar(2, P.y)));
    } else {
        lambda = F.mul(F.sub(Q.y, P.y), F.inv(F.sub(Q.x, P.x)));
    }
    Fq2 x3 = F.sub(F.sub(F.mul(lambda, lambda), P.x), Q.x);
    Fq2 y3 = F.sub(F.mul(lambda, F.sub(P.x, x3)), P.y);
    return {x3, y3, false};
}

inline Pt pt_smul(const Fq2Ctx& F, std::uint64_t a4, Pt P, int m) {
    Pt acc;
    while (m > 0) {
        if (m & 1) acc = pt_add(F, a4, acc, P);
        P = pt_add(F, a4, P, P);
        m >>= 1;
    }
    return acc;
}

// abscissas x0 in F_q of points with [m]P = O; for even m > 2 the 2-torsion
// abscissas are excluded (they belong to the psi_2 factor), for m = 2 only
// they are returned
inline std::set<std::uint64_t> torsion_abscissas(const cmtor::CurveFp& E, int m) {
    const std::uint64_t q = E.q;
    std::uint64_t t = 2;
    while (powmod_u64(t, (q - 1) / 2, q) != q - 1) ++t;
    Fq2Ctx F{q, t};
    std::set<std::uint64_t> out;
    for (std::uint64_t x0 = 0; x0 < q; ++x0) {
        std::uint64_t fx = (mulmod(mulmod(x0, x0, q), x0, q) + mulmod(E.a, x0, q) + E.b) % q;
        bool two_torsion = fx == 0;
        if (m == 2) {
            if (two_torsion) out.insert(x0);
            continue;
        }
        if (two_torsion) {
            if (m % 2 == 1 || m == 2) continue; // [m]P != O for odd m
            continue;                            // even m > 2: psi_2 factor removed
        }
        Fq2 y;
        if (powmod_u64(fx, (q - 1) / 2, q) == 1) {
            auto r = cmtor::sqrt_mod(cmtor::ExactInt(static_cast<unsigned long>(fx)),
                                     cmtor::ExactInt(static_cast<unsigned long>(q)));
            y = {cmtor::to_u64(*r), 0};
        } else {
            // fx = t * c^2
            std::uint64_t c2 = mulmod(fx, invmod_u64(t, q), q);
            auto r = cmtor::sqrt_mod(cmtor::ExactInt(static_cast<unsigned long>(c2)),
                                     cmtor::ExactInt(static_cast<unsigned long>(q)));
            y = {0, cmtor::to_u64(*r)};
        }
        Pt P{{x0, 0}, y, false};
        if (pt_smul(F, E.a, P, m).inf) out.insert(x0);
    }
    return out;
}

} // namespace oracle

#include "cmtor/factorizer.hpp"

#include <algorithm>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cmtor {

// ---------------------------------------------------------------------------
// arithmetic mod M (M = q^k) on ZPoly-style coefficient vectors
// ---------------------------------------------------------------------------
namespace {

using MVec = std::vector<ExactInt>;

void mtrim(MVec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

MVec mreduce(const ZPoly& f, const ExactInt& M) {
    MVec r(f.coeffs().begin(), f.coeffs().end());
    for (auto& x : r) {
        x %= M;
        if (x < 0) x += M;
    }
    mtrim(r);
    return r;
}

ZPoly to_zpoly(const MVec& a) { return ZPoly(a); }

MVec mmul(const MVec& a, const MVec& b, const ExactInt& M) {
    ZPoly prod = to_zpoly(a) * to_zpoly(b);
    return mreduce(prod, M);
}

MVec madd(const MVec& a, const MVec& b, const ExactInt& M) {
    MVec r(std::max(a.size(), b.size()), ExactInt(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) {
        r[i] += b[i];
        if (r[i] >= M) r[i] -= M;
    }
    mtrim(r);
    return r;
}

MVec msub(const MVec& a, const MVec& b, const ExactInt& M) {
    MVec r(std::max(a.size(), b.size()), ExactInt(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) {
        r[i] -= b[i];
        if (r[i] < 0) r[i] += M;
    }
    mtrim(r);
    return r;
}

// divrem by a monic divisor, coefficients in Z/M
std::pair<MVec, MVec> mdivrem_monic(const MVec& a, const MVec& b, const ExactInt& M) {
    MVec r = a;
    int db = static_cast<int>(b.size()) - 1;
    if (static_cast<int>(r.size()) - 1 < db) return {MVec{}, r};
    MVec q(r.size() - db, ExactInt(0));
    for (int d = static_cast<int>(r.size()) - 1; d >= db; --d) {
        ExactInt top = r[d];
        if (top == 0) continue;
        q[d - db] = top;
        for (int i = 0; i <= db; ++i) {
            ExactInt& t = r[d - db + i];
            t = (t - top * b[i]) % M;
            if (t < 0) t += M;
        }
    }
    mtrim(q);
    mtrim(r);
    return {q, r};
}

ExactInt balanced(const ExactInt& x, const ExactInt& M) {
    return 2 * x >= M ? ExactInt(x - M) : x;
}

ZPoly balanced_poly(const MVec& a, const ExactInt& M) {
    std::vector<ExactInt> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = balanced(a[i], M);
    return ZPoly(std::move(r));
}

MVec from_fp(const FpPoly& f) {
    MVec r(f.c.size());
    for (std::size_t i = 0; i < f.c.size(); ++i) r[i] = ExactInt(static_cast<unsigned long>(f.c[i]));
    return r;
}

// ---------------------------------------------------------------------------
// quadratic Hensel lifting of a monic factorization, binary factor tree
// ---------------------------------------------------------------------------

struct TwoLift {
    MVec g, h, s, t; // f = g*h, s*g + t*h = 1, h monic, g monic
};

// one quadratic step: everything valid mod m comes out valid mod m2
void hensel_step(const MVec& f, TwoLift& L, const ExactInt& m2) {
    MVec e = msub(mreduce(to_zpoly(f), m2), mmul(L.g, L.h, m2), m2);
    auto [q, r] = mdivrem_monic(mmul(L.s, e, m2), L.h, m2);
    MVec gstar = madd(madd(L.g, mmul(L.t, e, m2), m2), mmul(q, L.g, m2), m2);
    MVec hstar = madd(L.h, r, m2);
    MVec one{ExactInt(1)};
    MVec b = msub(madd(mmul(L.s, gstar, m2), mmul(L.t, hstar, m2), m2), one, m2);
    auto [c, d] = mdivrem_monic(mmul(L.s, b, m2), hstar, m2);
    MVec sstar = msub(L.s, d, m2);
    MVec tstar = msub(msub(L.t, mmul(L.t, b, m2), m2), mmul(c, gstar, m2), m2);
    L.g = std::move(gstar);
    L.h = std::move(hstar);
    L.s = std::move(sstar);
    L.t = std::move(tstar);
}

// lifts the monic factorization F = prod(parts) from mod q to mod q^K
void hensel_tree(const MVec& F, std::vector<FpPoly> parts, std::uint64_t q,
                 const ExactInt& M, unsigned K, std::vector<ZPoly>& out) {
    if (parts.size() == 1) {
        out.push_back(balanced_poly(mreduce(to_zpoly(F), M), M));
        return;
    }
    std::size_t mid = parts.size() / 2;
    FpPoly G = fp::constant(q, 1), H = fp::constant(q, 1);
    for (std::size_t i = 0; i < mid; ++i) G = fp::mul(G, parts[i]);
    for (std::size_t i = mid; i < parts.size(); ++i) H = fp::mul(H, parts[i]);
    auto bez = fp::xgcd(G, H);
    if (bez.g.degree() != 0)
        throw std::logic_error("hensel_tree: factors not coprime mod q");

    TwoLift L{from_fp(G), from_fp(H), from_fp(bez.s), from_fp(bez.t)};
    ExactInt m(static_cast<unsigned long>(q));
    unsigned k = 1;
    while (k < K) {
        unsigned k2 = std::min(2 * k, K);
        ExactInt m2 = pow_int(ExactInt(static_cast<unsigned long>(q)), k2);
        hensel_step(F, L, m2);
        m = m2;
        k = k2;
    }
    std::vector<FpPoly> left(parts.begin(), parts.begin() + mid);
    std::vector<FpPoly> right(parts.begin() + mid, parts.end());
    hensel_tree(L.g, std::move(left), q, M, K, out);
    hensel_tree(L.h, std::move(right), q, M, K, out);
}

} // namespace

// ---------------------------------------------------------------------------
// public surface
// ---------------------------------------------------------------------------

ZPoly FactorList::multiply_back() const {
    ZPoly acc = ZPoly::constant(unit);
    for (const auto& [poly, mult] : factors)
        for (int i = 0; i < mult; ++i) acc = acc * poly;
    return acc;
}

static bool factor_less(const ZFactor& a, const ZFactor& b) {
    if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
    for (int i = 0; i <= a.poly.degree(); ++i) {
        int c = cmp(a.poly[i], b.poly[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

ZPoly gcd_z(const ZPoly& a_in, const ZPoly& b_in) {
    if (a_in.is_zero()) return b_in.is_zero() ? ZPoly{} : b_in.content_primitive().second;
    if (b_in.is_zero()) return a_in.content_primitive().second;
    ZPoly a = a_in.content_primitive().second;
    ZPoly b = b_in.content_primitive().second;
    ExactInt lcg = gcd(a.lc(), b.lc());

    std::uint64_t q = 1 << 20;
    int best_deg = std::min(a.degree(), b.degree()) + 1;
    ExactInt crt_mod = 1;
    std::vector<ExactInt> crt; // scaled gcd coefficients mod crt_mod
    for (int tries = 0; tries < 200; ++tries) {
        q = next_prime(q);
        if (a.lc() % q == 0 || b.lc() % q == 0) continue;
        FpPoly ga = fp::from_z(a, q), gb = fp::from_z(b, q);
        FpPoly g = fp::gcd(ga, gb);
        if (g.degree() == 0) return ZPoly::constant(1);
        if (g.degree() > best_deg) continue; // unlucky prime
        FpPoly scaled = fp::mul_scalar(g, mpz_fdiv_ui(lcg.get_mpz_t(), q));
        if (g.degree() < best_deg) {
            best_deg = g.degree();
            crt_mod = 1;
            crt.assign(best_deg + 1, ExactInt(0));
        }
        // CRT combine
        ExactInt qz(static_cast<unsigned long>(q));
        if (crt_mod == 1) {
            for (int i = 0; i <= best_deg; ++i)
                crt[i] = ExactInt(static_cast<unsigned long>(i <= scaled.degree() ? scaled.c[i] : 0));
            crt_mod = qz;
        } else {
            ExactInt inv = invmod(crt_mod % qz, qz);
            for (int i = 0; i <= best_deg; ++i) {
                ExactInt ci(static_cast<unsigned long>(i <= scaled.degree() ? scaled.c[i] : 0));
                ExactInt diff = ((ci - crt[i]) % qz + qz) % qz;
                crt[i] = crt[i] + crt_mod * (diff * inv % qz);
            }
            crt_mod *= qz;
        }
        // candidate with balanced coefficients
        std::vector<ExactInt> cand(best_deg + 1);
        for (int i = 0; i <= best_deg; ++i) cand[i] = balanced(crt[i] % crt_mod, crt_mod);
        ZPoly g_cand = ZPoly(std::move(cand));
        if (g_cand.is_zero()) continue;
        g_cand = g_cand.content_primitive().second;
        if (a.divide_exact(g_cand) && b.divide_exact(g_cand)) return g_cand;
    }
    throw std::logic_error("gcd_z: did not stabilize");
}

FactorList squarefree_decomp(const ZPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("squarefree_decomp: zero polynomial");
    auto [content, prim] = f.content_primitive();
    FactorList out;
    out.unit = content;
    if (prim.degree() == 0) return out;

    // Yun's algorithm
    ZPoly fprime = prim.derivative();
    ZPoly g = gcd_z(prim, fprime);
    ZPoly w = *prim.divide_exact(g);
    ZPoly y = *fprime.divide_exact(g);
    ZPoly z = y - w.derivative();
    int i = 1;
    while (w.degree() > 0) {
        ZPoly h = gcd_z(w, z);
        if (h.degree() > 0) out.factors.push_back({h, i});
        w = *w.divide_exact(h);
        y = *z.divide_exact(h);
        z = y - w.derivative();
        ++i;
    }
    std::sort(out.factors.begin(), out.factors.end(), factor_less);
    return out;
}

std::optional<std::vector<int>> pattern_mod(const ZPoly& f, std::uint64_t q) {
    if (f.is_zero() || f.degree() < 1) throw std::invalid_argument("pattern_mod: need degree >= 1");
    if (f.lc() % ExactInt(static_cast<unsigned long>(q)) == 0) return std::nullopt;
    FpPoly fq = fp::from_z(f, q);
    if (!fp::is_squarefree(fq)) return std::nullopt;
    return fp::pattern(fq);
}

namespace {

// feasible degrees of proper divisors, as a bitset over [0, half]
using DegreeSet = std::vector<bool>;

DegreeSet sums_from_pattern(const std::vector<fp::DDFPart>& parts, int half, int stage_budget) {
    DegreeSet s(half + 1, false);
    s[0] = true;
    for (const auto& part : parts) {
        if (part.d == 0) {
            // unsplit residue: may contribute any degree in (stage_budget, deg]
            DegreeSet ns = s;
            for (int base = 0; base <= half; ++base) {
                if (!s[base]) continue;
                int lo = base + stage_budget + 1;
                int hi = std::min(half, base + part.prod.degree());
                for (int v = lo; v <= hi; ++v) ns[v] = true;
            }
            s = std::move(ns);
            continue;
        }
        int cnt = part.prod.degree() / part.d;
        for (int rep = 0; rep < cnt; ++rep) {
            for (int v = half - part.d; v >= 0; --v)
                if (s[v]) s[v + part.d] = true;
        }
    }
    return s;
}

struct Recombiner {
    const ExactInt& M;
    ExactInt L;                 // leading coefficient of the current cofactor
    ZPoly h;                    // current cofactor (primitive)
    std::vector<ZPoly> lifted;  // monic mod M
    std::vector<int> alive;     // indices into lifted
    const DegreeSet& feasible;
    long budget;
    int cap;
    std::vector<ZFactor>& out;

    ExactInt trail(int idx) const { return lifted[idx][0]; }

    bool test_subset(const std::vector<int>& pick) {
        if (--budget < 0)
            throw resource_limit_error("factor_z: recombination budget exhausted");
        // cheap trailing-coefficient divisibility test first
        ExactInt t = L % M;
        for (int i : pick) t = t * trail(i) % M;
        t = balanced((t % M + M) % M, M);
        if (t == 0) return false;
        ExactInt rhs = L * h[0];
        if (rhs % t != 0) return false;

        MVec prod{L % M};
        for (int i : pick) prod = mmul(prod, mreduce(lifted[i], M), M);
        ZPoly cand = balanced_poly(prod, M);
        if (cand.is_zero()) return false;
        cand = cand.content_primitive().second;
        auto quo = h.divide_exact(cand);
        if (!quo) return false;
        out.push_back({cand, 1});
        h = quo->content_primitive().second;
        L = h.is_zero() ? ExactInt(1) : h.lc();
        std::vector<int> rest;
        for (int i : alive)
            if (std::find(pick.begin(), pick.end(), i) == pick.end()) rest.push_back(i);
        alive = std::move(rest);
        return true;
    }

    // enumerate subsets of cardinality c whose degrees land in the feasible set
    bool search(std::vector<int>& pick, std::size_t from, int c, int deg) {
        if (c == 0) {
            if (deg <= 0 || deg >= static_cast<int>(feasible.size()) || !feasible[deg]) return false;
            return test_subset(pick);
        }
        for (std::size_t k = from; k + c <= alive.size(); ++k) {
            int idx = alive[k];
            int d2 = deg + lifted[idx].degree();
            if (d2 >= static_cast<int>(feasible.size())) continue;
            pick.push_back(idx);
            if (search(pick, k + 1, c - 1, d2)) return true;
            pick.pop_back();
        }
        return false;
    }

    void run() {
        int c = 1;
        while (!h.is_zero() && h.degree() > 0) {
            int half = static_cast<int>(alive.size()) / 2;
            if (c > std::min(cap, half)) break;
            std::vector<int> pick;
            if (search(pick, 0, c, 0)) continue; // found one; retry same cardinality
            ++c;
        }
        if (h.degree() > 0) out.push_back({h, 1});
    }
};

std::vector<ZFactor> factor_squarefree_primitive(const ZPoly& f_in, const FactorConfig& cfg) {
    std::vector<ZFactor> out;
    ZPoly f = f_in;
    if (f.degree() == 0) return out;
    if (f.degree() > cfg.degree_ceiling)
        throw resource_limit_error("factor_z: degree exceeds configured ceiling");
    if (f[0] == 0) { // squarefree, so at most one factor of x
        out.push_back({ZPoly::x(), 1});
        f = *f.divide_exact(ZPoly::x());
    }
    if (f.degree() == 0) return out;
    if (f.degree() == 1) {
        out.push_back({f, 1});
        return out;
    }
    const int n = f.degree();
    const int half = n / 2;

    // --- reduction primes and degree patterns ---
    struct PrimePattern {
        std::uint64_t q;
        std::vector<fp::DDFPart> parts;
        bool full;
        int count;
    };
    std::vector<std::uint64_t> cand_primes;
    std::uint64_t q = std::max<std::uint64_t>(3, n / 10);
    while (cand_primes.size() < static_cast<std::size_t>(cfg.pattern_primes)) {
        q = next_prime(q);
        if (f.lc() % ExactInt(static_cast<unsigned long>(q)) == 0) continue;
        if (!fp::is_squarefree(fp::from_z(f, q))) continue;
        cand_primes.push_back(q);
    }
    const bool small = n <= 260;
    const int stage_budget = small ? 0 : cfg.ddf_stage_budget;
    std::vector<PrimePattern> pats(cand_primes.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t i = 0; i < cand_primes.size(); ++i) {
        auto parts = fp::ddf(fp::from_z(f, cand_primes[i]), stage_budget);
        int count = 0;
        bool full = true;
        for (const auto& part : parts) {
            if (part.d == 0) { full = false; ++count; }
            else count += part.prod.degree() / part.d;
        }
        pats[i] = {cand_primes[i], std::move(parts), full, count};
    }
    // complete the two most promising patterns if the partial pass truncated
    if (!small) {
        std::vector<std::size_t> order(pats.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return pats[a].count < pats[b].count;
        });
        std::size_t complete_n = std::min<std::size_t>(2, order.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (std::size_t j = 0; j < complete_n; ++j) {
            auto& pp = pats[order[j]];
            if (!pp.full) {
                pp.parts = fp::ddf(fp::from_z(f, pp.q), 0);
                pp.full = true;
                pp.count = 0;
                for (const auto& part : pp.parts) pp.count += part.prod.degree() / part.d;
            }
        }
    }

    // intersect feasible proper-divisor degrees across primes
    DegreeSet feasible(half + 1, true);
    feasible[0] = false;
    for (const auto& pp : pats) {
        DegreeSet s = sums_from_pattern(pp.parts, half, pp.full ? n : stage_budget);
        for (int i = 1; i <= half; ++i)
            feasible[i] = feasible[i] && s[i];
    }
    if (std::none_of(feasible.begin() + 1, feasible.end(), [](bool b) { return b; })) {
        out.push_back({f, 1}); // certified irreducible by pattern intersection
        return out;
    }

    // --- choose the lifting prime: fully factored pattern, fewest factors ---
    const PrimePattern* best = nullptr;
    for (const auto& pp : pats)
        if (pp.full && (!best || pp.count < best->count)) best = &pp;
    if (!best) throw std::logic_error("factor_z: no fully factored reduction prime");
    if (best->count == 1) {
        out.push_back({f, 1});
        return out;
    }
    std::mt19937_64 rng(cfg.seed ^ 0xD1B54A32D192ED03ull);
    std::vector<FpPoly> local;
    for (const auto& part : best->parts)
        for (auto& irr : fp::edf(part.prod, part.d, rng)) local.push_back(std::move(irr));
    std::sort(local.begin(), local.end(), [](const FpPoly& a, const FpPoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.c < b.c;
    });

    // --- Hensel lift to past the coefficient bound: |f|_2 * 2^n * |lc| ---
    ExactInt bound = isqrt(f.norm2_sq()) + 1;
    bound = bound * pow_int(ExactInt(2), n) * abs(f.lc());
    ExactInt M(1);
    unsigned K = 0;
    while (M <= 2 * bound) { M *= ExactInt(static_cast<unsigned long>(best->q)); ++K; }

    std::vector<ZPoly> lifted;
    {
        // lift the monic factorization of monic(f); recombination reinstates lc
        ExactInt lcinv = invmod(f.lc() % M, M);
        MVec F = mreduce(f * lcinv, M);
        hensel_tree(F, local, best->q, M, K, lifted);
        for (auto& g : lifted) g = balanced_poly(mreduce(g, M), M);
        // hensel output is balanced; store in monic residue form
    }

    Recombiner rec{M, f.lc(), f, lifted, {}, feasible, cfg.test_budget, cfg.subset_cap, out};
    rec.alive.resize(lifted.size());
    for (std::size_t i = 0; i < lifted.size(); ++i) rec.alive[i] = static_cast<int>(i);
    rec.run();
    return out;
}

} // namespace

FactorList factor_z(const ZPoly& f, const FactorConfig& cfg) {
    FactorList sf = squarefree_decomp(f);
    FactorList out;
    out.unit = sf.unit;
    for (const auto& [part, mult] : sf.factors) {
        for (auto& irr : factor_squarefree_primitive(part, cfg))
            out.factors.push_back({std::move(irr.poly), mult});
    }
    // merge equal factors, then canonical sort
    std::sort(out.factors.begin(), out.factors.end(), factor_less);
    std::vector<ZFactor> merged;
    for (auto& zf : out.factors) {
        if (!merged.empty() && merged.back().poly == zf.poly) merged.back().mult += zf.mult;
        else merged.push_back(std::move(zf));
    }
    out.factors = std::move(merged);
    return out;
}

} // namespace cmtor

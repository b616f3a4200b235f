#include "cmtor/curves.hpp"

#include "cmtor/fppoly.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace cmtor {

std::string CurveModel::label() const {
    std::ostringstream os;
    if (cm) {
        os << "E(" << cm->D << "," << cm->f << ")";
        if (cm->d != 1) os << "^" << cm->d.get_str();
    } else {
        os << "y^2=x^3";
        if (a != 0) os << "+(" << a.get_str() << ")x";
        if (b != 0) os << "+(" << b.get_str() << ")";
    }
    return os.str();
}

bool CurveModel::is_integral() const {
    return a.get_den() == 1 && b.get_den() == 1;
}

ExactInt CurveModel::ia() const {
    if (a.get_den() != 1) throw std::invalid_argument("curve model is not integral");
    return a.get_num();
}

ExactInt CurveModel::ib() const {
    if (b.get_den() != 1) throw std::invalid_argument("curve model is not integral");
    return b.get_num();
}

static CurveModel make_cm(int D, int f, long a, long b) {
    CurveModel E;
    E.a = ExactRat(a);
    E.b = ExactRat(b);
    E.cm = CmData{D, f, ExactInt(1)};
    E.nE = (D == 3 && f == 1) ? 6 : (D == 4 && f == 1) ? 4 : 2;
    return E;
}

const std::vector<CurveModel>& cm_table() {
    static const std::vector<CurveModel> table = {
        make_cm(3, 1, 0, 16),
        make_cm(3, 2, -15, 22),
        make_cm(3, 3, -480, 4048),
        make_cm(4, 1, 1, 0),
        make_cm(4, 2, -11, 14),
        make_cm(7, 1, -2835, -71442),
        make_cm(7, 2, -595, 5586),
        make_cm(8, 1, -4320, 96768),
        make_cm(11, 1, -9504, 365904),
        make_cm(19, 1, -608, 5776),
        make_cm(43, 1, -13760, 621264),
        make_cm(67, 1, -117920, 15585808),
        make_cm(163, 1, -34790720, 78984748304L),
    };
    return table;
}

CurveModel curve_by_df(int D, int f) {
    for (const auto& E : cm_table())
        if (E.cm->D == D && E.cm->f == f) return E;
    throw std::invalid_argument("unknown CM curve (D,f)");
}

CurveModel twist(const CurveModel& E, const ExactInt& d_in) {
    if (d_in == 0) throw std::invalid_argument("twist: d must be nonzero");
    ExactInt d = power_free_part(d_in, E.nE);
    CurveModel T = E;
    if (E.nE == 4) {
        T.a = E.a * ExactRat(d);
    } else if (E.nE == 6) {
        T.b = E.b * ExactRat(d);
    } else {
        T.a = E.a * ExactRat(d * d);
        T.b = E.b * ExactRat(d * d * d);
    }
    if (T.cm) T.cm->d = power_free_part(T.cm->d * d, E.nE);
    return T;
}

ExactRat j_invariant(const CurveModel& E) {
    ExactRat a3 = E.a * E.a * E.a * 4;
    ExactRat den = a3 + E.b * E.b * 27;
    if (den == 0) throw std::invalid_argument("j_invariant: singular model");
    ExactRat j = ExactRat(1728) * a3 / den;
    j.canonicalize();
    return j;
}

std::optional<CurveFp> reduce(const CurveModel& E, std::uint64_t q) {
    if (q == 2) return std::nullopt; // y^2 = f(x) is never smooth in char 2
    ExactInt qz(static_cast<unsigned long>(q));
    if (E.a.get_den() % qz == 0 || E.b.get_den() % qz == 0) return std::nullopt;
    auto red = [&](const ExactRat& r) {
        ExactInt num = r.get_num() % qz;
        if (num < 0) num += qz;
        ExactInt den = r.get_den() % qz;
        return to_u64(num * invmod(den, qz) % qz);
    };
    CurveFp C{q, red(E.a), red(E.b)};
    // singular iff 4a^3 + 27b^2 = 0 mod q
    using fp::mulmod;
    std::uint64_t a3 = mulmod(mulmod(C.a, C.a, q), C.a, q);
    std::uint64_t b2 = mulmod(C.b, C.b, q);
    if ((mulmod(4, a3, q) + mulmod(27, b2, q)) % q == 0) return std::nullopt;
    return C;
}

bool on_curve(const CurveFp& E, const AffinePointFp& P) {
    if (P.inf) return true;
    using fp::mulmod;
    std::uint64_t lhs = mulmod(P.y, P.y, E.q);
    std::uint64_t rhs = (mulmod(mulmod(P.x, P.x, E.q), P.x, E.q) + mulmod(E.a, P.x, E.q) + E.b) % E.q;
    return lhs == rhs;
}

AffinePointFp neg(const CurveFp& E, const AffinePointFp& P) {
    if (P.inf) return P;
    return {P.x, P.y ? E.q - P.y : 0, false};
}

AffinePointFp add(const CurveFp& E, const AffinePointFp& P, const AffinePointFp& Q) {
    using fp::mulmod;
    using fp::invmod_u64;
    if (P.inf) return Q;
    if (Q.inf) return P;
    const std::uint64_t q = E.q;
    std::uint64_t lambda;
    if (P.x == Q.x) {
        if ((P.y + Q.y) % q == 0) return {};  // P + (-P) = O
        // tangent
        std::uint64_t num = (mulmod(3, mulmod(P.x, P.x, q), q) + E.a) % q;
        lambda = mulmod(num, invmod_u64((2 * P.y) % q, q), q);
    } else {
        std::uint64_t dx = (Q.x + q - P.x) % q;
        std::uint64_t dy = (Q.y + q - P.y) % q;
        lambda = mulmod(dy, invmod_u64(dx, q), q);
    }
    std::uint64_t x3 = (mulmod(lambda, lambda, q) + 2 * q - P.x - Q.x) % q;
    std::uint64_t y3 = (mulmod(lambda, (P.x + q - x3) % q, q) + q - P.y) % q;
    return {x3, y3, false};
}

AffinePointFp smul(const CurveFp& E, const AffinePointFp& P, const ExactInt& k_in) {
    ExactInt k = k_in;
    AffinePointFp base = P;
    if (k < 0) { k = -k; base = neg(E, base); }
    AffinePointFp acc; // O
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc = add(E, acc, base);
        base = add(E, base, base);
        k >>= 1;
    }
    return acc;
}

ExactInt count_points_enumerate(const CurveFp& E) {
    const std::uint64_t q = E.q;
    std::vector<std::int8_t> chi(q, -1);
    chi[0] = 0;
    for (std::uint64_t y = 1; y <= q / 2; ++y) chi[fp::mulmod(y, y, q)] = 1;
    std::int64_t total = 1; // point at infinity
    for (std::uint64_t x = 0; x < q; ++x) {
        std::uint64_t fx = (fp::mulmod(fp::mulmod(x, x, q), x, q) + fp::mulmod(E.a, x, q) + E.b) % q;
        total += 1 + chi[fx];
    }
    return ExactInt(static_cast<long>(total));
}

namespace {

std::uint64_t splitmix(std::uint64_t& s) {
    s += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// all m in [lo, hi] with m*P = O
std::vector<std::uint64_t> order_multiples_in_interval(const CurveFp& E, const AffinePointFp& P,
                                                       std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t w = hi - lo + 1;
    std::uint64_t bs = 1;
    while (bs * bs < w) ++bs;
    // baby table: j*P for j in [0, bs)
    std::unordered_map<std::uint64_t, std::vector<std::pair<std::uint64_t, std::uint64_t>>> baby;
    AffinePointFp jp; // O
    for (std::uint64_t j = 0; j < bs; ++j) {
        if (jp.inf && j > 0) {
            // ord(P) = j fits inside a baby block: list its multiples directly
            std::vector<std::uint64_t> out;
            for (std::uint64_t m = ((lo + j - 1) / j) * j; m <= hi; m += j) out.push_back(m);
            return out;
        }
        if (!jp.inf) baby[jp.x].push_back({j, jp.y});
        jp = add(E, jp, P);
    }
    AffinePointFp G = smul(E, P, ExactInt(static_cast<unsigned long>(bs)));
    AffinePointFp Qi = smul(E, P, ExactInt(static_cast<unsigned long>(lo)));
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 0; lo + i * bs <= hi; ++i) {
        // m = lo + i*bs + j with Qi + j*P = O, i.e. Qi = -(j*P)
        if (Qi.inf) {
            std::uint64_t m = lo + i * bs;
            if (m <= hi) out.push_back(m);
        }
        auto it = baby.find(Qi.x);
        if (!Qi.inf && it != baby.end()) {
            for (auto& [j, y] : it->second) {
                if (j == 0) continue; // j=0 is the infinity case above
                if ((Qi.y + y) % E.q == 0) {
                    std::uint64_t m = lo + i * bs + j;
                    if (m <= hi) out.push_back(m);
                }
            }
        }
        Qi = add(E, Qi, G);
    }
    std::sort(out.begin(), out.end());
    return out;
}

AffinePointFp random_point(const CurveFp& E, std::uint64_t& state) {
    while (true) {
        std::uint64_t x = splitmix(state) % E.q;
        std::uint64_t fx = (fp::mulmod(fp::mulmod(x, x, E.q), x, E.q) + fp::mulmod(E.a, x, E.q) + E.b) % E.q;
        ExactInt y = 0;
        if (fx != 0) {
            auto r = sqrt_mod(ExactInt(static_cast<unsigned long>(fx)), ExactInt(static_cast<unsigned long>(E.q)));
            if (!r) continue;
            y = *r;
        }
        return {x, to_u64(y), false};
    }
}

} // namespace

ExactInt count_points(const CurveFp& E) {
    if (E.q <= 10000) return count_points_enumerate(E);
    return count_points_bsgs(E);
}

ExactInt count_points_bsgs(const CurveFp& E) {
    const std::uint64_t q = E.q;
    std::uint64_t s = to_u64(isqrt(ExactInt(4) * static_cast<unsigned long>(q))) + 1;
    std::uint64_t lo = q + 1 - s, hi = q + 1 + s;
    std::uint64_t state = q * 0x5851F42D4C957F2Dull + 12345;
    std::vector<std::uint64_t> cands;
    for (int round = 0; round < 12; ++round) {
        AffinePointFp P = random_point(E, state);
        if (round == 0) {
            cands = order_multiples_in_interval(E, P, lo, hi);
        } else {
            std::vector<std::uint64_t> keep;
            for (auto m : cands)
                if (smul(E, P, ExactInt(static_cast<unsigned long>(m))).inf) keep.push_back(m);
            cands = std::move(keep);
        }
        if (cands.size() == 1) return ExactInt(static_cast<unsigned long>(cands[0]));
        if (cands.empty()) break; // should not happen; fall through to enumeration
    }
    if (E.q <= 4000000) return count_points_enumerate(E);
    throw std::runtime_error("count_points_bsgs: ambiguous group order beyond enumeration range");
}

ExactInt field_disc(int D) {
    return quad_field_disc(squarefree_part(ExactInt(-D)));
}

TraceRecord trace(const CurveModel& E, std::uint64_t q) {
    if (!E.cm) throw std::invalid_argument("trace: curve lacks CM metadata");
    TraceRecord rec;
    rec.q = q;
    ExactInt disc = field_disc(E.cm->D);
    int kr = kronecker(disc, ExactInt(static_cast<unsigned long>(q)));
    rec.status = kr == 1 ? SplitStatus::split : kr == -1 ? SplitStatus::inert : SplitStatus::ramified;
    auto C = reduce(E, q);
    if (!C) return rec; // good=false: excluded from sampling
    rec.good = true;
    rec.aq = ExactInt(static_cast<unsigned long>(q)) + 1 - count_points(*C);
    return rec;
}

// ---------------------------------------------------------------------------
// CM prediction
// ---------------------------------------------------------------------------

std::string CmConvention::describe() const {
    std::ostringstream os;
    os << "unit#" << unit << (conj_pi ? " conj(pi)" : " pi")
       << (conj_sym ? " conj(sym)" : " sym") << " arg=" << arg_mul << "*d"
       << " survivors=" << survivors;
    return os.str();
}

namespace {

ExactInt trace_term_gauss(const CmConvention& cv, const GaussInt& pi, const ExactInt& d) {
    GaussInt sym = quartic_symbol(d * cv.arg_mul, pi);
    if (cv.conj_sym) sym = sym.conj();
    GaussInt P = cv.conj_pi ? pi.conj() : pi;
    GaussInt T = gauss_units()[cv.unit] * P * sym;
    return 2 * T.re;
}

ExactInt trace_term_eisen(const CmConvention& cv, const EisensteinInt& pi, const ExactInt& d) {
    EisensteinInt sym = sextic_symbol(d * cv.arg_mul, pi);
    if (cv.conj_sym) sym = sym.conj();
    EisensteinInt P = cv.conj_pi ? pi.conj() : pi;
    EisensteinInt T = eisen_units()[cv.unit] * P * sym;
    return T.trace();
}

CmConvention pin_convention(int nE) {
    const int nunits = nE == 4 ? 4 : 6;
    const std::vector<long> arg_muls = {1, -1, 2, -2, 4, -4, 8, -8, 16, -16};
    struct Cand { int u; bool cpi, csym; long m; };
    std::vector<Cand> cands;
    for (int u = 0; u < nunits; ++u)
        for (int cpi = 0; cpi < 2; ++cpi)
            for (int csym = 0; csym < 2; ++csym)
                for (long m : arg_muls) cands.push_back({u, cpi != 0, csym != 0, m});

    const std::vector<long> ds = {1, -1, 2, -2, 3, -3, 5, 6};
    const CurveModel base = curve_by_df(nE == 4 ? 4 : 3, 1);
    for (std::uint64_t p = 5; p < 200; p = next_prime(p)) {
        if (nE == 4 ? (p % 4 != 1) : (p % 3 != 1)) continue;
        ExactInt pz(static_cast<unsigned long>(p));
        GaussInt gpi;
        EisensteinInt epi;
        if (nE == 4) gpi = primary_gauss_prime(pz); else epi = primary_eisen_prime(pz);
        for (long d : ds) {
            if (d % static_cast<long>(p) == 0) continue;
            auto C = reduce(twist(base, ExactInt(d)), p);
            if (!C) continue;
            ExactInt target = count_points_enumerate(*C) - pz - 1;
            std::vector<Cand> keep;
            for (const auto& c : cands) {
                CmConvention cv{c.u, c.cpi, c.csym, c.m, 0};
                ExactInt dd(d);
                if (gcd(dd * c.m, pz) != 1) continue;
                ExactInt tr = nE == 4 ? trace_term_gauss(cv, gpi, dd) : trace_term_eisen(cv, epi, dd);
                if (tr == target) keep.push_back(c);
            }
            cands = std::move(keep);
            if (cands.empty())
                throw std::logic_error("pin_convention: no unit normalization matches brute-force counts");
        }
    }
    CmConvention cv{cands[0].u, cands[0].cpi, cands[0].csym, cands[0].m,
                    static_cast<int>(cands.size())};
    return cv;
}

} // namespace

const CmConvention& pinned_convention(int nE) {
    if (nE != 4 && nE != 6) throw std::invalid_argument("pinned_convention: nE must be 4 or 6");
    static const CmConvention c4 = pin_convention(4);
    static const CmConvention c6 = pin_convention(6);
    return nE == 4 ? c4 : c6;
}

ExactInt cm_prediction(int D, int f, const ExactInt& d, std::uint64_t p) {
    CurveModel base = curve_by_df(D, f);
    ExactInt pz(static_cast<unsigned long>(p));
    ExactInt disc = field_disc(D);
    if (kronecker(disc, pz) != 1) throw std::invalid_argument("cm_prediction: p must split in K");
    if (gcd(d, pz) != 1) throw std::invalid_argument("cm_prediction: p divides d");

    if (base.nE == 2) {
        // quadratic case: a_p(E^d) = (d|p) * a_p(E)
        auto C = reduce(base, p);
        if (!C) throw std::invalid_argument("cm_prediction: bad model reduction");
        ExactInt ap = pz + 1 - count_points(*C);
        return pz + 1 - legendre(d, pz) * ap;
    }
    if (base.nE == 4) {
        const auto& cv = pinned_convention(4);
        return pz + 1 + trace_term_gauss(cv, primary_gauss_prime(pz), d);
    }
    const auto& cv = pinned_convention(6);
    return pz + 1 + trace_term_eisen(cv, primary_eisen_prime(pz), d);
}

} // namespace cmtor

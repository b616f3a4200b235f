#include "cmtor/fppoly.hpp"

#include <algorithm>

namespace cmtor {

FpPoly::FpPoly(std::uint64_t mod, std::vector<std::uint64_t> coeffs)
    : p(mod), c(std::move(coeffs)) {
    if (p >= (1ull << 31)) throw std::invalid_argument("FpPoly: modulus must be < 2^31");
    for (auto& x : c) x %= p;
    trim();
}

void FpPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

namespace fp {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

namespace {

// Barrett reduction for p < 2^31: every product fits a 64-bit word and the
// division by p becomes a high multiplication
struct Barrett {
    std::uint64_t p, m; // m = floor(2^64 / p)
    explicit Barrett(std::uint64_t mod)
        : p(mod), m(static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << 64) / mod)) {}
    std::uint64_t reduce(std::uint64_t x) const {
        std::uint64_t q = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(x) * m) >> 64);
        std::uint64_t r = x - q * p;
        if (r >= p) r -= p;
        return r;
    }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return reduce(a * b); }
};

} // namespace

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t p) {
    return powmod_u64(a, p - 2, p);
}

FpPoly from_z(const ZPoly& f, std::uint64_t p) {
    if (p >= (1ull << 31)) throw std::invalid_argument("FpPoly: modulus must be < 2^31");
    FpPoly r;
    r.p = p;
    r.c.resize(f.degree() + 1);
    for (int i = 0; i <= f.degree(); ++i)
        r.c[i] = mpz_fdiv_ui(f[i].get_mpz_t(), p);
    r.trim();
    return r;
}

FpPoly constant(std::uint64_t p, std::uint64_t v) {
    FpPoly r;
    r.p = p;
    if (v % p) r.c = {v % p};
    return r;
}

FpPoly x(std::uint64_t p) {
    FpPoly r;
    r.p = p;
    r.c = {0, 1};
    return r;
}

FpPoly add(const FpPoly& a, const FpPoly& b) {
    FpPoly r;
    r.p = a.p;
    r.c.assign(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = (r.c[i] + b.c[i]) % a.p;
    r.trim();
    return r;
}

FpPoly sub(const FpPoly& a, const FpPoly& b) {
    FpPoly r;
    r.p = a.p;
    r.c.assign(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = (r.c[i] + a.p - b.c[i]) % a.p;
    r.trim();
    return r;
}

FpPoly mul(const FpPoly& a, const FpPoly& b) {
    FpPoly r;
    r.p = a.p;
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    const std::uint64_t p = a.p;
    // p < 2^31, so a full row of products fits an unsigned 128-bit accumulator
    std::vector<unsigned __int128> acc(r.c.size(), 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        const std::uint64_t ai = a.c[i];
        if (!ai) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            acc[i + j] += static_cast<unsigned __int128>(ai) * b.c[j];
    }
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = static_cast<std::uint64_t>(acc[i] % p);
    r.trim();
    return r;
}

FpPoly mul_scalar(const FpPoly& a, std::uint64_t k) {
    FpPoly r = a;
    k %= a.p;
    for (auto& x : r.c) x = mulmod(x, k, a.p);
    r.trim();
    return r;
}

std::pair<FpPoly, FpPoly> divrem(const FpPoly& a, const FpPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("FpPoly divrem: zero divisor");
    if (a.p != b.p) throw std::invalid_argument("FpPoly divrem: modulus mismatch");
    FpPoly q, r = a;
    q.p = a.p;
    const int db = b.degree();
    if (a.degree() < db) return {q, r};
    q.c.assign(a.degree() - db + 1, 0);
    const std::uint64_t p = a.p;
    const Barrett bar(p);
    const std::uint64_t inv = invmod_u64(b.lc(), p);
    for (int d = r.degree(); d >= db; --d) {
        if (static_cast<int>(r.c.size()) - 1 < d) continue;
        std::uint64_t top = r.c[d];
        if (!top) continue;
        std::uint64_t f = bar.mul(top, inv);
        q.c[d - db] = f;
        for (int i = 0; i <= db; ++i) {
            std::uint64_t s = r.c[d - db + i] + p - bar.mul(f, b.c[i]);
            if (s >= p) s -= p;
            r.c[d - db + i] = s;
        }
    }
    r.trim();
    q.trim();
    return {q, r};
}

FpPoly rem(const FpPoly& a, const FpPoly& b) { return divrem(a, b).second; }

FpPoly make_monic(const FpPoly& a) {
    if (a.is_zero()) return a;
    return mul_scalar(a, invmod_u64(a.lc(), a.p));
}

FpPoly derivative(const FpPoly& a) {
    FpPoly r;
    r.p = a.p;
    if (a.c.size() <= 1) return r;
    r.c.resize(a.c.size() - 1);
    for (std::size_t i = 1; i < a.c.size(); ++i) r.c[i - 1] = mulmod(a.c[i], i % a.p, a.p);
    r.trim();
    return r;
}

std::uint64_t eval(const FpPoly& a, std::uint64_t x) {
    std::uint64_t acc = 0;
    for (std::size_t i = a.c.size(); i-- > 0;) acc = (mulmod(acc, x, a.p) + a.c[i]) % a.p;
    return acc;
}

FpPoly gcd(const FpPoly& a, const FpPoly& b) {
    FpPoly f = a, g = b;
    while (!g.is_zero()) {
        FpPoly r = rem(f, g);
        f = std::move(g);
        g = std::move(r);
    }
    return make_monic(f);
}

XGcd xgcd(const FpPoly& a, const FpPoly& b) {
    const std::uint64_t p = a.p;
    FpPoly r0 = a, r1 = b;
    FpPoly s0 = constant(p, 1), s1 = constant(p, 0);
    FpPoly t0 = constant(p, 0), t1 = constant(p, 1);
    while (!r1.is_zero()) {
        auto [q, r] = divrem(r0, r1);
        r0 = std::move(r1); r1 = std::move(r);
        FpPoly s2 = sub(s0, mul(q, s1));
        s0 = std::move(s1); s1 = std::move(s2);
        FpPoly t2 = sub(t0, mul(q, t1));
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    std::uint64_t inv = invmod_u64(r0.lc(), p);
    return {mul_scalar(r0, inv), mul_scalar(s0, inv), mul_scalar(t0, inv)};
}

FpPoly powmod(const FpPoly& base, const ExactInt& e_in, const FpPoly& f) {
    FpPoly result = constant(f.p, 1);
    FpPoly b = rem(base, f);
    ExactInt e = e_in;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = rem(mul(result, b), f);
        b = rem(mul(b, b), f);
        e >>= 1;
    }
    return result;
}

std::vector<std::uint64_t> roots(const FpPoly& f) {
    // direct scan; the moduli used for root extraction in this project are small
    std::vector<std::uint64_t> out;
    if (f.degree() < 1) return out;
    for (std::uint64_t r = 0; r < f.p; ++r) {
        if (eval(f, r) == 0) out.push_back(r);
        if (static_cast<int>(out.size()) == f.degree()) break;
    }
    return out;
}

std::vector<DDFPart> ddf(const FpPoly& f_in, int max_stage) {
    std::vector<DDFPart> parts;
    FpPoly f = make_monic(f_in);
    const std::uint64_t p = f.p;
    FpPoly h = powmod(x(p), ExactInt(static_cast<unsigned long>(p)), f); // x^p mod f
    int i = 1;
    while (2 * i <= f.degree()) {
        if (max_stage > 0 && i > max_stage) {
            parts.push_back({0, f}); // unsplit residue, min factor degree > max_stage
            return parts;
        }
        FpPoly g = gcd(sub(h, x(p)), f);
        if (g.degree() > 0) {
            parts.push_back({i, g});
            f = divrem(f, g).first;
            h = rem(h, f);
        }
        ++i;
        if (2 * i <= f.degree())
            h = powmod(h, ExactInt(static_cast<unsigned long>(p)), f);
    }
    if (f.degree() > 0) parts.push_back({f.degree(), f});
    return parts;
}

std::vector<FpPoly> edf(const FpPoly& f, int d, std::mt19937_64& rng) {
    std::vector<FpPoly> out;
    if (f.degree() == d) { out.push_back(make_monic(f)); return out; }
    const std::uint64_t p = f.p;
    ExactInt e = (pow_int(ExactInt(static_cast<unsigned long>(p)), d) - 1) / 2;
    std::vector<FpPoly> stack{make_monic(f)};
    while (!stack.empty()) {
        FpPoly g = stack.back();
        stack.pop_back();
        if (g.degree() == d) { out.push_back(g); continue; }
        while (true) {
            FpPoly a;
            a.p = p;
            a.c.resize(g.degree());
            for (auto& ci : a.c) ci = rng() % p;
            a.trim();
            if (a.degree() < 1) continue;
            FpPoly h = sub(powmod(a, e, g), constant(p, 1));
            FpPoly w = gcd(h, g);
            if (w.degree() > 0 && w.degree() < g.degree()) {
                stack.push_back(w);
                stack.push_back(divrem(g, w).first);
                break;
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const FpPoly& a, const FpPoly& b) {
        return a.c < b.c;
    });
    return out;
}

bool is_squarefree(const FpPoly& f) {
    FpPoly d = derivative(f);
    if (d.is_zero()) return f.degree() == 0;
    return gcd(f, d).degree() == 0;
}

FpFactorization factor(const FpPoly& f_in, std::uint64_t seed) {
    if (f_in.is_zero()) throw std::invalid_argument("factor: zero polynomial");
    if (f_in.p % 2 == 0) throw std::invalid_argument("factor: modulus must be odd");
    FpFactorization out;
    out.unit = f_in.lc();
    std::mt19937_64 rng(seed ^ 0x9E3779B97F4A7C15ull);
    const std::uint64_t p = f_in.p;

    // multiplicity via repeated gcd with derivative; handles x^p = (x)^p blocks
    struct Item { FpPoly poly; int mult; };
    std::vector<Item> work{{make_monic(f_in), 1}};
    std::vector<Item> squarefree;
    while (!work.empty()) {
        auto [g, m] = work.back();
        work.pop_back();
        if (g.degree() <= 0) continue;
        FpPoly d = derivative(g);
        if (d.is_zero()) {
            // g = h(x^p) = h(x)^p
            FpPoly h;
            h.p = p;
            h.c.resize(g.degree() / p + 1);
            for (std::size_t i = 0; i < h.c.size(); ++i) h.c[i] = g.c[i * p];
            work.push_back({h, m * static_cast<int>(p)});
            continue;
        }
        FpPoly w = gcd(g, d);
        if (w.degree() == 0) { squarefree.push_back({g, m}); continue; }
        FpPoly sf = divrem(g, w).first; // product of distinct factors of g
        squarefree.push_back({sf, m});
        // remaining part: g / sf carries multiplicities above m; recurse
        work.push_back({divrem(g, sf).first, m});
    }

    // map factor -> total multiplicity
    std::vector<FpFactor> acc;
    for (auto& [g, m] : squarefree) {
        for (auto& part : ddf(g)) {
            for (auto& irr : edf(part.prod, part.d, rng)) {
                bool found = false;
                for (auto& e : acc)
                    if (e.poly == irr) { e.mult += m; found = true; break; }
                if (!found) acc.push_back({irr, m});
            }
        }
    }
    std::sort(acc.begin(), acc.end(), [](const FpFactor& a, const FpFactor& b) {
        if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
        return a.poly.c < b.poly.c;
    });
    out.factors = std::move(acc);
    return out;
}

std::vector<int> pattern(const FpPoly& f) {
    std::vector<int> out;
    for (auto& part : ddf(make_monic(f))) {
        int cnt = part.prod.degree() / part.d;
        for (int i = 0; i < cnt; ++i) out.push_back(part.d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace fp
} // namespace cmtor

#include "cmtor/zpoly.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace cmtor {

using json = nlohmann::ordered_json;

void ZPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

ZPoly ZPoly::monomial(const ExactInt& v, std::size_t deg) {
    std::vector<ExactInt> c(deg + 1, ExactInt(0));
    c[deg] = v;
    return ZPoly(std::move(c));
}

const ExactInt& ZPoly::lc() const {
    if (c_.empty()) throw std::logic_error("lc of zero polynomial");
    return c_.back();
}

const ExactInt& ZPoly::operator[](std::size_t i) const {
    static const ExactInt zero(0);
    return i < c_.size() ? c_[i] : zero;
}

ZPoly ZPoly::operator+(const ZPoly& o) const {
    std::vector<ExactInt> r(std::max(c_.size(), o.c_.size()), ExactInt(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return ZPoly(std::move(r));
}

ZPoly ZPoly::operator-(const ZPoly& o) const {
    std::vector<ExactInt> r(std::max(c_.size(), o.c_.size()), ExactInt(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return ZPoly(std::move(r));
}

ZPoly ZPoly::operator-() const {
    std::vector<ExactInt> r(c_);
    for (auto& x : r) x = -x;
    return ZPoly(std::move(r));
}

ZPoly ZPoly::operator*(const ExactInt& k) const {
    if (k == 0) return {};
    std::vector<ExactInt> r(c_);
    for (auto& x : r) x *= k;
    return ZPoly(std::move(r));
}

ZPoly ZPoly::mul_schoolbook(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<ExactInt> r(a.c_.size() + b.c_.size() - 1, ExactInt(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            if (b.c_[j] != 0) r[i + j] += a.c_[i] * b.c_[j];
    }
    return ZPoly(std::move(r));
}

// Kronecker substitution: evaluate both polynomials at 2^B with signed
// coefficients, multiply once through GMP, and read the convolution back as
// balanced base-2^B digits.
ZPoly ZPoly::mul_kronecker(const ZPoly& a, const ZPoly& b) {
    const std::size_t na = a.c_.size(), nb = b.c_.size();
    std::size_t ha = 0, hb = 0;
    for (const auto& x : a.c_) ha = std::max(ha, mpz_sizeinbase(x.get_mpz_t(), 2));
    for (const auto& x : b.c_) hb = std::max(hb, mpz_sizeinbase(x.get_mpz_t(), 2));
    const std::size_t B = ha + hb + (64 - __builtin_clzll(std::min(na, nb))) + 2;

    auto pack = [B](const std::vector<ExactInt>& c) {
        ExactInt v(0);
        for (std::size_t i = c.size(); i-- > 0;) {
            mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), B);
            v += c[i];
        }
        return v;
    };
    ExactInt v = pack(a.c_) * pack(b.c_);

    // every convolution coefficient is below 2^(B-1) in absolute value, so
    // the balanced low digit recovers it exactly
    std::vector<ExactInt> r(na + nb - 1);
    ExactInt low, half = ExactInt(1) << (B - 1), full = ExactInt(1) << B;
    for (std::size_t i = 0; i < r.size(); ++i) {
        mpz_fdiv_r_2exp(low.get_mpz_t(), v.get_mpz_t(), B);
        if (low >= half) low -= full;
        v -= low;
        mpz_fdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(), B);
        r[i] = low;
    }
    return ZPoly(std::move(r));
}

ZPoly ZPoly::operator*(const ZPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    if (std::min(c_.size(), o.c_.size()) < 24) return mul_schoolbook(*this, o);
    return mul_kronecker(*this, o);
}

ZPoly ZPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<ExactInt> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * ExactInt(static_cast<long>(i));
    return ZPoly(std::move(r));
}

ExactRat ZPoly::eval(const ExactRat& x) const {
    ExactRat acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + ExactRat(c_[i]);
    acc.canonicalize();
    return acc;
}

ExactInt ZPoly::eval_int(const ExactInt& x) const {
    ExactInt acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

std::pair<ExactInt, ZPoly> ZPoly::content_primitive() const {
    if (is_zero()) throw std::invalid_argument("content of zero polynomial");
    ExactInt g(0);
    for (const auto& x : c_) g = gcd(g, x);
    if (lc() < 0) g = -g;
    std::vector<ExactInt> r(c_);
    for (auto& x : r) x /= g;
    return {g, ZPoly(std::move(r))};
}

std::optional<ZPoly> ZPoly::divide_exact(const ZPoly& g) const {
    if (g.is_zero()) throw std::invalid_argument("division by zero polynomial");
    if (is_zero()) return ZPoly{};
    if (degree() < g.degree()) return std::nullopt;
    std::vector<ExactInt> rem(c_);
    std::vector<ExactInt> quo(degree() - g.degree() + 1, ExactInt(0));
    for (int d = degree(); d >= g.degree();) {
        ExactInt& top = rem[d];
        if (top == 0) { --d; continue; }
        if (top % g.lc() != 0) return std::nullopt;
        ExactInt q = top / g.lc();
        quo[d - g.degree()] = q;
        for (int i = 0; i <= g.degree(); ++i) rem[d - g.degree() + i] -= q * g[i];
        --d;
    }
    for (const auto& x : rem)
        if (x != 0) return std::nullopt;
    return ZPoly(std::move(quo));
}

std::pair<std::vector<ExactRat>, std::vector<ExactRat>>
ZPoly::divrem_rational(const ZPoly& f, const ZPoly& g) {
    if (g.is_zero()) throw std::invalid_argument("division by zero polynomial");
    std::vector<ExactRat> rem(f.c_.size());
    for (std::size_t i = 0; i < f.c_.size(); ++i) rem[i] = ExactRat(f.c_[i]);
    int dg = g.degree();
    std::vector<ExactRat> quo(std::max(0, f.degree() - dg + 1));
    for (int d = f.degree(); d >= dg; --d) {
        ExactRat q = rem[d] / ExactRat(g.lc());
        q.canonicalize();
        quo[d - dg] = q;
        for (int i = 0; i <= dg; ++i) {
            rem[d - dg + i] -= q * ExactRat(g[i]);
            rem[d - dg + i].canonicalize();
        }
    }
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
    return {quo, rem};
}

ExactInt ZPoly::norm2_sq() const {
    ExactInt s(0);
    for (const auto& x : c_) s += x * x;
    return s;
}

ExactInt ZPoly::height() const {
    ExactInt h(0);
    for (const auto& x : c_) h = std::max(h, ExactInt(abs(x)));
    return h;
}

std::string ZPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        ExactInt a = c_[i];
        if (!first) os << (a > 0 ? " + " : " - ");
        else if (a < 0) os << "-";
        first = false;
        ExactInt m = abs(a);
        if (m != 1 || i == 0) os << m.get_str();
        if (i > 0) {
            if (m != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

std::string ZPoly::to_json() const {
    json j;
    j["var"] = "x";
    json coeffs = json::array();
    for (const auto& x : c_) coeffs.push_back(x.get_str());
    j["coeffs"] = coeffs;
    return j.dump();
}

ZPoly ZPoly::from_json(const std::string& text) {
    json j = json::parse(text);
    std::vector<ExactInt> c;
    for (const auto& s : j.at("coeffs")) c.emplace_back(s.get<std::string>());
    return ZPoly(std::move(c));
}

} // namespace cmtor

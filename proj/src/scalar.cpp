#include "regsing/scalar.hpp"

#include <algorithm>

namespace regsing {

const GaussianRational& ZPoly::leading() const {
    if (c.empty()) throw std::runtime_error("leading coefficient of zero polynomial");
    return c.back();
}

int ZPoly::valuation() const {
    if (c.empty()) throw std::runtime_error("valuation of zero polynomial");
    for (size_t k = 0; k < c.size(); ++k)
        if (!c[k].is_zero()) return static_cast<int>(k);
    throw std::runtime_error("untrimmed zero polynomial");
}

ZPoly ZPoly::operator-() const {
    ZPoly r = *this;
    for (auto& a : r.c) a = -a;
    return r;
}

ZPoly ZPoly::operator+(const ZPoly& o) const {
    ZPoly r;
    r.c.resize(std::max(c.size(), o.c.size()));
    for (size_t k = 0; k < r.c.size(); ++k) {
        if (k < c.size()) r.c[k] += c[k];
        if (k < o.c.size()) r.c[k] += o.c[k];
    }
    r.trim();
    return r;
}

ZPoly ZPoly::operator-(const ZPoly& o) const { return *this + (-o); }

ZPoly ZPoly::operator*(const ZPoly& o) const {
    if (is_zero() || o.is_zero()) return ZPoly();
    ZPoly r;
    r.c.assign(c.size() + o.c.size() - 1, GaussianRational(0));
    for (size_t a = 0; a < c.size(); ++a) {
        if (c[a].is_zero()) continue;
        for (size_t b = 0; b < o.c.size(); ++b) r.c[a + b] += c[a] * o.c[b];
    }
    r.trim();
    return r;
}

ZPoly ZPoly::scaled(const GaussianRational& s) const {
    if (s.is_zero()) return ZPoly();
    ZPoly r = *this;
    for (auto& a : r.c) a *= s;
    return r;
}

GaussianRational ZPoly::eval(const GaussianRational& v) const {
    GaussianRational acc(0);
    for (size_t k = c.size(); k-- > 0;) acc = acc * v + c[k];
    return acc;
}

ZPoly ZPoly::derivative() const {
    ZPoly r;
    for (size_t k = 1; k < c.size(); ++k) r.c.push_back(c[k] * GaussianRational(static_cast<long>(k)));
    r.trim();
    return r;
}

void zpoly_divrem(const ZPoly& a, const ZPoly& b, ZPoly& q, ZPoly& r) {
    if (b.is_zero()) throw std::runtime_error("polynomial division by zero");
    q = ZPoly();
    r = a;
    int db = b.degree();
    const GaussianRational lb = b.leading();
    while (!r.is_zero() && r.degree() >= db) {
        int shift = r.degree() - db;
        GaussianRational f = r.leading() / lb;
        if (static_cast<int>(q.c.size()) < shift + 1) q.c.resize(shift + 1, GaussianRational(0));
        q.c[shift] += f;
        // r -= f * z^shift * b
        for (size_t k = 0; k < b.c.size(); ++k) r.c[k + shift] -= f * b.c[k];
        r.trim();
    }
    q.trim();
}

ZPoly zpoly_gcd(ZPoly a, ZPoly b) {
    while (!b.is_zero()) {
        ZPoly q, r;
        zpoly_divrem(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) a = a.scaled(GaussianRational(1) / a.leading());
    return a;
}

void Scalar::normalize() {
    if (den_.is_zero()) throw std::runtime_error("zero denominator");
    if (num_.is_zero()) {
        den_ = ZPoly(GaussianRational(1));
        return;
    }
    ZPoly g = zpoly_gcd(num_, den_);
    if (g.degree() > 0) {
        ZPoly q, r;
        zpoly_divrem(num_, g, q, r);
        num_ = q;
        zpoly_divrem(den_, g, q, r);
        den_ = q;
    }
    GaussianRational lead = den_.leading();
    if (!lead.is_one()) {
        GaussianRational inv = GaussianRational(1) / lead;
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

Scalar::Scalar(ZPoly n, ZPoly d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

GaussianRational Scalar::constant_value() const {
    if (has_parameter()) throw std::runtime_error("scalar carries the parameter z");
    if (num_.is_zero()) return GaussianRational(0);
    return num_.c[0];
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
    return Scalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator-(const Scalar& o) const {
    return Scalar(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator*(const Scalar& o) const {
    return Scalar(num_ * o.num_, den_ * o.den_);
}

Scalar Scalar::operator/(const Scalar& o) const {
    if (o.is_zero()) throw std::runtime_error("division by zero scalar");
    return Scalar(num_ * o.den_, den_ * o.num_);
}

Scalar Scalar::pow(int k) const {
    if (k < 0) return Scalar(1) / pow(-k);
    Scalar acc(1), base = *this;
    while (k) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

bool Scalar::operator<(const Scalar& o) const {
    auto cmp_poly = [](const ZPoly& a, const ZPoly& b) {
        if (a.c.size() != b.c.size()) return a.c.size() < b.c.size() ? -1 : 1;
        for (size_t k = 0; k < a.c.size(); ++k) {
            if (a.c[k] != b.c[k]) return a.c[k] < b.c[k] ? -1 : 1;
        }
        return 0;
    };
    int c = cmp_poly(num_, o.num_);
    if (c != 0) return c < 0;
    return cmp_poly(den_, o.den_) < 0;
}

GaussianRational Scalar::eval_z(const GaussianRational& v) const {
    GaussianRational d = den_.eval(v);
    if (d.is_zero()) throw std::runtime_error("scalar has a pole at the evaluation point");
    return num_.eval(v) / d;
}

Scalar Scalar::subst_z(const Scalar& expr) const {
    Scalar n(0), d(0);
    for (size_t k = num_.c.size(); k-- > 0;) n = n * expr + Scalar(num_.c[k]);
    for (size_t k = den_.c.size(); k-- > 0;) d = d * expr + Scalar(den_.c[k]);
    return n / d;
}

int pole_order(const Scalar& a) {
    if (a.is_zero()) throw std::runtime_error("pole_order of zero is undefined");
    return a.den().valuation() - a.num().valuation();
}

bool LaurentJet::is_zero() const {
    for (const auto& a : coeff)
        if (!a.is_zero()) return false;
    return true;
}

GaussianRational LaurentJet::at(int order) const {
    if (order < base || order > trunc) return GaussianRational(0);
    return coeff[order - base];
}

void LaurentJet::trim_leading() {
    while (!coeff.empty() && coeff.front().is_zero()) {
        coeff.erase(coeff.begin());
        ++base;
    }
}

LaurentJet laurent_expand(const Scalar& a, int order) {
    LaurentJet jet;
    if (a.is_zero()) {
        jet.base = order;
        jet.trunc = order - 1;
        return jet;
    }
    int po = pole_order(a);
    if (order < -po) throw std::runtime_error("laurent_expand: order below the leading term");
    // strip z-valuations: a = z^(vn-vd) * N/D with N(0), D(0) nonzero
    int vn = a.num().valuation(), vd = a.den().valuation();
    ZPoly N, D;
    N.c.assign(a.num().c.begin() + vn, a.num().c.end());
    D.c.assign(a.den().c.begin() + vd, a.den().c.end());
    int shift = vn - vd;  // = -po
    int terms = order - shift + 1;  // coefficients of N/D needed (power series)
    std::vector<GaussianRational> s(terms, GaussianRational(0));
    GaussianRational d0 = D.c[0];
    for (int k = 0; k < terms; ++k) {
        GaussianRational acc = k < static_cast<int>(N.c.size()) ? N.c[k] : GaussianRational(0);
        for (int j = 1; j <= k && j < static_cast<int>(D.c.size()); ++j) acc -= D.c[j] * s[k - j];
        s[k] = acc / d0;
    }
    jet.base = shift;
    jet.trunc = order;
    jet.coeff = std::move(s);
    jet.trim_leading();
    return jet;
}

LaurentJet jet_add(const LaurentJet& a, const LaurentJet& b) {
    LaurentJet r;
    r.base = std::min(a.base, b.base);
    r.trunc = std::min(a.trunc, b.trunc);
    if (r.trunc < r.base) {
        r.base = r.trunc + 1;
        return r;
    }
    r.coeff.assign(r.trunc - r.base + 1, GaussianRational(0));
    for (int k = r.base; k <= r.trunc; ++k) r.coeff[k - r.base] = a.at(k) + b.at(k);
    r.trim_leading();
    return r;
}

LaurentJet jet_mul(const LaurentJet& a, const LaurentJet& b) {
    // below `base` a jet is exactly zero, so the product is reliable
    // through min(a.trunc + b.base, b.trunc + a.base)
    LaurentJet r;
    r.base = a.base + b.base;
    r.trunc = std::min(a.trunc + b.base, b.trunc + a.base);
    if (r.base > r.trunc) {
        r.base = r.trunc + 1;
        return r;
    }
    r.coeff.assign(r.trunc - r.base + 1, GaussianRational(0));
    for (int i = a.base; i <= a.trunc; ++i) {
        if (a.at(i).is_zero()) continue;
        for (int j = b.base; j <= b.trunc && i + j <= r.trunc; ++j)
            r.coeff[i + j - r.base] += a.at(i) * b.at(j);
    }
    r.trim_leading();
    return r;
}

std::string to_string(const ZPoly& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (size_t k = 0; k < p.c.size(); ++k) {
        if (p.c[k].is_zero()) continue;
        std::string coeff = to_string(p.c[k]);
        bool needs_paren = coeff.find('+') != std::string::npos ||
                           coeff.find('-', 1) != std::string::npos;
        std::string term;
        if (k == 0) {
            term = needs_paren ? "(" + coeff + ")" : coeff;
        } else {
            std::string zpow = k == 1 ? "z" : "z^" + std::to_string(k);
            if (coeff == "1") term = zpow;
            else if (coeff == "-1") term = "-" + zpow;
            else term = (needs_paren ? "(" + coeff + ")" : coeff) + "*" + zpow;
        }
        if (!s.empty() && term[0] != '-') s += "+";
        s += term;
    }
    return s;
}

std::string to_string(const Scalar& s) {
    if (!s.has_parameter()) return to_string(s.is_zero() ? GaussianRational(0) : s.num().c[0]);
    std::string n = to_string(s.num());
    if (s.den().degree() == 0) return n;  // den monic degree 0 means den = 1
    return "(" + n + ")/(" + to_string(s.den()) + ")";
}

}  // namespace regsing

#pragma once

#include "regsing/gaussian.hpp"

#include <vector>

namespace regsing {

// Polynomial in the deformation parameter z over Q(i).
// Dense coefficient list, c[k] multiplies z^k, trailing zeros trimmed.
struct ZPoly {
    std::vector<GaussianRational> c;

    ZPoly() = default;
    explicit ZPoly(GaussianRational a) {
        if (!a.is_zero()) c.push_back(std::move(a));
    }
    explicit ZPoly(std::vector<GaussianRational> coeffs) : c(std::move(coeffs)) { trim(); }
    static ZPoly z() {
        ZPoly p;
        p.c = {GaussianRational(0), GaussianRational(1)};
        return p;
    }

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    const GaussianRational& leading() const;
    // index of the lowest nonzero coefficient; poly must be nonzero
    int valuation() const;

    bool operator==(const ZPoly& o) const { return c == o.c; }
    bool operator!=(const ZPoly& o) const { return !(*this == o); }

    ZPoly operator-() const;
    ZPoly operator+(const ZPoly& o) const;
    ZPoly operator-(const ZPoly& o) const;
    ZPoly operator*(const ZPoly& o) const;
    ZPoly scaled(const GaussianRational& s) const;

    GaussianRational eval(const GaussianRational& v) const;
    ZPoly derivative() const;
};

// quotient and remainder in Q(i)[z]
void zpoly_divrem(const ZPoly& a, const ZPoly& b, ZPoly& q, ZPoly& r);
ZPoly zpoly_gcd(ZPoly a, ZPoly b);  // monic, gcd(0,0)=0

// Element of Q(i)(z).  Canonical form: denominator monic, numerator and
// denominator coprime, zero stored as 0/1.  Equality is structural.
class Scalar {
    ZPoly num_;
    ZPoly den_;  // monic, nonzero

    void normalize();

  public:
    Scalar() : den_(ZPoly(GaussianRational(1))) {}
    Scalar(long v) : num_(ZPoly(GaussianRational(v))), den_(ZPoly(GaussianRational(1))) {}
    Scalar(GaussianRational g) : num_(ZPoly(std::move(g))), den_(ZPoly(GaussianRational(1))) {}
    Scalar(ZPoly n, ZPoly d);

    static Scalar z() { return Scalar(ZPoly::z(), ZPoly(GaussianRational(1))); }
    static Scalar i() { return Scalar(GaussianRational::i()); }
    static Scalar from_rat(long p, long q) {
        return Scalar(GaussianRational(BigRat(BigInt(p), BigInt(q))));
    }

    const ZPoly& num() const { return num_; }
    const ZPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.degree() == 0 && den_.degree() == 0 && num_.c[0].is_one(); }
    // a value is "exact" when z does not appear; otherwise it carries the parameter
    bool has_parameter() const { return num_.degree() > 0 || den_.degree() > 0; }
    // constant value; requires has_parameter() == false
    GaussianRational constant_value() const;

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
    Scalar& operator/=(const Scalar& o) { *this = *this / o; return *this; }
    Scalar pow(int k) const;

    bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    bool operator<(const Scalar& o) const;  // deterministic container order

    // value at a given z; den(v) must be nonzero
    GaussianRational eval_z(const GaussianRational& v) const;
    // substitute z -> expr (polynomial substitution into num and den)
    Scalar subst_z(const Scalar& expr) const;
};

// order of the pole at z=0 (negative = zero of that order); errors on 0
int pole_order(const Scalar& a);

// Finite Laurent data at z=0: coefficients for z^base .. z^trunc.
struct LaurentJet {
    int base = 0;
    int trunc = -1;             // empty when trunc < base
    std::vector<GaussianRational> coeff;  // size trunc-base+1

    bool is_zero() const;
    GaussianRational at(int order) const;  // 0 outside stored window
    void trim_leading();  // raise base past leading zeros (identically-zero jet -> base=trunc+1 kept)
};

// jet of `a` with coefficients through z^order; order >= -pole_order(a) required
LaurentJet laurent_expand(const Scalar& a, int order);

LaurentJet jet_add(const LaurentJet& a, const LaurentJet& b);
LaurentJet jet_mul(const LaurentJet& a, const LaurentJet& b);

std::string to_string(const ZPoly& p);   // "1+2*z-z^2" ascending
std::string to_string(const Scalar& s);  // "num" or "(num)/(den)"

}  // namespace regsing

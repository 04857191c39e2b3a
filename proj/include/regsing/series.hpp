#pragma once

#include "regsing/poly.hpp"

#include <map>

namespace regsing {

// Truncated formal power series in t_1..t_n with coefficients that are
// truncated polynomials in x_1..x_nx over Scalar.  Keys with |gamma| > T and
// x-terms above total degree X are dropped eagerly; zero coefficients are
// never stored.
class TruncSeries {
  public:
    TruncSeries() : n_(0), nx_(0), t_order_(0), x_order_(0) {}
    TruncSeries(int n, int nx, int t_order, int x_order)
        : n_(n), nx_(nx), t_order_(t_order), x_order_(x_order) {}

    static TruncSeries constant(int n, int nx, int t_order, int x_order, const Scalar& c);
    static TruncSeries t_var(int n, int nx, int t_order, int x_order, int i);
    static TruncSeries x_var(int n, int nx, int t_order, int x_order, int j);
    static TruncSeries from_x_poly(int n, int t_order, const MPoly& p, int x_order);

    int n() const { return n_; }
    int nx() const { return nx_; }
    int t_order() const { return t_order_; }
    int x_order() const { return x_order_; }
    bool is_zero() const { return coeff_.empty(); }

    const std::map<MultiIndex, MPoly>& coefficients() const { return coeff_; }
    MPoly coeff(const MultiIndex& gamma) const;
    void add_term(const MultiIndex& gamma, const MPoly& p);

    TruncSeries operator+(const TruncSeries& o) const;
    TruncSeries operator-(const TruncSeries& o) const;
    TruncSeries operator-() const;
    TruncSeries operator*(const TruncSeries& o) const;
    TruncSeries operator*(const Scalar& c) const;
    bool operator==(const TruncSeries& o) const;
    bool operator!=(const TruncSeries& o) const { return !(*this == o); }

    TruncSeries scale_x(const MPoly& p) const;   // multiply by an x-polynomial
    TruncSeries shift_t(const MultiIndex& gamma) const;  // multiply by t^gamma
    TruncSeries theta(int i) const;              // t_i d/dt_i
    TruncSeries dx(int j) const;                 // d/dx_j
    TruncSeries retruncate(int t_order, int x_order) const;

    MPoly eval_at_wall() const;  // coefficient of t^0

    // multiplicative inverse; requires a unit constant term at t=0, x=0
    TruncSeries invert() const;

  private:
    int n_, nx_, t_order_, x_order_;
    std::map<MultiIndex, MPoly> coeff_;

    void check_compat(const TruncSeries& o) const;
};

// series s with s*den == num modulo truncation; den must be a unit at the
// origin
TruncSeries rational_to_series(const TruncSeries& num, const TruncSeries& den, int t_order,
                               int x_order);

// exp of a series with zero constant term, to the stated truncation
TruncSeries exp_series(const TruncSeries& a);

std::string to_string(const TruncSeries& s);

}  // namespace regsing

#pragma once

#include "regsing/series.hpp"

#include <optional>
#include <tuple>

namespace regsing {

// exponent pair: alpha indexes the theta (or xi) part, beta the Dx (or tau)
// part
struct OpKey {
    MultiIndex alpha;
    MultiIndex beta;

    bool operator<(const OpKey& o) const {
        return std::tie(alpha, beta) < std::tie(o.alpha, o.beta);
    }
    bool operator==(const OpKey& o) const { return alpha == o.alpha && beta == o.beta; }
    int order() const { return mi_abs(alpha) + mi_abs(beta); }
};

// Canonical-form operator: sum of a_{alpha,beta}(t,x) theta^alpha Dx^beta
// with the coefficient on the left.  Only theta is available for t-variables,
// so every value of this type has a regular singularity in the weak sense
// along the walls t_i = 0.
class RegOperator {
  public:
    RegOperator() : n_(0), nx_(0), t_order_(0), x_order_(0) {}
    RegOperator(int n, int nx, int t_order, int x_order)
        : n_(n), nx_(nx), t_order_(t_order), x_order_(x_order) {}

    static RegOperator constant(int n, int nx, int T, int X, const Scalar& c);
    static RegOperator theta(int n, int nx, int T, int X, int i);
    static RegOperator dx(int n, int nx, int T, int X, int j);
    static RegOperator t_var(int n, int nx, int T, int X, int i);
    static RegOperator x_var(int n, int nx, int T, int X, int j);
    static RegOperator from_series(const TruncSeries& s);

    int n() const { return n_; }
    int nx() const { return nx_; }
    int t_order() const { return t_order_; }
    int x_order() const { return x_order_; }
    bool is_zero() const { return terms_.empty(); }

    const std::map<OpKey, TruncSeries>& terms() const { return terms_; }
    TruncSeries coeff(const OpKey& k) const;
    void add_term(const OpKey& k, const TruncSeries& s);

    RegOperator operator+(const RegOperator& o) const;
    RegOperator operator-(const RegOperator& o) const;
    RegOperator operator-() const;
    RegOperator operator*(const RegOperator& o) const;  // composition
    RegOperator operator*(const Scalar& c) const;
    bool operator==(const RegOperator& o) const;
    bool operator!=(const RegOperator& o) const { return !(*this == o); }

    int order() const;  // throws on the zero operator

    // substitute theta_i -> theta_i + lambda_i, i.e. conjugation t^-lambda P
    // t^lambda
    RegOperator conjugate(const std::vector<Scalar>& lambda) const;

    TruncSeries apply(const TruncSeries& u) const;

  private:
    int n_, nx_, t_order_, x_order_;
    std::map<OpKey, TruncSeries> terms_;

    void check_compat(const RegOperator& o) const;
};

RegOperator commutator(const RegOperator& p, const RegOperator& q);

// Commutative polynomial in (xi, tau) with TruncSeries coefficients; houses
// the graded symbols sigma_k.
class PrincipalSymbol {
  public:
    PrincipalSymbol() : n_(0), nx_(0), t_order_(0), x_order_(0) {}
    PrincipalSymbol(int n, int nx, int t_order, int x_order)
        : n_(n), nx_(nx), t_order_(t_order), x_order_(x_order) {}

    int n() const { return n_; }
    int nx() const { return nx_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<OpKey, TruncSeries>& terms() const { return terms_; }
    TruncSeries coeff(const OpKey& k) const;
    void add_term(const OpKey& k, const TruncSeries& s);

    PrincipalSymbol operator+(const PrincipalSymbol& o) const;
    PrincipalSymbol operator-(const PrincipalSymbol& o) const;
    PrincipalSymbol operator*(const PrincipalSymbol& o) const;
    bool operator==(const PrincipalSymbol& o) const;
    bool operator!=(const PrincipalSymbol& o) const { return !(*this == o); }

    PrincipalSymbol dxi(int i) const;      // d/dxi_i
    PrincipalSymbol dtau(int j) const;     // d/dtau_j
    PrincipalSymbol theta_t(int i) const;  // t_i d/dt_i on coefficients
    PrincipalSymbol dx(int j) const;       // d/dx_j on coefficients

  private:
    int n_, nx_, t_order_, x_order_;
    std::map<OpKey, TruncSeries> terms_;
};

// Element of the ring of differential operators in x, polynomial in the
// commuting symbols xi: sum a(x) xi^alpha Dx^beta.  This is the image of
// sigma_star.
class SigmaStarOp {
  public:
    SigmaStarOp() : n_(0), nx_(0), x_order_(0) {}
    SigmaStarOp(int n, int nx, int x_order) : n_(n), nx_(nx), x_order_(x_order) {}

    int n() const { return n_; }
    int nx() const { return nx_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<OpKey, MPoly>& terms() const { return terms_; }
    MPoly coeff(const OpKey& k) const;
    void add_term(const OpKey& k, const MPoly& p);

    SigmaStarOp operator+(const SigmaStarOp& o) const;
    SigmaStarOp operator-(const SigmaStarOp& o) const;
    SigmaStarOp operator*(const SigmaStarOp& o) const;  // composition
    SigmaStarOp operator*(const Scalar& c) const;
    bool operator==(const SigmaStarOp& o) const;
    bool operator!=(const SigmaStarOp& o) const { return !(*this == o); }

    bool has_dx() const;
    bool x_dependent() const;

    // apply with xi set to fixed values: sum a(x) xi^alpha (Dx^beta f)
    MPoly apply_at(const std::vector<Scalar>& xi_vals, const MPoly& f) const;

    // as a polynomial in the xi variables; requires no Dx terms, and either
    // x-free coefficients or an evaluation point
    MPoly as_xi_poly(const std::optional<std::vector<Scalar>>& x0 = std::nullopt) const;

  private:
    int n_, nx_, x_order_;
    std::map<OpKey, MPoly> terms_;
};

PrincipalSymbol sigma_k(const RegOperator& p, int k);
PrincipalSymbol sigma_principal(const RegOperator& p);
SigmaStarOp sigma_star(const RegOperator& p);
SigmaStarOp sigma_bar_star(const RegOperator& p);

// reinterpret xi^alpha as theta^alpha, producing the operator
// sigma(x,theta,Dx); used to split P into its indicial part and remainder
RegOperator operator_from_sigma(const SigmaStarOp& s, int t_order, int x_order);

struct DStarCheck {
    bool ok;
    OpKey witness;  // meaningful when !ok
};
DStarCheck is_D_star(const RegOperator& p);

// square matrix over the operator ring
class OpMatrix {
  public:
    OpMatrix() : m_(0) {}
    OpMatrix(int m, const RegOperator& zero);
    static OpMatrix scalar(const RegOperator& p);  // 1x1

    int m() const { return m_; }
    int n() const { return e_.empty() ? 0 : e_[0][0].n(); }
    int nx() const { return e_.empty() ? 0 : e_[0][0].nx(); }
    int t_order() const { return e_.empty() ? 0 : e_[0][0].t_order(); }
    int x_order() const { return e_.empty() ? 0 : e_[0][0].x_order(); }
    RegOperator& at(int i, int j) { return e_[i][j]; }
    const RegOperator& at(int i, int j) const { return e_[i][j]; }

    OpMatrix operator+(const OpMatrix& o) const;
    OpMatrix operator-(const OpMatrix& o) const;
    OpMatrix operator*(const OpMatrix& o) const;
    OpMatrix operator*(const Scalar& c) const;
    bool operator==(const OpMatrix& o) const { return e_ == o.e_; }
    bool operator!=(const OpMatrix& o) const { return !(*this == o); }
    bool is_zero() const;

    int order() const;
    OpMatrix conjugate(const std::vector<Scalar>& lambda) const;
    std::vector<TruncSeries> apply(const std::vector<TruncSeries>& u) const;

    std::vector<std::vector<SigmaStarOp>> sigma_star_matrix() const;
    std::vector<std::vector<SigmaStarOp>> sigma_bar_star_matrix() const;
    DStarCheck is_D_star_matrix() const;

  private:
    int m_;
    std::vector<std::vector<RegOperator>> e_;
};

OpMatrix commutator(const OpMatrix& p, const OpMatrix& q);

std::string to_string(const RegOperator& p);
std::string to_string(const OpMatrix& p);
std::string to_string(const PrincipalSymbol& s);
std::string to_string(const SigmaStarOp& s);

}  // namespace regsing

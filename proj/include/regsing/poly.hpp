#pragma once

#include "regsing/multiindex.hpp"
#include "regsing/scalar.hpp"

#include <map>
#include <string>
#include <vector>

namespace regsing {

// Sparse multivariate polynomial over Scalar.  The variable set is abstract;
// callers decide whether index i means x_i, xi_i, tau_i or lambda_i.  Zero
// coefficients are never stored, so operator== is structural equality.
class MPoly {
  public:
    MPoly() : nvars_(0) {}
    explicit MPoly(int nvars) : nvars_(nvars) {}

    static MPoly constant(int nvars, const Scalar& c);
    static MPoly variable(int nvars, int i);
    static MPoly monomial(int nvars, const MultiIndex& e, const Scalar& c);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Scalar constant_term() const;
    int total_degree() const;  // -1 for the zero polynomial

    const std::map<MultiIndex, Scalar>& terms() const { return terms_; }
    Scalar coeff(const MultiIndex& e) const;
    void set_coeff(const MultiIndex& e, const Scalar& c);
    void add_term(const MultiIndex& e, const Scalar& c);

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator-() const;
    MPoly operator*(const MPoly& o) const;
    MPoly operator*(const Scalar& c) const;
    MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
    MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
    bool operator==(const MPoly& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    MPoly derivative(int i) const;
    MPoly truncate_degree(int maxdeg) const;
    MPoly homogeneous_part(int deg) const;
    MPoly pow(int e) const;

    Scalar eval(const std::vector<Scalar>& vals) const;
    GaussianRational eval_gr(const std::vector<GaussianRational>& vals) const;

    // substitute variable i by subst[i]; all subst share a variable count,
    // which becomes the variable count of the result
    MPoly compose(const std::vector<MPoly>& subst) const;

  private:
    int nvars_;
    std::map<MultiIndex, Scalar> terms_;
};

std::string to_string(const MPoly& p, const std::vector<std::string>& names);
std::string to_string(const MPoly& p, const std::string& stem);

}  // namespace regsing

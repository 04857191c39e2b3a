#pragma once

#include "regsing/linalg.hpp"
#include "regsing/opalg.hpp"

#include <string>

namespace regsing {

// sigma_star of an operator matrix read as a polynomial matrix in the
// exponent variables lambda_1..lambda_n
struct IndicialMatrix {
    int m = 0;
    int n = 0;
    bool x_dependent = false;
    std::vector<std::vector<MPoly>> e;
};

IndicialMatrix indicial_matrix(const OpMatrix& p,
                               const std::optional<std::vector<Scalar>>& x0 = std::nullopt);

MPoly indicial_det(const IndicialMatrix& ind);
Mat indicial_eval(const IndicialMatrix& ind, const std::vector<Scalar>& lam);

struct ResonanceHit {
    MultiIndex gamma;
    int z_vanishing_order;  // -1 when the determinant vanishes identically in z
    bool identically_zero;
};

struct ResonanceReport {
    std::vector<Scalar> lambda;
    std::vector<ResonanceHit> hits;
    int search_bound = 0;
    bool certified_complete = false;
    std::string note;
};

// zeros of det ind(lambda + gamma) at z = 0 over 1 <= |gamma| <= G.  For one
// wall variable the hit set is computed exactly and completeness certified;
// for more walls completeness needs a positivity certificate for the top
// symbol plus a large enough G.
ResonanceReport resonance_set(const IndicialMatrix& ind, const std::vector<Scalar>& lambda,
                              int G);

enum class CheckResult { pass, fail, inconclusive };
std::string to_string(CheckResult r);

struct NondegReport {
    CheckResult result;
    std::optional<MultiIndex> witness;
    std::string note;
};

// nondegeneracy of the top symbol: pass when the xi-partials are linearly
// independent, fail when a nonnegative integer combination of them vanishes
NondegReport check_nondeg(const OpMatrix& p,
                          const std::optional<std::vector<Scalar>>& x0 = std::nullopt);

struct BernsteinCert {
    CheckResult result;
    GaussianRational eps;                    // lower bound on the simplex when pass
    std::vector<std::vector<BigRat>> witness;  // zero point, or [negative, positive] pair
    int cells = 0;
};

// positivity of a real homogeneous polynomial on the standard simplex by
// Bernstein coefficients with longest-edge bisection
BernsteinCert bernstein_positive_on_simplex(const MPoly& h, int max_cells);

struct ConvergReport {
    CheckResult result;
    GaussianRational eps;
    std::vector<std::vector<BigRat>> witness;
    int cells = 0;
    std::string note;
};

// sign-definiteness of det sigma_bar_star on the closed positive orthant
ConvergReport check_converg(const OpMatrix& p,
                            const std::optional<std::vector<Scalar>>& x0 = std::nullopt);

struct EllipticResult {
    bool ok = false;
    std::vector<MPoly> r;
};

// coefficients R_i with sum R_i * symbol_i = xi_1^{2L} + ... + xi_n^{2L}
EllipticResult elliptic_combination(const std::vector<MPoly>& symbols, int L);

}  // namespace regsing

#pragma once

#include "regsing/linalg.hpp"

#include <string>

namespace regsing {

// Presentation of C[d]^m modulo the span of the relation rows; d_1..d_n are
// commuting constant-coefficient derivatives.
struct ConstCoeffModule {
    int n = 0;
    int m = 1;
    std::vector<std::vector<MPoly>> relations;  // rows of length m, entries in d
};

// p(y) e^{<lambda,y>} with a polynomial vector p of length m
struct ExpPolySolution {
    std::vector<Scalar> lambda;
    std::vector<MPoly> poly;

    int degree() const;  // max total degree over the components
};

// residual of one relation row on the solution; exact zero when it solves
MPoly apply_relation(const std::vector<MPoly>& relation, const ExpPolySolution& sol);

// basis of the solutions at a fixed frequency with polynomial degree < k,
// from the nullspace of the shifted action on monomial coefficients
std::vector<ExpPolySolution> solve_at_exponent(const ConstCoeffModule& mod,
                                               const std::vector<Scalar>& lambda, int k);

struct FrequencyData {
    std::vector<Scalar> lambda;
    int multiplicity = 0;
    std::vector<int> basis_degrees;  // ascending
};

struct ModuleDimension {
    int dimension = 0;
    std::vector<FrequencyData> frequencies;  // lexicographic in lambda
};

// total solution dimension over the given frequencies; the degree bound is
// raised until the count stops growing, which is exact because solution
// spaces are closed under differentiation
ModuleDimension module_dimension(const ConstCoeffModule& mod,
                                 const std::vector<std::vector<Scalar>>& candidates,
                                 int cap = 16);

struct ExponentCandidates {
    std::vector<std::vector<Scalar>> lambdas;
    bool complete = false;
    std::string note;
};

// common zeros of the maximal minors of the relation matrix; built in for one
// variable (gcd plus exact roots) and two (resultant elimination)
ExponentCandidates find_exponent_candidates(const ConstCoeffModule& mod);

// true when every basis solution over the candidates is a plain exponential
bool is_semisimple(const ConstCoeffModule& mod,
                   const std::vector<std::vector<Scalar>>& candidates, int cap = 16);

}  // namespace regsing

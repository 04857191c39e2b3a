#pragma once

#include "regsing/gaussian.hpp"

#include <vector>

namespace regsing {

struct RootFindResult {
    std::vector<std::pair<GaussianRational, int>> roots;  // root with multiplicity
    int unsolved_degree;  // degree of the factor with no roots in Q(i)
    bool complete() const { return unsolved_degree == 0; }
};

// All roots in Q(i) of a nonzero univariate polynomial with Gaussian-rational
// coefficients (ascending).  Complete by the rational root theorem over Z[i];
// throws only when the norm of a coefficient cannot be factored within the
// trial-division budget.
RootFindResult gaussian_rational_roots(std::vector<GaussianRational> coeffs);

// integer roots r >= lo, found exactly (subset of the above)
std::vector<long> integer_roots_at_least(const std::vector<GaussianRational>& coeffs, long lo);

}  // namespace regsing

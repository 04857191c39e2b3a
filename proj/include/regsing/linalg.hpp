#pragma once

#include "regsing/poly.hpp"
#include "regsing/scalar.hpp"

#include <optional>
#include <vector>

namespace regsing {

using Vec = std::vector<Scalar>;
using Mat = std::vector<std::vector<Scalar>>;

Mat mat_identity(int n);
Mat mat_mul(const Mat& a, const Mat& b);
Vec mat_vec(const Mat& a, const Vec& v);

// in-place reduced row echelon form; pivot choice is first nonzero row, so
// results are deterministic.  Returns pivot column of each pivot row.
std::vector<int> rref(Mat& m);

int mat_rank(Mat m);

// basis of the right nullspace; one vector per free column, ascending, with a
// 1 in the free position
std::vector<Vec> nullspace(const Mat& m);

// particular solution of A x = b, empty if inconsistent
std::optional<Vec> solve(const Mat& a, const Vec& b);

Scalar mat_det(Mat m);

std::optional<Mat> mat_inverse(const Mat& m);

// determinant of a polynomial matrix by expansion along the first column with
// memoization over row subsets; fine for the small systems that arise here
MPoly mpoly_det(const std::vector<std::vector<MPoly>>& m);

}  // namespace regsing

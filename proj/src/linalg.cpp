#include "regsing/linalg.hpp"

#include <map>
#include <stdexcept>

namespace regsing {

Mat mat_identity(int n) {
    Mat m(n, Vec(n, Scalar(0)));
    for (int i = 0; i < n; ++i) m[i][i] = Scalar(1);
    return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    if (a.empty() || b.empty()) return {};
    size_t n = a.size(), k = b.size(), p = b[0].size();
    if (a[0].size() != k) throw std::runtime_error("matrix dimension mismatch");
    Mat r(n, Vec(p, Scalar(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < k; ++j) {
            if (a[i][j].is_zero()) continue;
            for (size_t l = 0; l < p; ++l) r[i][l] = r[i][l] + a[i][j] * b[j][l];
        }
    return r;
}

Vec mat_vec(const Mat& a, const Vec& v) {
    Vec r(a.size(), Scalar(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != v.size()) throw std::runtime_error("matrix dimension mismatch");
        for (size_t j = 0; j < v.size(); ++j) r[i] = r[i] + a[i][j] * v[j];
    }
    return r;
}

std::vector<int> rref(Mat& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = rows;
        for (size_t i = r; i < rows; ++i)
            if (!m[i][c].is_zero()) {
                sel = i;
                break;
            }
        if (sel == rows) continue;
        std::swap(m[r], m[sel]);
        Scalar inv = Scalar(1) / m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            Scalar f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
        }
        pivots.push_back((int)c);
        ++r;
    }
    return pivots;
}

int mat_rank(Mat m) { return (int)rref(m).size(); }

std::vector<Vec> nullspace(const Mat& m) {
    if (m.empty()) return {};
    size_t cols = m[0].size();
    Mat red = m;
    std::vector<int> piv = rref(red);
    std::vector<bool> is_pivot(cols, false);
    for (int c : piv) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vec v(cols, Scalar(0));
        v[f] = Scalar(1);
        for (size_t pr = 0; pr < piv.size(); ++pr)
            v[piv[pr]] = Scalar(0) - red[pr][f];
        basis.push_back(v);
    }
    return basis;
}

std::optional<Vec> solve(const Mat& a, const Vec& b) {
    if (a.empty()) {
        for (const auto& x : b)
            if (!x.is_zero()) return std::nullopt;
        return Vec{};
    }
    size_t rows = a.size(), cols = a[0].size();
    if (b.size() != rows) throw std::runtime_error("matrix dimension mismatch");
    Mat aug = a;
    for (size_t i = 0; i < rows; ++i) aug[i].push_back(b[i]);
    std::vector<int> piv = rref(aug);
    for (size_t pr = 0; pr < piv.size(); ++pr)
        if (piv[pr] == (int)cols) return std::nullopt;
    Vec x(cols, Scalar(0));
    for (size_t pr = 0; pr < piv.size(); ++pr) x[piv[pr]] = aug[pr][cols];
    return x;
}

Scalar mat_det(Mat m) {
    size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw std::runtime_error("determinant of non-square matrix");
    Scalar det(1);
    for (size_t c = 0; c < n; ++c) {
        size_t sel = n;
        for (size_t i = c; i < n; ++i)
            if (!m[i][c].is_zero()) {
                sel = i;
                break;
            }
        if (sel == n) return Scalar(0);
        if (sel != c) {
            std::swap(m[c], m[sel]);
            det = Scalar(0) - det;
        }
        det = det * m[c][c];
        Scalar inv = Scalar(1) / m[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            if (m[i][c].is_zero()) continue;
            Scalar f = m[i][c] * inv;
            for (size_t j = c; j < n; ++j) m[i][j] = m[i][j] - f * m[c][j];
        }
    }
    return det;
}

std::optional<Mat> mat_inverse(const Mat& m) {
    size_t n = m.size();
    Mat aug = m;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug[i].push_back(i == j ? Scalar(1) : Scalar(0));
    }
    std::vector<int> piv = rref(aug);
    // a pivot in the identity half means the left block is singular
    if (piv.size() != n || (n > 0 && piv.back() >= (int)n)) return std::nullopt;
    Mat inv(n, Vec(n, Scalar(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

namespace {

MPoly det_rec(const std::vector<std::vector<MPoly>>& m, unsigned rows_mask, size_t col,
              std::map<unsigned, MPoly>& memo, int nvars) {
    if (rows_mask == 0) return MPoly::constant(nvars, Scalar(1));
    auto it = memo.find(rows_mask);
    if (it != memo.end()) return it->second;
    MPoly acc(nvars);
    int sign = 1;
    for (size_t i = 0; i < m.size(); ++i) {
        if (!(rows_mask & (1u << i))) continue;
        // sign tracks the row's position within the surviving submatrix
        if (!m[i][col].is_zero()) {
            MPoly sub = det_rec(m, rows_mask & ~(1u << i), col + 1, memo, nvars);
            MPoly term = m[i][col] * sub;
            acc = sign > 0 ? acc + term : acc - term;
        }
        sign = -sign;
    }
    memo.emplace(rows_mask, acc);
    return acc;
}

}  // namespace

MPoly mpoly_det(const std::vector<std::vector<MPoly>>& m) {
    size_t n = m.size();
    if (n == 0) return MPoly::constant(0, Scalar(1));
    if (n > 24) throw std::runtime_error("polynomial determinant too large");
    int nvars = m[0][0].nvars();
    for (const auto& row : m)
        if (row.size() != n) throw std::runtime_error("determinant of non-square matrix");
    std::map<unsigned, MPoly> memo;
    return det_rec(m, (1u << n) - 1, 0, memo, nvars);
}

}  // namespace regsing

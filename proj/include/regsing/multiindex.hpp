#pragma once

#include "regsing/gaussian.hpp"

#include <vector>

namespace regsing {

// Multi-index with a fixed length per context.  std::vector's lexicographic
// ordering makes map iteration deterministic.
using MultiIndex = std::vector<int>;

inline MultiIndex mi_zero(int n) { return MultiIndex(n, 0); }

inline MultiIndex mi_unit(int n, int i) {
    MultiIndex a(n, 0);
    a[i] = 1;
    return a;
}

inline int mi_abs(const MultiIndex& a) {
    int s = 0;
    for (int v : a) s += v;
    return s;
}

inline MultiIndex mi_add(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex r = a;
    for (size_t k = 0; k < r.size(); ++k) r[k] += b[k];
    return r;
}

inline MultiIndex mi_sub(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex r = a;
    for (size_t k = 0; k < r.size(); ++k) r[k] -= b[k];
    return r;
}

inline bool mi_leq(const MultiIndex& a, const MultiIndex& b) {
    for (size_t k = 0; k < a.size(); ++k)
        if (a[k] > b[k]) return false;
    return true;
}

// product of componentwise binomial coefficients C(a_k, b_k); requires b <= a
GaussianRational mi_binom(const MultiIndex& a, const MultiIndex& b);

// gamma^alpha for an integer point
GaussianRational mi_int_pow(const MultiIndex& gamma, const MultiIndex& alpha);

// all multi-indices of length n with |a| = s, lexicographic within the grade
std::vector<MultiIndex> mi_grade(int n, int s);

// all multi-indices of length n with |a| <= s, graded then lexicographic
std::vector<MultiIndex> mi_upto(int n, int s);

// all multi-indices b with b <= a componentwise, in odometer order
std::vector<MultiIndex> mi_below(const MultiIndex& a);

}  // namespace regsing

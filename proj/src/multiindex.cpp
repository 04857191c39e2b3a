#include "regsing/multiindex.hpp"

#include <stdexcept>

namespace regsing {

GaussianRational mi_binom(const MultiIndex& a, const MultiIndex& b) {
    if (a.size() != b.size())
        throw std::runtime_error("multi-index length mismatch");
    BigInt prod = 1;
    for (size_t k = 0; k < a.size(); ++k) {
        if (b[k] < 0 || b[k] > a[k]) return GaussianRational(0);
        BigInt c = 1;
        for (int j = 0; j < b[k]; ++j) {
            c *= a[k] - j;
            c /= j + 1;  // exact: product of j+1 consecutive integers
        }
        prod *= c;
    }
    return GaussianRational(BigRat(prod));
}

GaussianRational mi_int_pow(const MultiIndex& gamma, const MultiIndex& alpha) {
    BigInt prod = 1;
    for (size_t k = 0; k < gamma.size(); ++k) {
        for (int j = 0; j < alpha[k]; ++j) prod *= gamma[k];
    }
    return GaussianRational(BigRat(prod));
}

std::vector<MultiIndex> mi_grade(int n, int s) {
    std::vector<MultiIndex> out;
    if (n == 0) {
        if (s == 0) out.push_back(MultiIndex{});
        return out;
    }
    MultiIndex cur(n, 0);
    // lexicographic enumeration of compositions of s into n parts
    struct Rec {
        int n;
        std::vector<MultiIndex>& out;
        MultiIndex& cur;
        void go(int pos, int rem) {
            if (pos == n - 1) {
                cur[pos] = rem;
                out.push_back(cur);
                return;
            }
            for (int v = 0; v <= rem; ++v) {
                cur[pos] = v;
                go(pos + 1, rem - v);
            }
        }
    } rec{n, out, cur};
    rec.go(0, s);
    return out;
}

std::vector<MultiIndex> mi_upto(int n, int s) {
    std::vector<MultiIndex> out;
    for (int g = 0; g <= s; ++g) {
        auto grade = mi_grade(n, g);
        out.insert(out.end(), grade.begin(), grade.end());
    }
    return out;
}

std::vector<MultiIndex> mi_below(const MultiIndex& a) {
    std::vector<MultiIndex> out;
    MultiIndex cur(a.size(), 0);
    for (;;) {
        out.push_back(cur);
        size_t k = 0;
        while (k < a.size() && cur[k] == a[k]) {
            cur[k] = 0;
            ++k;
        }
        if (k == a.size()) break;
        ++cur[k];
    }
    return out;
}

}  // namespace regsing

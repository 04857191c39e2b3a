#include "regsing/holonomic.hpp"

#include "regsing/multiindex.hpp"
#include "regsing/rootfind.hpp"

#include <algorithm>
#include <stdexcept>

namespace regsing {

namespace {

void validate(const ConstCoeffModule& mod) {
    if (mod.n < 1) throw std::runtime_error("the module needs at least one variable");
    if (mod.m < 1) throw std::runtime_error("the module needs at least one component");
    if (mod.relations.empty()) throw std::runtime_error("the module has no relations");
    for (const auto& rel : mod.relations) {
        if ((int)rel.size() != mod.m) throw std::runtime_error("relation shape mismatch");
        bool nz = false;
        for (const auto& p : rel) {
            if (p.nvars() != mod.n) throw std::runtime_error("relation shape mismatch");
            if (!p.is_zero()) nz = true;
        }
        if (!nz) throw std::runtime_error("zero relation row");
    }
}

// kappa(kappa-1)...(kappa-alpha+1) componentwise; 0 unless alpha <= kappa
Scalar falling(const MultiIndex& kappa, const MultiIndex& alpha) {
    if (!mi_leq(alpha, kappa)) return Scalar(0);
    BigInt f = 1;
    for (size_t v = 0; v < kappa.size(); ++v)
        for (int j = 0; j < alpha[v]; ++j) f *= kappa[v] - j;
    return Scalar(GaussianRational(BigRat(f)));
}

std::vector<MPoly> shift_subst(int n, const std::vector<Scalar>& lambda) {
    std::vector<MPoly> s;
    for (int v = 0; v < n; ++v)
        s.push_back(MPoly::variable(n, v) + MPoly::constant(n, lambda[v]));
    return s;
}

// univariate helpers over the scalar field, on MPoly with one variable
std::vector<Scalar> uni_coeffs(const MPoly& p) {
    std::vector<Scalar> c(p.is_zero() ? 0 : p.total_degree() + 1);
    for (const auto& [e, v] : p.terms()) c[e[0]] = v;
    return c;
}

std::vector<Scalar> uni_rem(std::vector<Scalar> a, const std::vector<Scalar>& b) {
    while (a.size() >= b.size()) {
        Scalar q = a.back() / b.back();
        for (size_t j = 0; j < b.size(); ++j)
            a[a.size() - b.size() + j] -= q * b[j];
        while (!a.empty() && a.back().is_zero()) a.pop_back();
        if (a.empty()) break;
    }
    return a;
}

std::vector<Scalar> uni_gcd(std::vector<Scalar> a, std::vector<Scalar> b) {
    while (!b.empty()) {
        auto r = uni_rem(a, b);
        a = b;
        b = r;
    }
    if (!a.empty()) {
        Scalar lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

std::vector<GaussianRational> uni_exact(const std::vector<Scalar>& c) {
    std::vector<GaussianRational> out;
    for (const auto& s : c) {
        if (s.has_parameter())
            throw std::runtime_error("frequency discovery requires parameter-free relations");
        out.push_back(s.constant_value());
    }
    return out;
}

// degree in the chosen variable, -1 for zero
int degree_in(const MPoly& p, int var) {
    int d = -1;
    for (const auto& [e, c] : p.terms()) d = std::max(d, e[var]);
    return d;
}

// coefficient of var^j as a polynomial in the remaining variable (two-variable
// input only)
MPoly slice_coeff(const MPoly& p, int var, int j) {
    MPoly out(1);
    for (const auto& [e, c] : p.terms())
        if (e[var] == j) out.add_term({e[1 - var]}, c);
    return out;
}

MPoly to_single(const MPoly& p, int var) {
    MPoly out(1);
    for (const auto& [e, c] : p.terms()) out.add_term({e[var]}, c);
    return out;
}

// resultant eliminating the second variable, via the Sylvester determinant
MPoly resultant_var1(const MPoly& f, const MPoly& g) {
    int df = degree_in(f, 1), dg = degree_in(g, 1);
    if (df <= 0 && dg <= 0) throw std::runtime_error("nothing to eliminate");
    if (df <= 0) return to_single(f, 0).pow(dg);
    if (dg <= 0) return to_single(g, 0).pow(df);
    int sz = df + dg;
    std::vector<std::vector<MPoly>> s(sz, std::vector<MPoly>(sz, MPoly(1)));
    for (int r = 0; r < dg; ++r)
        for (int j = 0; j <= df; ++j) s[r][r + j] = slice_coeff(f, 1, df - j);
    for (int r = 0; r < df; ++r)
        for (int j = 0; j <= dg; ++j) s[dg + r][r + j] = slice_coeff(g, 1, dg - j);
    return mpoly_det(s);
}

// maximal minors of the relation matrix; the support of the quotient is their
// common zero set
std::vector<MPoly> relation_minors(const ConstCoeffModule& mod) {
    int p = (int)mod.relations.size();
    if (p < mod.m) return {};
    if (mod.m == 1) {
        std::vector<MPoly> out;
        for (const auto& rel : mod.relations)
            if (!rel[0].is_zero()) out.push_back(rel[0]);
        return out;
    }
    std::vector<MPoly> out;
    std::vector<int> idx(mod.m);
    for (int j = 0; j < mod.m; ++j) idx[j] = j;
    for (;;) {
        std::vector<std::vector<MPoly>> sub;
        for (int j = 0; j < mod.m; ++j) sub.push_back(mod.relations[idx[j]]);
        MPoly d = mpoly_det(sub);
        if (!d.is_zero()) out.push_back(d);
        int j = mod.m - 1;
        while (j >= 0 && idx[j] == p - mod.m + j) --j;
        if (j < 0) break;
        ++idx[j];
        for (int r = j + 1; r < mod.m; ++r) idx[r] = idx[r - 1] + 1;
    }
    return out;
}

bool lex_less(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    for (size_t j = 0; j < a.size() && j < b.size(); ++j) {
        if (a[j] < b[j]) return true;
        if (b[j] < a[j]) return false;
    }
    return a.size() < b.size();
}

}  // namespace

int ExpPolySolution::degree() const {
    int d = -1;
    for (const auto& p : poly) d = std::max(d, p.total_degree());
    return d;
}

MPoly apply_relation(const std::vector<MPoly>& relation, const ExpPolySolution& sol) {
    if (relation.size() != sol.poly.size()) throw std::runtime_error("relation shape mismatch");
    int n = (int)sol.lambda.size();
    MPoly out(n);
    auto shift = shift_subst(n, sol.lambda);
    for (size_t i = 0; i < relation.size(); ++i) {
        MPoly q = relation[i].compose(shift);
        for (const auto& [alpha, c] : q.terms()) {
            MPoly d = sol.poly[i];
            for (int v = 0; v < n && !d.is_zero(); ++v)
                for (int j = 0; j < alpha[v] && !d.is_zero(); ++j) d = d.derivative(v);
            out += d * c;
        }
    }
    return out;
}

std::vector<ExpPolySolution> solve_at_exponent(const ConstCoeffModule& mod,
                                               const std::vector<Scalar>& lambda, int k) {
    validate(mod);
    if ((int)lambda.size() != mod.n) throw std::runtime_error("exponent length mismatch");
    if (k < 1) throw std::runtime_error("the degree bound must be positive");

    auto monos = mi_upto(mod.n, k - 1);
    std::map<MultiIndex, int> pos;
    for (size_t s = 0; s < monos.size(); ++s) pos[monos[s]] = (int)s;
    size_t cols = mod.m * monos.size();
    auto shift = shift_subst(mod.n, lambda);

    Mat a;
    for (const auto& rel : mod.relations) {
        Mat rows(monos.size(), Vec(cols));
        for (int i = 0; i < mod.m; ++i) {
            MPoly q = rel[i].compose(shift);
            for (const auto& [alpha, c] : q.terms())
                for (size_t s = 0; s < monos.size(); ++s) {
                    if (!mi_leq(alpha, monos[s])) continue;
                    int row = pos.at(mi_sub(monos[s], alpha));
                    rows[row][i * monos.size() + s] += c * falling(monos[s], alpha);
                }
        }
        for (auto& r : rows) a.push_back(std::move(r));
    }

    std::vector<ExpPolySolution> out;
    for (const auto& v : nullspace(a)) {
        ExpPolySolution sol;
        sol.lambda = lambda;
        sol.poly.assign(mod.m, MPoly(mod.n));
        for (size_t c = 0; c < cols; ++c)
            if (!v[c].is_zero())
                sol.poly[c / monos.size()].add_term(monos[c % monos.size()], v[c]);
        out.push_back(std::move(sol));
    }
    return out;
}

ModuleDimension module_dimension(const ConstCoeffModule& mod,
                                 const std::vector<std::vector<Scalar>>& candidates, int cap) {
    validate(mod);
    auto sorted = candidates;
    std::sort(sorted.begin(), sorted.end(), lex_less);
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    ModuleDimension md;
    for (const auto& lambda : sorted) {
        std::vector<int> dims = {(int)solve_at_exponent(mod, lambda, 1).size()};
        int stable = -1;
        for (int k = 2; k <= cap; ++k) {
            int d = (int)solve_at_exponent(mod, lambda, k).size();
            if (d == dims.back()) {
                stable = d;
                break;
            }
            dims.push_back(d);
        }
        if (stable < 0) throw std::runtime_error("module not visibly finite-dimensional");
        if (stable == 0) continue;
        FrequencyData fd;
        fd.lambda = lambda;
        fd.multiplicity = stable;
        int prev = 0;
        for (size_t j = 0; j < dims.size(); ++j) {
            for (int c = prev; c < dims[j]; ++c) fd.basis_degrees.push_back((int)j);
            prev = dims[j];
        }
        md.dimension += stable;
        md.frequencies.push_back(std::move(fd));
    }
    return md;
}

ExponentCandidates find_exponent_candidates(const ConstCoeffModule& mod) {
    validate(mod);
    if (mod.n > 2)
        throw std::runtime_error("frequency discovery is built in only for one or two variables");

    ExponentCandidates out;
    out.complete = true;

    if ((int)mod.relations.size() < mod.m) {
        out.complete = false;
        out.note = "fewer relations than components";
        return out;
    }
    auto minors = relation_minors(mod);
    if (minors.empty()) {
        out.complete = false;
        out.note = "relation matrix is everywhere singular";
        return out;
    }

    if (mod.n == 1) {
        std::vector<Scalar> g = uni_coeffs(minors[0]);
        for (size_t j = 1; j < minors.size(); ++j) g = uni_gcd(g, uni_coeffs(minors[j]));
        if (g.size() <= 1) {
            out.note = "no common frequencies";
            return out;
        }
        auto res = gaussian_rational_roots(uni_exact(g));
        for (const auto& [r, mult] : res.roots) out.lambdas.push_back({Scalar(r)});
        if (!res.complete()) {
            out.complete = false;
            out.note = "unsolved factor of degree " + std::to_string(res.unsolved_degree);
        }
        return out;
    }

    // two variables: eliminate the second, then walk the fibers
    std::vector<MPoly> elim;
    for (const auto& q : minors)
        if (degree_in(q, 1) <= 0) elim.push_back(to_single(q, 0));
    for (size_t a = 0; a < minors.size(); ++a)
        for (size_t b = a + 1; b < minors.size(); ++b) {
            if (degree_in(minors[a], 1) <= 0 && degree_in(minors[b], 1) <= 0) continue;
            MPoly r = resultant_var1(minors[a], minors[b]);
            if (!r.is_zero()) elim.push_back(r);
        }
    if (elim.empty()) {
        out.complete = false;
        out.note = "zero set is positive-dimensional";
        return out;
    }
    std::vector<Scalar> g1 = uni_coeffs(elim[0]);
    for (size_t j = 1; j < elim.size(); ++j) g1 = uni_gcd(g1, uni_coeffs(elim[j]));
    if (g1.size() <= 1) {
        out.note = "no common frequencies";
        return out;
    }
    auto res1 = gaussian_rational_roots(uni_exact(g1));
    if (!res1.complete()) {
        out.complete = false;
        out.note = "unsolved factor of degree " + std::to_string(res1.unsolved_degree);
    }
    for (const auto& [a, mult] : res1.roots) {
        std::vector<MPoly> fiber_subst = {MPoly::constant(1, Scalar(a)), MPoly::variable(1, 0)};
        std::vector<Scalar> gf;
        bool first = true, all_zero = true;
        for (const auto& q : minors) {
            MPoly h = q.compose(fiber_subst);
            if (h.is_zero()) continue;
            all_zero = false;
            gf = first ? uni_coeffs(h) : uni_gcd(gf, uni_coeffs(h));
            first = false;
        }
        if (all_zero) {
            out.complete = false;
            out.note = "fiber is positive-dimensional";
            continue;
        }
        if (gf.size() <= 1) continue;
        auto res2 = gaussian_rational_roots(uni_exact(gf));
        if (!res2.complete()) {
            out.complete = false;
            out.note = "unsolved factor of degree " + std::to_string(res2.unsolved_degree);
        }
        for (const auto& [b, m2] : res2.roots)
            out.lambdas.push_back({Scalar(a), Scalar(b)});
    }
    std::sort(out.lambdas.begin(), out.lambdas.end(), lex_less);
    out.lambdas.erase(std::unique(out.lambdas.begin(), out.lambdas.end()), out.lambdas.end());
    return out;
}

bool is_semisimple(const ConstCoeffModule& mod,
                   const std::vector<std::vector<Scalar>>& candidates, int cap) {
    auto md = module_dimension(mod, candidates, cap);
    for (const auto& f : md.frequencies)
        for (int d : f.basis_degrees)
            if (d > 0) return false;
    return true;
}

}  // namespace regsing

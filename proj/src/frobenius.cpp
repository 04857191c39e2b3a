#include "regsing/frobenius.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace regsing {

namespace {

struct SigmaData {
    bool x_dep = false;
    std::vector<std::vector<SigmaStarOp>> s;
};

SigmaData sigma_data(const OpMatrix& p) {
    SigmaData d;
    d.s = p.sigma_star_matrix();
    for (const auto& row : d.s)
        for (const auto& e : row) {
            if (e.has_dx())
                throw std::runtime_error("sigma_star image carries Dx terms; the solver needs D_star");
            if (e.x_dependent()) d.x_dep = true;
        }
    return d;
}

// entry of the sigma_star matrix with theta evaluated at v, as an x-polynomial
MPoly eval_theta(const SigmaStarOp& e, const std::vector<Scalar>& v, int nx) {
    MPoly acc(nx);
    for (const auto& [key, a] : e.terms()) {
        Scalar f(1);
        for (size_t i = 0; i < key.alpha.size(); ++i) f *= v[i].pow(key.alpha[i]);
        acc += a * f;
    }
    return acc;
}

std::vector<Scalar> shifted(const MultiIndex& gamma) {
    std::vector<Scalar> v;
    v.reserve(gamma.size());
    for (int g : gamma) v.push_back(Scalar(static_cast<long>(g)));
    return v;
}

// Level-by-level recursion.  Writing q = sigma-part + rem, every term of rem
// raises the total t-degree, so the coefficient at a level is determined by
// inverting the level matrix against contributions of strictly lower levels.
// Levels under an element of sigma hold prescribed data and are consistency
// checked instead of solved.
std::map<MultiIndex, std::vector<MPoly>> run_recursion(
    const OpMatrix& q, const std::vector<TruncSeries>& f, const std::vector<MultiIndex>& sigma,
    const std::map<MultiIndex, std::vector<MPoly>>& seed, int T, const char* seed_err) {
    const int m = q.m(), n = q.n(), nx = q.nx();
    const int X = q.x_order();
    if (q.t_order() < T)
        throw std::runtime_error("operator truncation is below the requested series order");
    SigmaData sd = sigma_data(q);

    std::set<MultiIndex> closure;
    for (const auto& a : mi_upto(n, T))
        for (const auto& s : sigma)
            if (mi_leq(a, s)) {
                closure.insert(a);
                break;
            }

    OpMatrix rem = q;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            rem.at(i, j) = q.at(i, j) - operator_from_sigma(sd.s[i][j], q.t_order(), X);

    std::map<MultiIndex, std::vector<MPoly>> levels;
    // accumulated rem-image of all finished levels
    std::vector<TruncSeries> w(m, TruncSeries(n, nx, T, X));
    for (int level = 0; level <= T; ++level) {
        std::vector<TruncSeries> delta(m, TruncSeries(n, nx, T, X));
        for (const auto& ao : mi_grade(n, level)) {
            std::vector<Scalar> val = shifted(ao);
            std::vector<MPoly> rhs(m, MPoly(nx));
            for (int r = 0; r < m; ++r) {
                if (!f.empty()) rhs[r] += f[r].coeff(ao);
                rhs[r] -= w[r].coeff(ao);
            }

            std::vector<MPoly> u(m, MPoly(nx));
            if (closure.count(ao)) {
                auto it = seed.find(ao);
                if (it != seed.end()) {
                    if (static_cast<int>(it->second.size()) != m)
                        throw std::runtime_error("seed length mismatch");
                    for (int r = 0; r < m; ++r) u[r] = it->second[r].truncate_degree(X);
                }
                for (int r = 0; r < m; ++r) {
                    MPoly lhs(nx);
                    for (int s = 0; s < m; ++s)
                        lhs += eval_theta(sd.s[r][s], val, nx) * u[s];
                    if (lhs.truncate_degree(X) != rhs[r]) throw std::runtime_error(seed_err);
                }
            } else {
                std::vector<std::vector<MPoly>> mx(m, std::vector<MPoly>(m));
                Mat m0(m, Vec(m));
                bool x_free = true;
                for (int r = 0; r < m; ++r)
                    for (int s = 0; s < m; ++s) {
                        mx[r][s] = eval_theta(sd.s[r][s], val, nx);
                        m0[r][s] = mx[r][s].constant_term();
                        if (!mx[r][s].is_constant()) x_free = false;
                    }
                auto inv = mat_inverse(m0);
                if (!inv) {
                    if (sd.x_dep)
                        throw std::runtime_error("level matrix is singular at the x expansion point");
                    throw std::runtime_error(
                        "level matrix is singular outside the prescribed resonance set");
                }
                if (x_free) {
                    for (int r = 0; r < m; ++r)
                        for (int s = 0; s < m; ++s) u[r] += rhs[s] * (*inv)[r][s];
                } else {
                    // peel the x-dependent part degree by degree; it only feeds
                    // lower-degree parts of u into higher ones
                    for (int d = 0; d <= X; ++d) {
                        std::vector<MPoly> res(m, MPoly(nx));
                        for (int r = 0; r < m; ++r) {
                            res[r] = rhs[r].homogeneous_part(d);
                            for (int s = 0; s < m; ++s) {
                                MPoly off = mx[r][s] - MPoly::constant(nx, m0[r][s]);
                                res[r] -= (off * u[s]).homogeneous_part(d);
                            }
                        }
                        for (int r = 0; r < m; ++r)
                            for (int s = 0; s < m; ++s) u[r] += res[s] * (*inv)[r][s];
                    }
                }
            }
            levels[ao] = u;
            for (int r = 0; r < m; ++r) delta[r].add_term(ao, u[r]);
        }
        if (level < T) {
            std::vector<TruncSeries> push = rem.apply(delta);
            for (int r = 0; r < m; ++r) w[r] = w[r] + push[r];
        }
    }
    return levels;
}

std::optional<std::vector<Scalar>> x_expansion_point(const OpMatrix& p) {
    auto sm = p.sigma_star_matrix();
    for (const auto& row : sm)
        for (const auto& e : row)
            if (e.x_dependent()) return std::vector<Scalar>(p.nx(), Scalar(0));
    return std::nullopt;
}

void require_d_star(const OpMatrix& p) {
    if (!p.is_D_star_matrix().ok)
        throw std::runtime_error("series solver requires an operator in the class D_star");
}

LogSeriesSolution package_plain(const OpMatrix& p, const std::vector<Scalar>& lambda,
                                std::map<MultiIndex, std::vector<MPoly>> levels, int T) {
    LogSeriesSolution u;
    u.lambda = lambda;
    u.m = p.m();
    u.nx = p.nx();
    u.t_order = T;
    MultiIndex kz = mi_zero(p.n());
    for (auto& [a, v] : levels) {
        bool nonzero = false;
        for (const auto& c : v) nonzero = nonzero || !c.is_zero();
        if (nonzero) u.coeffs[{a, kz}] = std::move(v);
    }
    return u;
}

BigInt factorial(int k) {
    BigInt f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

}  // namespace

std::vector<MPoly> LogSeriesSolution::coeff(const MultiIndex& alpha,
                                            const MultiIndex& kappa) const {
    auto it = coeffs.find({alpha, kappa});
    if (it != coeffs.end()) return it->second;
    return std::vector<MPoly>(m, MPoly(nx));
}

LogSeriesSolution solve_series(const OpMatrix& p, const std::vector<Scalar>& lambda,
                               const std::vector<MPoly>& seed, int T) {
    require_d_star(p);
    if (static_cast<int>(lambda.size()) != p.n())
        throw std::runtime_error("exponent length mismatch");
    if (static_cast<int>(seed.size()) != p.m()) throw std::runtime_error("seed length mismatch");
    ResonanceReport rep = resonance_set(indicial_matrix(p, x_expansion_point(p)), lambda, T);
    if (!rep.hits.empty())
        throw ResonanceError("resonant exponent inside the truncation range", rep);
    OpMatrix q = p.conjugate(lambda);
    auto levels = run_recursion(q, {}, {mi_zero(p.n())}, {{mi_zero(p.n()), seed}}, T,
                                "seed is not in the nullspace of the indicial matrix");
    return package_plain(p, lambda, std::move(levels), T);
}

std::vector<MPoly> boundary_value(const LogSeriesSolution& u) {
    if (u.log_degree != 0)
        throw std::runtime_error("boundary value is defined on log-free solutions only");
    int n = static_cast<int>(u.lambda.size());
    return u.coeff(mi_zero(n), mi_zero(n));
}

LogSeriesSolution solve_inhomogeneous(const OpMatrix& p, const std::vector<TruncSeries>& f,
                                      const std::vector<MultiIndex>& sigma,
                                      const std::map<MultiIndex, std::vector<MPoly>>& seed,
                                      int T) {
    require_d_star(p);
    if (static_cast<int>(f.size()) != p.m())
        throw std::runtime_error("right-hand side length mismatch");
    auto levels = run_recursion(p, f, sigma, seed, T,
                                "prescribed coefficients are inconsistent with the right-hand side");
    return package_plain(p, std::vector<Scalar>(p.n(), Scalar(0)), std::move(levels), T);
}

OpMatrix log_lift(const OpMatrix& p, int d) {
    const int n = p.n(), m = p.m();
    auto basis = mi_upto(n, d);
    std::map<MultiIndex, int> pos;
    for (size_t i = 0; i < basis.size(); ++i) pos[basis[i]] = static_cast<int>(i);
    RegOperator zero(n, p.nx(), p.t_order(), p.x_order());
    OpMatrix lifted(m * static_cast<int>(basis.size()), zero);
    // theta_i acts on t^lambda (log t)^kappa blocks as theta_i plus a
    // nilpotent shift towards higher log powers; expand theta^alpha
    // accordingly
    for (int r = 0; r < m; ++r)
        for (int s = 0; s < m; ++s)
            for (const auto& [key, a] : p.at(r, s).terms())
                for (const auto& delta : mi_below(key.alpha)) {
                    OpKey part{mi_sub(key.alpha, delta), key.beta};
                    for (size_t ka = 0; ka < basis.size(); ++ka) {
                        auto it = pos.find(mi_add(basis[ka], delta));
                        if (it == pos.end()) continue;
                        GaussianRational fac = mi_binom(key.alpha, delta);
                        for (int i = 0; i < n; ++i)
                            for (int j = 1; j <= delta[i]; ++j) fac *= basis[ka][i] + j;
                        lifted.at(static_cast<int>(ka) * m + r, it->second * m + s)
                            .add_term(part, a * Scalar(fac));
                    }
                }
    return lifted;
}

std::vector<LogSeriesSolution> solve_with_logs(const std::vector<OpMatrix>& system,
                                               const std::vector<Scalar>& lambda,
                                               const std::vector<ExpPolySolution>& indicial_basis,
                                               int T) {
    if (system.empty()) throw std::runtime_error("empty system");
    const OpMatrix& p1 = system.front();
    require_d_star(p1);
    const int n = p1.n(), m = p1.m(), nx = p1.nx();
    if (static_cast<int>(lambda.size()) != n) throw std::runtime_error("exponent length mismatch");
    ResonanceReport rep = resonance_set(indicial_matrix(p1, x_expansion_point(p1)), lambda, T);
    if (!rep.hits.empty())
        throw ResonanceError("separation condition fails: the exponent is resonant", rep);

    int d = 0;
    for (const auto& b : indicial_basis) d = std::max(d, b.degree());
    auto basis = mi_upto(n, d);
    OpMatrix q = log_lift(p1, d).conjugate(lambda);

    std::vector<LogSeriesSolution> out;
    for (const auto& b : indicial_basis) {
        if (b.lambda != lambda) throw std::runtime_error("indicial basis exponent mismatch");
        if (static_cast<int>(b.poly.size()) != m)
            throw std::runtime_error("indicial basis component mismatch");
        std::vector<MPoly> seed(m * basis.size(), MPoly(nx));
        for (size_t k = 0; k < basis.size(); ++k)
            for (int r = 0; r < m; ++r)
                seed[k * m + r] = MPoly::constant(nx, b.poly[r].coeff(basis[k]));
        auto levels = run_recursion(q, {}, {mi_zero(n)}, {{mi_zero(n), seed}}, T,
                                    "indicial basis element does not solve the theta module");
        LogSeriesSolution u;
        u.lambda = lambda;
        u.m = m;
        u.nx = nx;
        u.t_order = T;
        for (const auto& [a, v] : levels)
            for (size_t k = 0; k < basis.size(); ++k) {
                std::vector<MPoly> comp(v.begin() + k * m, v.begin() + (k + 1) * m);
                bool nonzero = false;
                for (const auto& c : comp) nonzero = nonzero || !c.is_zero();
                if (!nonzero) continue;
                u.log_degree = std::max(u.log_degree, mi_abs(basis[k]));
                u.coeffs[{a, basis[k]}] = std::move(comp);
            }
        out.push_back(std::move(u));
    }
    return out;
}

ResidualReport verify_residual(const OpMatrix& p, const LogSeriesSolution& u, int T) {
    const int n = p.n(), m = p.m(), nx = p.nx();
    if (static_cast<int>(u.lambda.size()) != n || u.m != m)
        throw std::runtime_error("solution shape mismatch");
    ResidualReport rep;
    if (p.is_zero()) return rep;
    const int top = std::min(T + p.order(), p.t_order());
    const int ti = std::min(T, u.t_order);

    auto basis = mi_upto(n, u.log_degree);
    std::map<MultiIndex, int> pos;
    for (size_t i = 0; i < basis.size(); ++i) pos[basis[i]] = static_cast<int>(i);
    OpMatrix q = log_lift(p, u.log_degree).conjugate(u.lambda);

    std::vector<TruncSeries> stacked(m * basis.size(), TruncSeries(n, nx, top, p.x_order()));
    for (const auto& [key, v] : u.coeffs) {
        auto it = pos.find(key.second);
        if (it == pos.end()) throw std::runtime_error("log power above the declared degree");
        for (int r = 0; r < m; ++r) stacked[it->second * m + r].add_term(key.first, v[r]);
    }
    std::vector<TruncSeries> w = q.apply(stacked);
    for (size_t k = 0; k < basis.size(); ++k)
        for (int r = 0; r < m; ++r)
            for (const auto& [a, val] : w[k * m + r].coefficients()) {
                ResidualEntry e{a, basis[k], r, val};
                if (mi_abs(a) <= ti)
                    rep.interior.push_back(std::move(e));
                else if (mi_abs(a) <= top)
                    rep.boundary.push_back(std::move(e));
            }
    return rep;
}

bool check_involutive(const OpMatrix& p, const std::vector<OpMatrix>& p_list,
                      const std::vector<OpMatrix>& s_list,
                      const std::vector<std::vector<OpMatrix>>& t_list) {
    if (p_list.size() != s_list.size() || p_list.size() != t_list.size())
        throw std::runtime_error("involutive data size mismatch");
    for (const auto& row : t_list)
        if (row.size() != p_list.size()) throw std::runtime_error("involutive data size mismatch");
    for (size_t i = 0; i < p_list.size(); ++i) {
        OpMatrix e = commutator(p, p_list[i]) - s_list[i] * p;
        for (size_t j = 0; j < p_list.size(); ++j) e = e - t_list[i][j] * p_list[j];
        if (!e.is_zero()) return false;
    }
    // the closure only respects boundary data when the cofactors of the p_j
    // carry no indicial part
    for (const auto& row : t_list)
        for (const auto& tij : row)
            for (const auto& srow : tij.sigma_star_matrix())
                for (const auto& entry : srow)
                    if (!entry.is_zero()) return false;
    return true;
}

bool InducedReport::pass() const {
    for (const auto& r : residuals)
        if (!r.pass()) return false;
    return true;
}

InducedReport verify_induced(const std::vector<OpMatrix>& system, const LogSeriesSolution& u,
                             int T) {
    if (system.empty()) throw std::runtime_error("empty system");
    if (!verify_residual(system.front(), u, T).pass())
        throw std::runtime_error("the solution fails its defining operator");
    InducedReport rep;
    for (size_t i = 1; i < system.size(); ++i)
        rep.residuals.push_back(verify_residual(system[i], u, T));
    return rep;
}

namespace {

// one t-level / log-power / component / x-monomial slot of a z-jet chart
using ChartKey = std::tuple<int, int, int, MultiIndex>;
using Chart = std::map<ChartKey, LaurentJet>;

void chart_accumulate(Chart& chart, const ChartKey& key, LaurentJet jet) {
    jet.trim_leading();
    auto it = chart.find(key);
    if (it == chart.end())
        chart.emplace(key, std::move(jet));
    else
        it->second = jet_add(it->second, jet);
}

GaussianRational value_at_zero(const Scalar& s) {
    return s.num().eval(GaussianRational(0)) / s.den().eval(GaussianRational(0));
}

// Member re-expanded around the base exponent mu <= lambda(0): the factor
// t^lambda(z) is t^lambda(0) exp(delta(z) log t), so powers of delta(z) feed
// the log columns.  Every jet is exact through z^zt.
Chart to_chart(const LogSeriesSolution& u, const GaussianRational& mu, int zt, int T) {
    const Scalar& lam = u.lambda[0];
    GaussianRational gap = value_at_zero(lam) - mu;
    if (!gap.is_real() || denominator(gap.re) != 1 || gap.re < 0)
        throw std::runtime_error("chart base does not sit below the member exponent");
    int g = static_cast<int>(numerator(gap.re));
    Scalar delta = lam - Scalar(value_at_zero(lam));

    Chart chart;
    for (const auto& [key, v] : u.coeffs) {
        int level = key.first[0] + g;
        if (level > T) continue;
        int kap0 = key.second[0];
        for (int r = 0; r < u.m; ++r)
            for (const auto& [e, s] : v[r].terms()) {
                if (-pole_order(s) > zt) continue;  // above-window content only
                LaurentJet base = laurent_expand(s, zt);
                Scalar dpow(1);
                for (int j = 0;; ++j) {
                    if (j > 0) {
                        dpow *= delta;
                        if (dpow.is_zero()) break;  // constant exponent
                    }
                    Scalar term =
                        dpow * Scalar(GaussianRational(BigRat(BigInt(1), factorial(j))));
                    int vanish = -pole_order(term);  // j times the valuation of delta
                    if (base.base + vanish > zt) break;
                    LaurentJet prod = jet_mul(base, laurent_expand(term, zt - base.base));
                    chart_accumulate(chart, {level, kap0 + j, r, e}, std::move(prod));
                }
            }
    }
    return chart;
}

int chart_pole(const Chart& chart) {
    int pole = 0;
    for (const auto& [key, jet] : chart)
        if (!jet.is_zero()) pole = std::max(pole, -jet.base);
    return pole;
}

// coefficients of one z-power; windows must reach the requested order
std::map<ChartKey, GaussianRational> chart_slice(const Chart& chart, int order) {
    std::map<ChartKey, GaussianRational> s;
    for (const auto& [key, jet] : chart) {
        if (jet.trunc < order)
            throw std::runtime_error("z truncation order is too small for the pole structure");
        GaussianRational v = jet.at(order);
        if (!v.is_zero()) s[key] = v;
    }
    return s;
}

// chart -= c z^-shift other
void chart_subtract(Chart& chart, const Chart& other, const GaussianRational& c, int shift) {
    for (const auto& [key, jet] : other) {
        LaurentJet scaled;
        scaled.base = jet.base - shift;
        scaled.trunc = jet.trunc - shift;
        scaled.coeff = jet.coeff;
        for (auto& x : scaled.coeff) x = -(x * c);
        chart_accumulate(chart, key, std::move(scaled));
    }
}

LogSeriesSolution slice_to_solution(const std::map<ChartKey, GaussianRational>& slice,
                                    const GaussianRational& mu, int m, int nx, int T) {
    LogSeriesSolution u;
    u.lambda = {Scalar(mu)};
    u.m = m;
    u.nx = nx;
    u.t_order = T;
    for (const auto& [key, v] : slice) {
        const auto& [level, kap, comp, e] = key;
        MultiIndex a{level}, k{kap};
        auto it = u.coeffs.find({a, k});
        if (it == u.coeffs.end())
            it = u.coeffs.emplace(std::make_pair(a, k), std::vector<MPoly>(m, MPoly(nx))).first;
        it->second[comp].add_term(e, Scalar(v));
        u.log_degree = std::max(u.log_degree, kap);
    }
    return u;
}

}  // namespace

SolutionFamily family_solve_and_normalize(const OpMatrix& p, const std::vector<Scalar>& exponents,
                                          int T, int Z) {
    if (p.n() != 1)
        throw std::runtime_error("family normalization handles one wall variable");
    require_d_star(p);
    for (const auto& e : exponents)
        if (e.den().degree() != 0)
            throw std::runtime_error("family exponents must be polynomial in z");
    const int m = p.m(), nx = p.nx();
    IndicialMatrix ind = indicial_matrix(p, x_expansion_point(p));

    SolutionFamily fam;
    std::vector<GaussianRational> lam0;  // member exponent at z = 0
    std::vector<int> bound;              // certified pole bound per member
    for (const Scalar& lam : exponents) {
        auto null = nullspace(indicial_eval(ind, {lam}));
        if (null.empty())
            throw std::runtime_error("exponent does not annihilate the indicial matrix");
        ResonanceReport rep = resonance_set(ind, {lam}, T);
        int b = 0;
        for (const auto& h : rep.hits) {
            if (h.identically_zero)
                throw std::runtime_error("exponent is resonant identically in z");
            b += h.z_vanishing_order;
        }
        OpMatrix q = p.conjugate({lam});
        for (const auto& v : null) {
            std::vector<MPoly> seed(m);
            for (int r = 0; r < m; ++r) seed[r] = MPoly::constant(nx, v[r]);
            auto levels = run_recursion(q, {}, {mi_zero(1)}, {{mi_zero(1), seed}}, T,
                                        "seed is not in the nullspace of the indicial matrix");
            fam.members.push_back(package_plain(p, {lam}, std::move(levels), T));
            lam0.push_back(value_at_zero(lam));
            bound.push_back(b);
        }
    }

    const int count = static_cast<int>(fam.members.size());
    fam.pole_profile.assign(count, 0);
    for (int i = 0; i < count; ++i)
        for (const auto& [key, v] : fam.members[i].coeffs)
            for (const auto& c : v)
                for (const auto& [e, s] : c.terms())
                    fam.pole_profile[i] = std::max(fam.pole_profile[i], pole_order(s));

    int max_bound = 0;
    for (int b : bound) max_bound = std::max(max_bound, b);
    if (Z < 0) Z = 2 * max_bound;

    // repair in decreasing order of the limit exponent so every canceller a
    // member may need is finished first
    std::vector<int> order(count);
    for (int i = 0; i < count; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b2) {
        if (lam0[a].re != lam0[b2].re) return lam0[a].re > lam0[b2].re;
        if (lam0[a].im != lam0[b2].im) return lam0[a].im < lam0[b2].im;
        return a < b2;
    });

    fam.combinations.assign(count, NormalizedCombination{});
    std::vector<int> done;
    for (int idx : order) {
        NormalizedCombination combo;
        combo.base = idx;
        combo.coeff.assign(count, Scalar(0));
        combo.coeff[idx] = Scalar(1);
        if (fam.pole_profile[idx] > bound[idx])
            throw std::runtime_error("pole order exceeds the certified bound");
        if (fam.pole_profile[idx] == 0) {
            LogSeriesSolution lim;
            lim.lambda = {Scalar(lam0[idx])};
            lim.m = m;
            lim.nx = nx;
            lim.t_order = T;
            for (const auto& [key, v] : fam.members[idx].coeffs) {
                std::vector<MPoly> ev(m, MPoly(nx));
                bool nonzero = false;
                for (int r = 0; r < m; ++r) {
                    for (const auto& [e, s] : v[r].terms()) {
                        GaussianRational g = s.eval_z(GaussianRational(0));
                        if (!g.is_zero()) ev[r].add_term(e, Scalar(g));
                    }
                    nonzero = nonzero || !ev[r].is_zero();
                }
                if (nonzero) lim.coeffs[key] = std::move(ev);
            }
            combo.limit = std::move(lim);
            fam.combinations[idx] = std::move(combo);
            done.push_back(idx);
            continue;
        }

        int zt = Z + bound[idx];
        Chart chart = to_chart(fam.members[idx], lam0[idx], zt, T);

        // cancellers: repaired combinations a positive integer above this one
        std::vector<int> helpers;
        for (int j : done) {
            GaussianRational gap = lam0[j] - lam0[idx];
            if (gap.is_real() && denominator(gap.re) == 1 && gap.re > 0) helpers.push_back(j);
        }
        std::vector<Chart> helper_charts;
        for (int j : helpers) {
            Chart hc;
            for (int k = 0; k < count; ++k) {
                const Scalar& ck = fam.combinations[j].coeff[k];
                if (ck.is_zero()) continue;
                if (-pole_order(ck) > zt) continue;
                Chart part = to_chart(fam.members[k], lam0[idx], zt, T);
                LaurentJet cj = laurent_expand(ck, zt);
                for (const auto& [key, jet] : part) chart_accumulate(hc, key, jet_mul(jet, cj));
            }
            if (chart_pole(hc) > 0)
                throw std::runtime_error("normalized combination still carries a pole");
            helper_charts.push_back(std::move(hc));
        }

        Scalar zinv = Scalar(1) / Scalar::z();
        while (true) {
            int pole = chart_pole(chart);
            if (pole <= 0) break;
            if (combo.steps >= bound[idx])
                throw std::runtime_error("pole reduction exceeded the certified order bound");
            auto principal = chart_slice(chart, -pole);
            if (helpers.empty())
                throw std::runtime_error(
                    "pole reduction failed: the principal part is not spanned by higher exponents");
            std::set<ChartKey> keys;
            for (const auto& [key, v] : principal) keys.insert(key);
            std::vector<std::map<ChartKey, GaussianRational>> cols;
            for (size_t h = 0; h < helpers.size(); ++h) {
                cols.push_back(chart_slice(helper_charts[h], 0));
                for (const auto& [key, v] : cols.back()) keys.insert(key);
            }
            Mat a(keys.size(), Vec(helpers.size(), Scalar(0)));
            Vec b(keys.size(), Scalar(0));
            int row = 0;
            for (const auto& key : keys) {
                for (size_t h = 0; h < helpers.size(); ++h) {
                    auto it = cols[h].find(key);
                    if (it != cols[h].end()) a[row][h] = Scalar(it->second);
                }
                auto it = principal.find(key);
                if (it != principal.end()) b[row] = Scalar(it->second);
                ++row;
            }
            auto sol = solve(a, b);
            if (!sol)
                throw std::runtime_error(
                    "pole reduction failed: the principal part is not spanned by higher exponents");
            for (size_t h = 0; h < helpers.size(); ++h) {
                if ((*sol)[h].is_zero()) continue;
                GaussianRational c = (*sol)[h].constant_value();
                chart_subtract(chart, helper_charts[h], c, pole);
                Scalar factor = Scalar(c) * zinv.pow(pole);
                for (int k = 0; k < count; ++k)
                    combo.coeff[k] -= factor * fam.combinations[helpers[h]].coeff[k];
            }
            ++combo.steps;
        }
        combo.limit = slice_to_solution(chart_slice(chart, 0), lam0[idx], m, nx, T);
        fam.combinations[idx] = std::move(combo);
        done.push_back(idx);
    }
    return fam;
}

int expected_solution_count(const std::vector<OpMatrix>& system) {
    if (system.empty()) throw std::runtime_error("empty system");
    int r = system.front().m();
    for (const auto& p : system) r *= p.order();
    return r;
}

}  // namespace regsing

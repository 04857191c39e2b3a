#include "regsing/indicial.hpp"

#include "regsing/rootfind.hpp"

#include <deque>
#include <set>
#include <stdexcept>

namespace regsing {

namespace {

// lcm of nonzero z-polynomials, monic
ZPoly zpoly_lcm(const ZPoly& a, const ZPoly& b) {
    ZPoly g = zpoly_gcd(a, b);
    ZPoly q, r;
    zpoly_divrem(b, g, q, r);
    ZPoly l = a * q;
    return l.scaled(GaussianRational(1) / l.leading());
}

ZPoly zpoly_exact_div(const ZPoly& a, const ZPoly& b) {
    ZPoly q, r;
    zpoly_divrem(a, b, q, r);
    if (!r.is_zero()) throw std::runtime_error("inexact polynomial division");
    return q;
}

GaussianRational eval_coeffs(const std::vector<GaussianRational>& c, const GaussianRational& v) {
    GaussianRational acc;
    for (size_t k = c.size(); k-- > 0;) acc = acc * v + c[k];
    return acc;
}

bool all_zero(const std::vector<GaussianRational>& c) {
    for (const auto& g : c)
        if (!g.is_zero()) return false;
    return true;
}

BigInt factorial(int k) {
    BigInt f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

BigInt multinom(int d, const MultiIndex& kappa) {
    BigInt r = factorial(d);
    for (int v : kappa) r /= factorial(v);
    return r;
}

BigRat real_value(const MPoly& h, const std::vector<BigRat>& pt) {
    std::vector<GaussianRational> v;
    v.reserve(pt.size());
    for (const auto& c : pt) v.push_back(GaussianRational(c));
    return h.eval_gr(v).re;
}

BigInt ceil_rat(const BigRat& r) {
    BigInt n = numerator(r), d = denominator(r);
    BigInt q = n / d;
    if (q * d < n) ++q;
    return q;
}

}  // namespace

IndicialMatrix indicial_matrix(const OpMatrix& p, const std::optional<std::vector<Scalar>>& x0) {
    if (p.m() == 0) throw std::runtime_error("empty operator matrix");
    auto ss = p.sigma_star_matrix();
    IndicialMatrix ind;
    ind.m = p.m();
    ind.n = p.n();
    for (int i = 0; i < ind.m; ++i)
        for (int j = 0; j < ind.m; ++j)
            if (ss[i][j].x_dependent()) ind.x_dependent = true;
    ind.e.assign(ind.m, std::vector<MPoly>(ind.m, MPoly(ind.n)));
    for (int i = 0; i < ind.m; ++i)
        for (int j = 0; j < ind.m; ++j) ind.e[i][j] = ss[i][j].as_xi_poly(x0);
    return ind;
}

MPoly indicial_det(const IndicialMatrix& ind) { return mpoly_det(ind.e); }

Mat indicial_eval(const IndicialMatrix& ind, const std::vector<Scalar>& lam) {
    if ((int)lam.size() != ind.n) throw std::runtime_error("exponent length mismatch");
    Mat a(ind.m, Vec(ind.m));
    for (int i = 0; i < ind.m; ++i)
        for (int j = 0; j < ind.m; ++j) a[i][j] = ind.e[i][j].eval(lam);
    return a;
}

ResonanceReport resonance_set(const IndicialMatrix& ind, const std::vector<Scalar>& lambda,
                              int G) {
    if ((int)lambda.size() != ind.n) throw std::runtime_error("exponent length mismatch");
    if (G < 1) throw std::runtime_error("the search bound must be positive");
    ResonanceReport rep;
    rep.lambda = lambda;
    rep.search_bound = G;

    MPoly D = indicial_det(ind);
    int n = ind.n;

    for (const auto& gamma : mi_upto(n, G)) {
        if (mi_abs(gamma) == 0) continue;
        std::vector<Scalar> vals(n);
        for (int i = 0; i < n; ++i) vals[i] = lambda[i] + Scalar(gamma[i]);
        Scalar d = D.eval(vals);
        if (d.is_zero()) {
            rep.hits.push_back({gamma, -1, true});
        } else {
            int v = -pole_order(d);
            if (v > 0) rep.hits.push_back({gamma, v, false});
        }
    }

    // shift the determinant to the given exponent so hits become the integer
    // points where the value degenerates at z = 0
    std::vector<MPoly> subst;
    for (int i = 0; i < n; ++i)
        subst.push_back(MPoly::variable(n, i) + MPoly::constant(n, lambda[i]));
    MPoly F = D.compose(subst);

    if (F.is_zero()) {
        rep.certified_complete = false;
        rep.note = "indicial determinant is identically zero";
        return rep;
    }

    if (n == 1) {
        // write F(g) = (sum_k ntilde_k(z) g^k) / dcom(z); g is a hit exactly
        // when the z-coefficients N_0..N_v of the numerator all vanish at g,
        // v = valuation of dcom
        int deg = F.total_degree();
        ZPoly dcom(GaussianRational(1));
        for (int k = 0; k <= deg; ++k) {
            Scalar c = F.coeff({k});
            if (!c.is_zero()) dcom = zpoly_lcm(dcom, c.den());
        }
        int vd = dcom.valuation();
        std::vector<std::vector<GaussianRational>> N(vd + 1,
                                                     std::vector<GaussianRational>(deg + 1));
        for (int k = 0; k <= deg; ++k) {
            Scalar c = F.coeff({k});
            if (c.is_zero()) continue;
            ZPoly nt = c.num() * zpoly_exact_div(dcom, c.den());
            for (int j = 0; j <= vd && j <= nt.degree(); ++j) N[j][k] = nt.c[j];
        }
        int jstar = -1;
        for (int j = 0; j <= vd; ++j)
            if (!all_zero(N[j])) {
                jstar = j;
                break;
            }
        if (jstar < 0) {
            rep.certified_complete = false;
            rep.note = "determinant vanishes at the wall for every index";
            return rep;
        }
        std::vector<long> cand;
        try {
            cand = integer_roots_at_least(N[jstar], 1);
        } catch (const std::runtime_error& e) {
            rep.certified_complete = false;
            rep.note = e.what();
            return rep;
        }
        long worst = 0;
        for (long r : cand) {
            bool hit = true;
            for (int j = 0; j <= vd; ++j)
                if (!eval_coeffs(N[j], GaussianRational(r)).is_zero()) {
                    hit = false;
                    break;
                }
            if (hit && r > worst) worst = r;
        }
        if (worst > G) {
            rep.certified_complete = false;
            rep.note = "resonances exist beyond the search bound";
        } else {
            rep.certified_complete = true;
            rep.note = "exact univariate root isolation";
        }
        return rep;
    }

    // several walls: evaluate the shifted determinant at z = 0 and certify
    // positivity of its top part on the simplex; hits then obey an explicit
    // weight bound
    MPoly F0(n);
    for (const auto& [e, c] : F.terms()) {
        if (pole_order(c) > 0) {
            rep.certified_complete = false;
            rep.note = "determinant has a pole at the wall";
            return rep;
        }
        F0.add_term(e, Scalar(c.eval_z(GaussianRational(0))));
    }
    if (F0.is_zero()) {
        rep.certified_complete = false;
        rep.note = "determinant vanishes at the wall for every index";
        return rep;
    }
    for (const auto& [e, c] : F0.terms())
        if (!c.constant_value().im.is_zero()) {
            rep.certified_complete = false;
            rep.note = "complex coefficients block the positivity bound";
            return rep;
        }
    int d = F0.total_degree();
    MPoly H = F0.homogeneous_part(d);
    std::vector<BigRat> bary(n, BigRat(BigInt(1), BigInt(n)));
    BigRat s0 = real_value(H, bary);
    if (s0 == 0) {
        rep.certified_complete = false;
        rep.note = "top part vanishes at the barycenter";
        return rep;
    }
    if (s0 < 0) {
        H = -H;
        F0 = -F0;
    }
    BernsteinCert cert = bernstein_positive_on_simplex(H, 512);
    if (cert.result != CheckResult::pass) {
        rep.certified_complete = false;
        rep.note = "top part positivity not certified";
        return rep;
    }
    BigRat M(0);
    for (const auto& [e, c] : F0.terms()) {
        if (mi_abs(e) == d) continue;
        GaussianRational g = c.constant_value();
        M += abs(g.re) + abs(g.im);
    }
    BigRat eps = cert.eps.re;
    BigInt bound = ceil_rat(M / eps);
    std::string bs = bound.str();
    if (BigRat(BigInt(G)) * eps >= M) {
        rep.certified_complete = true;
        rep.note = "resonance indices are bounded by " + bs;
    } else {
        rep.certified_complete = false;
        rep.note = "search bound below the derived bound " + bs;
    }
    return rep;
}

std::string to_string(CheckResult r) {
    switch (r) {
        case CheckResult::pass: return "pass";
        case CheckResult::fail: return "fail";
        default: return "inconclusive";
    }
}

NondegReport check_nondeg(const OpMatrix& p, const std::optional<std::vector<Scalar>>& x0) {
    if (p.m() == 0) throw std::runtime_error("empty operator matrix");
    auto sb = p.sigma_bar_star_matrix();
    for (int i = 0; i < p.m(); ++i)
        for (int j = 0; j < p.m(); ++j) {
            bool ok = (i == j) ? sb[i][j] == sb[0][0] : sb[i][j].is_zero();
            if (!ok) throw std::runtime_error("sigma_bar_star is not a scalar matrix");
        }
    MPoly sig = sb[0][0].as_xi_poly(x0);
    int n = p.n();

    std::vector<MPoly> grad;
    for (int i = 0; i < n; ++i) grad.push_back(sig.derivative(i));

    std::set<MultiIndex> monos;
    for (const auto& g : grad)
        for (const auto& [e, c] : g.terms()) monos.insert(e);
    Mat a(n, Vec(monos.size()));
    for (int i = 0; i < n; ++i) {
        size_t col = 0;
        for (const auto& e : monos) a[i][col++] = grad[i].coeff(e);
    }
    if (mat_rank(a) == n)
        return {CheckResult::pass, std::nullopt, "xi gradients are linearly independent"};

    int w = 2 * std::max(1, sig.total_degree());
    for (const auto& gamma : mi_upto(n, w)) {
        if (mi_abs(gamma) == 0) continue;
        MPoly comb(n);
        for (int i = 0; i < n; ++i) comb += grad[i] * Scalar(gamma[i]);
        if (comb.is_zero())
            return {CheckResult::fail, gamma, "integer direction annihilates the xi gradient"};
    }
    return {CheckResult::inconclusive, std::nullopt,
            "gradients are dependent but no small integer relation was found"};
}

BernsteinCert bernstein_positive_on_simplex(const MPoly& h, int max_cells) {
    int n = h.nvars();
    if (n <= 0) throw std::runtime_error("positivity check needs at least one variable");
    for (const auto& [e, c] : h.terms())
        if (c.has_parameter() || !c.constant_value().im.is_zero())
            throw std::runtime_error("positivity check requires real parameter-free coefficients");

    BernsteinCert out;
    out.result = CheckResult::fail;
    std::vector<BigRat> bary(n, BigRat(BigInt(1), BigInt(n)));
    if (h.is_zero()) {
        out.witness = {bary};
        return out;
    }
    BigRat v0 = real_value(h, bary);
    if (v0 <= 0) {
        out.witness = {bary};
        return out;
    }
    std::vector<BigRat> pos_pt = bary;
    int d = h.total_degree();

    MPoly su(n);
    for (int k = 0; k < n; ++k) su.add_term(mi_unit(n, k), Scalar(1));
    auto grade = mi_grade(n, d);

    using Cell = std::vector<std::vector<BigRat>>;
    std::deque<Cell> queue;
    Cell top(n);
    for (int k = 0; k < n; ++k) {
        top[k].assign(n, BigRat(0));
        top[k][k] = 1;
    }
    queue.push_back(top);

    GaussianRational eps;
    bool have_eps = false;
    while (!queue.empty()) {
        if (out.cells >= max_cells) {
            out.result = CheckResult::inconclusive;
            return out;
        }
        Cell cell = queue.front();
        queue.pop_front();
        ++out.cells;

        for (const auto& v : cell) {
            BigRat val = real_value(h, v);
            if (val == 0) {
                out.witness = {v};
                out.result = CheckResult::fail;
                return out;
            }
            if (val < 0) {
                out.witness = {v, pos_pt};
                out.result = CheckResult::fail;
                return out;
            }
        }
        pos_pt = cell.front();

        // pull back to the cell and read Bernstein coefficients of degree d;
        // all positive certifies the cell with margin min b
        std::vector<MPoly> subst;
        for (int i = 0; i < n; ++i) {
            MPoly li(n);
            for (int k = 0; k < n; ++k)
                li.add_term(mi_unit(n, k), Scalar(GaussianRational(cell[k][i])));
            subst.push_back(li);
        }
        MPoly q = h.compose(subst);
        MPoly qh(n);
        for (const auto& [e, c] : q.terms()) {
            int gap = d - mi_abs(e);
            qh += MPoly::monomial(n, e, c) * su.pow(gap);
        }
        bool ok = true;
        GaussianRational cell_min;
        bool first = true;
        for (const auto& kappa : grade) {
            Scalar c = qh.coeff(kappa);
            if (c.is_zero()) {
                ok = false;
                break;
            }
            GaussianRational b =
                c.constant_value() / GaussianRational(BigRat(multinom(d, kappa)));
            if (!(b.re > 0)) {
                ok = false;
                break;
            }
            if (first || b.re < cell_min.re) {
                cell_min = b;
                first = false;
            }
        }
        if (ok) {
            if (!have_eps || cell_min.re < eps.re) {
                eps = cell_min;
                have_eps = true;
            }
            continue;
        }

        // bisect the longest edge
        size_t bi = 0, bj = 1;
        BigRat best(-1);
        for (size_t i = 0; i < cell.size(); ++i)
            for (size_t j = i + 1; j < cell.size(); ++j) {
                BigRat d2(0);
                for (int k = 0; k < n; ++k) {
                    BigRat t = cell[i][k] - cell[j][k];
                    d2 += t * t;
                }
                if (d2 > best) {
                    best = d2;
                    bi = i;
                    bj = j;
                }
            }
        std::vector<BigRat> mid(n);
        for (int k = 0; k < n; ++k) mid[k] = (cell[bi][k] + cell[bj][k]) / 2;
        Cell c1 = cell, c2 = cell;
        c1[bi] = mid;
        c2[bj] = mid;
        queue.push_back(c1);
        queue.push_back(c2);
    }
    out.result = CheckResult::pass;
    out.eps = eps;
    return out;
}

ConvergReport check_converg(const OpMatrix& p, const std::optional<std::vector<Scalar>>& x0) {
    if (p.m() == 0) throw std::runtime_error("empty operator matrix");
    auto sb = p.sigma_bar_star_matrix();
    int m = p.m(), n = p.n();
    std::vector<std::vector<MPoly>> em(m, std::vector<MPoly>(m, MPoly(n)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) em[i][j] = sb[i][j].as_xi_poly(x0);
    MPoly H = mpoly_det(em);
    for (const auto& [e, c] : H.terms())
        if (c.has_parameter() || !c.constant_value().im.is_zero())
            throw std::runtime_error("convergence check requires real parameter-free top symbols");

    ConvergReport rep;
    std::vector<BigRat> bary(n, BigRat(BigInt(1), BigInt(n)));
    if (H.is_zero()) {
        rep.result = CheckResult::fail;
        rep.witness = {bary};
        rep.note = "top determinant vanishes identically";
        return rep;
    }
    BigRat v0 = real_value(H, bary);
    if (v0 == 0) {
        rep.result = CheckResult::fail;
        rep.witness = {bary};
        rep.note = "top determinant vanishes at the barycenter";
        return rep;
    }
    if (v0 < 0) H = -H;
    BernsteinCert cert = bernstein_positive_on_simplex(H, 512);
    rep.result = cert.result;
    rep.eps = cert.eps;
    rep.witness = cert.witness;
    rep.cells = cert.cells;
    switch (cert.result) {
        case CheckResult::pass:
            rep.note = "definite on the positive orthant";
            break;
        case CheckResult::fail:
            rep.note = rep.witness.size() == 1 ? "zero on the simplex"
                                               : "sign change on the simplex";
            break;
        default:
            rep.note = "cell budget exhausted";
    }
    return rep;
}

EllipticResult elliptic_combination(const std::vector<MPoly>& symbols, int L) {
    if (symbols.empty()) throw std::runtime_error("no symbols given");
    if (L < 1) throw std::runtime_error("the target degree must be positive");
    int n = symbols[0].nvars();
    for (const auto& s : symbols)
        if (s.nvars() != n) throw std::runtime_error("symbol variable counts differ");

    struct Slot {
        int sym;
        MultiIndex mu;
    };
    std::vector<Slot> slots;
    for (size_t i = 0; i < symbols.size(); ++i) {
        if (symbols[i].is_zero()) continue;
        int d = symbols[i].total_degree();
        if (d > 2 * L) continue;
        for (const auto& mu : mi_upto(n, 2 * L - d)) slots.push_back({(int)i, mu});
    }
    auto rows = mi_upto(n, 2 * L);
    std::map<MultiIndex, int> rowof;
    for (size_t r = 0; r < rows.size(); ++r) rowof[rows[r]] = (int)r;

    Mat a(rows.size(), Vec(slots.size()));
    for (size_t c = 0; c < slots.size(); ++c)
        for (const auto& [e, coef] : symbols[slots[c].sym].terms())
            a[rowof.at(mi_add(e, slots[c].mu))][c] += coef;
    Vec b(rows.size());
    for (int nu = 0; nu < n; ++nu) {
        MultiIndex t = mi_zero(n);
        t[nu] = 2 * L;
        b[rowof.at(t)] = Scalar(1);
    }
    auto sol = solve(a, b);
    EllipticResult out;
    if (!sol) return out;
    out.ok = true;
    out.r.assign(symbols.size(), MPoly(n));
    for (size_t c = 0; c < slots.size(); ++c)
        if (!(*sol)[c].is_zero()) out.r[slots[c].sym].add_term(slots[c].mu, (*sol)[c]);
    return out;
}

}  // namespace regsing

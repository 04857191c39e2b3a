#include "regsing/integrable.hpp"

#include "regsing/linalg.hpp"
#include "regsing/rootfind.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>

namespace regsing {

namespace {

TruncSeries t_monomial(int n, int t_order, const MultiIndex& gamma) {
    TruncSeries s(n, 0, t_order, 0);
    s.add_term(gamma, MPoly::constant(0, Scalar(1)));
    return s;
}

// c * 4 M / (1 - M)^2 with M = t^gamma: the sh^-2 of half the linear form
// whose exponential is M
TruncSeries pair_potential(int n, int t_order, const MultiIndex& gamma, const Scalar& c) {
    TruncSeries one = TruncSeries::constant(n, 0, t_order, 0, Scalar(1));
    TruncSeries m = t_monomial(n, t_order, gamma);
    TruncSeries inv = (one - m).invert();
    return m * inv * inv * (c * Scalar(4));
}

RegOperator theta_i(int n, int t_order, int i) { return RegOperator::theta(n, 0, t_order, 0, i); }

// sum_j (sum_k alpha_k^{(j)} theta_k)^2 written on the Gram matrix of the
// fundamental roots: the flat Laplacian in the wall coordinates
RegOperator gram_laplacian(const std::vector<std::vector<Scalar>>& simple, int t_order) {
    int n = static_cast<int>(simple.size());
    if (n == 0) throw std::runtime_error("empty fundamental system");
    size_t d = simple[0].size();
    RegOperator acc(n, 0, t_order, 0);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            if (simple[k].size() != d) throw std::runtime_error("fundamental root length mismatch");
            Scalar g(0);
            for (size_t j = 0; j < d; ++j) g = g + simple[k][j] * simple[l][j];
            if (!g.is_zero()) acc = acc + theta_i(n, t_order, k) * theta_i(n, t_order, l) * g;
        }
    return acc;
}

// fundamental roots e_1-e_2, ..., e_{n-1}-e_n, e_n behind the coordinates
// t_k = e^{x_k - x_{k+1}}, t_n = e^{x_n}
std::vector<std::vector<Scalar>> sl_simple(int n) {
    std::vector<std::vector<Scalar>> rows(n, std::vector<Scalar>(n, Scalar(0)));
    for (int k = 0; k < n; ++k) {
        rows[k][k] = Scalar(1);
        if (k + 1 < n) rows[k][k + 1] = Scalar(-1);
    }
    return rows;
}

// e_i - e_j, e_i + e_j, e_i, 2 e_i in the sl_simple basis
MultiIndex mi_range(int n, int from, int to, int value) {
    MultiIndex g(n, 0);
    for (int k = from; k <= to; ++k) g[k] = value;
    return g;
}
MultiIndex bc_diff(int n, int i, int j) { return mi_range(n, i, j - 1, 1); }
MultiIndex bc_single(int n, int i) { return mi_range(n, i, n - 1, 1); }
MultiIndex bc_double(int n, int i) { return mi_range(n, i, n - 1, 2); }
MultiIndex bc_sum(int n, int i, int j) {
    MultiIndex g = bc_double(n, j);
    for (int k = i; k < j; ++k) g[k] = 1;
    return g;
}

int positive_rank(const Scalar& s, const char* what) {
    GaussianRational g = s.constant_value();
    if (g.im != 0 || denominator(g.re) != 1 || g.re <= 0)
        throw std::runtime_error(std::string(what) + " must be a positive integer");
    if (g.re > 8) throw std::runtime_error(std::string(what) + " above the supported bound 8");
    return static_cast<int>(numerator(g.re));
}

RegOperator op_retruncate(const RegOperator& a, int t_order) {
    RegOperator out(a.n(), a.nx(), t_order, a.x_order());
    for (const auto& [key, s] : a.terms()) out.add_term(key, s.retruncate(t_order, a.x_order()));
    return out;
}

OpMatrix mat_retruncate(const OpMatrix& a, int t_order) {
    OpMatrix out(a.m(), RegOperator(a.n(), a.nx(), t_order, a.x_order()));
    for (int i = 0; i < a.m(); ++i)
        for (int j = 0; j < a.m(); ++j) out.at(i, j) = op_retruncate(a.at(i, j), t_order);
    return out;
}

// coefficient vector [x^d, x^{d-1} y, ..., y^d] of a homogeneous form
Vec form_coeffs(const MPoly& h, int d) {
    Vec v(d + 1, Scalar(0));
    for (int k = 0; k <= d; ++k) v[k] = h.coeff({d - k, k});
    return v;
}

}  // namespace

RootData bc_root_data(int n, const Scalar& c1, const Scalar& c2, const Scalar& c3) {
    if (n < 1) throw std::runtime_error("rank must be positive");
    RootData data;
    data.simple = sl_simple(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            data.positive.emplace_back(bc_diff(n, i, j), c1);
            data.positive.emplace_back(bc_sum(n, i, j), c1);
        }
    for (int i = 0; i < n; ++i) {
        data.positive.emplace_back(bc_double(n, i), c2);
        data.positive.emplace_back(bc_single(n, i), c3);
    }
    return data;
}

RegOperator root_trig_op(const RootData& data, int t_order) {
    int n = static_cast<int>(data.simple.size());
    RegOperator p = gram_laplacian(data.simple, t_order);
    TruncSeries r(n, 0, t_order, 0);
    for (const auto& [gamma, c] : data.positive) {
        if (static_cast<int>(gamma.size()) != n || mi_abs(gamma) == 0)
            throw std::runtime_error("positive root is not a nonzero combination of the fundamental system");
        r = r + pair_potential(n, t_order, gamma, c);
    }
    return p + RegOperator::from_series(r);
}

RegOperator root_toda_op(const std::vector<std::vector<Scalar>>& simple, int t_order) {
    int n = static_cast<int>(simple.size());
    RegOperator p = gram_laplacian(simple, t_order);
    for (int k = 0; k < n; ++k) p = p + RegOperator::t_var(n, 0, t_order, 0, k);
    return p;
}

RegOperator trig_bc(int n, const Scalar& c1, const Scalar& c2, const Scalar& c3, int t_order) {
    RegOperator p = gram_laplacian(sl_simple(n), t_order);
    TruncSeries r(n, 0, t_order, 0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            r = r + pair_potential(n, t_order, bc_diff(n, i, j), c1) +
                pair_potential(n, t_order, bc_sum(n, i, j), c1);
    for (int k = 0; k < n; ++k)
        r = r + pair_potential(n, t_order, bc_double(n, k), c2) +
            pair_potential(n, t_order, bc_single(n, k), c3);
    return p + RegOperator::from_series(r);
}

RegOperator trig_a_bry(int n, const Scalar& c1, const Scalar& c2, const Scalar& c3, int t_order) {
    RegOperator p = gram_laplacian(sl_simple(n), t_order);
    TruncSeries r(n, 0, t_order, 0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) r = r + pair_potential(n, t_order, bc_diff(n, i, j), c1);
    for (int k = 0; k < n; ++k)
        r = r + t_monomial(n, t_order, bc_single(n, k)) * c2 +
            t_monomial(n, t_order, bc_double(n, k)) * c3;
    return p + RegOperator::from_series(r);
}

RegOperator toda_d_bry(int n, const Scalar& c1, const Scalar& c2, const Scalar& c3, int t_order) {
    if (n < 2) throw std::runtime_error("rank must be at least 2");
    RegOperator p = gram_laplacian(sl_simple(n), t_order);
    TruncSeries r(n, 0, t_order, 0);
    for (int k = 0; k + 1 < n; ++k) r = r + t_monomial(n, t_order, mi_range(n, k, k, 1)) * c1;
    MultiIndex tail(n, 0);
    tail[n - 2] = 1;
    tail[n - 1] = 2;
    r = r + t_monomial(n, t_order, tail) * c1;
    r = r + pair_potential(n, t_order, mi_range(n, n - 1, n - 1, 1), c2) +
        pair_potential(n, t_order, mi_range(n, n - 1, n - 1, 2), c3);
    return p + RegOperator::from_series(r);
}

RegOperator toda_bc(int n, const Scalar& c1, const Scalar& c2, const Scalar& c3, int t_order) {
    RegOperator p = gram_laplacian(sl_simple(n), t_order);
    TruncSeries r(n, 0, t_order, 0);
    for (int k = 0; k + 1 < n; ++k) r = r + t_monomial(n, t_order, mi_range(n, k, k, 1)) * c1;
    r = r + t_monomial(n, t_order, mi_range(n, n - 1, n - 1, 1)) * c2 +
        t_monomial(n, t_order, mi_range(n, n - 1, n - 1, 2)) * c3;
    return p + RegOperator::from_series(r);
}

RegOperator sl2_spherical(const Scalar& k, const Scalar& m, int t_order) {
    TruncSeries one = TruncSeries::constant(1, 0, t_order, 0, Scalar(1));
    TruncSeries t = TruncSeries::t_var(1, 0, t_order, 0, 0);
    TruncSeries f = rational_to_series(one + t * t, one - t * t, t_order, 0);
    TruncSeries vnum = t * (one * k - t * m) * (one * m - t * k);
    TruncSeries vden = (one - t * t) * (one - t * t);
    TruncSeries v = rational_to_series(vnum, vden, t_order, 0);
    RegOperator th = theta_i(1, t_order, 0);
    return RegOperator::from_series(f) * th - th * th -
           RegOperator::constant(1, 0, t_order, 0, Scalar::from_rat(1, 4)) -
           RegOperator::from_series(v);
}

RegOperator sl2_whittaker(const Scalar& c1, const Scalar& m, const Scalar& lambda, int t_order) {
    RegOperator th = theta_i(1, t_order, 0);
    RegOperator half = RegOperator::constant(1, 0, t_order, 0, Scalar::from_rat(1, 2));
    RegOperator t = RegOperator::t_var(1, 0, t_order, 0, 0);
    Scalar lh = lambda + Scalar::from_rat(1, 2);
    return (th - half) * (th - half) * Scalar(-1) + t * t * (c1 * c1) - t * (c1 * m) +
           RegOperator::constant(1, 0, t_order, 0, lh * lh);
}

RegOperator toda2_h(int t_order) {
    RegOperator a = theta_i(2, t_order, 0), b = theta_i(2, t_order, 1);
    return a * a * Scalar(2) - a * b * Scalar(2) + b * b +
           RegOperator::t_var(2, 0, t_order, 0, 0) * Scalar(2);
}

RegOperator toda2_i2(int t_order) {
    RegOperator a = theta_i(2, t_order, 0), b = theta_i(2, t_order, 1);
    return a * b - a * a - RegOperator::t_var(2, 0, t_order, 0, 0);
}

RegOperator sl3_delta2(int t_order, int x_order) {
    RegOperator t1 = RegOperator::theta(2, 3, t_order, x_order, 0) -
                     RegOperator::constant(2, 3, t_order, x_order, Scalar(1));
    RegOperator t2 = RegOperator::theta(2, 3, t_order, x_order, 1) -
                     RegOperator::constant(2, 3, t_order, x_order, Scalar(1));
    RegOperator t1sq = RegOperator::t_var(2, 3, t_order, x_order, 0) *
                       RegOperator::t_var(2, 3, t_order, x_order, 0);
    RegOperator t2sq = RegOperator::t_var(2, 3, t_order, x_order, 1) *
                       RegOperator::t_var(2, 3, t_order, x_order, 1);
    RegOperator dy = RegOperator::dx(2, 3, t_order, x_order, 1);
    RegOperator dz = RegOperator::dx(2, 3, t_order, x_order, 2);
    RegOperator a = RegOperator::dx(2, 3, t_order, x_order, 0) +
                    RegOperator::x_var(2, 3, t_order, x_order, 1) * dz;
    return t1 * t2 - t1 * t1 - t2 * t2 - t2sq * dy * dy - t1sq * t2sq * dz * dz -
           t1sq * a * a;
}

RegOperator sl3_delta3(int t_order, int x_order) {
    RegOperator th1 = RegOperator::theta(2, 3, t_order, x_order, 0);
    RegOperator th2 = RegOperator::theta(2, 3, t_order, x_order, 1);
    RegOperator one = RegOperator::constant(2, 3, t_order, x_order, Scalar(1));
    RegOperator t1sq = RegOperator::t_var(2, 3, t_order, x_order, 0) *
                       RegOperator::t_var(2, 3, t_order, x_order, 0);
    RegOperator t2sq = RegOperator::t_var(2, 3, t_order, x_order, 1) *
                       RegOperator::t_var(2, 3, t_order, x_order, 1);
    RegOperator dy = RegOperator::dx(2, 3, t_order, x_order, 1);
    RegOperator dz = RegOperator::dx(2, 3, t_order, x_order, 2);
    RegOperator a = RegOperator::dx(2, 3, t_order, x_order, 0) +
                    RegOperator::x_var(2, 3, t_order, x_order, 1) * dz;
    return (th1 - one) * (th1 - th2) * (th2 - one) * Scalar(-1) +
           t1sq * t2sq * a * dy * dz * Scalar(2) + (th1 - one) * t2sq * dy * dy -
           (th1 - th2 - one) * t1sq * t2sq * dz * dz - (th2 - one) * t1sq * a * a;
}

std::vector<CatalogEntry> catalog_list() {
    return {
        {"euler", 1, "theta (theta - c) - t on one wall"},
        {"root_toda", 1, "Toda chain for the rank-n wall coordinates: args n"},
        {"root_trig", 4, "trigonometric BC_n system from root data: args n, C1, C2, C3"},
        {"sl2_spherical", 2, "radial hyperbolic Laplacian with K-types: args k, m"},
        {"sl2_whittaker", 3, "Whittaker reduction: args c1, m, lambda"},
        {"sl3_delta2", 0, "degree-2 invariant operator on SL(3,R)/SO(3)"},
        {"sl3_delta3", 0, "degree-3 invariant operator on SL(3,R)/SO(3)"},
        {"toda2", 0, "two-particle Toda Hamiltonian"},
        {"toda2_I2", 0, "commuting integral of toda2"},
        {"toda_bc", 4, "Toda BC_n potential: args n, C1, C2, C3"},
        {"toda_d_bry", 4, "Toda D_n potential with boundary: args n, C1, C2, C3"},
        {"trig_a_bry", 4, "trigonometric A_{n-1} potential with boundary: args n, C1, C2, C3"},
        {"trig_bc", 4, "trigonometric BC_n potential: args n, C1, C2, C3"},
    };
}

CatalogBuild catalog_build(const std::string& name, const std::vector<Scalar>& args, int t_order,
                           int x_order) {
    auto want = [&](size_t k) {
        if (args.size() != k)
            throw std::runtime_error("catalog entry " + name + " takes " + std::to_string(k) +
                                     " arguments, got " + std::to_string(args.size()));
    };
    auto sl_map = [](int n) {
        std::vector<std::vector<Scalar>> rows = sl_simple(n);
        return rows;
    };
    if (name == "euler") {
        want(1);
        RegOperator th = theta_i(1, t_order, 0);
        RegOperator p = th * (th - RegOperator::constant(1, 0, t_order, 0, args[0])) -
                        RegOperator::t_var(1, 0, t_order, 0, 0);
        return {OpMatrix::scalar(p), {}};
    }
    if (name == "root_toda") {
        want(1);
        int n = positive_rank(args[0], "rank");
        return {OpMatrix::scalar(root_toda_op(sl_simple(n), t_order)), sl_map(n)};
    }
    if (name == "root_trig") {
        want(4);
        int n = positive_rank(args[0], "rank");
        return {OpMatrix::scalar(root_trig_op(bc_root_data(n, args[1], args[2], args[3]), t_order)),
                sl_map(n)};
    }
    if (name == "sl2_spherical") {
        want(2);
        return {OpMatrix::scalar(sl2_spherical(args[0], args[1], t_order)),
                {{Scalar(-1)}}};
    }
    if (name == "sl2_whittaker") {
        want(3);
        return {OpMatrix::scalar(sl2_whittaker(args[0], args[1], args[2], t_order)),
                {{Scalar(-1)}}};
    }
    if (name == "sl3_delta2") {
        want(0);
        return {OpMatrix::scalar(sl3_delta2(t_order, x_order)), {}};
    }
    if (name == "sl3_delta3") {
        want(0);
        return {OpMatrix::scalar(sl3_delta3(t_order, x_order)), {}};
    }
    if (name == "toda2") {
        want(0);
        return {OpMatrix::scalar(toda2_h(t_order)), sl_map(2)};
    }
    if (name == "toda2_I2") {
        want(0);
        return {OpMatrix::scalar(toda2_i2(t_order)), sl_map(2)};
    }
    if (name == "toda_bc") {
        want(4);
        int n = positive_rank(args[0], "rank");
        return {OpMatrix::scalar(toda_bc(n, args[1], args[2], args[3], t_order)), sl_map(n)};
    }
    if (name == "toda_d_bry") {
        want(4);
        int n = positive_rank(args[0], "rank");
        return {OpMatrix::scalar(toda_d_bry(n, args[1], args[2], args[3], t_order)), sl_map(n)};
    }
    if (name == "trig_a_bry") {
        want(4);
        int n = positive_rank(args[0], "rank");
        return {OpMatrix::scalar(trig_a_bry(n, args[1], args[2], args[3], t_order)), sl_map(n)};
    }
    if (name == "trig_bc") {
        want(4);
        int n = positive_rank(args[0], "rank");
        return {OpMatrix::scalar(trig_bc(n, args[1], args[2], args[3], t_order)), sl_map(n)};
    }
    throw std::runtime_error("unknown catalog entry " + name);
}

IntegrabilityReport integrability_verify(const OpMatrix& p, const std::vector<OpMatrix>& q_list,
                                         int T) {
    std::vector<OpMatrix> ops;
    ops.push_back(mat_retruncate(p, T));
    for (const auto& q : q_list) ops.push_back(mat_retruncate(q, T));
    IntegrabilityReport rep;
    int s = static_cast<int>(ops.size());
    for (int i = 0; i < s; ++i)
        for (int j = i + 1; j < s; ++j) {
            OpMatrix c = commutator(ops[i], ops[j]);
            ++rep.pairs;
            if (!c.is_zero()) rep.defects.push_back({i, j, c});
        }
    return rep;
}

SplitDirections split_directions(const std::vector<Scalar>& c) {
    if (c.size() < 2) throw std::runtime_error("symbol degree must be positive");
    int m = static_cast<int>(c.size()) - 1;
    std::vector<Scalar> d(m + 1, Scalar(0));
    for (int j = 0; j <= m; ++j) {
        if (j + 1 <= m) d[j] = d[j] + c[j + 1] * Scalar(j + 1);
        if (j >= 1) d[j] = d[j] - c[j - 1] * Scalar(m - j + 1);
    }
    int lo = -1, hi = -1;
    for (int j = 0; j <= m; ++j)
        if (!d[j].is_zero()) {
            if (lo < 0) lo = j;
            hi = j;
        }
    if (lo < 0) throw std::runtime_error("Q symbol is rotation-invariant");

    SplitDirections out;
    out.rotated = d;
    if (lo > 0) out.directions.push_back({Scalar(0), Scalar(1), lo});
    if (hi < m) out.directions.push_back({Scalar(1), Scalar(0), m - hi});
    if (hi > lo) {
        // dehomogenize at u = xi / tau: roots u = b give the factors (xi - b tau)
        std::vector<GaussianRational> q(hi - lo + 1);
        for (int i = 0; i <= hi - lo; ++i) q[i] = d[hi - i].constant_value();
        RootFindResult rr = gaussian_rational_roots(q);
        for (const auto& [root, mult] : rr.roots)
            out.directions.push_back({Scalar(1), Scalar(root), mult});
        out.unresolved_degree = rr.unsolved_degree;
    }
    std::sort(out.directions.begin(), out.directions.end(),
              [](const SplitDirection& u, const SplitDirection& v) {
                  GaussianRational ua = u.a.constant_value(), va = v.a.constant_value();
                  if (ua != va) return ua < va;
                  return u.b.constant_value() < v.b.constant_value();
              });
    return out;
}

SplitReport splitting_membership(const std::vector<std::vector<MPoly>>& r,
                                 const std::vector<SplitDirection>& dirs) {
    SplitReport rep;
    // slot (nu, i) -> s-power -> value, collected over all degrees
    std::map<std::tuple<int, int, int, int>, std::map<int, Scalar>> slots;
    for (int row = 0; row < static_cast<int>(r.size()); ++row)
        for (int col = 0; col < static_cast<int>(r[row].size()); ++col) {
            const MPoly& entry = r[row][col];
            if (entry.nvars() != 2)
                throw std::runtime_error("splitting test is stated in two flat variables");
            for (int deg = 0; deg <= entry.total_degree(); ++deg) {
                MPoly h = entry.homogeneous_part(deg);
                if (h.is_zero()) continue;
                Vec target = form_coeffs(h, deg);
                std::vector<std::pair<int, int>> cols;
                Mat a(deg + 1);
                for (int nu = 0; nu < static_cast<int>(dirs.size()); ++nu) {
                    MPoly l1 = MPoly::variable(2, 0) * dirs[nu].a -
                               MPoly::variable(2, 1) * dirs[nu].b;
                    MPoly l2 = MPoly::variable(2, 0) * dirs[nu].b +
                               MPoly::variable(2, 1) * dirs[nu].a;
                    for (int i = 0; i < dirs[nu].multiplicity && i <= deg; ++i) {
                        Vec v = form_coeffs(l2.pow(i) * l1.pow(deg - i), deg);
                        for (int k = 0; k <= deg; ++k) a[k].push_back(v[k]);
                        cols.emplace_back(nu, i);
                    }
                }
                std::optional<Vec> sol;
                if (!cols.empty()) sol = solve(a, target);
                if (sol) {
                    for (size_t idx = 0; idx < cols.size(); ++idx) {
                        if ((*sol)[idx].is_zero()) continue;
                        auto [nu, i] = cols[idx];
                        slots[{row, col, nu, i}][deg - i] = (*sol)[idx];
                    }
                    continue;
                }
                // certificate: a functional killing every admissible form of
                // this degree but pairing nontrivially with the input
                Mat at(cols.empty() ? 0 : cols.size(), Vec(deg + 1, Scalar(0)));
                for (size_t idx = 0; idx < cols.size(); ++idx)
                    for (int k = 0; k <= deg; ++k) at[idx][k] = a[k][idx];
                std::vector<Vec> ns;
                if (cols.empty()) {
                    // no admissible forms at all: any coordinate functional works
                    int k0 = 0;
                    while (target[k0].is_zero()) ++k0;
                    Vec e(deg + 1, Scalar(0));
                    e[k0] = Scalar(1);
                    ns.push_back(e);
                } else {
                    ns = nullspace(at);
                }
                bool found = false;
                for (const auto& phi : ns) {
                    Scalar pair(0);
                    for (int k = 0; k <= deg; ++k) pair = pair + phi[k] * target[k];
                    if (!pair.is_zero()) {
                        rep.obstructions.push_back({row, col, deg, phi, pair});
                        found = true;
                        break;
                    }
                }
                if (!found) throw std::runtime_error("unsolvable system without a certificate");
            }
        }
    rep.pass = rep.obstructions.empty();
    if (rep.pass)
        for (const auto& [key, by_power] : slots) {
            auto [row, col, nu, i] = key;
            SplitComponent comp{row, col, nu, i, {}};
            int top = by_power.rbegin()->first;
            comp.coeffs.assign(top + 1, Scalar(0));
            for (const auto& [p, v] : by_power) comp.coeffs[p] = v;
            rep.parts.push_back(comp);
        }
    return rep;
}

std::vector<Scalar> sh_half_inv_sq_taylor(const Scalar& e_point, int order) {
    if (e_point == Scalar(1)) throw std::runtime_error("expansion point lies on the singular locus");
    TruncSeries one = TruncSeries::constant(1, 0, order, 0, Scalar(1));
    TruncSeries eh = exp_series(TruncSeries::t_var(1, 0, order, 0, 0));
    TruncSeries den = eh * e_point - one;
    TruncSeries f = eh * (e_point * Scalar(4)) * den.invert() * den.invert();
    std::vector<Scalar> out(order + 1);
    for (int j = 0; j <= order; ++j) out[j] = f.coeff({j}).constant_term();
    return out;
}

}  // namespace regsing

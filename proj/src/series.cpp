#include "regsing/series.hpp"

#include <sstream>
#include <stdexcept>

namespace regsing {

void TruncSeries::check_compat(const TruncSeries& o) const {
    if (n_ != o.n_ || nx_ != o.nx_) throw std::runtime_error("variable-count mismatch");
}

TruncSeries TruncSeries::constant(int n, int nx, int t_order, int x_order, const Scalar& c) {
    TruncSeries s(n, nx, t_order, x_order);
    s.add_term(mi_zero(n), MPoly::constant(nx, c));
    return s;
}

TruncSeries TruncSeries::t_var(int n, int nx, int t_order, int x_order, int i) {
    if (i < 0 || i >= n) throw std::runtime_error("t-variable index out of range");
    TruncSeries s(n, nx, t_order, x_order);
    s.add_term(mi_unit(n, i), MPoly::constant(nx, Scalar(1)));
    return s;
}

TruncSeries TruncSeries::x_var(int n, int nx, int t_order, int x_order, int j) {
    if (j < 0 || j >= nx) throw std::runtime_error("x-variable index out of range");
    TruncSeries s(n, nx, t_order, x_order);
    s.add_term(mi_zero(n), MPoly::variable(nx, j));
    return s;
}

TruncSeries TruncSeries::from_x_poly(int n, int t_order, const MPoly& p, int x_order) {
    TruncSeries s(n, p.nvars(), t_order, x_order);
    s.add_term(mi_zero(n), p);
    return s;
}

MPoly TruncSeries::coeff(const MultiIndex& gamma) const {
    auto it = coeff_.find(gamma);
    return it == coeff_.end() ? MPoly(nx_) : it->second;
}

void TruncSeries::add_term(const MultiIndex& gamma, const MPoly& p) {
    if ((int)gamma.size() != n_) throw std::runtime_error("t-exponent length mismatch");
    if (p.nvars() != nx_) throw std::runtime_error("x-variable count mismatch");
    if (mi_abs(gamma) > t_order_) return;
    MPoly q = p.truncate_degree(x_order_);
    if (q.is_zero()) return;
    auto it = coeff_.find(gamma);
    if (it == coeff_.end()) {
        coeff_[gamma] = q;
        return;
    }
    it->second += q;
    if (it->second.is_zero()) coeff_.erase(it);
}

TruncSeries TruncSeries::operator+(const TruncSeries& o) const {
    check_compat(o);
    TruncSeries r(n_, nx_, std::min(t_order_, o.t_order_), std::min(x_order_, o.x_order_));
    for (const auto& [g, p] : coeff_) r.add_term(g, p);
    for (const auto& [g, p] : o.coeff_) r.add_term(g, p);
    return r;
}

TruncSeries TruncSeries::operator-(const TruncSeries& o) const {
    check_compat(o);
    TruncSeries r(n_, nx_, std::min(t_order_, o.t_order_), std::min(x_order_, o.x_order_));
    for (const auto& [g, p] : coeff_) r.add_term(g, p);
    for (const auto& [g, p] : o.coeff_) r.add_term(g, -p);
    return r;
}

TruncSeries TruncSeries::operator-() const {
    TruncSeries r(n_, nx_, t_order_, x_order_);
    for (const auto& [g, p] : coeff_) r.coeff_[g] = -p;
    return r;
}

TruncSeries TruncSeries::operator*(const TruncSeries& o) const {
    check_compat(o);
    TruncSeries r(n_, nx_, std::min(t_order_, o.t_order_), std::min(x_order_, o.x_order_));
    for (const auto& [g1, p1] : coeff_) {
        if (mi_abs(g1) > r.t_order_) continue;
        for (const auto& [g2, p2] : o.coeff_) {
            MultiIndex g = mi_add(g1, g2);
            if (mi_abs(g) > r.t_order_) continue;
            r.add_term(g, p1 * p2);
        }
    }
    return r;
}

TruncSeries TruncSeries::operator*(const Scalar& c) const {
    TruncSeries r(n_, nx_, t_order_, x_order_);
    if (c.is_zero()) return r;
    for (const auto& [g, p] : coeff_) r.coeff_[g] = p * c;
    return r;
}

bool TruncSeries::operator==(const TruncSeries& o) const {
    return n_ == o.n_ && nx_ == o.nx_ && t_order_ == o.t_order_ && x_order_ == o.x_order_ &&
           coeff_ == o.coeff_;
}

TruncSeries TruncSeries::scale_x(const MPoly& p) const {
    TruncSeries r(n_, nx_, t_order_, x_order_);
    for (const auto& [g, q] : coeff_) r.add_term(g, q * p);
    return r;
}

TruncSeries TruncSeries::shift_t(const MultiIndex& gamma) const {
    TruncSeries r(n_, nx_, t_order_, x_order_);
    for (const auto& [g, p] : coeff_) r.add_term(mi_add(g, gamma), p);
    return r;
}

TruncSeries TruncSeries::theta(int i) const {
    if (i < 0 || i >= n_) throw std::runtime_error("t-variable index out of range");
    TruncSeries r(n_, nx_, t_order_, x_order_);
    for (const auto& [g, p] : coeff_) {
        if (g[i] == 0) continue;
        r.coeff_[g] = p * Scalar((long)g[i]);
    }
    return r;
}

TruncSeries TruncSeries::dx(int j) const {
    if (j < 0 || j >= nx_) throw std::runtime_error("x-variable index out of range");
    TruncSeries r(n_, nx_, t_order_, x_order_);
    for (const auto& [g, p] : coeff_) {
        MPoly d = p.derivative(j);
        if (!d.is_zero()) r.coeff_[g] = d;
    }
    return r;
}

TruncSeries TruncSeries::retruncate(int t_order, int x_order) const {
    TruncSeries r(n_, nx_, t_order, x_order);
    for (const auto& [g, p] : coeff_) r.add_term(g, p);
    return r;
}

MPoly TruncSeries::eval_at_wall() const { return coeff(mi_zero(n_)); }

TruncSeries TruncSeries::invert() const {
    Scalar c0 = eval_at_wall().constant_term();
    if (c0.is_zero()) throw std::runtime_error("not a unit at the origin");
    Scalar c0inv = Scalar(1) / c0;
    // a = c0 (1 - u) with u of positive joint (t,x)-order, so the geometric
    // series terminates after t_order + x_order steps
    TruncSeries u = constant(n_, nx_, t_order_, x_order_, Scalar(1)) - *this * c0inv;
    TruncSeries acc = constant(n_, nx_, t_order_, x_order_, Scalar(1));
    TruncSeries upow = u;
    int steps = t_order_ + x_order_;
    for (int k = 1; k <= steps && !upow.is_zero(); ++k) {
        acc = acc + upow;
        upow = upow * u;
    }
    return acc * c0inv;
}

TruncSeries rational_to_series(const TruncSeries& num, const TruncSeries& den, int t_order,
                               int x_order) {
    TruncSeries n2 = num.retruncate(t_order, x_order);
    TruncSeries d2 = den.retruncate(t_order, x_order);
    return n2 * d2.invert();
}

TruncSeries exp_series(const TruncSeries& a) {
    if (!a.eval_at_wall().constant_term().is_zero())
        throw std::runtime_error("exp requires zero constant term");
    TruncSeries acc =
        TruncSeries::constant(a.n(), a.nx(), a.t_order(), a.x_order(), Scalar(1));
    TruncSeries apow = a;
    BigInt fact = 1;
    int steps = a.t_order() + a.x_order();
    for (int k = 1; k <= steps && !apow.is_zero(); ++k) {
        fact *= k;
        acc = acc + apow * Scalar(GaussianRational(BigRat(BigInt(1), fact)));
        apow = apow * a;
    }
    return acc;
}

std::string to_string(const TruncSeries& s) {
    if (s.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, p] : s.coefficients()) {
        if (!first) os << " + ";
        first = false;
        std::string ps = to_string(p, "x");
        bool has_t = mi_abs(g) > 0;
        if (!has_t) {
            os << ps;
            continue;
        }
        if (ps == "-1") {
            os << "-";
        } else if (ps != "1") {
            bool compound = ps.find_first_of("+-", 1) != std::string::npos || ps[0] == '-';
            if (compound)
                os << "(" << ps << ")*";
            else
                os << ps << "*";
        }
        bool firstv = true;
        for (size_t i = 0; i < g.size(); ++i) {
            if (g[i] == 0) continue;
            if (!firstv) os << "*";
            firstv = false;
            os << "t" << i + 1;
            if (g[i] > 1) os << "^" << g[i];
        }
    }
    return os.str();
}

}  // namespace regsing

#include "regsing/opalg.hpp"

#include <sstream>
#include <stdexcept>

namespace regsing {

namespace {

// theta^m acting on a series: the t^gamma coefficient picks up gamma^m
TruncSeries theta_pow(const TruncSeries& s, const MultiIndex& m) {
    if (mi_abs(m) == 0) return s;
    TruncSeries r(s.n(), s.nx(), s.t_order(), s.x_order());
    for (const auto& [g, p] : s.coefficients()) {
        GaussianRational f = mi_int_pow(g, m);
        if (f.is_zero()) continue;
        r.add_term(g, p * Scalar(f));
    }
    return r;
}

TruncSeries dx_pow(const TruncSeries& s, const MultiIndex& d) {
    TruncSeries r = s;
    for (size_t j = 0; j < d.size(); ++j)
        for (int k = 0; k < d[j]; ++k) r = r.dx((int)j);
    return r;
}

MPoly mpoly_dx_pow(const MPoly& p, const MultiIndex& d) {
    MPoly r = p;
    for (size_t j = 0; j < d.size(); ++j)
        for (int k = 0; k < d[j]; ++k) r = r.derivative((int)j);
    return r;
}

std::string monomial_string(const MultiIndex& e, const std::string& stem) {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!first) os << "*";
        first = false;
        os << stem << i + 1;
        if (e[i] > 1) os << "^" << e[i];
    }
    return os.str();
}

std::string key_string(const OpKey& k, const std::string& astem, const std::string& bstem) {
    std::string a = monomial_string(k.alpha, astem);
    std::string b = monomial_string(k.beta, bstem);
    if (a.empty()) return b;
    if (b.empty()) return a;
    return a + "*" + b;
}

}  // namespace

void RegOperator::check_compat(const RegOperator& o) const {
    if (n_ != o.n_ || nx_ != o.nx_) throw std::runtime_error("variable-count mismatch");
}

RegOperator RegOperator::constant(int n, int nx, int T, int X, const Scalar& c) {
    RegOperator p(n, nx, T, X);
    p.add_term({mi_zero(n), mi_zero(nx)}, TruncSeries::constant(n, nx, T, X, c));
    return p;
}

RegOperator RegOperator::theta(int n, int nx, int T, int X, int i) {
    if (i < 0 || i >= n) throw std::runtime_error("theta index out of range");
    RegOperator p(n, nx, T, X);
    p.add_term({mi_unit(n, i), mi_zero(nx)}, TruncSeries::constant(n, nx, T, X, Scalar(1)));
    return p;
}

RegOperator RegOperator::dx(int n, int nx, int T, int X, int j) {
    if (j < 0 || j >= nx) throw std::runtime_error("Dx index out of range");
    RegOperator p(n, nx, T, X);
    p.add_term({mi_zero(n), mi_unit(nx, j)}, TruncSeries::constant(n, nx, T, X, Scalar(1)));
    return p;
}

RegOperator RegOperator::t_var(int n, int nx, int T, int X, int i) {
    RegOperator p(n, nx, T, X);
    p.add_term({mi_zero(n), mi_zero(nx)}, TruncSeries::t_var(n, nx, T, X, i));
    return p;
}

RegOperator RegOperator::x_var(int n, int nx, int T, int X, int j) {
    RegOperator p(n, nx, T, X);
    p.add_term({mi_zero(n), mi_zero(nx)}, TruncSeries::x_var(n, nx, T, X, j));
    return p;
}

RegOperator RegOperator::from_series(const TruncSeries& s) {
    RegOperator p(s.n(), s.nx(), s.t_order(), s.x_order());
    p.add_term({mi_zero(s.n()), mi_zero(s.nx())}, s);
    return p;
}

TruncSeries RegOperator::coeff(const OpKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? TruncSeries(n_, nx_, t_order_, x_order_) : it->second;
}

void RegOperator::add_term(const OpKey& k, const TruncSeries& s) {
    if ((int)k.alpha.size() != n_ || (int)k.beta.size() != nx_)
        throw std::runtime_error("operator exponent length mismatch");
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        if (!s.is_zero()) terms_[k] = s;
        return;
    }
    TruncSeries sum = it->second + s;
    if (sum.is_zero())
        terms_.erase(it);
    else
        it->second = sum;
}

RegOperator RegOperator::operator+(const RegOperator& o) const {
    check_compat(o);
    RegOperator r(n_, nx_, std::min(t_order_, o.t_order_), std::min(x_order_, o.x_order_));
    for (const auto& [k, s] : terms_) r.add_term(k, s.retruncate(r.t_order_, r.x_order_));
    for (const auto& [k, s] : o.terms_) r.add_term(k, s.retruncate(r.t_order_, r.x_order_));
    return r;
}

RegOperator RegOperator::operator-(const RegOperator& o) const { return *this + (-o); }

RegOperator RegOperator::operator-() const {
    RegOperator r(n_, nx_, t_order_, x_order_);
    for (const auto& [k, s] : terms_) r.terms_[k] = -s;
    return r;
}

RegOperator RegOperator::operator*(const RegOperator& o) const {
    check_compat(o);
    RegOperator r(n_, nx_, std::min(t_order_, o.t_order_), std::min(x_order_, o.x_order_));
    for (const auto& [k1, a] : terms_) {
        // move theta^alpha1 Dx^beta1 across the right coefficient by Leibniz
        auto deltas = mi_below(k1.beta);
        auto epsilons = mi_below(k1.alpha);
        for (const auto& [k2, b] : o.terms_) {
            for (const auto& delta : deltas) {
                TruncSeries bd = dx_pow(b, delta);
                if (bd.is_zero()) continue;
                GaussianRational cb = mi_binom(k1.beta, delta);
                for (const auto& eps : epsilons) {
                    TruncSeries moved = theta_pow(bd, mi_sub(k1.alpha, eps));
                    if (moved.is_zero()) continue;
                    GaussianRational ca = mi_binom(k1.alpha, eps);
                    TruncSeries coeffp = a * moved * Scalar(cb * ca);
                    if (coeffp.is_zero()) continue;
                    OpKey k{mi_add(eps, k2.alpha),
                            mi_add(mi_sub(k1.beta, delta), k2.beta)};
                    r.add_term(k, coeffp);
                }
            }
        }
    }
    return r;
}

RegOperator RegOperator::operator*(const Scalar& c) const {
    RegOperator r(n_, nx_, t_order_, x_order_);
    if (c.is_zero()) return r;
    for (const auto& [k, s] : terms_) r.terms_[k] = s * c;
    return r;
}

bool RegOperator::operator==(const RegOperator& o) const {
    return n_ == o.n_ && nx_ == o.nx_ && terms_ == o.terms_;
}

int RegOperator::order() const {
    if (terms_.empty()) throw std::runtime_error("order of the zero operator");
    int d = 0;
    for (const auto& [k, s] : terms_) d = std::max(d, k.order());
    return d;
}

RegOperator RegOperator::conjugate(const std::vector<Scalar>& lambda) const {
    if ((int)lambda.size() != n_) throw std::runtime_error("exponent vector length mismatch");
    RegOperator r(n_, nx_, t_order_, x_order_);
    for (const auto& [k, s] : terms_) {
        for (const auto& eps : mi_below(k.alpha)) {
            GaussianRational c = mi_binom(k.alpha, eps);
            Scalar f(c);
            MultiIndex rest = mi_sub(k.alpha, eps);
            for (int i = 0; i < n_; ++i)
                if (rest[i] > 0) f = f * lambda[i].pow(rest[i]);
            if (f.is_zero()) continue;
            r.add_term({eps, k.beta}, s * f);
        }
    }
    return r;
}

TruncSeries RegOperator::apply(const TruncSeries& u) const {
    TruncSeries acc(n_, nx_, std::min(t_order_, u.t_order()), std::min(x_order_, u.x_order()));
    for (const auto& [k, s] : terms_) {
        TruncSeries v = theta_pow(dx_pow(u, k.beta), k.alpha);
        acc = acc + s * v;
    }
    return acc;
}

RegOperator commutator(const RegOperator& p, const RegOperator& q) { return p * q - q * p; }

TruncSeries PrincipalSymbol::coeff(const OpKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? TruncSeries(n_, nx_, t_order_, x_order_) : it->second;
}

void PrincipalSymbol::add_term(const OpKey& k, const TruncSeries& s) {
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        if (!s.is_zero()) terms_[k] = s;
        return;
    }
    TruncSeries sum = it->second + s;
    if (sum.is_zero())
        terms_.erase(it);
    else
        it->second = sum;
}

PrincipalSymbol PrincipalSymbol::operator+(const PrincipalSymbol& o) const {
    if (n_ != o.n_ || nx_ != o.nx_) throw std::runtime_error("variable-count mismatch");
    PrincipalSymbol r(n_, nx_, std::min(t_order_, o.t_order_), std::min(x_order_, o.x_order_));
    for (const auto& [k, s] : terms_) r.add_term(k, s.retruncate(r.t_order_, r.x_order_));
    for (const auto& [k, s] : o.terms_) r.add_term(k, s.retruncate(r.t_order_, r.x_order_));
    return r;
}

PrincipalSymbol PrincipalSymbol::operator-(const PrincipalSymbol& o) const {
    if (n_ != o.n_ || nx_ != o.nx_) throw std::runtime_error("variable-count mismatch");
    PrincipalSymbol r(n_, nx_, std::min(t_order_, o.t_order_), std::min(x_order_, o.x_order_));
    for (const auto& [k, s] : terms_) r.add_term(k, s.retruncate(r.t_order_, r.x_order_));
    for (const auto& [k, s] : o.terms_) r.add_term(k, -s.retruncate(r.t_order_, r.x_order_));
    return r;
}

PrincipalSymbol PrincipalSymbol::operator*(const PrincipalSymbol& o) const {
    if (n_ != o.n_ || nx_ != o.nx_) throw std::runtime_error("variable-count mismatch");
    PrincipalSymbol r(n_, nx_, std::min(t_order_, o.t_order_), std::min(x_order_, o.x_order_));
    for (const auto& [k1, s1] : terms_)
        for (const auto& [k2, s2] : o.terms_) {
            TruncSeries s = s1 * s2;
            if (!s.is_zero()) r.add_term({mi_add(k1.alpha, k2.alpha), mi_add(k1.beta, k2.beta)}, s);
        }
    return r;
}

bool PrincipalSymbol::operator==(const PrincipalSymbol& o) const {
    return n_ == o.n_ && nx_ == o.nx_ && terms_ == o.terms_;
}

PrincipalSymbol PrincipalSymbol::dxi(int i) const {
    PrincipalSymbol r(n_, nx_, t_order_, x_order_);
    for (const auto& [k, s] : terms_) {
        if (k.alpha[i] == 0) continue;
        OpKey k2 = k;
        k2.alpha[i] -= 1;
        r.add_term(k2, s * Scalar((long)k.alpha[i]));
    }
    return r;
}

PrincipalSymbol PrincipalSymbol::dtau(int j) const {
    PrincipalSymbol r(n_, nx_, t_order_, x_order_);
    for (const auto& [k, s] : terms_) {
        if (k.beta[j] == 0) continue;
        OpKey k2 = k;
        k2.beta[j] -= 1;
        r.add_term(k2, s * Scalar((long)k.beta[j]));
    }
    return r;
}

PrincipalSymbol PrincipalSymbol::theta_t(int i) const {
    PrincipalSymbol r(n_, nx_, t_order_, x_order_);
    for (const auto& [k, s] : terms_) {
        TruncSeries d = s.theta(i);
        if (!d.is_zero()) r.add_term(k, d);
    }
    return r;
}

PrincipalSymbol PrincipalSymbol::dx(int j) const {
    PrincipalSymbol r(n_, nx_, t_order_, x_order_);
    for (const auto& [k, s] : terms_) {
        TruncSeries d = s.dx(j);
        if (!d.is_zero()) r.add_term(k, d);
    }
    return r;
}

MPoly SigmaStarOp::coeff(const OpKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? MPoly(nx_) : it->second;
}

void SigmaStarOp::add_term(const OpKey& k, const MPoly& p) {
    MPoly q = p.truncate_degree(x_order_);
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        if (!q.is_zero()) terms_[k] = q;
        return;
    }
    it->second += q;
    if (it->second.is_zero()) terms_.erase(it);
}

SigmaStarOp SigmaStarOp::operator+(const SigmaStarOp& o) const {
    if (n_ != o.n_ || nx_ != o.nx_) throw std::runtime_error("variable-count mismatch");
    SigmaStarOp r(n_, nx_, std::min(x_order_, o.x_order_));
    for (const auto& [k, p] : terms_) r.add_term(k, p);
    for (const auto& [k, p] : o.terms_) r.add_term(k, p);
    return r;
}

SigmaStarOp SigmaStarOp::operator-(const SigmaStarOp& o) const {
    if (n_ != o.n_ || nx_ != o.nx_) throw std::runtime_error("variable-count mismatch");
    SigmaStarOp r(n_, nx_, std::min(x_order_, o.x_order_));
    for (const auto& [k, p] : terms_) r.add_term(k, p);
    for (const auto& [k, p] : o.terms_) r.add_term(k, -p);
    return r;
}

SigmaStarOp SigmaStarOp::operator*(const SigmaStarOp& o) const {
    if (n_ != o.n_ || nx_ != o.nx_) throw std::runtime_error("variable-count mismatch");
    SigmaStarOp r(n_, nx_, std::min(x_order_, o.x_order_));
    for (const auto& [k1, a] : terms_) {
        auto deltas = mi_below(k1.beta);
        for (const auto& [k2, b] : o.terms_) {
            for (const auto& delta : deltas) {
                MPoly bd = mpoly_dx_pow(b, delta);
                if (bd.is_zero()) continue;
                GaussianRational cb = mi_binom(k1.beta, delta);
                r.add_term({mi_add(k1.alpha, k2.alpha),
                            mi_add(mi_sub(k1.beta, delta), k2.beta)},
                           a * bd * Scalar(cb));
            }
        }
    }
    return r;
}

SigmaStarOp SigmaStarOp::operator*(const Scalar& c) const {
    SigmaStarOp r(n_, nx_, x_order_);
    if (c.is_zero()) return r;
    for (const auto& [k, p] : terms_) r.terms_[k] = p * c;
    return r;
}

bool SigmaStarOp::operator==(const SigmaStarOp& o) const {
    return n_ == o.n_ && nx_ == o.nx_ && terms_ == o.terms_;
}

bool SigmaStarOp::has_dx() const {
    for (const auto& [k, p] : terms_)
        if (mi_abs(k.beta) > 0) return true;
    return false;
}

bool SigmaStarOp::x_dependent() const {
    for (const auto& [k, p] : terms_)
        if (!p.is_constant()) return true;
    return false;
}

MPoly SigmaStarOp::apply_at(const std::vector<Scalar>& xi_vals, const MPoly& f) const {
    if ((int)xi_vals.size() != n_) throw std::runtime_error("xi value count mismatch");
    MPoly acc(nx_);
    for (const auto& [k, a] : terms_) {
        MPoly d = mpoly_dx_pow(f, k.beta);
        if (d.is_zero()) continue;
        Scalar s(1);
        for (int i = 0; i < n_; ++i)
            if (k.alpha[i] > 0) s = s * xi_vals[i].pow(k.alpha[i]);
        acc += (a * d * s).truncate_degree(x_order_);
    }
    return acc;
}

MPoly SigmaStarOp::as_xi_poly(const std::optional<std::vector<Scalar>>& x0) const {
    MPoly out(n_);
    for (const auto& [k, a] : terms_) {
        if (mi_abs(k.beta) > 0)
            throw std::runtime_error(
                "sigma_star image contains Dx terms; use the lexicographic series solver");
        Scalar c;
        if (a.is_constant())
            c = a.constant_term();
        else if (x0)
            c = a.eval(*x0);
        else
            throw std::runtime_error("x-dependent indicial data requires an evaluation point");
        out.add_term(k.alpha, c);
    }
    return out;
}

PrincipalSymbol sigma_k(const RegOperator& p, int k) {
    PrincipalSymbol s(p.n(), p.nx(), p.t_order(), p.x_order());
    for (const auto& [key, coeff] : p.terms())
        if (key.order() == k) s.add_term(key, coeff);
    return s;
}

PrincipalSymbol sigma_principal(const RegOperator& p) { return sigma_k(p, p.order()); }

SigmaStarOp sigma_star(const RegOperator& p) {
    SigmaStarOp s(p.n(), p.nx(), p.x_order());
    for (const auto& [key, coeff] : p.terms()) {
        MPoly wall = coeff.eval_at_wall();
        if (!wall.is_zero()) s.add_term(key, wall);
    }
    return s;
}

SigmaStarOp sigma_bar_star(const RegOperator& p) {
    int d = p.order();
    SigmaStarOp s(p.n(), p.nx(), p.x_order());
    for (const auto& [key, coeff] : p.terms()) {
        if (key.order() != d) continue;
        MPoly wall = coeff.eval_at_wall();
        if (!wall.is_zero()) s.add_term(key, wall);
    }
    return s;
}

RegOperator operator_from_sigma(const SigmaStarOp& s, int t_order, int x_order) {
    RegOperator p(s.n(), s.nx(), t_order, x_order);
    for (const auto& [key, a] : s.terms())
        p.add_term(key, TruncSeries::from_x_poly(s.n(), t_order, a, x_order));
    return p;
}

DStarCheck is_D_star(const RegOperator& p) {
    for (const auto& [key, coeff] : p.terms()) {
        if (mi_abs(key.beta) == 0) continue;
        if (!coeff.eval_at_wall().is_zero()) return {false, key};
    }
    return {true, {}};
}

OpMatrix::OpMatrix(int m, const RegOperator& zero) : m_(m) {
    RegOperator z(zero.n(), zero.nx(), zero.t_order(), zero.x_order());
    e_.assign(m, std::vector<RegOperator>(m, z));
}

OpMatrix OpMatrix::scalar(const RegOperator& p) {
    OpMatrix m(1, p);
    m.e_[0][0] = p;
    return m;
}

OpMatrix OpMatrix::operator+(const OpMatrix& o) const {
    if (m_ != o.m_) throw std::runtime_error("matrix size mismatch");
    OpMatrix r = *this;
    for (int i = 0; i < m_; ++i)
        for (int j = 0; j < m_; ++j) r.e_[i][j] = e_[i][j] + o.e_[i][j];
    return r;
}

OpMatrix OpMatrix::operator-(const OpMatrix& o) const {
    if (m_ != o.m_) throw std::runtime_error("matrix size mismatch");
    OpMatrix r = *this;
    for (int i = 0; i < m_; ++i)
        for (int j = 0; j < m_; ++j) r.e_[i][j] = e_[i][j] - o.e_[i][j];
    return r;
}

OpMatrix OpMatrix::operator*(const OpMatrix& o) const {
    if (m_ != o.m_) throw std::runtime_error("matrix size mismatch");
    OpMatrix r(m_, e_[0][0]);
    for (int i = 0; i < m_; ++i)
        for (int j = 0; j < m_; ++j) {
            RegOperator acc(n(), nx(), t_order(), x_order());
            for (int k = 0; k < m_; ++k) acc = acc + e_[i][k] * o.e_[k][j];
            r.e_[i][j] = acc;
        }
    return r;
}

OpMatrix OpMatrix::operator*(const Scalar& c) const {
    OpMatrix r = *this;
    for (int i = 0; i < m_; ++i)
        for (int j = 0; j < m_; ++j) r.e_[i][j] = e_[i][j] * c;
    return r;
}

bool OpMatrix::is_zero() const {
    for (const auto& row : e_)
        for (const auto& p : row)
            if (!p.is_zero()) return false;
    return true;
}

int OpMatrix::order() const {
    if (is_zero()) throw std::runtime_error("order of the zero operator");
    int d = 0;
    for (const auto& row : e_)
        for (const auto& p : row)
            if (!p.is_zero()) d = std::max(d, p.order());
    return d;
}

OpMatrix OpMatrix::conjugate(const std::vector<Scalar>& lambda) const {
    OpMatrix r = *this;
    for (int i = 0; i < m_; ++i)
        for (int j = 0; j < m_; ++j) r.e_[i][j] = e_[i][j].conjugate(lambda);
    return r;
}

std::vector<TruncSeries> OpMatrix::apply(const std::vector<TruncSeries>& u) const {
    if ((int)u.size() != m_) throw std::runtime_error("vector size mismatch");
    std::vector<TruncSeries> out;
    out.reserve(m_);
    for (int i = 0; i < m_; ++i) {
        TruncSeries acc(n(), nx(), t_order(), x_order());
        for (int j = 0; j < m_; ++j) acc = acc + e_[i][j].apply(u[j]);
        out.push_back(acc);
    }
    return out;
}

std::vector<std::vector<SigmaStarOp>> OpMatrix::sigma_star_matrix() const {
    std::vector<std::vector<SigmaStarOp>> out(m_, std::vector<SigmaStarOp>(m_));
    for (int i = 0; i < m_; ++i)
        for (int j = 0; j < m_; ++j) out[i][j] = sigma_star(e_[i][j]);
    return out;
}

std::vector<std::vector<SigmaStarOp>> OpMatrix::sigma_bar_star_matrix() const {
    int d = order();
    std::vector<std::vector<SigmaStarOp>> out(m_, std::vector<SigmaStarOp>(m_));
    for (int i = 0; i < m_; ++i)
        for (int j = 0; j < m_; ++j) {
            SigmaStarOp s(n(), nx(), x_order());
            for (const auto& [key, coeff] : e_[i][j].terms()) {
                if (key.order() != d) continue;
                MPoly wall = coeff.eval_at_wall();
                if (!wall.is_zero()) s.add_term(key, wall);
            }
            out[i][j] = s;
        }
    return out;
}

DStarCheck OpMatrix::is_D_star_matrix() const {
    for (const auto& row : e_)
        for (const auto& p : row) {
            DStarCheck c = is_D_star(p);
            if (!c.ok) return c;
        }
    return {true, {}};
}

OpMatrix commutator(const OpMatrix& p, const OpMatrix& q) { return p * q - q * p; }

std::string to_string(const RegOperator& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, s] : p.terms()) {
        if (!first) os << " + ";
        first = false;
        std::string mono = key_string(k, "th", "Dx");
        std::string cs = to_string(s);
        if (mono.empty()) {
            os << "(" << cs << ")";
        } else if (cs == "1") {
            os << mono;
        } else {
            os << "(" << cs << ")*" << mono;
        }
    }
    return os.str();
}

std::string to_string(const OpMatrix& p) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < p.m(); ++i) {
        if (i) os << ",";
        os << "[";
        for (int j = 0; j < p.m(); ++j) {
            if (j) os << ", ";
            os << to_string(p.at(i, j));
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

std::string to_string(const PrincipalSymbol& s) {
    if (s.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : s.terms()) {
        if (!first) os << " + ";
        first = false;
        std::string mono = key_string(k, "xi", "tau");
        std::string cs = to_string(c);
        if (mono.empty())
            os << "(" << cs << ")";
        else if (cs == "1")
            os << mono;
        else
            os << "(" << cs << ")*" << mono;
    }
    return os.str();
}

std::string to_string(const SigmaStarOp& s) {
    if (s.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : s.terms()) {
        if (!first) os << " + ";
        first = false;
        std::string mono = key_string(k, "xi", "Dx");
        std::string cs = to_string(c, "x");
        if (mono.empty())
            os << "(" << cs << ")";
        else if (cs == "1")
            os << mono;
        else
            os << "(" << cs << ")*" << mono;
    }
    return os.str();
}

}  // namespace regsing

#include "regsing/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace regsing {

MPoly MPoly::constant(int nvars, const Scalar& c) {
    MPoly p(nvars);
    if (!c.is_zero()) p.terms_[mi_zero(nvars)] = c;
    return p;
}

MPoly MPoly::variable(int nvars, int i) {
    if (i < 0 || i >= nvars) throw std::runtime_error("variable index out of range");
    MPoly p(nvars);
    p.terms_[mi_unit(nvars, i)] = Scalar(1);
    return p;
}

MPoly MPoly::monomial(int nvars, const MultiIndex& e, const Scalar& c) {
    if ((int)e.size() != nvars) throw std::runtime_error("monomial exponent length mismatch");
    MPoly p(nvars);
    if (!c.is_zero()) p.terms_[e] = c;
    return p;
}

bool MPoly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first == mi_zero(nvars_);
}

Scalar MPoly::constant_term() const { return coeff(mi_zero(nvars_)); }

int MPoly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, mi_abs(e));
    return d;
}

Scalar MPoly::coeff(const MultiIndex& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar(0) : it->second;
}

void MPoly::set_coeff(const MultiIndex& e, const Scalar& c) {
    if ((int)e.size() != nvars_) throw std::runtime_error("exponent length mismatch");
    if (c.is_zero())
        terms_.erase(e);
    else
        terms_[e] = c;
}

void MPoly::add_term(const MultiIndex& e, const Scalar& c) {
    if ((int)e.size() != nvars_) throw std::runtime_error("exponent length mismatch");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_[e] = c;
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
}

MPoly MPoly::operator+(const MPoly& o) const {
    if (nvars_ != o.nvars_) throw std::runtime_error("variable count mismatch");
    MPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const {
    if (nvars_ != o.nvars_) throw std::runtime_error("variable count mismatch");
    MPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, Scalar(0) - c);
    return r;
}

MPoly MPoly::operator-() const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_[e] = Scalar(0) - c;
    return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
    if (nvars_ != o.nvars_) throw std::runtime_error("variable count mismatch");
    MPoly r(nvars_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) r.add_term(mi_add(e1, e2), c1 * c2);
    return r;
}

MPoly MPoly::operator*(const Scalar& c) const {
    MPoly r(nvars_);
    if (c.is_zero()) return r;
    for (const auto& [e, v] : terms_) r.terms_[e] = v * c;
    return r;
}

MPoly MPoly::derivative(int i) const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0) continue;
        MultiIndex e2 = e;
        e2[i] -= 1;
        r.add_term(e2, c * Scalar((long)e[i]));
    }
    return r;
}

MPoly MPoly::truncate_degree(int maxdeg) const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_)
        if (mi_abs(e) <= maxdeg) r.terms_[e] = c;
    return r;
}

MPoly MPoly::homogeneous_part(int deg) const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_)
        if (mi_abs(e) == deg) r.terms_[e] = c;
    return r;
}

MPoly MPoly::pow(int e) const {
    if (e < 0) throw std::runtime_error("negative polynomial power");
    MPoly r = constant(nvars_, Scalar(1));
    MPoly base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

Scalar MPoly::eval(const std::vector<Scalar>& vals) const {
    if ((int)vals.size() != nvars_) throw std::runtime_error("evaluation arity mismatch");
    Scalar acc(0);
    for (const auto& [e, c] : terms_) {
        Scalar term = c;
        for (int i = 0; i < nvars_; ++i)
            if (e[i] > 0) term = term * vals[i].pow(e[i]);
        acc = acc + term;
    }
    return acc;
}

GaussianRational MPoly::eval_gr(const std::vector<GaussianRational>& vals) const {
    if ((int)vals.size() != nvars_) throw std::runtime_error("evaluation arity mismatch");
    GaussianRational acc(0);
    for (const auto& [e, c] : terms_) {
        GaussianRational term = c.constant_value();
        for (int i = 0; i < nvars_; ++i)
            if (e[i] > 0) term = term * vals[i].pow(e[i]);
        acc = acc + term;
    }
    return acc;
}

MPoly MPoly::compose(const std::vector<MPoly>& subst) const {
    if ((int)subst.size() != nvars_) throw std::runtime_error("substitution arity mismatch");
    int m = nvars_ == 0 ? 0 : subst.empty() ? 0 : subst[0].nvars();
    for (const auto& s : subst)
        if (s.nvars() != m) throw std::runtime_error("substitution variable count mismatch");
    MPoly acc(m);
    for (const auto& [e, c] : terms_) {
        MPoly term = MPoly::constant(m, c);
        for (int i = 0; i < nvars_; ++i)
            if (e[i] > 0) term = term * subst[i].pow(e[i]);
        acc = acc + term;
    }
    return acc;
}

std::string to_string(const MPoly& p, const std::vector<std::string>& names) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        if (!first) os << " + ";
        first = false;
        std::string cs = to_string(c);
        bool compound = cs.find_first_of("+-", 1) != std::string::npos || cs[0] == '-';
        bool has_vars = mi_abs(e) > 0;
        if (!has_vars) {
            os << cs;
            continue;
        }
        if (cs == "-1") {
            os << "-";
        } else if (cs != "1") {
            if (compound)
                os << "(" << cs << ")*";
            else
                os << cs << "*";
        }
        bool firstv = true;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!firstv) os << "*";
            firstv = false;
            os << names[i];
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

std::string to_string(const MPoly& p, const std::string& stem) {
    std::vector<std::string> names;
    for (int i = 0; i < p.nvars(); ++i) names.push_back(stem + std::to_string(i + 1));
    return to_string(p, names);
}

}  // namespace regsing

#include "regsing/multiindex.hpp"
#include "regsing/poly.hpp"

#include "doctest.h"

#include <random>

using namespace regsing;

namespace {

MPoly rand_poly(std::mt19937& rng, int nvars, int maxdeg, int nterms) {
    std::uniform_int_distribution<int> dc(-3, 3);
    std::uniform_int_distribution<int> de(0, maxdeg);
    MPoly p(nvars);
    for (int k = 0; k < nterms; ++k) {
        MultiIndex e(nvars);
        for (int i = 0; i < nvars; ++i) e[i] = de(rng);
        p.add_term(e, Scalar(dc(rng)));
    }
    return p;
}

}  // namespace

TEST_CASE("multi-index helpers") {
    MultiIndex a{2, 1}, b{1, 1};
    CHECK(mi_abs(a) == 3);
    CHECK(mi_add(a, b) == MultiIndex{3, 2});
    CHECK(mi_sub(a, b) == MultiIndex{1, 0});
    CHECK(mi_leq(b, a));
    CHECK_FALSE(mi_leq(a, b));
    CHECK(mi_binom(a, b) == GaussianRational(2));
    CHECK(mi_binom(MultiIndex{4, 2}, MultiIndex{2, 1}) == GaussianRational(12));
    CHECK(mi_binom(a, MultiIndex{3, 0}) == GaussianRational(0));
    CHECK(mi_int_pow(MultiIndex{3, 2}, MultiIndex{2, 1}) == GaussianRational(18));
    CHECK(mi_int_pow(MultiIndex{0, 5}, MultiIndex{0, 0}) == GaussianRational(1));

    auto g = mi_grade(2, 3);
    CHECK(g.size() == 4);
    CHECK(g.front() == MultiIndex{0, 3});
    CHECK(g.back() == MultiIndex{3, 0});
    CHECK(mi_upto(2, 2).size() == 6);
    CHECK(mi_upto(3, 0).size() == 1);
}

TEST_CASE("polynomial arithmetic") {
    MPoly x = MPoly::variable(2, 0);
    MPoly y = MPoly::variable(2, 1);
    MPoly one = MPoly::constant(2, Scalar(1));

    MPoly p = (x + y) * (x - y);
    MPoly expect = x * x - y * y;
    CHECK(p == expect);
    CHECK(p.total_degree() == 2);

    MPoly q = (x + one).pow(3);
    CHECK(q.coeff(MultiIndex{2, 0}) == Scalar(3));
    CHECK(q.coeff(MultiIndex{0, 0}) == Scalar(1));

    CHECK(q.derivative(0) == (x + one) * (x + one) * Scalar(3));
    CHECK(q.derivative(1).is_zero());

    CHECK(q.truncate_degree(1) == x * Scalar(3) + one);
    CHECK(p.homogeneous_part(2) == p);
    CHECK(p.homogeneous_part(1).is_zero());
}

TEST_CASE("polynomial evaluation and composition") {
    MPoly x = MPoly::variable(2, 0);
    MPoly y = MPoly::variable(2, 1);
    MPoly p = x * x + y * Scalar(2);

    CHECK(p.eval({Scalar(3), Scalar(5)}) == Scalar(19));
    CHECK(p.eval_gr({GaussianRational(3), GaussianRational(5)}) == GaussianRational(19));

    // substitute x -> u+v, y -> u*v
    MPoly u = MPoly::variable(2, 0), v = MPoly::variable(2, 1);
    MPoly comp = p.compose({u + v, u * v});
    CHECK(comp == u * u + u * v * Scalar(4) + v * v);
}

TEST_CASE("polynomial ring axioms") {
    std::mt19937 rng(999);
    for (int iter = 0; iter < 100; ++iter) {
        MPoly a = rand_poly(rng, 3, 2, 4);
        MPoly b = rand_poly(rng, 3, 2, 4);
        MPoly c = rand_poly(rng, 3, 2, 4);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a - a == MPoly(3));
        // derivative is a derivation
        CHECK((a * b).derivative(1) == a.derivative(1) * b + a * b.derivative(1));
    }
}

TEST_CASE("polynomial printing") {
    MPoly x = MPoly::variable(2, 0);
    MPoly y = MPoly::variable(2, 1);
    MPoly p = x * x * Scalar(2) + y;
    CHECK(to_string(p, std::vector<std::string>{"x1", "x2"}) == "x2 + 2*x1^2");
    CHECK(to_string(MPoly(2), "x") == "0");
}

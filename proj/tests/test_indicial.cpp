#include "doctest.h"

#include "regsing/indicial.hpp"

#include <random>

using namespace regsing;

namespace {

const int T = 6, X = 4;

RegOperator th(int n, int nx, int i) { return RegOperator::theta(n, nx, T, X, i); }
RegOperator cst(int n, int nx, const Scalar& c) { return RegOperator::constant(n, nx, T, X, c); }
RegOperator tv(int n, int nx, int i) { return RegOperator::t_var(n, nx, T, X, i); }

MPoly xi(int n, int i) { return MPoly::variable(n, i); }
MPoly mc(int n, const Scalar& c) { return MPoly::constant(n, c); }
Scalar sc(long p, long q = 1) { return Scalar::from_rat(p, q); }

BigRat value_at(const MPoly& h, const std::vector<BigRat>& pt) {
    std::vector<GaussianRational> v;
    for (const auto& c : pt) v.push_back(GaussianRational(c));
    return h.eval_gr(v).re;
}

}  // namespace

TEST_CASE("indicial data of a one-wall operator") {
    // P = -(th - 1/2)^2 + t^2 - 3t + 25/4; the t-part drops out at the wall
    RegOperator h = th(1, 0, 0) - cst(1, 0, sc(1, 2));
    RegOperator p = -(h * h) + tv(1, 0, 0) * tv(1, 0, 0) - tv(1, 0, 0) * cst(1, 0, Scalar(3)) +
                    cst(1, 0, sc(25, 4));
    auto ind = indicial_matrix(OpMatrix::scalar(p));
    CHECK(ind.m == 1);
    CHECK(ind.n == 1);
    CHECK_FALSE(ind.x_dependent);

    MPoly g = xi(1, 0) - mc(1, sc(1, 2));
    MPoly expect = mc(1, Scalar(-1)) * g * g + mc(1, sc(25, 4));
    CHECK(indicial_det(ind) == expect);

    // roots 3 and -2; starting at the smaller root resonates at the gap 5
    auto rep = resonance_set(ind, {Scalar(-2)}, 8);
    REQUIRE(rep.hits.size() == 1);
    CHECK(rep.hits[0].gamma == MultiIndex{5});
    CHECK(rep.hits[0].identically_zero);
    CHECK(rep.hits[0].z_vanishing_order == -1);
    CHECK(rep.certified_complete);
    CHECK(rep.note == "exact univariate root isolation");

    rep = resonance_set(ind, {Scalar(3)}, 8);
    CHECK(rep.hits.empty());
    CHECK(rep.certified_complete);

    // a bound below the actual gap must refuse the completeness claim
    rep = resonance_set(ind, {Scalar(-2)}, 3);
    CHECK(rep.hits.empty());
    CHECK_FALSE(rep.certified_complete);
    CHECK(rep.note == "resonances exist beyond the search bound");
}

TEST_CASE("resonance orders for a deformed exponent") {
    RegOperator h = th(1, 0, 0) - cst(1, 0, sc(1, 2));
    RegOperator p = -(h * h) + cst(1, 0, sc(25, 4)) + tv(1, 0, 0);
    auto ind = indicial_matrix(OpMatrix::scalar(p));

    // lambda = z - 2: the gap-5 resonance degenerates only at z = 0
    auto rep = resonance_set(ind, {Scalar::z() - Scalar(2)}, 8);
    REQUIRE(rep.hits.size() == 1);
    CHECK(rep.hits[0].gamma == MultiIndex{5});
    CHECK_FALSE(rep.hits[0].identically_zero);
    CHECK(rep.hits[0].z_vanishing_order == 1);
    CHECK(rep.certified_complete);
}

TEST_CASE("x-dependent indicial data needs an evaluation point") {
    RegOperator p = th(1, 1, 0) * th(1, 1, 0) -
                    RegOperator::x_var(1, 1, T, X, 0) * th(1, 1, 0);
    CHECK_THROWS_WITH_AS(indicial_matrix(OpMatrix::scalar(p)),
                         "x-dependent indicial data requires an evaluation point",
                         std::runtime_error);

    auto ind = indicial_matrix(OpMatrix::scalar(p), std::vector<Scalar>{Scalar(3)});
    CHECK(ind.x_dependent);
    CHECK(indicial_det(ind) == xi(1, 0) * xi(1, 0) - mc(1, Scalar(3)) * xi(1, 0));
    auto rep = resonance_set(ind, {Scalar(0)}, 6);
    REQUIRE(rep.hits.size() == 1);
    CHECK(rep.hits[0].gamma == MultiIndex{3});
    CHECK(rep.certified_complete);

    // a Dx surviving at the wall leaves the commutative setting entirely
    RegOperator q = th(1, 1, 0) +
                    RegOperator::x_var(1, 1, T, X, 0) * RegOperator::dx(1, 1, T, X, 0);
    CHECK_THROWS_WITH_AS(indicial_matrix(OpMatrix::scalar(q)),
                         "sigma_star image contains Dx terms; use the lexicographic series solver",
                         std::runtime_error);
}

TEST_CASE("matrix indicial data") {
    OpMatrix a(2, RegOperator(1, 0, T, X));
    a.at(0, 0) = th(1, 0, 0);
    a.at(0, 1) = cst(1, 0, Scalar(1));
    a.at(1, 1) = th(1, 0, 0) - cst(1, 0, sc(1, 2));
    auto ind = indicial_matrix(a);
    CHECK(ind.m == 2);
    CHECK(indicial_det(ind) == xi(1, 0) * (xi(1, 0) - mc(1, sc(1, 2))));

    Mat v = indicial_eval(ind, {sc(1, 2)});
    CHECK(v[0][0] == sc(1, 2));
    CHECK(v[0][1] == Scalar(1));
    CHECK(v[1][0] == Scalar(0));
    CHECK(v[1][1] == Scalar(0));

    auto rep = resonance_set(ind, {Scalar(0)}, 5);
    CHECK(rep.hits.empty());
    CHECK(rep.certified_complete);
    rep = resonance_set(ind, {Scalar(-1)}, 5);
    REQUIRE(rep.hits.size() == 1);
    CHECK(rep.hits[0].gamma == MultiIndex{1});
}

TEST_CASE("determinant and evaluation commute") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> cdist(-3, 3), edist(0, 1);
    auto rand_entry = [&]() {
        RegOperator p(2, 0, T, X);
        for (int k = 0; k < 3; ++k) {
            OpKey key{{edist(rng), edist(rng)}, {}};
            p.add_term(key, TruncSeries::constant(2, 0, T, X, Scalar(cdist(rng))));
        }
        return p + tv(2, 0, 0) * cst(2, 0, Scalar(cdist(rng)));
    };
    for (int it = 0; it < 25; ++it) {
        OpMatrix a(2, RegOperator(2, 0, T, X));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) a.at(i, j) = rand_entry();
        auto ind = indicial_matrix(a);
        std::vector<Scalar> lam = {sc(cdist(rng), 2), sc(cdist(rng), 3)};
        CHECK(mat_det(indicial_eval(ind, lam)) == indicial_det(ind).eval(lam));
    }
}

TEST_CASE("two-wall resonance certification") {
    // (th1 + th2)(th1 + 2 th2 - 3): hits on gamma1 + 2 gamma2 = 3
    RegOperator s = th(2, 0, 0) + th(2, 0, 1);
    RegOperator p = s * (th(2, 0, 0) + th(2, 0, 1) * Scalar(2) - cst(2, 0, Scalar(3)));
    auto ind = indicial_matrix(OpMatrix::scalar(p));
    CHECK(ind.n == 2);

    auto rep = resonance_set(ind, {Scalar(0), Scalar(0)}, 6);
    REQUIRE(rep.hits.size() == 2);
    CHECK(rep.hits[0].gamma == MultiIndex{1, 1});
    CHECK(rep.hits[1].gamma == MultiIndex{3, 0});
    CHECK(rep.hits[0].identically_zero);
    CHECK(rep.certified_complete);
    CHECK(rep.note == "resonance indices are bounded by 6");

    rep = resonance_set(ind, {Scalar(0), Scalar(0)}, 4);
    CHECK(rep.hits.size() == 2);
    CHECK_FALSE(rep.certified_complete);
    CHECK(rep.note == "search bound below the derived bound 6");
}

TEST_CASE("nondegeneracy of the top symbol") {
    RegOperator p = th(2, 0, 0) * th(2, 0, 0) + th(2, 0, 1) * th(2, 0, 1) + tv(2, 0, 0);
    auto r = check_nondeg(OpMatrix::scalar(p));
    CHECK(r.result == CheckResult::pass);
    CHECK_FALSE(r.witness.has_value());

    RegOperator d = th(2, 0, 0) - th(2, 0, 1);
    r = check_nondeg(OpMatrix::scalar(d * d + tv(2, 0, 0) * tv(2, 0, 1)));
    CHECK(r.result == CheckResult::fail);
    REQUIRE(r.witness.has_value());
    CHECK(*r.witness == MultiIndex{1, 1});

    RegOperator e = th(2, 0, 0) + th(2, 0, 1);
    r = check_nondeg(OpMatrix::scalar(e * e));
    CHECK(r.result == CheckResult::inconclusive);

    OpMatrix bad(2, RegOperator(2, 0, T, X));
    bad.at(0, 0) = th(2, 0, 0) * th(2, 0, 0);
    bad.at(1, 1) = th(2, 0, 1) * th(2, 0, 1);
    CHECK_THROWS_WITH_AS(check_nondeg(bad), "sigma_bar_star is not a scalar matrix",
                         std::runtime_error);

    // lower-order off-diagonals do not break the scalar shape
    OpMatrix ok(2, RegOperator(2, 0, T, X));
    ok.at(0, 0) = th(2, 0, 0) * th(2, 0, 0) + th(2, 0, 1) * th(2, 0, 1);
    ok.at(1, 1) = ok.at(0, 0);
    ok.at(1, 0) = th(2, 0, 0);
    CHECK(check_nondeg(ok).result == CheckResult::pass);
}

TEST_CASE("convergence direction check") {
    RegOperator lap = th(2, 0, 0) * th(2, 0, 0) + th(2, 0, 1) * th(2, 0, 1);
    auto rep = check_converg(OpMatrix::scalar(lap + tv(2, 0, 0)));
    CHECK(rep.result == CheckResult::pass);
    CHECK(rep.eps.re > 0);
    CHECK(rep.note == "definite on the positive orthant");
    CHECK(rep.eps.re <= BigRat(1, 2));  // value at the barycenter

    // definiteness is up to an overall sign
    rep = check_converg(OpMatrix::scalar(-(lap)));
    CHECK(rep.result == CheckResult::pass);

    RegOperator ind1 = th(2, 0, 0) * th(2, 0, 0) - th(2, 0, 1) * th(2, 0, 1);
    rep = check_converg(OpMatrix::scalar(ind1));
    CHECK(rep.result == CheckResult::fail);
    CHECK(rep.note == "top determinant vanishes at the barycenter");
    REQUIRE(rep.witness.size() == 1);
    CHECK(rep.witness[0] == std::vector<BigRat>{BigRat(1, 2), BigRat(1, 2)});

    RegOperator ind2 = th(2, 0, 0) * th(2, 0, 0) - th(2, 0, 1) * th(2, 0, 1) * Scalar(4);
    rep = check_converg(OpMatrix::scalar(ind2));
    CHECK(rep.result == CheckResult::fail);
    CHECK(rep.note == "sign change on the simplex");
    REQUIRE(rep.witness.size() == 2);
    CHECK(rep.witness[0] == std::vector<BigRat>{BigRat(1), BigRat(0)});
    CHECK(rep.witness[1] == std::vector<BigRat>{BigRat(1, 2), BigRat(1, 2)});

    RegOperator q0 = th(2, 0, 0) * th(2, 0, 0);
    RegOperator q1 = th(2, 0, 1) * th(2, 0, 1);
    rep = check_converg(OpMatrix::scalar(q0 * q0 + q1 * q1));
    CHECK(rep.result == CheckResult::pass);
    CHECK(rep.cells > 1);

    OpMatrix m2(2, RegOperator(2, 0, T, X));
    m2.at(0, 0) = lap;
    m2.at(1, 1) = lap;
    m2.at(1, 0) = th(2, 0, 0);
    rep = check_converg(m2);
    CHECK(rep.result == CheckResult::pass);
}

TEST_CASE("simplex positivity certificates are sound") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> ac(1, 5), bb(-4, 4), pq(0, 9);
    for (int it = 0; it < 60; ++it) {
        MPoly q = mc(2, Scalar(ac(rng))) * xi(2, 0) * xi(2, 0) +
                  mc(2, Scalar(bb(rng))) * xi(2, 0) * xi(2, 1) +
                  mc(2, Scalar(ac(rng))) * xi(2, 1) * xi(2, 1);
        auto cert = bernstein_positive_on_simplex(q, 512);
        if (cert.result == CheckResult::pass) {
            CHECK(cert.eps.re > 0);
            for (int j = 0; j < 8; ++j) {
                int a = pq(rng);
                BigRat t(a, 9);
                BigRat v = value_at(q, {t, BigRat(1) - t});
                CHECK(v >= cert.eps.re);
            }
        } else if (cert.result == CheckResult::fail) {
            REQUIRE(!cert.witness.empty());
            BigRat w0 = value_at(q, cert.witness[0]);
            if (cert.witness.size() == 1) {
                CHECK(w0 <= 0);
            } else {
                CHECK(w0 < 0);
                CHECK(value_at(q, cert.witness[1]) > 0);
            }
        }
    }
}

TEST_CASE("elliptic combinations") {
    std::vector<MPoly> sym = {xi(2, 0) + xi(2, 1), xi(2, 0) * xi(2, 1)};
    auto res = elliptic_combination(sym, 1);
    REQUIRE(res.ok);
    CHECK(res.r[0] == xi(2, 0) + xi(2, 1));
    CHECK(res.r[1] == mc(2, Scalar(-2)));
    MPoly target = xi(2, 0) * xi(2, 0) + xi(2, 1) * xi(2, 1);
    CHECK(res.r[0] * sym[0] + res.r[1] * sym[1] == target);

    std::vector<MPoly> sym2 = {xi(2, 0) * xi(2, 0) + xi(2, 1) * xi(2, 1),
                               xi(2, 0) * xi(2, 0) * xi(2, 1) * xi(2, 1)};
    res = elliptic_combination(sym2, 2);
    REQUIRE(res.ok);
    CHECK(res.r[0] == sym2[0]);
    CHECK(res.r[1] == mc(2, Scalar(-2)));
    MPoly target4 = xi(2, 0).pow(4) + xi(2, 1).pow(4);
    CHECK(res.r[0] * sym2[0] + res.r[1] * sym2[1] == target4);

    // xi1 xi2 alone cannot reach the diagonal
    res = elliptic_combination({xi(2, 0) * xi(2, 1)}, 1);
    CHECK_FALSE(res.ok);

    res = elliptic_combination({xi(1, 0) * xi(1, 0)}, 1);
    REQUIRE(res.ok);
    CHECK(res.r[0] == mc(1, Scalar(1)));
}

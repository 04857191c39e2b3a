#pragma once

#include "regsing/opalg.hpp"

#include <string>
#include <utility>
#include <vector>

namespace regsing {

// fundamental system given by its root vectors plus each positive root's
// expansion in the fundamental roots together with its coupling constant
struct RootData {
    std::vector<std::vector<Scalar>> simple;
    std::vector<std::pair<MultiIndex, Scalar>> positive;
};

// BC_n positive system {e_i +- e_j, e_k, 2e_k} over the fundamental roots
// e_1-e_2, ..., e_{n-1}-e_n, e_n; couplings by root length: c1 for the
// length-sqrt(2) roots, c2 for 2e_k, c3 for e_k
RootData bc_root_data(int n, const Scalar& c1, const Scalar& c2, const Scalar& c3);

// Schroedinger operator sum d^2/dx_k^2 + sum_alpha C_alpha sh^-2(<alpha,x>/2)
// in the wall coordinates t_k = e^{<alpha_k,x>}
RegOperator root_trig_op(const RootData& data, int t_order);

// sum d^2/dx_k^2 + sum_k e^{<alpha_k,x>} in the same coordinates
RegOperator root_toda_op(const std::vector<std::vector<Scalar>>& simple, int t_order);

// the reduced two-parameter-family potentials, n walls, no flat variables;
// wall coordinates t_k = e^{x_k - x_{k+1}} for k < n and t_n = e^{x_n}
RegOperator trig_bc(int n, const Scalar& c1, const Scalar& c2, const Scalar& c3, int t_order);
RegOperator trig_a_bry(int n, const Scalar& c1, const Scalar& c2, const Scalar& c3, int t_order);
RegOperator toda_d_bry(int n, const Scalar& c1, const Scalar& c2, const Scalar& c3, int t_order);
RegOperator toda_bc(int n, const Scalar& c1, const Scalar& c2, const Scalar& c3, int t_order);

// radial part of the invariant Laplacian on the hyperbolic plane twisted by
// the K-types k and m; the eigenequation is (P + (lambda+1/2)^2)u = 0
RegOperator sl2_spherical(const Scalar& k, const Scalar& m, int t_order);

// Whittaker reduction: -(theta-1/2)^2 + c1^2 t^2 - c1 m t + (lambda+1/2)^2
RegOperator sl2_whittaker(const Scalar& c1, const Scalar& m, const Scalar& lambda, int t_order);

// two-particle Toda Hamiltonian and its commuting integral
RegOperator toda2_h(int t_order);
RegOperator toda2_i2(int t_order);

// generators of the invariant operators on SL(3,R)/SO(3): two walls t1, t2
// and three flat variables x, y, z
RegOperator sl3_delta2(int t_order, int x_order);
RegOperator sl3_delta3(int t_order, int x_order);

struct CatalogEntry {
    std::string name;
    int arity;
    std::string summary;
};
std::vector<CatalogEntry> catalog_list();

struct CatalogBuild {
    OpMatrix op;
    // row k: t_k = exp(sum_j wall_map[k][j] x_j) in ambient flat coordinates;
    // empty when no such dictionary applies
    std::vector<std::vector<Scalar>> wall_map;
};
CatalogBuild catalog_build(const std::string& name, const std::vector<Scalar>& args,
                           int t_order, int x_order);

struct CommutatorDefect {
    int i;
    int j;
    OpMatrix residual;
};
struct IntegrabilityReport {
    int pairs = 0;
    std::vector<CommutatorDefect> defects;
    bool pass() const { return defects.empty(); }
};

// pairwise commutators of {p} followed by q_list, retruncated to t-order T
IntegrabilityReport integrability_verify(const OpMatrix& p, const std::vector<OpMatrix>& q_list,
                                         int T);

struct SplitDirection {
    Scalar a;
    Scalar b;
    int multiplicity = 0;
};
struct SplitDirections {
    std::vector<SplitDirection> directions;
    std::vector<Scalar> rotated;   // coefficients of the rotated derivative
    int unresolved_degree = 0;     // degree of the factor with no roots in Q(i)
    bool complete() const { return unresolved_degree == 0; }
};

// factor (xi d/dtau - tau d/dxi) sum c_i xi^{m-i} tau^i into linear forms
// (a xi - b tau)^mult; first nonzero of (a, b) is scaled to 1
SplitDirections split_directions(const std::vector<Scalar>& c);

struct SplitComponent {
    int row = 0;
    int col = 0;
    int direction = 0;
    int power = 0;                // i in (b x + a y)^i
    std::vector<Scalar> coeffs;   // ascending in s = a x - b y
};
struct SplitObstruction {
    int row = 0;
    int col = 0;
    int degree = 0;
    std::vector<Scalar> functional;  // pairs to zero with every admissible form of this degree
    Scalar pairing;                  // nonzero value against the input
};
struct SplitReport {
    bool pass = false;
    std::vector<SplitComponent> parts;
    std::vector<SplitObstruction> obstructions;
};

// exact membership of each entry of r in the span of
// (b x + a y)^i g(a x - b y) over the directions, i < multiplicity
SplitReport splitting_membership(const std::vector<std::vector<MPoly>>& r,
                                 const std::vector<SplitDirection>& dirs);

// Taylor coefficients in h of 4 E e^h / (E e^h - 1)^2, the expansion of
// sh^-2(u/2) about a point with e^u = E != 1; ascending, length order+1
std::vector<Scalar> sh_half_inv_sq_taylor(const Scalar& e_point, int order);

}  // namespace regsing

#pragma once

#include "regsing/holonomic.hpp"
#include "regsing/indicial.hpp"

#include <stdexcept>

namespace regsing {

// u = t^lambda sum phi_{alpha,kappa}(x) (log t)^kappa t^alpha with exact
// coefficient vectors of length m; alpha indexes t, kappa indexes log t
struct LogSeriesSolution {
    std::vector<Scalar> lambda;
    int log_degree = 0;
    int m = 1;
    int nx = 0;
    int t_order = 0;
    std::map<std::pair<MultiIndex, MultiIndex>, std::vector<MPoly>> coeffs;

    std::vector<MPoly> coeff(const MultiIndex& alpha, const MultiIndex& kappa) const;
};

// construction refused because the exponent is resonant; the report lists the
// offending shifts
struct ResonanceError : std::runtime_error {
    ResonanceReport report;
    ResonanceError(const std::string& msg, ResonanceReport rep)
        : std::runtime_error(msg), report(std::move(rep)) {}
};

// unique log-free solution of Pu = 0 with t^-lambda u -> seed at t = 0; the
// level recursion inverts the indicial matrix away from the exponent, going
// degree by degree in x when the indicial data depends on x
LogSeriesSolution solve_series(const OpMatrix& p, const std::vector<Scalar>& lambda,
                               const std::vector<MPoly>& seed, int T);

// t^-lambda u restricted to t = 0; defined on log-free solutions only
std::vector<MPoly> boundary_value(const LogSeriesSolution& u);

// Pu = f with the coefficients on the downward closure of sigma prescribed by
// the caller; prescribed levels are consistency-checked, every other level is
// solved, so sigma must contain all resonant levels
LogSeriesSolution solve_inhomogeneous(const OpMatrix& p, const std::vector<TruncSeries>& f,
                                      const std::vector<MultiIndex>& sigma,
                                      const std::map<MultiIndex, std::vector<MPoly>>& seed,
                                      int T);

// companion lift onto the log-monomial basis of degree <= d in graded-lex
// order: theta_i becomes theta_i I + N_i with N_i the derivative action on
// (log t)^kappa, so u = sum u_kappa (log t)^kappa stacks to one plain system
OpMatrix log_lift(const OpMatrix& p, int d);

// one solution per indicial basis element, with that element as leading term;
// the lift of system.front() is solved with the element's coefficients as seed
std::vector<LogSeriesSolution> solve_with_logs(const std::vector<OpMatrix>& system,
                                               const std::vector<Scalar>& lambda,
                                               const std::vector<ExpPolySolution>& indicial_basis,
                                               int T);

struct ResidualEntry {
    MultiIndex alpha;
    MultiIndex kappa;
    int component = 0;
    MPoly value;
};

struct ResidualReport {
    std::vector<ResidualEntry> interior;  // |alpha| <= T; any entry is a failure
    std::vector<ResidualEntry> boundary;  // truncation zone above T, informational

    bool pass() const { return interior.empty(); }
};

// coefficients of Pu, split at the truncation boundary
ResidualReport verify_residual(const OpMatrix& p, const LogSeriesSolution& u, int T);

// [p, p_list[i]] == s_list[i] p + sum_j t_list[i][j] p_list[j] exactly, with
// sigma_star(t_list[i][j]) = 0 throughout
bool check_involutive(const OpMatrix& p, const std::vector<OpMatrix>& p_list,
                      const std::vector<OpMatrix>& s_list,
                      const std::vector<std::vector<OpMatrix>>& t_list);

struct InducedReport {
    std::vector<ResidualReport> residuals;  // one per trailing operator

    bool pass() const;
};

// residuals of the trailing operators on a solution of the leading one
InducedReport verify_induced(const std::vector<OpMatrix>& system, const LogSeriesSolution& u,
                             int T);

struct NormalizedCombination {
    int base = 0;               // member this combination repairs
    std::vector<Scalar> coeff;  // multiplier per member, exact in z
    LogSeriesSolution limit;    // exact value at z = 0
    int steps = 0;              // pole-reduction iterations used
};

struct SolutionFamily {
    std::vector<LogSeriesSolution> members;  // per-exponent solutions over Q(i)(z)
    std::vector<int> pole_profile;           // pole order at z = 0 per member
    std::vector<NormalizedCombination> combinations;  // one per member, same order
};

// one-wall solver for a z-deformed operator, resonant at z = 0 only: solves
// every exponent over the rational-function field, then cancels principal
// parts against higher exponents until each combination is holomorphic at
// z = 0; Z < 0 picks twice the certified pole bound as the jet order
SolutionFamily family_solve_and_normalize(const OpMatrix& p, const std::vector<Scalar>& exponents,
                                          int T, int Z = -1);

// m times the product of the operator orders: the local solution count when
// the top symbols vanish jointly only at the origin
int expected_solution_count(const std::vector<OpMatrix>& system);

}  // namespace regsing

#pragma once

#include <vector>

#include "stackgame/demand.hpp"
#include "stackgame/sequence.hpp"

namespace stackgame {

/// Quantities and profits for one period. Firms inside a period are
/// interchangeable in every homogeneous model, so `quantity`/`profit` hold a
/// single entry in that case; heterogeneous solvers fill one entry per firm.
struct PeriodOutcome {
  int period = 0;      // 1-based
  int firm_count = 0;  // n_t
  std::vector<double> quantity;
  std::vector<double> profit;
};

/// Subgame-perfect equilibrium summary.
/// price and dwl_proxy are NaN for heterogeneous models (no common inverse
/// demand or competitive benchmark exists there).
struct EquilibriumOutcome {
  double x_star = 0.0;     // total equilibrium quantity X*
  double residual = 0.0;   // |X* - sum_k S_k g_k(X*)| (0 for closed forms)
  double price = 0.0;      // P(X*)
  double dwl_proxy = 0.0;  // Xbar_c - X*
  std::vector<PeriodOutcome> per_period;

  [[nodiscard]] double total_quantity() const;
  /// Quantities expanded to one entry per firm, period by period.
  [[nodiscard]] std::vector<double> per_firm_quantities() const;
};

/// One step of the recursion g_1 = g, g_{k+1} = -g_k' * g, evaluated at a
/// point: the value g_k(X) and the slope g_k'(X).
struct GTerm {
  double value = 0.0;
  double slope = 0.0;
};

/// Heterogeneous linear payoffs: firm i earns x_i * a_i * (xbar_c_i - X).
/// Firms are assigned to periods in order: the first n_1 entries move in
/// period 1, the next n_2 in period 2, and so on.
struct HeterogeneousLinearModel {
  std::vector<double> a;       // payoff scale, behaviorally irrelevant
  std::vector<double> xbar_c;  // zero-profit total quantity per firm
};

/// Symmetric quadratic payoff
///   pi_i = alpha0 + alpha1*x_i - alpha2/2*x_i^2 + beta1*sum_{j!=i} x_j
///          - beta2*x_i*sum_{j!=i} x_j.
struct QuadraticPayoff {
  double alpha0 = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
};

/// Two-period quadratic equilibrium: period-1 firms split X1 equally,
/// period-2 firms split X - X1 equally.
struct QuadraticSolution {
  double x1_total = 0.0;  // X_1*
  double x_total = 0.0;   // X*
  std::vector<double> leader_quantity;
  std::vector<double> follower_quantity;
};

/// Finite-support belief over follower arrival sequences; an empty suffix
/// means "no firm ever arrives after period 1".
struct BeliefAtom {
  std::vector<int> suffix;  // possibly empty; entries >= 1
  double probability = 0.0;
};

struct BeliefDistribution {
  std::vector<BeliefAtom> support;
  /// Throws BadBelief unless probabilities are >= 0 and sum to 1 +- 1e-12
  /// and every suffix entry is >= 1.
  void validate() const;
};

/// Linear-demand closed form: X* = [1 - 1/prod(1+n_s)] * xbar_c and
/// x_i = xbar_c / prod_{s<=t}(1+n_s) for firms in period t. `a` and `c`
/// only scale prices/profits; quantities depend on xbar_c alone.
[[nodiscard]] EquilibriumOutcome solve_linear_closed_form(const PeriodSequence& n, double xbar_c,
                                                          double a = 1.0, double c = 0.0);

/// Values and slopes of g_1..g_T at X via jet arithmetic (jets of order T+2
/// are carried). Requires 1 <= T <= 10 and P'(X) != 0.
[[nodiscard]] std::vector<GTerm> g_sequence(const DemandModel& m, double X, int T);

/// General-demand fixed point: X* solves X = sum_k S_k(n) g_k(X), located by
/// a 1024-subinterval sign scan on [0, xbar_c] plus bisection. Candidate
/// roots are screened by interiority (every implied x_i >= -1e-12); exactly
/// one interior root must remain.
[[nodiscard]] EquilibriumOutcome solve_general(const DemandModel& m, const PeriodSequence& n);

/// Two-period game with one leader and total_n - 1 simultaneous followers:
/// X* solves X = n*g(X) - (n-1)*g'(X)*g(X); x_1 = X* - (n-1)*g(X*).
[[nodiscard]] EquilibriumOutcome solve_two_period_single_leader(const DemandModel& m, int total_n);

/// Heterogeneous linear equilibrium by affine backward induction: the
/// continuation total is maintained as X = A_t + B_t * X_t, each period's
/// simultaneous FOCs are solved in closed form, and a forward pass recovers
/// the on-path quantities.
[[nodiscard]] EquilibriumOutcome solve_heterogeneous_linear(const HeterogeneousLinearModel& model,
                                                            const PeriodSequence& n);

/// Two-period quadratic closed form:
///   X*(X1) = (n2*alpha1 + (alpha2-beta2)*X1) / (n2*beta2 + alpha2-beta2)
///   X1*    = [alpha1*(alpha2-beta2)*n1 - alpha1*(alpha2-2*beta2)*n2
///             - beta1*beta2*n1*n2] / [(alpha2-beta2+n1*beta2)*(alpha2-beta2)]
[[nodiscard]] QuadraticSolution solve_quadratic_two_period(const QuadraticPayoff& p, int n1,
                                                           int n2);

/// Profit of one firm producing x_i when the final total is X.
[[nodiscard]] double quadratic_profit(const QuadraticPayoff& p, double x_i, double X);

/// Whether the quadratic family satisfies Stackelberg independence:
/// alpha2 = 2*beta2 and beta1 = 0 (within 1e-12). Requires the non-trivial
/// regime alpha1 != 0 and alpha2 != beta2, else TrivialModel.
[[nodiscard]] bool quadratic_si_condition(const QuadraticPayoff& p);

/// Argmax over x in [0, xbar_c] of the period-1 firm's expected payoff
/// x * sum_w prob_w * (xbar_c - X1) / prod_s(1 + n_s^w), with the other
/// n1 - 1 period-1 firms held at xbar_c/(1+n1). Golden-section to 1e-10.
/// Linear demand only; the result is belief-free.
[[nodiscard]] double expected_best_response_linear(int n1, double xbar_c,
                                                   const BeliefDistribution& belief);

/// Limit quantities x_s^lim = xbar_c / prod_{k<=s}(1+n_k) as the firm count
/// in any later period grows without bound.
[[nodiscard]] std::vector<double> competitive_limit_quantities(const PeriodSequence& prefix,
                                                               double xbar_c);

}  // namespace stackgame

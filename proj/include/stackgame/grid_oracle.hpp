#pragma once

#include "stackgame/demand.hpp"
#include "stackgame/equilibrium.hpp"
#include "stackgame/model_spec.hpp"

namespace stackgame {

/// Action discretization for the brute-force oracle. Ties in a best response
/// always break toward the smallest quantity.
struct GridSpec {
  double step = 0.0;        // grid spacing, > 0
  double max_action = 0.0;  // per-firm action upper bound
  int max_sweeps = 200;     // best-response iteration cap per state

  /// Throws BadInput unless step > 0, max_action >= step, max_sweeps >= 1
  /// and max_action/step <= 1e6.
  void validate() const;
};

/// step = xbar/2000 over actions [0, xbar], the resolution used for every
/// fixture in this repository.
[[nodiscard]] GridSpec default_grid(double xbar);

struct GridOutcome {
  EquilibriumOutcome outcome;  // residual/price/dwl NaN where not defined
  /// True when every state's best-response iteration reached a strict fixed
  /// point; false when some state settled on the elementwise minimum of a
  /// profile cycle (a grid artifact; br_gap bounds the wobble).
  bool converged = false;
  /// Sup over on-path firms of the distance (in quantity units) between the
  /// played action and the exact grid best response to it.
  double br_gap = 0.0;
};

/// Simultaneous (Cournot) total quantity: the root of X = n*g(X), located by
/// scan-and-bisect on [0, Xbar_c]; exactly one root must exist.
[[nodiscard]] double cournot_fixed_point(const DemandModel& m, int n);

/// Brute-force SPE by backward induction over cumulative-quantity states on
/// the grid; simultaneous periods are solved by synchronous best-response
/// iteration from the zero profile. Guard: total firms <= 4 and T <= 3.
[[nodiscard]] GridOutcome backward_induction_grid(const ModelSpec& payoff,
                                                  const PeriodSequence& n, const GridSpec& grid);

struct NestedOptimum {
  double x1 = 0.0;      // leader quantity
  double x_star = 0.0;  // induced total
};

/// Leader-vs-aggregate-followers optimum: for each grid x_1 the followers'
/// total solves X = x_1 + followers*g(X) by bisection on [x_1, Xbar_c]; the
/// leader profit x_1*(P(X)-c) is maximized over the grid and refined by
/// golden-section between the argmax neighbors. This is the designated
/// oracle for the high-frequency perturbed family, whose first-order
/// characterization is not regular.
[[nodiscard]] NestedOptimum nested_leader_optimum(const DemandModel& m, int followers,
                                                  const GridSpec& grid);

}  // namespace stackgame

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stackgame/equilibrium.hpp"
#include "stackgame/model_spec.hpp"

namespace stackgame {

/// Dispatches to the solver matching the payoff structure: linear demand to
/// the closed form, perturbed demand to the general fixed point,
/// heterogeneous to the affine recursion, quadratic (at most two periods) to
/// the two-period closed form.
[[nodiscard]] EquilibriumOutcome solve_model(const ModelSpec& spec, const PeriodSequence& n);

/// Outcome of the Stackelberg-independence diagnostic: the prefix firms'
/// on-path quantities under every tested suffix extension, their sup
/// pairwise deviation, and the verdict at the stated tolerance.
struct IndependenceReport {
  PeriodSequence prefix;
  std::vector<std::vector<int>> extensions;            // each possibly empty
  std::vector<std::vector<double>> prefix_quantities;  // [extension][prefix period]
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool satisfied = false;
};

/// Solves prefix + suffix for every suffix and compares the prefix firms'
/// quantities pairwise. Solver errors are rethrown annotated with the
/// offending extension. Heterogeneous models are rejected (suffix firms have
/// no defined parameters).
[[nodiscard]] IndependenceReport check_independence(const ModelSpec& spec,
                                                    const PeriodSequence& prefix,
                                                    const std::vector<std::vector<int>>& suffixes,
                                                    double tol);

/// Observer inference: a firm in the last prefix period producing x_observed
/// reveals the competitive quantity x_observed * prod_s (1 + n_s) when
/// demand is linear and firms are identical.
[[nodiscard]] double infer_competitive_quantity(double x_observed, const PeriodSequence& prefix);

struct LimitRow {
  long long n_t = 0;  // the grown period's firm count
  double x_star = 0.0;
  std::vector<double> prefix_quantities;  // periods strictly before the grown one
  double gap = 0.0;                       // Xbar_c - X*
  double ntg = 0.0;                       // n_t * g(X*)
};

struct LimitTable {
  double xbar_c = 0.0;
  int grow_period = 0;
  std::vector<LimitRow> rows;
};

/// Re-solves the game while the firm count of `grow_period` runs over
/// `values`. Demand models only. Rows keep the order of `values`; sweep
/// points may be solved concurrently.
[[nodiscard]] LimitTable limit_sweep(const ModelSpec& spec, const PeriodSequence& base,
                                     int grow_period, const std::vector<long long>& values);

/// One named series of a figure, in tidy (table, series, x, y) form.
struct FigureSeries {
  std::string table;   // "demand" or "equilibrium"
  std::string series;  // e.g. "leader_eps_plus"
  std::vector<double> x;
  std::vector<double> y;
};

struct FigureData {
  std::vector<FigureSeries> series;
};

/// Scale and perturbation overrides for the built-in figures; eps is a
/// magnitude (fig2 plots both signs) and defaults per figure: fig2
/// eps=0.023*a, k=5; fig3 eps=0.00025*a, k=100.
struct FigureOptions {
  double a = 1.0;
  double xbar = 1.0;
  double c = 0.0;
  std::optional<double> eps;
  std::optional<int> k;
};

/// Figure datasets:
///   fig1: linear leader/total quantities for n = 1..10.
///   fig2: both perturbed demand curves (201 samples) plus leader/total for
///         n = 1..10 under each epsilon sign.
///   fig3: the high-frequency demand curve plus leader/total for n = 1..50,
///         computed by the nested grid optimum (the regular fixed-point
///         characterization is not valid at this frequency).
[[nodiscard]] FigureData figure_data(const std::string& figure, const FigureOptions& options = {});

}  // namespace stackgame

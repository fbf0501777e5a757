#include "stackgame/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "stackgame/errors.hpp"
#include "stackgame/grid_oracle.hpp"
#include "stackgame/parallel.hpp"
#include "stackgame/rootfind.hpp"

namespace stackgame {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string suffix_label(const std::vector<int>& suffix) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < suffix.size(); ++i) {
    if (i > 0) out << ',';
    out << suffix[i];
  }
  out << ')';
  return out.str();
}

PeriodSequence two_period_sequence(int n_total) {
  std::vector<int> counts{1};
  if (n_total > 1) counts.push_back(n_total - 1);
  return PeriodSequence(std::move(counts));
}

// Single first mover, `followers` simultaneous second movers. The leader-grid
// argmax picks the equilibrium branch; bisecting the fixed-point equation in a
// two-step neighborhood then removes the grid/golden error.
EquilibriumOutcome solve_perturbed_leader_game(const DemandModel& m, int followers) {
  const GridSpec grid = default_grid(m.xbar());
  const NestedOptimum opt = nested_leader_optimum(m, followers, grid);
  const double xbar_c = m.competitive_quantity().xbar_c;
  const int n_total = followers + 1;

  const auto phi = [&](double x) {
    if (followers == 0) return x - m.g(x);
    const Jet gj = m.g_jet(x, 1);
    const double g = gj.value();
    const double gp = gj.derivative_value(1);
    return x - n_total * g + (n_total - 1) * gp * g;
  };

  double x_star = opt.x_star;
  const double lo = std::max(0.0, x_star - 2.0 * grid.step);
  const double hi = std::min(xbar_c, x_star + 2.0 * grid.step);
  const double f_lo = phi(lo);
  const double f_hi = phi(hi);
  if (lo < hi && std::signbit(f_lo) != std::signbit(f_hi)) {
    x_star = bisect(phi, lo, hi, f_lo, f_hi);
  }

  const double x_follower = followers > 0 ? m.g(x_star) : 0.0;
  double x_leader = x_star - followers * x_follower;
  if (x_leader < -1e-12) {
    throw Error(ErrorKind::NonInterior,
                "leader quantity " + std::to_string(x_leader) + " is negative");
  }
  if (x_leader < 0.0) x_leader = 0.0;

  EquilibriumOutcome out;
  out.x_star = x_star;
  out.residual = std::abs(phi(x_star));
  out.price = m.price(x_star);
  out.dwl_proxy = xbar_c - x_star;
  const double margin = out.price - m.c();
  out.per_period.push_back({1, 1, {x_leader}, {x_leader * margin}});
  if (followers > 0) {
    out.per_period.push_back({2, followers, {x_follower}, {x_follower * margin}});
  }
  return out;
}

}  // namespace

EquilibriumOutcome solve_model(const ModelSpec& spec, const PeriodSequence& n) {
  return std::visit(
      Overloaded{
          [&](const DemandModel& m) {
            if (m.family() == DemandFamily::Linear) {
              return solve_linear_closed_form(n, m.competitive_quantity().xbar_c, m.a(), m.c());
            }
            if (n.count(1) == 1 && n.periods() <= 2) {
              // Perturbed profit curves are multi-modal, so the stationarity
              // scan alone cannot single out the equilibrium; global argmax
              // over the leader grid picks the branch, then a local bisection
              // of the fixed-point equation sharpens it.
              return solve_perturbed_leader_game(m, n.periods() == 2 ? n.count(2) : 0);
            }
            return solve_general(m, n);
          },
          [&](const HeterogeneousLinearModel& h) { return solve_heterogeneous_linear(h, n); },
          [&](const QuadraticPayoff& q) {
            if (n.periods() > 2) {
              throw Error(ErrorKind::BadInput, "quadratic games support at most two periods");
            }
            const int n1 = n.count(1);
            const int n2 = n.periods() == 2 ? n.count(2) : 0;
            const QuadraticSolution sol = solve_quadratic_two_period(q, n1, n2);

            EquilibriumOutcome out;
            out.x_star = sol.x_total;
            out.residual = 0.0;
            out.price = std::numeric_limits<double>::quiet_NaN();
            out.dwl_proxy = std::numeric_limits<double>::quiet_NaN();
            const double leader = sol.leader_quantity.front();
            out.per_period.push_back(
                {1, n1, {leader}, {quadratic_profit(q, leader, sol.x_total)}});
            if (n2 > 0) {
              const double follower = sol.follower_quantity.front();
              out.per_period.push_back(
                  {2, n2, {follower}, {quadratic_profit(q, follower, sol.x_total)}});
            }
            return out;
          },
      },
      spec);
}

IndependenceReport check_independence(const ModelSpec& spec, const PeriodSequence& prefix,
                                      const std::vector<std::vector<int>>& suffixes, double tol) {
  if (!(tol >= 0.0)) throw Error(ErrorKind::BadInput, "tolerance must be >= 0");
  if (suffixes.empty()) throw Error(ErrorKind::BadInput, "need at least one extension");
  if (std::holds_alternative<HeterogeneousLinearModel>(spec)) {
    throw Error(ErrorKind::BadInput,
                "independence extensions are undefined for heterogeneous models "
                "(suffix firms have no parameters)");
  }

  IndependenceReport report{prefix, suffixes, {}, 0.0, tol, false};
  for (const std::vector<int>& suffix : suffixes) {
    const PeriodSequence game = suffix.empty() ? prefix : prefix.extended(suffix);
    try {
      const EquilibriumOutcome outcome = solve_model(spec, game);
      std::vector<double> quantities;
      for (int s = 1; s <= prefix.periods(); ++s) {
        quantities.push_back(outcome.per_period[static_cast<std::size_t>(s) - 1].quantity.front());
      }
      report.prefix_quantities.push_back(std::move(quantities));
    } catch (const Error& e) {
      throw Error(e.kind(), e.message() + " [extension " + suffix_label(suffix) + "]");
    }
  }

  for (std::size_t i = 0; i < report.prefix_quantities.size(); ++i) {
    for (std::size_t j = i + 1; j < report.prefix_quantities.size(); ++j) {
      for (std::size_t s = 0; s < report.prefix_quantities[i].size(); ++s) {
        report.max_deviation =
            std::max(report.max_deviation,
                     std::abs(report.prefix_quantities[i][s] - report.prefix_quantities[j][s]));
      }
    }
  }
  report.satisfied = report.max_deviation <= tol;
  return report;
}

double infer_competitive_quantity(double x_observed, const PeriodSequence& prefix) {
  if (!(x_observed > 0.0)) throw Error(ErrorKind::BadInput, "observed quantity must be > 0");
  double product = 1.0;
  for (int n_t : prefix.counts()) product *= 1.0 + n_t;
  return x_observed * product;
}

LimitTable limit_sweep(const ModelSpec& spec, const PeriodSequence& base, int grow_period,
                       const std::vector<long long>& values) {
  const auto* m = std::get_if<DemandModel>(&spec);
  if (m == nullptr) {
    throw Error(ErrorKind::BadInput, "limit sweeps are defined for demand models only");
  }
  if (grow_period < 1 || grow_period > base.periods()) {
    throw Error(ErrorKind::BadPeriod, "grow period outside the base sequence");
  }
  if (values.empty()) throw Error(ErrorKind::BadInput, "need at least one sweep value");

  LimitTable table;
  table.xbar_c = m->competitive_quantity().xbar_c;
  table.grow_period = grow_period;
  table.rows.resize(values.size());

  parallel_for(values.size(), [&](std::size_t i) {
    const long long v = values[i];
    if (v < 1 || v > std::numeric_limits<int>::max()) {
      throw Error(ErrorKind::BadInput, "sweep value out of range");
    }
    std::vector<int> counts = base.counts();
    counts[static_cast<std::size_t>(grow_period) - 1] = static_cast<int>(v);
    const PeriodSequence n(std::move(counts));
    const EquilibriumOutcome outcome = solve_model(spec, n);

    LimitRow row;
    row.n_t = v;
    row.x_star = outcome.x_star;
    for (int s = 1; s < grow_period; ++s) {
      row.prefix_quantities.push_back(
          outcome.per_period[static_cast<std::size_t>(s) - 1].quantity.front());
    }
    row.gap = table.xbar_c - outcome.x_star;
    row.ntg = static_cast<double>(v) * m->g(outcome.x_star);
    table.rows[i] = std::move(row);
  });
  return table;
}

FigureData figure_data(const std::string& figure, const FigureOptions& options) {
  FigureData data;

  const auto demand_series = [&](const DemandModel& m, std::string name) {
    FigureSeries s{"demand", std::move(name), {}, {}};
    for (int i = 0; i <= 200; ++i) {
      const double X = options.xbar * i / 200.0;
      s.x.push_back(X);
      s.y.push_back(m.price(X));
    }
    return s;
  };

  if (figure == "fig1") {
    const DemandModel m = DemandModel::linear(options.a, options.xbar, options.c);
    const double xc = m.competitive_quantity().xbar_c;
    FigureSeries leader{"equilibrium", "leader", {}, {}};
    FigureSeries total{"equilibrium", "total", {}, {}};
    for (int n = 1; n <= 10; ++n) {
      const EquilibriumOutcome outcome =
          solve_linear_closed_form(two_period_sequence(n), xc, options.a, options.c);
      leader.x.push_back(n);
      leader.y.push_back(outcome.per_period.front().quantity.front());
      total.x.push_back(n);
      total.y.push_back(outcome.x_star);
    }
    data.series.push_back(std::move(leader));
    data.series.push_back(std::move(total));
    return data;
  }

  if (figure == "fig2") {
    const double eps = options.eps.value_or(0.023 * options.a);
    const int k = options.k.value_or(5);
    const DemandModel plus = DemandModel::sine_perturbed(options.a, options.xbar, eps, k, options.c);
    const DemandModel minus =
        DemandModel::sine_perturbed(options.a, options.xbar, -eps, k, options.c);
    data.series.push_back(demand_series(plus, "demand_eps_plus"));
    data.series.push_back(demand_series(minus, "demand_eps_minus"));

    const std::vector<std::pair<const DemandModel*, std::string>> variants{
        {&plus, "eps_plus"}, {&minus, "eps_minus"}};
    for (const auto& [model, tag] : variants) {
      FigureSeries leader{"equilibrium", "leader_" + tag, {}, {}};
      FigureSeries total{"equilibrium", "total_" + tag, {}, {}};
      std::vector<EquilibriumOutcome> outcomes(10);
      parallel_for(outcomes.size(), [&](std::size_t i) {
        outcomes[i] = solve_perturbed_leader_game(*model, static_cast<int>(i));
      });
      for (int n = 1; n <= 10; ++n) {
        const EquilibriumOutcome& outcome = outcomes[static_cast<std::size_t>(n) - 1];
        leader.x.push_back(n);
        leader.y.push_back(outcome.per_period.front().quantity.front());
        total.x.push_back(n);
        total.y.push_back(outcome.x_star);
      }
      data.series.push_back(std::move(leader));
      data.series.push_back(std::move(total));
    }
    return data;
  }

  if (figure == "fig3") {
    const double eps = options.eps.value_or(0.00025 * options.a);
    const int k = options.k.value_or(100);
    const DemandModel m = DemandModel::sine_perturbed(options.a, options.xbar, eps, k, options.c);
    data.series.push_back(demand_series(m, "demand"));

    FigureSeries leader{"equilibrium", "leader", {}, {}};
    FigureSeries total{"equilibrium", "total", {}, {}};
    std::vector<EquilibriumOutcome> outcomes(50);
    parallel_for(outcomes.size(), [&](std::size_t i) {
      outcomes[i] = solve_perturbed_leader_game(m, static_cast<int>(i));
    });
    for (int n = 1; n <= 50; ++n) {
      const EquilibriumOutcome& outcome = outcomes[static_cast<std::size_t>(n) - 1];
      leader.x.push_back(n);
      leader.y.push_back(outcome.per_period.front().quantity.front());
      total.x.push_back(n);
      total.y.push_back(outcome.x_star);
    }
    data.series.push_back(std::move(leader));
    data.series.push_back(std::move(total));
    return data;
  }

  throw Error(ErrorKind::BadInput, "figure must be one of fig1, fig2, fig3");
}

}  // namespace stackgame

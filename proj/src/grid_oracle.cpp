#include "stackgame/grid_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "stackgame/errors.hpp"
#include "stackgame/rootfind.hpp"

namespace stackgame {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

struct PeriodGame {
  std::vector<int> profile;  // chosen action index per firm in the period
  bool strict = true;        // false when resolved from a length-2 cycle
};

/// Backward-induction engine over cumulative-quantity indices. The payoff
/// functor maps (global firm index, own action index, final total index) to
/// profit; everything else is model-agnostic.
template <class PayoffFn>
class InductionRunner {
 public:
  InductionRunner(const PayoffFn& payoff, const PeriodSequence& n, const GridSpec& grid)
      : payoff_(payoff), n_(n), grid_(grid) {
    actions_ = static_cast<int>(std::llround(grid.max_action / grid.step));
    if (actions_ < 1) throw Error(ErrorKind::BadInput, "grid has no positive action");
    periods_ = n.periods();
    firms_before_.assign(static_cast<std::size_t>(periods_) + 1, 0);
    for (int t = 1; t <= periods_; ++t) {
      firms_before_[static_cast<std::size_t>(t)] =
          firms_before_[static_cast<std::size_t>(t) - 1] + n.count(t);
    }
  }

  GridOutcome run() {
    const int total_firms = firms_before_.back();
    // final_total[t][s]: final cumulative index reached from cumulative
    // index s entering period t+1 (t = periods_ maps identically).
    std::vector<std::vector<int>> final_total(static_cast<std::size_t>(periods_) + 1);
    auto& identity = final_total[static_cast<std::size_t>(periods_)];
    identity.resize(static_cast<std::size_t>(total_firms) * actions_ + 1);
    for (std::size_t j = 0; j < identity.size(); ++j) identity[j] = static_cast<int>(j);

    bool all_strict = true;
    for (int t = periods_; t >= 1; --t) {
      const auto& next = final_total[static_cast<std::size_t>(t)];
      auto& here = final_total[static_cast<std::size_t>(t) - 1];
      const long long states =
          static_cast<long long>(firms_before_[static_cast<std::size_t>(t) - 1]) * actions_;
      here.resize(static_cast<std::size_t>(states) + 1);
      for (long long s = 0; s <= states; ++s) {
        const PeriodGame game = solve_period_game(t, static_cast<int>(s), next);
        all_strict = all_strict && game.strict;
        int played = 0;
        for (int a : game.profile) played += a;
        here[static_cast<std::size_t>(s)] = next[static_cast<std::size_t>(s + played)];
      }
    }

    // Forward pass: re-derive the on-path profiles (deterministic) and the
    // on-path best-response gap.
    GridOutcome out;
    out.converged = all_strict;
    out.br_gap = 0.0;
    int state = 0;
    for (int t = 1; t <= periods_; ++t) {
      const auto& next = final_total[static_cast<std::size_t>(t)];
      const PeriodGame game = solve_period_game(t, state, next);
      int played = 0;
      for (int a : game.profile) played += a;

      PeriodOutcome period{t, n_.count(t), {}, {}};
      const std::size_t base = static_cast<std::size_t>(firms_before_[static_cast<std::size_t>(t) - 1]);
      for (std::size_t i = 0; i < game.profile.size(); ++i) {
        const int own = game.profile[i];
        const int others = state + played - own;
        const int best = best_response(base + i, others, next);
        out.br_gap = std::max(out.br_gap, std::abs(best - own) * grid_.step);
        period.quantity.push_back(own * grid_.step);
        const int final_idx = next[static_cast<std::size_t>(others + own)];
        period.profit.push_back(payoff_(base + i, own, final_idx));
      }
      out.outcome.per_period.push_back(std::move(period));
      state += played;
    }
    out.outcome.x_star = state * grid_.step;
    out.outcome.residual = std::numeric_limits<double>::quiet_NaN();
    out.outcome.price = std::numeric_limits<double>::quiet_NaN();
    out.outcome.dwl_proxy = std::numeric_limits<double>::quiet_NaN();
    return out;
  }

 private:
  /// Best action of `firm` when the other firms' cumulative index is fixed.
  int best_response(std::size_t firm, int others, const std::vector<int>& next) const {
    int best = 0;
    double best_value = payoff_(firm, 0, next[static_cast<std::size_t>(others)]);
    for (int j = 1; j <= actions_; ++j) {
      const double value = payoff_(firm, j, next[static_cast<std::size_t>(others + j)]);
      if (value > best_value) {
        best_value = value;
        best = j;
      }
    }
    return best;
  }

  PeriodGame solve_period_game(int t, int state, const std::vector<int>& next) const {
    const int n_t = n_.count(t);
    const std::size_t base = static_cast<std::size_t>(firms_before_[static_cast<std::size_t>(t) - 1]);
    std::vector<int> profile(static_cast<std::size_t>(n_t), 0);
    if (n_t == 1) {
      profile[0] = best_response(base, state, next);
      return {std::move(profile), true};
    }
    std::vector<std::vector<int>> history{profile};
    for (int sweep = 0; sweep < grid_.max_sweeps; ++sweep) {
      std::vector<int> updated(static_cast<std::size_t>(n_t), 0);
      int sum = 0;
      for (int a : profile) sum += a;
      for (std::size_t i = 0; i < profile.size(); ++i) {
        updated[i] = best_response(base + i, state + sum - profile[i], next);
      }
      if (updated == profile) return {std::move(updated), true};
      const auto seen = std::find(history.begin(), history.end(), updated);
      if (seen != history.end()) {
        // Cycle between grid profiles (a discretization artifact): settle on
        // the elementwise minimum over the cycle, the tie-break direction.
        for (auto it = seen; it != history.end(); ++it) {
          for (std::size_t i = 0; i < updated.size(); ++i) {
            updated[i] = std::min(updated[i], (*it)[i]);
          }
        }
        return {std::move(updated), false};
      }
      history.push_back(updated);
      profile = std::move(updated);
    }
    throw Error(ErrorKind::NoConvergence, "best-response iteration exceeded max_sweeps");
  }

  const PayoffFn& payoff_;
  const PeriodSequence& n_;
  const GridSpec& grid_;
  int actions_ = 0;
  int periods_ = 0;
  std::vector<int> firms_before_;
};

template <class PayoffFn>
GridOutcome run_induction(const PayoffFn& payoff, const PeriodSequence& n, const GridSpec& grid) {
  return InductionRunner<PayoffFn>(payoff, n, grid).run();
}

}  // namespace

void GridSpec::validate() const {
  if (!(step > 0.0)) throw Error(ErrorKind::BadInput, "grid step must be > 0");
  if (!(max_action >= step)) throw Error(ErrorKind::BadInput, "grid needs max_action >= step");
  if (max_sweeps < 1) throw Error(ErrorKind::BadInput, "max_sweeps must be >= 1");
  if (max_action / step > 1e6) {
    throw Error(ErrorKind::BadInput, "grid exceeds 1e6 points per action axis");
  }
}

GridSpec default_grid(double xbar) {
  if (!(xbar > 0.0)) throw Error(ErrorKind::BadInput, "xbar must be > 0");
  return GridSpec{xbar / 2000.0, xbar, 200};
}

double cournot_fixed_point(const DemandModel& m, int n) {
  if (n < 1) throw Error(ErrorKind::BadInput, "need n >= 1");
  const CompetitiveBenchmark bench = m.competitive_quantity();
  const auto phi = [&](double X) { return X - n * m.g(X); };
  const std::vector<double> roots = scan_roots(phi, 0.0, bench.xbar_c, 1024);
  if (roots.size() != 1) {
    throw Error(ErrorKind::RegularityViolated,
                roots.empty() ? "no Cournot fixed point on [0, Xbar_c]"
                              : "multiple Cournot fixed points");
  }
  return roots.front();
}

GridOutcome backward_induction_grid(const ModelSpec& payoff, const PeriodSequence& n,
                                    const GridSpec& grid) {
  grid.validate();
  if (n.total_firms() > 4 || n.periods() > 3) {
    throw Error(ErrorKind::StateSpaceTooLarge, "oracle guard: total firms <= 4 and T <= 3");
  }
  const int actions = static_cast<int>(std::llround(grid.max_action / grid.step));
  const double step = grid.step;

  return std::visit(
      Overloaded{
          [&](const DemandModel& m) {
            const std::size_t top = static_cast<std::size_t>(n.total_firms()) *
                                        static_cast<std::size_t>(actions) + 1;
            std::vector<double> price(top);
            for (std::size_t j = 0; j < top; ++j) {
              price[j] = m.price(static_cast<double>(j) * step);
            }
            const double cost = m.c();
            const auto payoff_fn = [&price, cost, step](std::size_t, int x_idx, int final_idx) {
              return x_idx * step * (price[static_cast<std::size_t>(final_idx)] - cost);
            };
            GridOutcome out = run_induction(payoff_fn, n, grid);
            out.outcome.price = m.price(out.outcome.x_star);
            out.outcome.dwl_proxy = m.competitive_quantity().xbar_c - out.outcome.x_star;
            return out;
          },
          [&](const HeterogeneousLinearModel& h) {
            if (static_cast<long long>(h.a.size()) != n.total_firms() ||
                static_cast<long long>(h.xbar_c.size()) != n.total_firms()) {
              throw Error(ErrorKind::BadInput,
                          "per-firm parameter count must match the period sequence");
            }
            const auto payoff_fn = [&h, step](std::size_t firm, int x_idx, int final_idx) {
              const double total = final_idx * step;
              return x_idx * step * h.a[firm] * (h.xbar_c[firm] - total);
            };
            return run_induction(payoff_fn, n, grid);
          },
          [&](const QuadraticPayoff& q) {
            const auto payoff_fn = [&q, step](std::size_t, int x_idx, int final_idx) {
              return quadratic_profit(q, x_idx * step, final_idx * step);
            };
            return run_induction(payoff_fn, n, grid);
          },
      },
      payoff);
}

NestedOptimum nested_leader_optimum(const DemandModel& m, int followers, const GridSpec& grid) {
  grid.validate();
  if (followers < 0) throw Error(ErrorKind::BadInput, "followers must be >= 0");
  const CompetitiveBenchmark bench = m.competitive_quantity();
  const double xc = bench.xbar_c;

  const auto follower_total = [&](double x1) -> double {
    if (followers == 0 || x1 >= xc) return x1;
    const auto psi = [&](double X) { return X - x1 - followers * m.g(X); };
    const double f_lo = psi(x1);  // = -followers*g(x1) < 0 below xc
    const double f_hi = psi(xc);  // = xc - x1 > 0
    if (f_lo > 0.0 || f_hi < 0.0) {
      throw Error(ErrorKind::RegularityViolated, "follower fixed-point bracket failed");
    }
    return bisect(psi, x1, xc, f_lo, f_hi);
  };
  const auto leader_profit = [&](double x1) {
    return x1 * (m.price(follower_total(x1)) - m.c());
  };

  const int actions = static_cast<int>(std::llround(grid.max_action / grid.step));
  int best = 0;
  double best_value = leader_profit(0.0);
  for (int j = 1; j <= actions; ++j) {
    const double value = leader_profit(j * grid.step);
    if (value > best_value) {
      best_value = value;
      best = j;
    }
  }
  const double lo = std::max(0, best - 1) * grid.step;
  const double hi = std::min(actions, best + 1) * grid.step;
  NestedOptimum out;
  out.x1 = golden_section_max(leader_profit, lo, hi, 1e-10);
  out.x_star = follower_total(out.x1);
  return out;
}

}  // namespace stackgame

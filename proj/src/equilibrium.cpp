#include "stackgame/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "stackgame/errors.hpp"
#include "stackgame/rootfind.hpp"

namespace stackgame {

namespace {

// Quantities in (-1e-12, 0) are floating-point dust and are clamped to 0;
// anything below is a genuine corner violation.
constexpr double kInteriorFloor = -1e-12;
constexpr int kScanSubintervals = 1024;
constexpr int kMaxPeriods = 10;

long long checked_mul(long long a, long long b) {
  long long out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error(ErrorKind::Overflow, "firm-count product exceeds 64-bit range");
  }
  return out;
}

double clamp_dust(double x) { return (x < 0.0 && x > kInteriorFloor) ? 0.0 : x; }

bool all_interior(const std::vector<double>& xs) {
  return std::all_of(xs.begin(), xs.end(), [](double x) { return x >= kInteriorFloor; });
}

std::string describe_roots(const std::vector<double>& roots) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (i > 0) out << ", ";
    out << roots[i];
  }
  return out.str();
}

/// Shared tail of the scan-based solvers: given every root of the fixed-point
/// equation and the per-period quantity profile each root implies, demand a
/// single interior candidate.
// The scan must isolate exactly one root: with several stationary points the
// first-order conditions alone cannot say which one is the equilibrium.
std::size_t select_unique_root(const std::vector<double>& roots,
                               const std::vector<std::vector<double>>& profiles) {
  if (roots.empty()) {
    throw Error(ErrorKind::RegularityViolated, "no fixed-point root on [0, Xbar_c]");
  }
  if (roots.size() > 1) {
    throw Error(ErrorKind::RegularityViolated,
                "multiple fixed-point roots: " + describe_roots(roots));
  }
  if (!all_interior(profiles.front())) {
    std::string detail;
    for (double q : profiles.front()) {
      if (!detail.empty()) detail += ", ";
      detail += std::to_string(q);
    }
    throw Error(ErrorKind::NonInterior,
                "fixed-point root implies a negative quantity; per-period quantities: " + detail);
  }
  return 0;
}

}  // namespace

double EquilibriumOutcome::total_quantity() const {
  double total = 0.0;
  for (const PeriodOutcome& p : per_period) {
    if (p.quantity.size() == 1) {
      total += p.firm_count * p.quantity[0];
    } else {
      for (double q : p.quantity) total += q;
    }
  }
  return total;
}

std::vector<double> EquilibriumOutcome::per_firm_quantities() const {
  std::vector<double> out;
  for (const PeriodOutcome& p : per_period) {
    if (p.quantity.size() == 1) {
      out.insert(out.end(), static_cast<std::size_t>(p.firm_count), p.quantity[0]);
    } else {
      out.insert(out.end(), p.quantity.begin(), p.quantity.end());
    }
  }
  return out;
}

void BeliefDistribution::validate() const {
  if (support.empty()) throw Error(ErrorKind::BadBelief, "belief support is empty");
  double total = 0.0;
  for (const BeliefAtom& atom : support) {
    if (!(atom.probability >= 0.0)) {
      throw Error(ErrorKind::BadBelief, "belief probabilities must be >= 0");
    }
    for (int n_s : atom.suffix) {
      if (n_s < 1) throw Error(ErrorKind::BadBelief, "belief suffix entries must be >= 1");
    }
    total += atom.probability;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorKind::BadBelief, "belief probabilities must sum to 1");
  }
}

EquilibriumOutcome solve_linear_closed_form(const PeriodSequence& n, double xbar_c, double a,
                                            double c) {
  if (!(xbar_c > 0.0)) throw Error(ErrorKind::BadInput, "xbar_c must be > 0");
  if (!(a > 0.0)) throw Error(ErrorKind::BadInput, "a must be > 0");
  if (!(c >= 0.0)) throw Error(ErrorKind::BadInput, "c must be >= 0");

  long long product = 1;
  for (int n_t : n.counts()) product = checked_mul(product, 1 + static_cast<long long>(n_t));

  EquilibriumOutcome out;
  out.x_star = (1.0 - 1.0 / static_cast<double>(product)) * xbar_c;
  out.residual = 0.0;
  out.price = c + a * (xbar_c - out.x_star);
  out.dwl_proxy = xbar_c - out.x_star;

  long long prefix = 1;
  for (int t = 1; t <= n.periods(); ++t) {
    prefix = checked_mul(prefix, 1 + static_cast<long long>(n.count(t)));
    const double x_t = xbar_c / static_cast<double>(prefix);
    out.per_period.push_back(
        {t, n.count(t), {x_t}, {x_t * (out.price - c)}});
  }
  return out;
}

std::vector<GTerm> g_sequence(const DemandModel& m, double X, int T) {
  if (T < 1 || T > kMaxPeriods) {
    throw Error(ErrorKind::BadInput, "g_sequence supports 1 to 10 periods");
  }
  // g_1 at order T+1 (price jet at T+2 underneath); each recursion step
  // costs one order, leaving g_T with value and slope intact.
  const Jet g1 = m.g_jet(X, T + 1);
  std::vector<GTerm> out;
  out.push_back({g1.value(), g1.coeff(1)});
  Jet g_k = g1;
  for (int k = 2; k <= T; ++k) {
    const Jet slope = derivative(g_k);
    g_k = -(slope * truncated(g1, slope.order()));
    out.push_back({g_k.value(), g_k.coeff(1)});
  }
  return out;
}

EquilibriumOutcome solve_general(const DemandModel& m, const PeriodSequence& n) {
  const int T = n.periods();
  if (T > kMaxPeriods) throw Error(ErrorKind::BadInput, "solve_general supports up to 10 periods");
  const CompetitiveBenchmark bench = m.competitive_quantity();
  const SMeasures s = s_measures(n);

  const auto phi = [&](double X) {
    const std::vector<GTerm> gs = g_sequence(m, X, T);
    double acc = X;
    for (int k = 1; k <= T; ++k) acc -= static_cast<double>(s.at(k)) * gs[k - 1].value;
    return acc;
  };

  const std::vector<double> roots = scan_roots(phi, 0.0, bench.xbar_c, kScanSubintervals);

  std::vector<std::vector<double>> profiles;
  profiles.reserve(roots.size());
  for (double root : roots) {
    const std::vector<GTerm> gs = g_sequence(m, root, T);
    std::vector<double> q(static_cast<std::size_t>(T));
    for (int t = 1; t <= T; ++t) {
      const SMeasures suffix = suffix_measures(n, t);
      double bracket = 1.0;
      for (int k = 1; k <= T - t; ++k) {
        bracket -= static_cast<double>(suffix.at(k)) * gs[k - 1].slope;
      }
      q[static_cast<std::size_t>(t) - 1] = gs[0].value * bracket;
    }
    profiles.push_back(std::move(q));
  }

  const std::size_t pick = select_unique_root(roots, profiles);
  const double x_star = roots[pick];

  EquilibriumOutcome out;
  out.x_star = x_star;
  out.residual = std::abs(phi(x_star));
  out.price = m.price(x_star);
  out.dwl_proxy = bench.xbar_c - x_star;
  for (int t = 1; t <= T; ++t) {
    const double x_t = clamp_dust(profiles[pick][static_cast<std::size_t>(t) - 1]);
    out.per_period.push_back({t, n.count(t), {x_t}, {x_t * (out.price - m.c())}});
  }
  return out;
}

EquilibriumOutcome solve_two_period_single_leader(const DemandModel& m, int total_n) {
  if (total_n < 1) throw Error(ErrorKind::BadInput, "need at least one firm");
  const CompetitiveBenchmark bench = m.competitive_quantity();
  const int followers = total_n - 1;

  const auto g_pair = [&](double X) {
    const Jet j = m.g_jet(X, 1);
    return GTerm{j.value(), j.coeff(1)};
  };
  const auto phi = [&](double X) {
    const GTerm g = g_pair(X);
    return X - total_n * g.value + followers * g.slope * g.value;
  };

  const std::vector<double> roots = scan_roots(phi, 0.0, bench.xbar_c, kScanSubintervals);

  std::vector<std::vector<double>> profiles;
  profiles.reserve(roots.size());
  for (double root : roots) {
    const GTerm g = g_pair(root);
    std::vector<double> q{root - followers * g.value};
    if (followers > 0) q.push_back(g.value);
    profiles.push_back(std::move(q));
  }

  const std::size_t pick = select_unique_root(roots, profiles);
  const double x_star = roots[pick];

  EquilibriumOutcome out;
  out.x_star = x_star;
  out.residual = std::abs(phi(x_star));
  out.price = m.price(x_star);
  out.dwl_proxy = bench.xbar_c - x_star;
  const double x_1 = clamp_dust(profiles[pick][0]);
  out.per_period.push_back({1, 1, {x_1}, {x_1 * (out.price - m.c())}});
  if (followers > 0) {
    const double x_f = clamp_dust(profiles[pick][1]);
    out.per_period.push_back({2, followers, {x_f}, {x_f * (out.price - m.c())}});
  }
  return out;
}

EquilibriumOutcome solve_heterogeneous_linear(const HeterogeneousLinearModel& model,
                                              const PeriodSequence& n) {
  const int T = n.periods();
  const long long total = n.total_firms();
  if (static_cast<long long>(model.a.size()) != total ||
      static_cast<long long>(model.xbar_c.size()) != total) {
    throw Error(ErrorKind::BadInput, "per-firm parameter count must match the period sequence");
  }
  for (double a_i : model.a) {
    if (!(a_i > 0.0)) throw Error(ErrorKind::BadInput, "every a_i must be > 0");
  }
  for (double xc_i : model.xbar_c) {
    if (!(xc_i > 0.0)) throw Error(ErrorKind::BadInput, "every xbar_c_i must be > 0");
  }

  std::vector<std::size_t> offset(static_cast<std::size_t>(T) + 1, 0);
  for (int t = 1; t <= T; ++t) {
    offset[static_cast<std::size_t>(t)] =
        offset[static_cast<std::size_t>(t) - 1] + static_cast<std::size_t>(n.count(t));
  }

  // Backward pass: (A_t, B_t) map the cumulative quantity after period t to
  // the final total, X = A_t + B_t * X_t; period T maps identically.
  std::vector<double> A_after(static_cast<std::size_t>(T)), B_after(static_cast<std::size_t>(T));
  std::vector<double> alpha(static_cast<std::size_t>(T)), beta(static_cast<std::size_t>(T));
  double A = 0.0;
  double B = 1.0;
  for (int t = T; t >= 1; --t) {
    if (!(B > 0.0)) {
      throw Error(ErrorKind::DegenerateSlope, "continuation slope B_t must stay positive");
    }
    const std::size_t idx = static_cast<std::size_t>(t) - 1;
    A_after[idx] = A;
    B_after[idx] = B;
    const int n_t = n.count(t);
    double c_t = 0.0;
    for (std::size_t i = offset[idx]; i < offset[idx + 1]; ++i) c_t += model.xbar_c[i];
    alpha[idx] = (c_t - n_t * A) / (B * (1 + n_t));
    beta[idx] = 1.0 / (1 + n_t);
    A += B * alpha[idx];
    B *= beta[idx];
  }

  // Forward pass recovers on-path cumulative totals and per-firm quantities.
  std::vector<std::vector<double>> quantity(static_cast<std::size_t>(T));
  double cumulative = 0.0;
  for (int t = 1; t <= T; ++t) {
    const std::size_t idx = static_cast<std::size_t>(t) - 1;
    cumulative = alpha[idx] + beta[idx] * cumulative;
    for (std::size_t i = offset[idx]; i < offset[idx + 1]; ++i) {
      quantity[idx].push_back((model.xbar_c[i] - A_after[idx] - B_after[idx] * cumulative) /
                              B_after[idx]);
    }
  }
  const double x_star = cumulative;

  for (const auto& q_t : quantity) {
    if (!all_interior(q_t)) {
      throw Error(ErrorKind::NonInterior, "a heterogeneous firm's quantity is negative");
    }
  }

  EquilibriumOutcome out;
  out.x_star = x_star;
  out.residual = 0.0;
  out.price = std::numeric_limits<double>::quiet_NaN();
  out.dwl_proxy = std::numeric_limits<double>::quiet_NaN();
  for (int t = 1; t <= T; ++t) {
    const std::size_t idx = static_cast<std::size_t>(t) - 1;
    PeriodOutcome period{t, n.count(t), {}, {}};
    for (std::size_t i = offset[idx]; i < offset[idx + 1]; ++i) {
      const double x_i = clamp_dust(quantity[idx][i - offset[idx]]);
      period.quantity.push_back(x_i);
      period.profit.push_back(model.a[i] * x_i * (model.xbar_c[i] - x_star));
    }
    out.per_period.push_back(std::move(period));
  }
  return out;
}

QuadraticSolution solve_quadratic_two_period(const QuadraticPayoff& p, int n1, int n2) {
  if (n1 < 1 || n2 < 0) throw Error(ErrorKind::BadInput, "need n1 >= 1 and n2 >= 0");
  const double d = p.alpha2 - p.beta2;
  if (std::abs(d) <= 1e-12) {
    throw Error(ErrorKind::DegenerateDenominator, "alpha2 - beta2 vanishes");
  }
  if (std::abs(d + n1 * p.beta2) <= 1e-12) {
    throw Error(ErrorKind::DegenerateDenominator, "alpha2 - beta2 + n1*beta2 vanishes");
  }
  const double den2 = n2 * p.beta2 + d;
  if (std::abs(den2) <= 1e-12) {
    throw Error(ErrorKind::DegenerateDenominator, "n2*beta2 + alpha2 - beta2 vanishes");
  }

  const double x1 = (p.alpha1 * d * n1 - p.alpha1 * (p.alpha2 - 2.0 * p.beta2) * n2 -
                     p.beta1 * p.beta2 * n1 * n2) /
                    ((d + n1 * p.beta2) * d);
  const double x_total = (n2 * p.alpha1 + d * x1) / den2;

  const double leader_share = x1 / n1;
  const double follower_share = (n2 > 0) ? (x_total - x1) / n2 : 0.0;
  if (leader_share < kInteriorFloor || (n2 > 0 && follower_share < kInteriorFloor)) {
    throw Error(ErrorKind::NonInterior, "a quadratic-game share is negative");
  }

  QuadraticSolution out;
  out.x1_total = clamp_dust(x1);
  out.x_total = clamp_dust(x_total);
  out.leader_quantity.assign(static_cast<std::size_t>(n1), clamp_dust(leader_share));
  if (n2 > 0) {
    out.follower_quantity.assign(static_cast<std::size_t>(n2), clamp_dust(follower_share));
  }
  return out;
}

double quadratic_profit(const QuadraticPayoff& p, double x_i, double X) {
  const double rest = X - x_i;
  return p.alpha0 + p.alpha1 * x_i - 0.5 * p.alpha2 * x_i * x_i + p.beta1 * rest -
         p.beta2 * x_i * rest;
}

bool quadratic_si_condition(const QuadraticPayoff& p) {
  if (std::abs(p.alpha1) <= 1e-12 || std::abs(p.alpha2 - p.beta2) <= 1e-12) {
    throw Error(ErrorKind::TrivialModel,
                "SI characterization needs alpha1 != 0 and alpha2 != beta2");
  }
  return std::abs(p.alpha2 - 2.0 * p.beta2) <= 1e-12 && std::abs(p.beta1) <= 1e-12;
}

double expected_best_response_linear(int n1, double xbar_c, const BeliefDistribution& belief) {
  if (n1 < 1) throw Error(ErrorKind::BadInput, "n1 must be >= 1");
  if (!(xbar_c > 0.0)) throw Error(ErrorKind::BadInput, "xbar_c must be > 0");
  belief.validate();

  // The expected markup factors into a belief-dependent positive weight times
  // the linear markup; the weight cannot move the argmax, which is the point
  // being exercised numerically.
  double weight = 0.0;
  for (const BeliefAtom& atom : belief.support) {
    double product = 1.0;
    for (int n_s : atom.suffix) product *= 1.0 + n_s;
    weight += atom.probability / product;
  }

  const double others = (n1 - 1) * xbar_c / (1.0 + n1);
  const auto payoff = [&](double x) { return x * weight * (xbar_c - others - x); };
  return golden_section_max(payoff, 0.0, xbar_c, 1e-10);
}

std::vector<double> competitive_limit_quantities(const PeriodSequence& prefix, double xbar_c) {
  if (!(xbar_c > 0.0)) throw Error(ErrorKind::BadInput, "xbar_c must be > 0");
  std::vector<double> out;
  double product = 1.0;
  for (int t = 1; t <= prefix.periods(); ++t) {
    product *= 1.0 + prefix.count(t);
    out.push_back(xbar_c / product);
  }
  return out;
}

}  // namespace stackgame

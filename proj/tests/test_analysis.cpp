#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "stackgame/analysis.hpp"
#include "stackgame/errors.hpp"
#include "stackgame/model_spec.hpp"

using stackgame::DemandModel;
using stackgame::EquilibriumOutcome;
using stackgame::Error;
using stackgame::ErrorKind;
using stackgame::FigureData;
using stackgame::FigureOptions;
using stackgame::HeterogeneousLinearModel;
using stackgame::IndependenceReport;
using stackgame::LimitTable;
using stackgame::ModelSpec;
using stackgame::PeriodSequence;
using stackgame::QuadraticPayoff;

namespace {

const stackgame::FigureSeries& series_of(const FigureData& data, const std::string& name) {
  for (const auto& s : data.series) {
    if (s.series == name) return s;
  }
  REQUIRE_MESSAGE(false, "missing series ", name);
  return data.series.front();
}

}  // namespace

TEST_CASE("dispatch: linear demand routes to the closed form") {
  const ModelSpec spec = DemandModel::linear(2.0, 1.0, 0.3);
  const PeriodSequence n({2, 1, 3});
  const EquilibriumOutcome via_dispatch = stackgame::solve_model(spec, n);
  const EquilibriumOutcome direct =
      stackgame::solve_linear_closed_form(n, 1.0 - 0.3 / 2.0, 2.0, 0.3);
  CHECK(via_dispatch.x_star == direct.x_star);
  CHECK(via_dispatch.per_period.front().quantity.front() ==
        direct.per_period.front().quantity.front());
}

TEST_CASE("dispatch: strongly perturbed leader games carry tight residuals") {
  // These demand curves have multi-modal profits; the dispatch pins the
  // equilibrium branch by a global leader-grid argmax, then polishes it on
  // the analytic first-order condition. Values are frozen fixtures.
  const ModelSpec plus = DemandModel::sine_perturbed(1.0, 1.0, 0.023, 5, 0.0);
  const ModelSpec minus = DemandModel::sine_perturbed(1.0, 1.0, -0.023, 5, 0.0);

  const EquilibriumOutcome p1 = stackgame::solve_model(plus, PeriodSequence({1}));
  const EquilibriumOutcome p11 = stackgame::solve_model(plus, PeriodSequence({1, 1}));
  const EquilibriumOutcome p12 = stackgame::solve_model(plus, PeriodSequence({1, 2}));
  CHECK(p1.per_period.front().quantity.front() ==
        doctest::Approx(0.42462387368155824).epsilon(1e-12));
  CHECK(p11.per_period.front().quantity.front() ==
        doctest::Approx(0.54529654167615771).epsilon(1e-12));
  CHECK(p12.per_period.front().quantity.front() ==
        doctest::Approx(0.48454341457953021).epsilon(1e-12));
  CHECK(p11.x_star == doctest::Approx(0.75278187558169107).epsilon(1e-12));
  CHECK(p12.x_star == doctest::Approx(0.79295878518134044).epsilon(1e-12));
  for (const EquilibriumOutcome* out : {&p1, &p11, &p12}) CHECK(out->residual <= 1e-10);

  const EquilibriumOutcome m1 = stackgame::solve_model(minus, PeriodSequence({1}));
  const EquilibriumOutcome m11 = stackgame::solve_model(minus, PeriodSequence({1, 1}));
  const EquilibriumOutcome m12 = stackgame::solve_model(minus, PeriodSequence({1, 2}));
  CHECK(m1.per_period.front().quantity.front() ==
        doctest::Approx(0.50471790481785428).epsilon(1e-12));
  CHECK(m11.per_period.front().quantity.front() ==
        doctest::Approx(0.36723449112145362).epsilon(1e-12));
  CHECK(m12.per_period.front().quantity.front() ==
        doctest::Approx(0.6219765190026546).epsilon(1e-12));
  CHECK(m11.x_star == doctest::Approx(0.63651862751458288).epsilon(1e-12));
  CHECK(m12.x_star == doctest::Approx(0.89287375749296549).epsilon(1e-12));
  for (const EquilibriumOutcome* out : {&m1, &m11, &m12}) CHECK(out->residual <= 1e-10);
}

TEST_CASE("dispatch: quadratic sequences longer than two periods are rejected") {
  const ModelSpec quad = QuadraticPayoff{0.0, 1.0, 2.0, 0.0, 1.0};
  CHECK_THROWS_AS((void)stackgame::solve_model(quad, PeriodSequence({1, 1, 1})), Error);
}

TEST_CASE("independence holds exactly on linear demand, for any extension") {
  std::mt19937_64 rng(68111);
  std::uniform_int_distribution<int> length(1, 3);
  std::uniform_int_distribution<int> count(1, 4);
  std::uniform_int_distribution<int> family_size(1, 4);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<int> prefix(static_cast<std::size_t>(length(rng)));
    for (int& v : prefix) v = count(rng);
    std::vector<std::vector<int>> suffixes{{}};
    const int extras = family_size(rng);
    for (int e = 0; e < extras; ++e) {
      std::vector<int> suffix(static_cast<std::size_t>(length(rng)));
      for (int& v : suffix) v = count(rng);
      suffixes.push_back(std::move(suffix));
    }
    const ModelSpec spec = DemandModel::linear(1.0, 1.5, 0.2);
    const IndependenceReport report =
        stackgame::check_independence(spec, PeriodSequence(prefix), suffixes, 1e-9);
    CHECK(report.satisfied);
    CHECK(report.max_deviation <= 1e-10);
  }
}

TEST_CASE("independence fails for the strongly perturbed curves, with fixed magnitude") {
  const std::vector<std::vector<int>> suffixes{{}, {1}, {2}};
  const ModelSpec plus = DemandModel::sine_perturbed(1.0, 1.0, 0.023, 5, 0.0);
  const IndependenceReport rp =
      stackgame::check_independence(plus, PeriodSequence({1}), suffixes, 1e-3);
  CHECK_FALSE(rp.satisfied);
  CHECK(rp.max_deviation == doctest::Approx(0.12067266799459947).epsilon(1e-12));

  const ModelSpec minus = DemandModel::sine_perturbed(1.0, 1.0, -0.023, 5, 0.0);
  const IndependenceReport rm =
      stackgame::check_independence(minus, PeriodSequence({1}), suffixes, 1e-3);
  CHECK_FALSE(rm.satisfied);
  CHECK(rm.max_deviation == doctest::Approx(0.25474202788120098).epsilon(1e-12));
}

TEST_CASE("independence holds for the invariant quadratic family") {
  const ModelSpec quad = QuadraticPayoff{0.0, 1.0, 2.0, 0.0, 1.0};  // alpha2 = 2*beta2, beta1 = 0
  std::vector<std::vector<int>> suffixes{{}};
  for (int n2 = 1; n2 <= 5; ++n2) suffixes.push_back({n2});
  for (int n1 : {1, 2, 3}) {
    const IndependenceReport report =
        stackgame::check_independence(quad, PeriodSequence({n1}), suffixes, 1e-9);
    CHECK(report.satisfied);
  }
}

TEST_CASE("independence annotates solver failures with the extension") {
  const ModelSpec plus = DemandModel::sine_perturbed(1.0, 1.0, 0.023, 5, 0.0);
  try {
    // Prefix (2) puts the perturbed game outside the dispatchable shape, so
    // the strict scan runs and reports the multi-root failure.
    (void)stackgame::check_independence(plus, PeriodSequence({2}), {{2}}, 1e-3);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RegularityViolated);
    CHECK(e.message().find("[extension (2)]") != std::string::npos);
  }
  CHECK_THROWS_AS(
      (void)stackgame::check_independence(ModelSpec(HeterogeneousLinearModel{{1.0}, {1.0}}),
                                          PeriodSequence({1}), {{}}, 1e-9),
      Error);
}

TEST_CASE("observer inference inverts the closed form") {
  CHECK(stackgame::infer_competitive_quantity(0.5, PeriodSequence({1})) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(stackgame::infer_competitive_quantity(1.0 / 9.0, PeriodSequence({2, 2})) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS((void)stackgame::infer_competitive_quantity(0.0, PeriodSequence({1})), Error);

  std::mt19937_64 rng(24601);
  std::uniform_int_distribution<int> length(1, 5);
  std::uniform_int_distribution<int> count(1, 4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> counts(static_cast<std::size_t>(length(rng)));
    for (int& v : counts) v = count(rng);
    const PeriodSequence n(counts);
    for (double xbar_c : {0.5, 1.0, 2.0}) {
      const EquilibriumOutcome out = stackgame::solve_linear_closed_form(n, xbar_c);
      for (int t = 1; t <= n.periods(); ++t) {
        const double x_t = out.per_period[static_cast<std::size_t>(t) - 1].quantity.front();
        std::vector<int> head(counts.begin(), counts.begin() + t);
        CHECK(std::abs(stackgame::infer_competitive_quantity(x_t, PeriodSequence(head)) -
                       xbar_c) <= 1e-10);
      }
    }
  }
}

TEST_CASE("limit sweep: linear rows keep the prefix fixed and shrink the gap exactly") {
  const ModelSpec lin = DemandModel::linear(1.0, 1.0, 0.0);
  std::vector<long long> followers;
  for (long long m = 2; m <= 1024; m *= 2) followers.push_back(m - 1);
  const LimitTable table = stackgame::limit_sweep(lin, PeriodSequence({1, 1}), 2, followers);
  REQUIRE(table.rows.size() == followers.size());
  for (const auto& row : table.rows) {
    CHECK(row.prefix_quantities.size() == 1);
    CHECK(row.prefix_quantities.front() == doctest::Approx(0.5).epsilon(1e-14));
    const double m = static_cast<double>(row.n_t) + 1.0;  // total firms
    CHECK(std::abs(m * row.gap - 0.5) <= 1e-12);
    // At the fixed point, the unccaptured gap is the last movers' share.
    CHECK(std::abs(row.ntg - row.n_t * row.gap) <= 1e-12);
  }
}

TEST_CASE("limit sweep: perturbed curves approach the competitive benchmark") {
  for (double eps : {0.023, -0.023}) {
    const ModelSpec spec = DemandModel::sine_perturbed(1.0, 1.0, eps, 5, 0.0);
    const LimitTable table =
        stackgame::limit_sweep(spec, PeriodSequence({1, 1}), 2, {99, 199, 499});
    CHECK(std::abs(table.rows.back().gap) <= 0.01);
    CHECK(std::abs(table.rows.back().gap) < std::abs(table.rows.front().gap));
    for (const auto& row : table.rows) CHECK(row.prefix_quantities.size() == 1);
  }
}

TEST_CASE("limit sweep validates its arguments") {
  const ModelSpec lin = DemandModel::linear(1.0, 1.0, 0.0);
  CHECK_THROWS_AS((void)stackgame::limit_sweep(lin, PeriodSequence({1, 1}), 3, {2}), Error);
  CHECK_THROWS_AS((void)stackgame::limit_sweep(lin, PeriodSequence({1, 1}), 2, {}), Error);
  CHECK_THROWS_AS((void)stackgame::limit_sweep(lin, PeriodSequence({1, 1}), 2, {0}), Error);
  CHECK_THROWS_AS((void)stackgame::limit_sweep(ModelSpec(QuadraticPayoff{0, 1, 2, 0, 1}),
                                               PeriodSequence({1, 1}), 2, {2}),
                  Error);
}

TEST_CASE("figure one: leader constant, total follows the harmonic pattern") {
  const FigureData data = stackgame::figure_data("fig1");
  const auto& leader = series_of(data, "leader");
  const auto& total = series_of(data, "total");
  REQUIRE(leader.x.size() == 10);
  REQUIRE(total.x.size() == 10);
  for (std::size_t i = 0; i < 10; ++i) {
    const double n = leader.x[i];
    CHECK(leader.y[i] == 0.5);
    CHECK(total.y[i] == doctest::Approx(1.0 - 1.0 / (2.0 * n)).epsilon(1e-15));
  }
}

TEST_CASE("figure two: both demand signs, sampled curves and frozen equilibria") {
  const FigureData data = stackgame::figure_data("fig2");
  REQUIRE(data.series.size() == 6);
  const auto& dplus = series_of(data, "demand_eps_plus");
  CHECK(dplus.table == "demand");
  REQUIRE(dplus.x.size() == 201);
  // Sampled curve matches the formula at a spot point.
  const double X = dplus.x[20];
  CHECK(dplus.y[20] ==
        doctest::Approx(1.0 - X - 0.023 * std::sin(5 * 3.14159265358979312 * X)).epsilon(1e-9));

  const auto& lplus = series_of(data, "leader_eps_plus");
  const auto& lminus = series_of(data, "leader_eps_minus");
  REQUIRE(lplus.y.size() == 10);
  REQUIRE(lminus.y.size() == 10);
  CHECK(lplus.y[0] == doctest::Approx(0.42462387368155824).epsilon(1e-12));
  CHECK(lplus.y[1] == doctest::Approx(0.54529654167615771).epsilon(1e-12));
  CHECK(lplus.y[9] == doctest::Approx(0.4003509192).epsilon(1e-9));
  CHECK(lminus.y[0] == doctest::Approx(0.50471790481785428).epsilon(1e-12));
  CHECK(lminus.y[9] == doctest::Approx(0.5300949088).epsilon(1e-9));
  // The two perturbation signs disagree sharply at small n: the leader's
  // action is informative about the curve, not just about the benchmark.
  CHECK(std::abs(lplus.y[1] - lminus.y[1]) > 0.1);
}

TEST_CASE("figure three: high-frequency curve, slow oscillating convergence") {
  const FigureData data = stackgame::figure_data("fig3");
  REQUIRE(data.series.size() == 3);
  const auto& leader = series_of(data, "leader");
  const auto& total = series_of(data, "total");
  REQUIRE(leader.y.size() == 50);
  CHECK(leader.y[0] == doctest::Approx(0.495725155032).epsilon(1e-9));
  CHECK(leader.y[1] == doctest::Approx(0.490079475835).epsilon(1e-9));
  CHECK(leader.y[2] == doctest::Approx(0.486320698041).epsilon(1e-9));
  CHECK(leader.y[9] == doctest::Approx(0.444258903418).epsilon(1e-9));
  CHECK(leader.y[49] == doctest::Approx(0.522860301473).epsilon(1e-9));
  CHECK(total.y[49] == doctest::Approx(0.991230991283).epsilon(1e-9));
  // Still far from the 0.5 limit at n = 50, and non-monotone on the way.
  CHECK(std::abs(leader.y[49] - 0.5) > 0.02);
  double max_jump = 0.0;
  for (std::size_t i = 1; i < leader.y.size(); ++i) {
    max_jump = std::max(max_jump, std::abs(leader.y[i] - leader.y[i - 1]));
  }
  CHECK(max_jump > 1e-3);
}

TEST_CASE("figure data is deterministic and rejects unknown names") {
  const FigureData a = stackgame::figure_data("fig2");
  const FigureData b = stackgame::figure_data("fig2");
  REQUIRE(a.series.size() == b.series.size());
  for (std::size_t s = 0; s < a.series.size(); ++s) {
    CHECK(a.series[s].series == b.series[s].series);
    REQUIRE(a.series[s].y.size() == b.series[s].y.size());
    for (std::size_t i = 0; i < a.series[s].y.size(); ++i) {
      CHECK(a.series[s].y[i] == b.series[s].y[i]);
    }
  }
  CHECK_THROWS_AS((void)stackgame::figure_data("fig9"), Error);
}

TEST_CASE("figure overrides reshape the sampled curve") {
  FigureOptions options;
  options.eps = 0.01;
  options.k = 3;
  const FigureData data = stackgame::figure_data("fig2", options);
  const auto& dplus = series_of(data, "demand_eps_plus");
  const double X = dplus.x[50];
  CHECK(dplus.y[50] ==
        doctest::Approx(1.0 - X - 0.01 * std::sin(3 * 3.14159265358979312 * X)).epsilon(1e-9));
}

TEST_CASE("model specs parse from JSON with strict keys") {
  const ModelSpec sine = stackgame::parse_model_json(
      R"({"family":"sine","a":1,"xbar":1,"eps":0.023,"k":5,"c":0})");
  CHECK(std::string(stackgame::family_name(sine)) == "sine");
  const ModelSpec quad = stackgame::parse_model_json(
      R"({"family":"quadratic","alpha1":1,"alpha2":2,"beta2":1})");
  CHECK(std::string(stackgame::family_name(quad)) == "quadratic");
  const ModelSpec het = stackgame::parse_model_json(
      R"({"family":"heterogeneous","a":[1,1],"xbar_c":[1,0.8]})");
  CHECK(std::string(stackgame::family_name(het)) == "heterogeneous");

  CHECK_THROWS_AS((void)stackgame::parse_model_json(R"({"family":"linear","zzz":1})"), Error);
  CHECK_THROWS_AS((void)stackgame::parse_model_json(R"({"family":"nope"})"), Error);
  CHECK_THROWS_AS((void)stackgame::parse_model_json(R"({"family":"quadratic"})"), Error);
  CHECK_THROWS_AS((void)stackgame::parse_model_json("not json"), Error);
}

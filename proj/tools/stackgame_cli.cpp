// Command-line front end: equilibrium solving, independence diagnostics,
// limit sweeps, observer inference, figure data, and the grid oracle.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "stackgame/analysis.hpp"
#include "stackgame/errors.hpp"
#include "stackgame/grid_oracle.hpp"
#include "stackgame/model_spec.hpp"

namespace {

using stackgame::DemandFamily;
using stackgame::DemandModel;
using stackgame::EquilibriumOutcome;
using stackgame::Error;
using stackgame::ErrorKind;
using stackgame::FigureData;
using stackgame::FigureOptions;
using stackgame::FigureSeries;
using stackgame::GridOutcome;
using stackgame::GridSpec;
using stackgame::HeterogeneousLinearModel;
using stackgame::IndependenceReport;
using stackgame::LimitTable;
using stackgame::ModelSpec;
using stackgame::PeriodSequence;
using stackgame::QuadraticPayoff;

// 17 significant digits: lossless round-trip for doubles.
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::BadInput, "cannot open output file: " + path);
  out << text;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::BadInput, std::string(what) + ": cannot parse '" + item + "'");
    }
  }
  if (out.empty()) throw Error(ErrorKind::BadInput, std::string(what) + ": empty list");
  return out;
}

std::vector<long long> parse_int_list(const std::string& text, const char* what) {
  std::vector<long long> out;
  for (double v : parse_double_list(text, what)) {
    const long long n = static_cast<long long>(std::llround(v));
    if (static_cast<double>(n) != v) {
      throw Error(ErrorKind::BadInput, std::string(what) + ": not an integer: " + fmt(v));
    }
    out.push_back(n);
  }
  return out;
}

// Semicolon-separated suffix lists: "();1;2;1,1". "()" and "" mean the empty
// suffix (no firm ever arrives).
std::vector<std::vector<int>> parse_suffixes(const std::string& text) {
  std::vector<std::vector<int>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    std::string trimmed;
    for (char ch : item) {
      if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '(' && ch != ')') trimmed += ch;
    }
    if (trimmed.empty()) {
      out.push_back({});
      continue;
    }
    std::vector<int> suffix;
    for (long long v : parse_int_list(trimmed, "--suffixes")) {
      if (v < 1) throw Error(ErrorKind::BadInput, "--suffixes: counts must be >= 1");
      suffix.push_back(static_cast<int>(v));
    }
    out.push_back(std::move(suffix));
  }
  if (out.empty()) throw Error(ErrorKind::BadInput, "--suffixes: empty family");
  return out;
}

std::string suffix_label(const std::vector<int>& suffix) {
  std::string out = "(";
  for (std::size_t i = 0; i < suffix.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(suffix[i]);
  }
  return out + ")";
}

// ---------------------------------------------------------------------------
// Model selection: --model FILE or inline flags, never both.

struct ModelFlags {
  std::string file;
  std::string family = "linear";
  double a = 1.0;
  double xbar = 1.0;
  double c = 0.0;
  double eps = 0.023;
  int k = 5;
  double alpha0 = 0.0;
  double alpha1 = 1.0;
  double alpha2 = 2.0;
  double beta1 = 0.0;
  double beta2 = 1.0;
  std::string a_list;
  std::string xbar_list;
  std::vector<CLI::Option*> inline_options;
  CLI::Option* file_option = nullptr;
};

void add_model_options(CLI::App& cmd, ModelFlags& mf) {
  mf.file_option =
      cmd.add_option("--model", mf.file, "Model spec JSON file (excludes inline model flags)");
  auto* grp = cmd.add_option_group("model", "Inline model flags");
  mf.inline_options = {
      grp->add_option("--family", mf.family, "linear|sine|quadratic|heterogeneous")
          ->check(CLI::IsMember({"linear", "sine", "quadratic", "heterogeneous"})),
      grp->add_option("--a", mf.a, "Demand slope a (default 1)"),
      grp->add_option("--xbar", mf.xbar, "Demand intercept quantity (default 1)"),
      grp->add_option("--c", mf.c, "Marginal cost (default 0)"),
      grp->add_option("--eps", mf.eps, "Sine amplitude, P -= eps*sin(k*pi*X) (default 0.023)"),
      grp->add_option("--k", mf.k, "Sine frequency (default 5)"),
      grp->add_option("--alpha0", mf.alpha0, "Quadratic: constant term"),
      grp->add_option("--alpha1", mf.alpha1, "Quadratic: own linear term (default 1)"),
      grp->add_option("--alpha2", mf.alpha2, "Quadratic: own quadratic term (default 2)"),
      grp->add_option("--beta1", mf.beta1, "Quadratic: rivals' linear term"),
      grp->add_option("--beta2", mf.beta2, "Quadratic: cross term (default 1)"),
      grp->add_option("--a-list", mf.a_list, "Heterogeneous: comma list of a_i"),
      grp->add_option("--xbar-list", mf.xbar_list, "Heterogeneous: comma list of xbar_c_i"),
  };
}

ModelSpec build_model(const ModelFlags& mf) {
  bool any_inline = false;
  for (const CLI::Option* opt : mf.inline_options) any_inline = any_inline || opt->count() > 0;
  if (!mf.file.empty()) {
    if (any_inline) {
      throw Error(ErrorKind::BadInput, "--model excludes inline model flags");
    }
    return stackgame::load_model_file(mf.file);
  }
  if (mf.family == "linear") return DemandModel::linear(mf.a, mf.xbar, mf.c);
  if (mf.family == "sine") return DemandModel::sine_perturbed(mf.a, mf.xbar, mf.eps, mf.k, mf.c);
  if (mf.family == "quadratic") {
    return QuadraticPayoff{mf.alpha0, mf.alpha1, mf.alpha2, mf.beta1, mf.beta2};
  }
  if (mf.family == "heterogeneous") {
    if (mf.a_list.empty() || mf.xbar_list.empty()) {
      throw Error(ErrorKind::BadInput, "heterogeneous models need --a-list and --xbar-list");
    }
    return HeterogeneousLinearModel{parse_double_list(mf.a_list, "--a-list"),
                                    parse_double_list(mf.xbar_list, "--xbar-list")};
  }
  throw Error(ErrorKind::BadInput, "unknown family: " + mf.family);
}

// ---------------------------------------------------------------------------
// Emitters.

// Firm-level price column: market price for demand models, the firm's own
// net margin a_i*(xbar_c_i - X*) for heterogeneous payoffs (no common price
// exists there), NaN for quadratic payoffs.
double price_for_firm(const ModelSpec& spec, const EquilibriumOutcome& outcome,
                      std::size_t firm_index) {
  if (const auto* het = std::get_if<HeterogeneousLinearModel>(&spec)) {
    return het->a[firm_index] * (het->xbar_c[firm_index] - outcome.x_star);
  }
  return outcome.price;
}

std::string solve_csv(const ModelSpec& spec, const EquilibriumOutcome& outcome) {
  std::string out = "period,firm_index,quantity,price,profit\n";
  std::size_t firm = 0;
  for (const auto& period : outcome.per_period) {
    for (int i = 0; i < period.firm_count; ++i, ++firm) {
      const bool shared = period.quantity.size() == 1;
      const double q = shared ? period.quantity.front() : period.quantity[static_cast<std::size_t>(i)];
      const double pi = shared ? period.profit.front() : period.profit[static_cast<std::size_t>(i)];
      out += std::to_string(period.period) + ',' + std::to_string(firm + 1) + ',' + fmt(q) + ',' +
             fmt(price_for_firm(spec, outcome, firm)) + ',' + fmt(pi) + '\n';
    }
  }
  return out;
}

void put_finite(nlohmann::json& obj, const char* key, double v) {
  if (std::isfinite(v)) obj[key] = v;
}

nlohmann::json outcome_json(const ModelSpec& spec, const EquilibriumOutcome& outcome) {
  nlohmann::json periods = nlohmann::json::array();
  std::size_t firm = 0;
  for (const auto& period : outcome.per_period) {
    nlohmann::json firms = nlohmann::json::array();
    for (int i = 0; i < period.firm_count; ++i, ++firm) {
      const bool shared = period.quantity.size() == 1;
      nlohmann::json row{
          {"firm_index", firm + 1},
          {"quantity",
           shared ? period.quantity.front() : period.quantity[static_cast<std::size_t>(i)]},
          {"profit", shared ? period.profit.front() : period.profit[static_cast<std::size_t>(i)]},
      };
      put_finite(row, "price", price_for_firm(spec, outcome, firm));
      firms.push_back(std::move(row));
    }
    periods.push_back(nlohmann::json{{"period", period.period},
                                     {"firm_count", period.firm_count},
                                     {"firms", std::move(firms)}});
  }
  nlohmann::json obj{{"model", stackgame::family_name(spec)},
                     {"x_star", outcome.x_star},
                     {"periods", std::move(periods)}};
  put_finite(obj, "residual", outcome.residual);
  put_finite(obj, "price", outcome.price);
  put_finite(obj, "dwl_proxy", outcome.dwl_proxy);
  return obj;
}

std::string independence_csv(const IndependenceReport& report) {
  const char* verdict = report.satisfied ? "SATISFIED" : "VIOLATED";
  std::string out = "extension,period,quantity,max_deviation,verdict\n";
  for (std::size_t e = 0; e < report.extensions.size(); ++e) {
    const auto& quantities = report.prefix_quantities[e];
    for (std::size_t t = 0; t < quantities.size(); ++t) {
      out += suffix_label(report.extensions[e]) + ',' + std::to_string(t + 1) + ',' +
             fmt(quantities[t]) + ',' + fmt(report.max_deviation) + ',' + verdict + '\n';
    }
  }
  return out;
}

nlohmann::json independence_json(const IndependenceReport& report) {
  nlohmann::json extensions = nlohmann::json::array();
  for (std::size_t e = 0; e < report.extensions.size(); ++e) {
    extensions.push_back(nlohmann::json{{"suffix", report.extensions[e]},
                                        {"prefix_quantities", report.prefix_quantities[e]}});
  }
  return nlohmann::json{{"prefix", report.prefix.counts()},
                        {"tolerance", report.tolerance},
                        {"max_deviation", report.max_deviation},
                        {"verdict", report.satisfied ? "SATISFIED" : "VIOLATED"},
                        {"extensions", std::move(extensions)}};
}

std::string limits_csv(const LimitTable& table) {
  std::string out = "n_t,x_star";
  for (int s = 1; s < table.grow_period; ++s) out += ",x_" + std::to_string(s);
  out += ",xbar_gap,n_t_times_g\n";
  for (const auto& row : table.rows) {
    out += std::to_string(row.n_t) + ',' + fmt(row.x_star);
    for (double q : row.prefix_quantities) out += ',' + fmt(q);
    out += ',' + fmt(row.gap) + ',' + fmt(row.ntg) + '\n';
  }
  return out;
}

nlohmann::json limits_json(const LimitTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    rows.push_back(nlohmann::json{{"n_t", row.n_t},
                                  {"x_star", row.x_star},
                                  {"prefix_quantities", row.prefix_quantities},
                                  {"xbar_gap", row.gap},
                                  {"n_t_times_g", row.ntg}});
  }
  return nlohmann::json{
      {"xbar_c", table.xbar_c}, {"grow_period", table.grow_period}, {"rows", std::move(rows)}};
}

std::string figure_csv(const FigureData& data) {
  std::string out = "table,series,x,y\n";
  for (const auto& s : data.series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      out += s.table + ',' + s.series + ',' + fmt(s.x[i]) + ',' + fmt(s.y[i]) + '\n';
    }
  }
  return out;
}

nlohmann::json figure_json(const std::string& name, const FigureData& data) {
  nlohmann::json series = nlohmann::json::array();
  for (const auto& s : data.series) {
    series.push_back(
        nlohmann::json{{"table", s.table}, {"series", s.series}, {"x", s.x}, {"y", s.y}});
  }
  return nlohmann::json{{"figure", name}, {"series", std::move(series)}};
}

// ---------------------------------------------------------------------------
// Minimal self-rendered SVG line chart (a convenience; CSV is the contract).

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

std::string render_svg(const std::string& title, const std::vector<PlotSeries>& series) {
  const double width = 860.0, height = 520.0;
  const double left = 70.0, right = width - 190.0, top = 46.0, bottom = height - 54.0;
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  bool first = true;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (first) {
        xmin = xmax = s.x[i];
        ymin = ymax = s.y[i];
        first = false;
      }
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (xmax - xmin < 1e-12) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (ymax - ymin < 1e-12) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  const auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (right - left); };
  const auto py = [&](double y) { return bottom - (y - ymin) / (ymax - ymin) * (bottom - top); };
  const auto coord = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return std::string(buf);
  };
  const auto label = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::string(buf);
  };
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"860\" height=\"520\" "
         "viewBox=\"0 0 860 520\">\n";
  svg += "<rect width=\"860\" height=\"520\" fill=\"white\"/>\n";
  svg += "<text x=\"430\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" + title + "</text>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = xmin + (xmax - xmin) * i / 5.0;
    const double yv = ymin + (ymax - ymin) * i / 5.0;
    const std::string gx = coord(px(xv));
    const std::string gy = coord(py(yv));
    svg += "<line x1=\"" + gx + "\" y1=\"" + coord(top) + "\" x2=\"" + gx + "\" y2=\"" +
           coord(bottom) + "\" stroke=\"#dddddd\"/>\n";
    svg += "<line x1=\"" + coord(left) + "\" y1=\"" + gy + "\" x2=\"" + coord(right) + "\" y2=\"" +
           gy + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + gx + "\" y=\"" + coord(bottom + 18.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + label(xv) +
           "</text>\n";
    svg += "<text x=\"" + coord(left - 8.0) + "\" y=\"" + coord(py(yv) + 4.0) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + label(yv) +
           "</text>\n";
  }
  svg += "<rect x=\"" + coord(left) + "\" y=\"" + coord(top) + "\" width=\"" +
         coord(right - left) + "\" height=\"" + coord(bottom - top) +
         "\" fill=\"none\" stroke=\"#333333\"/>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = palette[s % (sizeof(palette) / sizeof(palette[0]))];
    std::string points;
    for (std::size_t i = 0; i < series[s].x.size(); ++i) {
      points += coord(px(series[s].x[i])) + ',' + coord(py(series[s].y[i])) + ' ';
    }
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
    const double ly = top + 16.0 + 18.0 * static_cast<double>(s);
    svg += "<line x1=\"" + coord(right + 12.0) + "\" y1=\"" + coord(ly - 4.0) + "\" x2=\"" +
           coord(right + 36.0) + "\" y2=\"" + coord(ly - 4.0) + "\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + coord(right + 42.0) + "\" y=\"" + coord(ly) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + series[s].name + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void write_plot(const std::string& path, const std::string& title,
                const std::vector<PlotSeries>& series) {
  if (path.empty()) return;
  write_output(path, render_svg(title, series));
}

// ---------------------------------------------------------------------------

int run(int argc, char** argv) {
  CLI::App app{"Sequential oligopoly equilibrium toolkit"};
  app.require_subcommand(1);

  std::string format = "csv";
  std::string output;
  std::string plot;
  const auto add_io = [&](CLI::App& cmd, bool with_plot) {
    cmd.add_option("--format", format, "Output format: csv|json (default csv)")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd.add_option("-o,--output", output, "Write output to a file instead of stdout");
    if (with_plot) cmd.add_option("--plot", plot, "Also write a line-chart SVG to this path");
  };

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Solve the subgame-perfect equilibrium");
  ModelFlags solve_mf;
  std::string solve_periods;
  add_model_options(*solve_cmd, solve_mf);
  solve_cmd->add_option("--periods", solve_periods, "Firm counts per period, e.g. 1,2,3")
      ->required();
  add_io(*solve_cmd, true);
  solve_cmd->callback([&] {
    const ModelSpec spec = build_model(solve_mf);
    const EquilibriumOutcome outcome = stackgame::solve_model(spec, PeriodSequence::parse(solve_periods));
    write_output(output, format == "json" ? outcome_json(spec, outcome).dump(2) + "\n"
                                          : solve_csv(spec, outcome));
    PlotSeries quantities{"quantity", {}, {}};
    std::size_t firm = 1;
    for (const auto& period : outcome.per_period) {
      for (int i = 0; i < period.firm_count; ++i, ++firm) {
        quantities.x.push_back(static_cast<double>(firm));
        quantities.y.push_back(period.quantity.size() == 1
                                   ? period.quantity.front()
                                   : period.quantity[static_cast<std::size_t>(i)]);
      }
    }
    write_plot(plot, "equilibrium quantities by firm", {quantities});
  });

  // independence
  auto* indep_cmd =
      app.add_subcommand("independence", "Test whether prefix quantities depend on the suffix");
  ModelFlags indep_mf;
  std::string indep_prefix;
  std::string indep_suffixes = "();1;2";
  double indep_tol = 1e-9;
  add_model_options(*indep_cmd, indep_mf);
  indep_cmd->add_option("--periods", indep_prefix, "Prefix firm counts, e.g. 1")->required();
  indep_cmd->add_option("--suffixes", indep_suffixes,
                        "Semicolon-separated suffix family, e.g. '();1;2;1,1'");
  indep_cmd->add_option("--tol", indep_tol, "Verdict tolerance (default 1e-9)");
  add_io(*indep_cmd, false);
  indep_cmd->callback([&] {
    const ModelSpec spec = build_model(indep_mf);
    const IndependenceReport report =
        stackgame::check_independence(spec, PeriodSequence::parse(indep_prefix),
                                      parse_suffixes(indep_suffixes), indep_tol);
    write_output(output, format == "json" ? independence_json(report).dump(2) + "\n"
                                          : independence_csv(report));
  });

  // limits
  auto* limits_cmd = app.add_subcommand("limits", "Sweep one period's firm count");
  ModelFlags limits_mf;
  std::string limits_periods;
  std::string limits_values;
  int limits_grow = 0;
  add_model_options(*limits_cmd, limits_mf);
  limits_cmd->add_option("--periods", limits_periods, "Base firm counts per period")->required();
  limits_cmd->add_option("--grow", limits_grow, "Period to sweep (default: the last)");
  limits_cmd->add_option("--values", limits_values, "Comma list of firm counts, e.g. 2,4,8")
      ->required();
  add_io(*limits_cmd, true);
  limits_cmd->callback([&] {
    const ModelSpec spec = build_model(limits_mf);
    const PeriodSequence base = PeriodSequence::parse(limits_periods);
    const int grow = limits_grow > 0 ? limits_grow : base.periods();
    const LimitTable table =
        stackgame::limit_sweep(spec, base, grow, parse_int_list(limits_values, "--values"));
    write_output(output, format == "json" ? limits_json(table).dump(2) + "\n" : limits_csv(table));
    PlotSeries total{"x_star", {}, {}};
    for (const auto& row : table.rows) {
      total.x.push_back(static_cast<double>(row.n_t));
      total.y.push_back(row.x_star);
    }
    write_plot(plot, "total quantity vs firm count", {total});
  });

  // infer
  auto* infer_cmd =
      app.add_subcommand("infer", "Infer the competitive quantity from one observed quantity");
  double infer_x = 0.0;
  std::string infer_prefix;
  infer_cmd->add_option("--x", infer_x, "Observed per-firm quantity in the last prefix period")
      ->required();
  infer_cmd->add_option("--periods", infer_prefix, "Prefix firm counts up to the observed firm")
      ->required();
  add_io(*infer_cmd, false);
  infer_cmd->callback([&] {
    if (!(infer_x > 0.0)) throw Error(ErrorKind::BadInput, "--x must be positive");
    const double xbar_c =
        stackgame::infer_competitive_quantity(infer_x, PeriodSequence::parse(infer_prefix));
    write_output(output, format == "json"
                             ? nlohmann::json{{"xbar_c", xbar_c}}.dump(2) + "\n"
                             : "xbar_c\n" + fmt(xbar_c) + "\n");
  });

  // figure
  auto* figure_cmd = app.add_subcommand("figure", "Emit data for a built-in figure");
  std::string figure_name;
  FigureOptions figure_opts;
  double figure_eps = 0.0;
  int figure_k = 0;
  figure_cmd->add_option("name", figure_name, "fig1|fig2|fig3")->required();
  figure_cmd->add_option("--a", figure_opts.a, "Demand slope (default 1)");
  figure_cmd->add_option("--xbar", figure_opts.xbar, "Demand intercept quantity (default 1)");
  figure_cmd->add_option("--c", figure_opts.c, "Marginal cost (default 0)");
  auto* eps_opt = figure_cmd->add_option("--eps", figure_eps, "Override the sine amplitude");
  auto* k_opt = figure_cmd->add_option("--k", figure_k, "Override the sine frequency");
  add_io(*figure_cmd, true);
  figure_cmd->callback([&] {
    if (eps_opt->count() > 0) figure_opts.eps = figure_eps;
    if (k_opt->count() > 0) figure_opts.k = figure_k;
    const FigureData data = stackgame::figure_data(figure_name, figure_opts);
    write_output(output, format == "json" ? figure_json(figure_name, data).dump(2) + "\n"
                                          : figure_csv(data));
    std::vector<PlotSeries> plotted;
    for (const auto& s : data.series) {
      if (s.table == "equilibrium") plotted.push_back({s.series, s.x, s.y});
    }
    write_plot(plot, figure_name, plotted);
  });

  // oracle
  auto* oracle_cmd =
      app.add_subcommand("oracle", "Grid backward-induction oracle (validator, not a solver)");
  ModelFlags oracle_mf;
  std::string oracle_periods;
  double oracle_step = 0.0;
  double oracle_max_action = 0.0;
  int oracle_sweeps = 200;
  add_model_options(*oracle_cmd, oracle_mf);
  oracle_cmd->add_option("--periods", oracle_periods, "Firm counts per period")->required();
  oracle_cmd->add_option("--step", oracle_step, "Grid spacing (default: scale/2000)");
  oracle_cmd->add_option("--max-action", oracle_max_action,
                         "Per-firm action bound (default: the model scale)");
  oracle_cmd->add_option("--max-sweeps", oracle_sweeps,
                         "Best-response iteration cap per state (default 200)");
  add_io(*oracle_cmd, false);
  oracle_cmd->callback([&] {
    const ModelSpec spec = build_model(oracle_mf);
    // Natural quantity scale: where the relevant margin hits zero.
    const double scale = std::visit(
        [](const auto& m) -> double {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, DemandModel>) {
            return m.xbar();
          } else if constexpr (std::is_same_v<T, HeterogeneousLinearModel>) {
            double top = 0.0;
            for (double v : m.xbar_c) top = std::max(top, v);
            return top;
          } else {
            return m.beta2 > 0.0 && m.alpha1 > 0.0 ? m.alpha1 / m.beta2 : 0.0;
          }
        },
        spec);
    GridSpec grid;
    grid.max_action = oracle_max_action > 0.0 ? oracle_max_action : scale;
    grid.step = oracle_step > 0.0 ? oracle_step : grid.max_action / 2000.0;
    grid.max_sweeps = oracle_sweeps;
    grid.validate();
    const GridOutcome result =
        stackgame::backward_induction_grid(spec, PeriodSequence::parse(oracle_periods), grid);
    if (format == "json") {
      nlohmann::json obj = outcome_json(spec, result.outcome);
      obj["converged"] = result.converged;
      obj["br_gap"] = result.br_gap;
      obj["step"] = grid.step;
      write_output(output, obj.dump(2) + "\n");
    } else {
      write_output(output, solve_csv(spec, result.outcome));
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 4;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.exit_code();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
}

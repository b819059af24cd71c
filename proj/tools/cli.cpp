#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "compreg/backmap.hpp"
#include "compreg/composition.hpp"
#include "compreg/error.hpp"
#include "compreg/ingest.hpp"
#include "compreg/published.hpp"
#include "compreg/regress.hpp"
#include "compreg/simulate.hpp"

namespace compreg::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kSchemaVersion = "1";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fixed(double v, int decimals = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s(buf);
  // Print -0.000 as 0.000.
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string pad(const std::string& s, std::size_t width, bool left = false) {
  if (s.size() >= width) return s;
  return left ? s + std::string(width - s.size(), ' ') : std::string(width - s.size(), ' ') + s;
}

std::string percent_label(double level) {
  std::ostringstream os;
  os << std::setprecision(6) << level * 100.0 << "%";
  return os.str();
}

json envelope(const std::string& command, json inputs, json results, const std::vector<std::string>& warnings) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["inputs_echo"] = std::move(inputs);
  j["results"] = std::move(results);
  j["warnings"] = warnings;
  return j;
}

MatchTable load_table(const std::string& path, bool lenient) {
  if (path.empty()) return bundled_matches();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read data file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_matches(text.str(), ParseOptions{lenient});
}

Eigen::VectorXd parse_covariate(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("invalid covariate value '" + text + "'");
    }
    if (used != item.size() || !std::isfinite(v)) throw UsageError("invalid covariate value '" + text + "'");
    values.push_back(v);
  }
  if (values.empty()) throw UsageError("empty covariate value");
  return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

// ---------------------------------------------------------------------------
// fit

struct FitOptions {
  std::string data;
  double level = 0.95;
  std::string format = "table";
  bool lenient = false;
};

int cmd_fit(const FitOptions& o, std::ostream& out) {
  const MatchTable table = load_table(o.data, o.lenient);
  const RegressionDataset data = to_regression_dataset(table);
  const ModelFit model = fit(data);
  const auto flags = significance_report(model, o.level);
  const auto intervals = wald_ci(model, o.level);
  std::optional<double> loglik;
  bool degenerate = false;
  for (const auto& c : model.components) degenerate = degenerate || !(c.sigma > 0.0);
  if (!degenerate) loglik = log_likelihood(model, data);

  auto significance_of = [&](const ParameterInterval& ci) -> std::optional<bool> {
    for (const auto& f : flags) {
      if (f.interval.name == ci.name) return f.significant;
    }
    return std::nullopt;
  };

  if (o.format == "json") {
    json params = json::array();
    for (const auto& ci : intervals) {
      json p{{"name", ci.name}, {"estimate", ci.estimate}, {"se", ci.se}, {"lower", ci.lower}, {"upper", ci.upper}};
      const auto sig = significance_of(ci);
      p["significant"] = sig ? json(*sig) : json(nullptr);
      params.push_back(std::move(p));
    }
    json results{{"n", model.n},
                 {"labels", model.labels},
                 {"reference", model.ref_label},
                 {"parameters", std::move(params)},
                 {"log_likelihood", loglik ? json(*loglik) : json(nullptr)}};
    json inputs{{"data", o.data.empty() ? "<bundled>" : o.data}, {"level", o.level}, {"format", o.format}};
    out << envelope("fit", std::move(inputs), std::move(results), table.warnings).dump(2) << '\n';
    return kSuccess;
  }

  out << "Compositional regression fit (n = " << model.n << ", reference part: "
      << (model.ref_label.empty() ? "last" : model.ref_label) << ")\n";
  out << pad("Parameter", 12, true) << pad("Estimate", 10) << pad("Std.Err", 10) << "   "
      << pad(percent_label(o.level) + " CI", 20, true) << "Significant\n";
  for (const auto& ci : intervals) {
    const auto sig = significance_of(ci);
    out << pad(ci.name, 12, true) << pad(fixed(ci.estimate), 10) << pad(fixed(ci.se), 10) << "   "
        << pad("(" + fixed(ci.lower) + "; " + fixed(ci.upper) + ")", 20, true) << (sig ? (*sig ? "yes" : "no") : "")
        << '\n';
  }
  if (loglik) out << "log-likelihood: " << fixed(*loglik) << '\n';
  return kSuccess;
}

// ---------------------------------------------------------------------------
// proportions

struct ProportionOptions {
  std::string data;
  std::vector<std::string> z;
  double level = 0.95;
  std::string method = "delta";
  std::size_t boot_b = 10000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string format = "table";
  bool lenient = false;
};

int cmd_proportions(const ProportionOptions& o, std::ostream& out) {
  std::vector<Eigen::VectorXd> points;
  for (const auto& s : o.z) points.push_back(parse_covariate(s));
  const MatchTable table = load_table(o.data, o.lenient);
  const ModelFit model = fit(to_regression_dataset(table));

  std::vector<ProportionEstimate> estimates;
  for (const auto& z : points) {
    estimates.push_back(o.method == "bootstrap" ? proportion_ci_bootstrap(model, z, o.level, o.boot_b, o.seed, o.threads)
                                                : proportion_ci_delta(model, z, o.level));
  }

  std::vector<std::string> warnings = table.warnings;
  for (const auto& e : estimates) {
    if (e.clamped) warnings.push_back("delta interval truncated into (0, 1)");
  }

  if (o.format == "json") {
    json blocks = json::array();
    for (const auto& e : estimates) {
      json parts = json::array();
      for (std::size_t j = 0; j < e.alphas.size(); ++j) {
        parts.push_back({{"label", e.alphas.labels().empty() ? std::to_string(j + 1) : e.alphas.labels()[j]},
                         {"estimate", e.alphas[j]},
                         {"lower", e.intervals[j].first},
                         {"upper", e.intervals[j].second}});
      }
      blocks.push_back({{"z", to_std(e.covariate)},
                        {"method", o.method},
                        {"level", e.level},
                        {"clamped", e.clamped},
                        {"parts", std::move(parts)}});
    }
    json inputs{{"data", o.data.empty() ? "<bundled>" : o.data},
                {"z", o.z},
                {"level", o.level},
                {"method", o.method},
                {"boot_b", o.boot_b},
                {"seed", o.seed},
                {"format", o.format}};
    out << envelope("proportions", std::move(inputs), json{{"estimates", std::move(blocks)}}, warnings).dump(2)
        << '\n';
    return kSuccess;
  }

  for (std::size_t b = 0; b < estimates.size(); ++b) {
    const auto& e = estimates[b];
    if (b > 0) out << '\n';
    out << "z = " << o.z[b] << "  (" << o.method << ", " << percent_label(e.level);
    if (o.method == "bootstrap") out << ", B = " << o.boot_b << ", seed = " << o.seed;
    out << ")\n";
    out << pad("Part", 10, true) << pad("Estimate", 10) << "   " << percent_label(e.level) << " CI\n";
    for (std::size_t j = 0; j < e.alphas.size(); ++j) {
      const std::string label = e.alphas.labels().empty() ? "alpha_" + std::to_string(j + 1) : e.alphas.labels()[j];
      out << pad(label, 10, true) << pad(fixed(e.alphas[j]), 10) << "   (" << fixed(e.intervals[j].first) << "; "
          << fixed(e.intervals[j].second) << ")\n";
    }
  }
  for (const auto& w : warnings) out << "warning: " << w << '\n';
  return kSuccess;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOptions {
  std::vector<std::size_t> n;
  std::size_t replicates = 1000;
  std::vector<double> beta0;
  std::vector<double> beta1;
  std::vector<double> sigma;
  double p_bern = 0.5;
  double level = 0.95;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string format = "table";
};

json report_json(const SimReport& r) {
  json params = json::array();
  for (const auto& p : r.parameters) {
    params.push_back({{"name", p.name},
                      {"truth", p.truth},
                      {"mean", p.mean},
                      {"bias", p.bias},
                      {"mse", p.mse},
                      {"variance", p.variance},
                      {"cp", p.cp}});
  }
  return {{"n", r.config.n}, {"replicates", r.config.replicates}, {"parameters", std::move(params)}};
}

int cmd_simulate(SimulateOptions o, std::ostream& out, std::ostream& err) {
  const SimConfig defaults = published::simulation_config(70);
  if (o.n.empty()) o.n.assign(published::kSimulationSizes.begin(), published::kSimulationSizes.end());
  if (o.beta0.empty()) o.beta0 = defaults.true_beta0;
  if (o.beta1.empty()) o.beta1 = defaults.true_beta1;
  if (o.sigma.empty()) o.sigma = defaults.true_sigma;
  if (o.beta1.size() != o.beta0.size() || o.sigma.size() != o.beta0.size()) {
    throw UsageError("--beta0, --beta1 and --sigma must have the same number of entries");
  }

  std::vector<SimConfig> configs;
  for (std::size_t n : o.n) {
    SimConfig c;
    c.n = n;
    c.replicates = o.replicates;
    c.true_beta0 = o.beta0;
    c.true_beta1 = o.beta1;
    c.true_sigma = o.sigma;
    c.covariate_prob = o.p_bern;
    c.ci_level = o.level;
    c.seed = o.seed;
    configs.push_back(std::move(c));
  }
  const auto reports = study_sweep(configs, o.threads);
  for (const auto& r : reports) {
    err << "simulate: n = " << r.config.n << " finished in " << fixed(r.duration_seconds) << " s\n";
  }

  if (o.format == "json") {
    json blocks = json::array();
    for (const auto& r : reports) blocks.push_back(report_json(r));
    json inputs{{"n", o.n},         {"replicates", o.replicates}, {"beta0", o.beta0}, {"beta1", o.beta1},
                {"sigma", o.sigma}, {"p_bern", o.p_bern},         {"level", o.level}, {"seed", o.seed},
                {"dgp", "model_normal"}, {"format", o.format}};
    out << envelope("simulate", std::move(inputs), json{{"reports", std::move(blocks)}}, {}).dump(2) << '\n';
    return kSuccess;
  }

  for (const auto& r : reports) {
    out << "Monte Carlo study: n = " << r.config.n << ", replicates = " << r.config.replicates
        << ", seed = " << r.config.seed << "\n";
    out << pad("Parameter", 12, true) << pad("Truth", 10) << pad("Mean", 10) << pad("Bias", 10) << pad("MSE", 10)
        << pad("CP", 8) << '\n';
    for (const auto& p : r.parameters) {
      out << pad(p.name, 12, true) << pad(fixed(p.truth, 5), 10) << pad(fixed(p.mean, 5), 10)
          << pad(fixed(p.bias, 5), 10) << pad(fixed(p.mse, 5), 10) << pad(fixed(p.cp, 3), 8) << '\n';
    }
    out << '\n';
  }
  out << "MSE by sample size\n" << pad("Parameter", 12, true);
  for (const auto& r : reports) out << pad("n=" + std::to_string(r.config.n), 10);
  out << '\n';
  for (std::size_t k = 0; k < reports.front().parameters.size(); ++k) {
    out << pad(reports.front().parameters[k].name, 12, true);
    for (const auto& r : reports) out << pad(fixed(r.parameters[k].mse, 5), 10);
    out << '\n';
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------
// alr

struct AlrOptions {
  std::vector<double> parts;
  std::vector<double> values;
  bool inverse = false;
  int precision = 3;
  std::string format = "table";
};

int cmd_alr(const AlrOptions& o, std::ostream& out) {
  std::vector<double> input;
  std::vector<double> output;
  if (o.inverse) {
    if (o.values.empty() || !o.parts.empty()) throw UsageError("--inverse takes --values (and no --parts)");
    input = o.values;
    const Composition c = alr_inverse(LogRatioVector{o.values});
    output.assign(c.parts().begin(), c.parts().end());
  } else {
    if (o.parts.empty() || !o.values.empty()) throw UsageError("the forward transform takes --parts (and no --values)");
    input = o.parts;
    output = alr(closure(o.parts)).values;
  }
  if (o.format == "json") {
    json inputs{{o.inverse ? "values" : "parts", input}, {"inverse", o.inverse}, {"format", o.format}};
    json results{{o.inverse ? "parts" : "values", output}};
    if (!o.inverse) results["reference_index"] = o.parts.size();
    out << envelope("alr", std::move(inputs), std::move(results), {}).dump(2) << '\n';
    return kSuccess;
  }
  for (std::size_t i = 0; i < output.size(); ++i) out << (i ? " " : "") << fixed(output[i], o.precision);
  out << '\n';
  return kSuccess;
}

// ---------------------------------------------------------------------------
// reproduce

enum class RowStatus { Pass, Fail, Reference };

struct CompareRow {
  std::string item;
  double published;
  double computed;
  std::optional<double> tolerance;

  RowStatus status() const {
    if (!tolerance) return RowStatus::Reference;
    return std::abs(published - computed) <= *tolerance ? RowStatus::Pass : RowStatus::Fail;
  }
};

const char* status_text(RowStatus s) {
  switch (s) {
    case RowStatus::Pass: return "PASS";
    case RowStatus::Fail: return "FAIL";
    case RowStatus::Reference: return "REFERENCE-ONLY";
  }
  return "";
}

struct ReproduceOptions {
  int table = 2;
  std::uint64_t seed = 0;
  std::size_t boot_b = 100000;
  std::size_t replicates = 1000;
  unsigned threads = 0;
  std::string format = "table";
};

// Estimates are gated at 0.01 and slope intervals at 0.02; standard errors
// and the remaining intervals are printed for comparison only.
std::vector<CompareRow> table2_rows() {
  const ModelFit model = fit(to_regression_dataset(bundled_matches()));
  const auto ours = wald_ci(model, 0.95);
  std::vector<CompareRow> rows;
  for (std::size_t k = 0; k < ours.size(); ++k) {
    rows.push_back({ours[k].name + " estimate", published::kRegression[k].estimate, ours[k].estimate, 0.01});
  }
  for (std::size_t k = 0; k < ours.size(); ++k) {
    rows.push_back({ours[k].name + " std.err", published::kRegression[k].sd, ours[k].se, std::nullopt});
  }
  for (std::size_t k = 0; k < ours.size(); ++k) {
    const bool gated = ours[k].kind == ParameterKind::Slope;
    const auto tol = gated ? std::optional<double>(0.02) : std::nullopt;
    rows.push_back({ours[k].name + " ci.lower", published::kRegression[k].lower, ours[k].lower, tol});
    rows.push_back({ours[k].name + " ci.upper", published::kRegression[k].upper, ours[k].upper, tol});
  }
  return rows;
}

std::vector<CompareRow> table3_rows(const ReproduceOptions& o) {
  const ModelFit reported = published::regression_fit();
  const ModelFit ours = fit(to_regression_dataset(bundled_matches()));
  std::vector<CompareRow> rows;
  for (int zi = 0; zi < 2; ++zi) {
    const Eigen::VectorXd z = Eigen::VectorXd::Constant(1, zi);
    const auto& expected = zi == 0 ? published::kProportionsZ0 : published::kProportionsZ1;
    const std::string tag = "z=" + std::to_string(zi) + " ";
    const auto delta = proportion_ci_delta(reported, z, 0.95);
    const auto boot = proportion_ci_bootstrap(reported, z, 0.95, o.boot_b, o.seed, o.threads);
    const Composition data_fit = estimate_proportions(ours, z);
    for (std::size_t j = 0; j < 4; ++j) {
      const auto& e = expected[j];
      const std::string part = tag + std::string(e.part);
      rows.push_back({part + " estimate", e.estimate, delta.alphas[j], 0.001});
      rows.push_back({part + " delta.lower", e.lower, delta.intervals[j].first, 0.02});
      rows.push_back({part + " delta.upper", e.upper, delta.intervals[j].second, 0.02});
      rows.push_back({part + " bootstrap.lower", e.lower, boot.intervals[j].first, 0.02});
      rows.push_back({part + " bootstrap.upper", e.upper, boot.intervals[j].second, 0.02});
      rows.push_back({part + " estimate (match-table fit)", e.estimate, data_fit[j], std::nullopt});
    }
  }
  return rows;
}

std::vector<CompareRow> table1_rows(const ReproduceOptions& o) {
  std::vector<SimConfig> configs;
  for (std::size_t n : published::kSimulationSizes) configs.push_back(published::simulation_config(n, o.seed, o.replicates));
  const auto reports = study_sweep(configs, o.threads);
  std::vector<CompareRow> rows;
  for (const auto& ref : published::kSimulation) {
    for (const auto& r : reports) {
      if (r.config.n != ref.n) continue;
      for (const auto& p : r.parameters) {
        if (p.name != ref.name) continue;
        const std::string tag = "n=" + std::to_string(ref.n) + " " + p.name;
        rows.push_back({tag + " mean", ref.mean, p.mean, std::nullopt});
        rows.push_back({tag + " bias", ref.bias, p.bias, std::nullopt});
        rows.push_back({tag + " mse", ref.mse, p.mse, std::nullopt});
        rows.push_back({tag + " cp", ref.cp, p.cp, std::nullopt});
      }
    }
  }
  return rows;
}

int cmd_reproduce(const ReproduceOptions& o, std::ostream& out) {
  std::vector<CompareRow> rows;
  switch (o.table) {
    case 1: rows = table1_rows(o); break;
    case 2: rows = table2_rows(); break;
    case 3: rows = table3_rows(o); break;
    default: throw UsageError("--table must be 1, 2 or 3");
  }
  bool passed = true;
  for (const auto& r : rows) passed = passed && r.status() != RowStatus::Fail;

  if (o.format == "json") {
    json jrows = json::array();
    for (const auto& r : rows) {
      jrows.push_back({{"item", r.item},
                       {"published", r.published},
                       {"computed", r.computed},
                       {"abs_diff", std::abs(r.published - r.computed)},
                       {"tolerance", r.tolerance ? json(*r.tolerance) : json(nullptr)},
                       {"status", status_text(r.status())}});
    }
    json inputs{{"table", o.table}, {"seed", o.seed}, {"format", o.format}};
    if (o.table == 3) inputs["boot_b"] = o.boot_b;
    if (o.table == 1) inputs["replicates"] = o.replicates;
    out << envelope("reproduce", std::move(inputs), json{{"rows", std::move(jrows)}, {"passed", passed}}, {}).dump(2)
        << '\n';
  } else {
    out << "Reproduction of table " << o.table << " (seed = " << o.seed << ")\n";
    out << pad("Item", 40, true) << pad("Published", 11) << pad("Computed", 11) << pad("|Diff|", 9) << pad("Tol", 8)
        << "  Status\n";
    for (const auto& r : rows) {
      out << pad(r.item, 40, true) << pad(fixed(r.published), 11) << pad(fixed(r.computed), 11)
          << pad(fixed(std::abs(r.published - r.computed)), 9) << pad(r.tolerance ? fixed(*r.tolerance) : "-", 8)
          << "  " << status_text(r.status()) << '\n';
    }
    out << (passed ? "overall: PASS" : "overall: FAIL") << '\n';
  }
  return passed ? kSuccess : kReproductionFailure;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::RankDeficientDesign:
    case ErrorCode::TooFewObservations:
    case ErrorCode::DegenerateScale:
    case ErrorCode::ImprobableDegeneracy:
      return kNumericalFailure;
    case ErrorCode::ParseError:
    case ErrorCode::ValidationError:
    case ErrorCode::DuplicateId:
      return kInputError;
    default:
      return kUsageError;
  }
}

void add_format(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "json"}))->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compositional regression with the additive log-ratio transform", "compreg"};
  app.require_subcommand(1);

  FitOptions fit_opts;
  auto* fit_cmd = app.add_subcommand("fit", "Fit the per-component regression to a match table");
  fit_cmd->add_option("--data", fit_opts.data, "Match CSV (default: bundled table)");
  fit_cmd->add_option("--level", fit_opts.level, "Confidence level")->capture_default_str();
  fit_cmd->add_flag("--lenient", fit_opts.lenient, "Downgrade percentage-sum violations to warnings");
  add_format(fit_cmd, fit_opts.format);

  ProportionOptions prop_opts;
  auto* prop_cmd = app.add_subcommand("proportions", "Fitted proportions with intervals at covariate values");
  prop_cmd->add_option("--data", prop_opts.data, "Match CSV (default: bundled table)");
  prop_cmd->add_option("--z", prop_opts.z, "Covariate value (comma-separated when p > 1); repeatable")->required();
  prop_cmd->add_option("--level", prop_opts.level, "Confidence level")->capture_default_str();
  prop_cmd->add_option("--method", prop_opts.method, "Interval method")
      ->check(CLI::IsMember({"delta", "bootstrap"}))
      ->capture_default_str();
  prop_cmd->add_option("--boot-b", prop_opts.boot_b, "Bootstrap draws")->capture_default_str();
  prop_cmd->add_option("--seed", prop_opts.seed, "Random seed")->capture_default_str();
  prop_cmd->add_option("--threads", prop_opts.threads, "Worker threads (0 = all cores)");
  prop_cmd->add_flag("--lenient", prop_opts.lenient, "Downgrade percentage-sum violations to warnings");
  add_format(prop_cmd, prop_opts.format);

  SimulateOptions sim_opts;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo study of the ML estimators");
  sim_cmd->add_option("--n", sim_opts.n, "Sample size; repeatable (default 70, 100, 150)");
  sim_cmd->add_option("--replicates", sim_opts.replicates, "Replicates per sample size")->capture_default_str();
  sim_cmd->add_option("--beta0", sim_opts.beta0, "True intercepts; repeatable");
  sim_cmd->add_option("--beta1", sim_opts.beta1, "True slopes; repeatable");
  sim_cmd->add_option("--sigma", sim_opts.sigma, "True residual scales; repeatable");
  sim_cmd->add_option("--p-bern", sim_opts.p_bern, "P(z = 1)")->capture_default_str();
  sim_cmd->add_option("--level", sim_opts.level, "Confidence level")->capture_default_str();
  sim_cmd->add_option("--seed", sim_opts.seed, "Random seed")->capture_default_str();
  sim_cmd->add_option("--threads", sim_opts.threads, "Worker threads (0 = all cores)");
  add_format(sim_cmd, sim_opts.format);

  AlrOptions alr_opts;
  auto* alr_cmd = app.add_subcommand("alr", "Additive log-ratio transform or its inverse");
  alr_cmd->add_option("--parts", alr_opts.parts, "Composition parts (closed before transforming); repeatable");
  alr_cmd->add_option("--values", alr_opts.values, "Log-ratios for --inverse; repeatable");
  alr_cmd->add_flag("--inverse", alr_opts.inverse, "Map log-ratios back to the simplex");
  alr_cmd->add_option("--precision", alr_opts.precision, "Decimals in table output")->capture_default_str();
  add_format(alr_cmd, alr_opts.format);

  ReproduceOptions rep_opts;
  auto* rep_cmd = app.add_subcommand("reproduce", "Compare computed values with the published tables");
  rep_cmd->add_option("--table", rep_opts.table, "Table number")->required()->check(CLI::IsMember({1, 2, 3}));
  rep_cmd->add_option("--seed", rep_opts.seed, "Random seed")->capture_default_str();
  rep_cmd->add_option("--boot-b", rep_opts.boot_b, "Bootstrap draws for table 3")->capture_default_str();
  rep_cmd->add_option("--replicates", rep_opts.replicates, "Replicates for table 1")->capture_default_str();
  rep_cmd->add_option("--threads", rep_opts.threads, "Worker threads (0 = all cores)");
  add_format(rep_cmd, rep_opts.format);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (fit_cmd->parsed()) return cmd_fit(fit_opts, out);
    if (prop_cmd->parsed()) return cmd_proportions(prop_opts, out);
    if (sim_cmd->parsed()) return cmd_simulate(sim_opts, out, err);
    if (alr_cmd->parsed()) return cmd_alr(alr_opts, out);
    if (rep_cmd->parsed()) return cmd_reproduce(rep_opts, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kUsageError;
}

}  // namespace compreg::cli

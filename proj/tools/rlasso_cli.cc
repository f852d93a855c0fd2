// Copyright 2026 The rlasso Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: simulate, fit, tuning, verify, rate-study, plot.
//
// Every subcommand reads an optional config file (--config) holding either a
// JSON object or `key = value` lines (dotted keys address nested objects,
// `#` starts a comment). Each flag writes one config key, and flags override
// the file.
//
// Exit codes: 0 success, 1 I/O or internal error, 2 invalid config,
// 3 solver non-convergence in `fit`, 4 verification suite failure.

#include <cstdio>
#include <cstdlib>
#include <deque>
#include <iostream>
#include <set>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rlasso/bench.h"
#include "rlasso/core.h"
#include "rlasso/simulate.h"
#include "rlasso/solver.h"
#include "rlasso/text.h"
#include "rlasso/tuning.h"
#include "rlasso/verify.h"

namespace {

using nlohmann::json;
using namespace rlasso;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInvalidConfig = 2;
constexpr int kExitNotConverged = 3;
constexpr int kExitVerifyFailed = 4;

[[noreturn]] void invalid(const std::string& message) {
  throw std::invalid_argument(message);
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

// A JSON literal when `text` parses as one, otherwise the string itself.
json parse_scalar(const std::string& text) {
  json value = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (value.is_discarded()) return text;
  return value;
}

void set_path(json& root, const std::string& dotted, json value) {
  json* node = &root;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = dotted.find('.', start);
    const std::string key = dotted.substr(start, dot - start);
    if (key.empty()) invalid("config: malformed key '" + dotted + "'");
    if (!node->is_object()) *node = json::object();
    if (dot == std::string::npos) {
      (*node)[key] = std::move(value);
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

json parse_key_value(const std::string& text) {
  json root = json::object();
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      invalid("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string raw = trim(line.substr(eq + 1));
    json value;
    if (!raw.empty() && raw.front() != '[' && raw.front() != '{' &&
        raw.find(',') != std::string::npos) {
      value = json::array();
      std::size_t p = 0;
      while (p <= raw.size()) {
        std::size_t q = raw.find(',', p);
        if (q == std::string::npos) q = raw.size();
        value.push_back(parse_scalar(trim(raw.substr(p, q - p))));
        p = q + 1;
      }
    } else {
      value = parse_scalar(raw);
    }
    set_path(root, key, std::move(value));
  }
  return root;
}

json load_config(const std::string& path) {
  const std::string text = read_text_file(path);
  const std::string body = trim(text);
  if (!body.empty() && body.front() == '{') {
    try {
      return json::parse(text);
    } catch (const json::exception& e) {
      invalid("config " + path + ": " + e.what());
    }
  }
  return parse_key_value(text);
}

// Binds command-line flags to config keys.
class FlagBinder {
 public:
  explicit FlagBinder(CLI::App* app) : app_(app) {
    app_->add_option("--config", config_path_,
                     "Config file (JSON object or key = value lines)");
  }

  void value(const std::string& flag, const std::string& key,
             const std::string& help) {
    Binding& b = bindings_.emplace_back();
    b.key = key;
    b.option = app_->add_option(flag, b.values, help + " [config: " + key + "]")
                   ->expected(1);
  }

  void list(const std::string& flag, const std::string& key,
            const std::string& help) {
    Binding& b = bindings_.emplace_back();
    b.key = key;
    b.is_list = true;
    b.option = app_->add_option(flag, b.values,
                                help + " (comma separated) [config: " + key + "]")
                   ->delimiter(',')
                   ->expected(1, -1);
  }

  void toggle(const std::string& flag, const std::string& key, json value,
              const std::string& help) {
    Binding& b = bindings_.emplace_back();
    b.key = key;
    b.toggle_value = std::move(value);
    b.option = app_->add_flag(flag)->description(help + " [config: " + key + "]");
  }

  // The config file overlaid with every flag that was given.
  json resolve() const {
    json config = config_path_.empty() ? json::object() : load_config(config_path_);
    if (!config.is_object()) invalid("config: expected an object");
    for (const Binding& b : bindings_) {
      if (b.option->count() == 0) continue;
      if (!b.toggle_value.is_null()) {
        set_path(config, b.key, b.toggle_value);
      } else if (b.is_list) {
        json array = json::array();
        for (const auto& v : b.values) array.push_back(parse_scalar(trim(v)));
        set_path(config, b.key, std::move(array));
      } else {
        set_path(config, b.key, parse_scalar(b.values.front()));
      }
    }
    return config;
  }

 private:
  struct Binding {
    std::string key;
    std::vector<std::string> values;
    bool is_list = false;
    json toggle_value;
    CLI::Option* option = nullptr;
  };
  CLI::App* app_;
  std::string config_path_;
  std::deque<Binding> bindings_;
};

void check_keys(const json& config, const std::set<std::string>& allowed,
                const std::string& command) {
  for (const auto& item : config.items()) {
    if (!allowed.count(item.key())) {
      invalid(command + ": unknown config key '" + item.key() + "'");
    }
  }
}

template <typename T>
T get_or(const json& config, const std::string& key, T fallback) {
  if (!config.contains(key)) return fallback;
  if constexpr (std::is_same_v<T, std::string>) {
    // Flag values such as a numeric directory name arrive as JSON numbers.
    if (config.at(key).is_number()) return config.at(key).dump();
  }
  try {
    return config.at(key).get<T>();
  } catch (const json::exception&) {
    invalid("config key '" + key + "' has the wrong type");
  }
}

template <typename T>
T get_required(const json& config, const std::string& key,
               const std::string& command) {
  if (!config.contains(key)) invalid(command + ": '" + key + "' is required");
  return get_or<T>(config, key, T{});
}

std::uint64_t get_seed(const json& config, const std::string& command) {
  if (!config.contains("seed")) invalid(command + ": --seed is required");
  if (!config.at("seed").is_number_unsigned()) {
    invalid(command + ": seed must be a nonnegative integer");
  }
  return config.at("seed").get<std::uint64_t>();
}

void apply_workers(const json& config) {
  if (!config.contains("workers")) return;
  const long workers = get_or<long>(config, "workers", 0);
  if (workers < 1) invalid("workers must be >= 1");
  setenv("RLASSO_WORKERS", std::to_string(workers).c_str(), 1);
}

void emit(const std::string& text, const json& config) {
  const std::string out = get_or<std::string>(config, "out", "");
  if (out.empty()) {
    std::cout << text;
  } else {
    write_text_file(out, text);
  }
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

void bind_instance_flags(FlagBinder& f, const std::string& prefix) {
  f.value("--n", prefix + "n", "Sample size");
  f.value("--d", prefix + "d", "Dimension");
  f.value("--s", prefix + "s", "Sparsity of beta*");
  f.value("--o", prefix + "o", "Number of outliers");
  f.value("--sigma", prefix + "sigma", "Noise standard deviation");
  f.value("--covariance", prefix + "covariance.kind",
          "identity, equicorrelated, toeplitz or explicit");
  f.value("--covariance-r", prefix + "covariance.r", "Correlation parameter");
  f.value("--beta-magnitude", prefix + "beta_magnitude", "Magnitude of beta* entries");
  f.value("--adversary", prefix + "adversary.kind",
          "none, oblivious_constant, sign_flip_large, residual_aligned or "
          "leverage_targeted");
  f.value("--adversary-parameter", prefix + "adversary.parameter",
          "Adversary constant or scale");
}

void bind_solver_flags(FlagBinder& f) {
  f.value("--max-iterations", "solver.max_iterations", "Iteration cap");
  f.value("--kkt-relative", "solver.kkt_relative",
          "KKT tolerance relative to lambda_s");
  f.value("--tolerance", "solver.tolerance", "Relative objective stall tolerance");
  f.value("--step-rule", "solver.step_rule", "backtracking or fixed");
  f.toggle("--no-acceleration", "solver.acceleration", false,
           "Plain proximal gradient instead of FISTA");
}

SolverConfig solver_from_json(const json& config) {
  SolverConfig solver;
  if (!config.contains("solver")) return solver;
  const json& s = config.at("solver");
  if (!s.is_object()) invalid("solver: expected an object");
  check_keys(s, {"max_iterations", "kkt_relative", "tolerance", "step_rule",
                 "acceleration", "stall_window", "kkt_check_every"},
             "solver");
  solver.max_iterations = get_or(s, "max_iterations", solver.max_iterations);
  solver.kkt_relative = get_or(s, "kkt_relative", solver.kkt_relative);
  solver.tolerance = get_or(s, "tolerance", solver.tolerance);
  solver.stall_window = get_or(s, "stall_window", solver.stall_window);
  solver.kkt_check_every = get_or(s, "kkt_check_every", solver.kkt_check_every);
  const std::string rule = get_or<std::string>(s, "step_rule", "backtracking");
  if (rule != "backtracking" && rule != "fixed") {
    invalid("solver: step_rule must be 'backtracking' or 'fixed'");
  }
  solver.step_rule = rule == "fixed" ? StepRule::kFixed : StepRule::kBacktracking;
  solver.acceleration = get_or(s, "acceleration", solver.acceleration);
  solver.validate();
  return solver;
}

// ---------------------------------------------------------------- simulate

int run_simulate(const json& config) {
  check_keys(config, {"n", "d", "s", "o", "sigma", "covariance", "beta_magnitude",
                      "adversary", "seed", "out"},
             "simulate");
  get_seed(config, "simulate");
  const std::string out = get_required<std::string>(config, "out", "simulate");
  json spec_json = config;
  spec_json.erase("out");
  const InstanceSpec spec = instance_spec_from_json(spec_json);
  spec.validate();
  const ProblemInstance instance = generate_instance(spec);
  write_instance_directory(instance, spec, out);
  json summary = {{"directory", out},
                  {"n", instance.n()},
                  {"d", instance.d()},
                  {"outliers", instance.outlier_index.size()},
                  {"spec", to_json(spec)}};
  std::cout << summary.dump(2) << "\n";
  return kExitOk;
}

// --------------------------------------------------------------------- fit

int run_fit(const json& config) {
  check_keys(config, {"instance", "formulation", "tuning", "lambda_s", "lambda_o",
                      "delta", "c_lambda_o", "gamma", "kappa", "c0", "s", "o",
                      "solver", "out"},
             "fit");
  const std::string directory = get_required<std::string>(config, "instance", "fit");
  const std::string formulation = get_or<std::string>(config, "formulation", "huber");
  if (formulation != "huber" && formulation != "extended") {
    invalid("fit: formulation must be 'huber' or 'extended'");
  }
  const std::string tuning = get_or<std::string>(config, "tuning", "paper");
  const SolverConfig solver = solver_from_json(config);
  const LoadedInstance loaded = read_instance_directory(directory);
  const ProblemInstance& instance = loaded.instance;
  const double rho = std::sqrt(instance.rho_squared());

  PenaltyPair penalties;
  json tuning_json;
  if (tuning == "manual") {
    penalties.lambda_s = get_required<double>(config, "lambda_s", "fit");
    penalties.lambda_o = get_required<double>(config, "lambda_o", "fit");
    penalties.provenance = Provenance::kManual;
  } else if (tuning == "nguyen_tran") {
    penalties = nguyen_tran_tuning(instance.n(), instance.d(), instance.sigma, rho,
                                   get_or(config, "gamma", 1.0));
  } else if (tuning == "paper") {
    TuningInputs in;
    in.n = instance.n();
    in.d = instance.d();
    long s_default = -1;
    long o_default = static_cast<long>(instance.outlier_index.size());
    if (loaded.spec) {
      s_default = loaded.spec->s;
      o_default = loaded.spec->o;
    } else if (instance.has_truth()) {
      s_default = static_cast<long>((instance.beta_star.array() != 0.0).count());
    }
    in.s = get_or(config, "s", s_default);
    if (in.s < 0) invalid("fit: tuning 'paper' needs 's' for this instance");
    in.o = get_or(config, "o", o_default);
    in.delta = get_or(config, "delta", in.delta);
    in.sigma = instance.sigma;
    in.rho = rho;
    if (config.contains("c_lambda_o")) {
      in.c_lambda_o = get_or(config, "c_lambda_o", 2.0);
    }
    in.kappa = get_or(config, "kappa", in.kappa);
    in.c0 = get_or(config, "c0", in.c0);
    const TuningResult result = paper_tuning(in);
    penalties = result.penalties;
    tuning_json = {{"c_lambda_o", result.bundle.c_lambda_o},
                   {"s", in.s},
                   {"o", in.o},
                   {"delta", in.delta}};
  } else {
    invalid("fit: tuning must be 'paper', 'nguyen_tran' or 'manual'");
  }
  require_positive(penalties);

  const FitResult fit = formulation == "huber"
                            ? solve_huber_lasso(instance, penalties, solver)
                            : solve_extended_lasso(instance, penalties, solver);
  json result = {{"instance", directory},
                 {"formulation", formulation},
                 {"tuning", tuning},
                 {"lambda_s", penalties.lambda_s},
                 {"lambda_o", penalties.lambda_o},
                 {"provenance", provenance_name(penalties.provenance)},
                 {"converged", fit.converged},
                 {"iterations", fit.iterations},
                 {"kkt_residual", fit.kkt_residual},
                 {"objective", fit.objective_trace.empty()
                                   ? json(nullptr)
                                   : json(fit.objective_trace.back())},
                 {"beta_hat", vector_json(fit.beta_hat)},
                 {"theta_hat", vector_json(fit.theta_hat)}};
  if (!tuning_json.is_null()) result["tuning_inputs"] = tuning_json;
  if (fit.c_cut) result["c_cut"] = *fit.c_cut;
  if (instance.has_truth()) {
    const Vector diff = fit.beta_hat - instance.beta_star;
    result["error_sigma"] = instance.sigma_norm(diff);
    result["error_l2"] = diff.norm();
    result["support_f1"] = support_f1(fit.beta_hat, instance.beta_star);
  }
  emit(result.dump(2) + "\n", config);
  if (!fit.converged) {
    std::cerr << "fit: solver did not converge after " << fit.iterations
              << " iterations (KKT residual " << format_double(fit.kkt_residual)
              << ")\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

// ------------------------------------------------------------------ tuning

json check_json(const ConditionCheck& c) {
  return {{"name", c.name},
          {"relation", c.relation},
          {"lhs", c.lhs},
          {"rhs", c.rhs},
          {"satisfied", c.satisfied}};
}

int run_tuning(const json& config) {
  check_keys(config, {"n", "d", "s", "o", "delta", "sigma", "rho", "c_lambda_o",
                      "kappa", "c0", "gamma", "out"},
             "tuning");
  TuningInputs in;
  in.n = get_required<long>(config, "n", "tuning");
  in.d = get_required<long>(config, "d", "tuning");
  in.s = get_or(config, "s", in.s);
  in.o = get_or(config, "o", in.o);
  in.delta = get_or(config, "delta", in.delta);
  in.sigma = get_or(config, "sigma", in.sigma);
  in.rho = get_or(config, "rho", in.rho);
  if (config.contains("c_lambda_o")) in.c_lambda_o = get_or(config, "c_lambda_o", 2.0);
  in.kappa = get_or(config, "kappa", in.kappa);
  in.c0 = get_or(config, "c0", in.c0);
  const TuningResult result = paper_tuning(in);
  const TuningBundle& b = result.bundle;
  const ConditionReport report = condition_report(b);
  json conditions = json::array();
  for (const ConditionCheck* c : report.all()) conditions.push_back(check_json(*c));
  const Cond0Decomposition cond0 =
      cond0_decomposition(in.n, in.d, in.s, in.o, result.penalties);
  const PenaltyPair nt =
      nguyen_tran_tuning(in.n, in.d, in.sigma, in.rho, get_or(config, "gamma", 1.0));
  json rates = {{"r1", b.rates.r1},   {"r21", b.rates.r21},
                {"r22", b.rates.r22}, {"r2", b.rates.r2},
                {"r_total", b.rates.r_total}, {"eta_delta", b.rates.eta_delta}};
  if (b.rates.eta_4) rates["eta_4"] = *b.rates.eta_4;
  json out = {
      {"inputs",
       {{"n", in.n}, {"d", in.d}, {"s", in.s}, {"o", in.o}, {"delta", in.delta},
        {"sigma", in.sigma}, {"rho", in.rho}, {"kappa", in.kappa}, {"c0", in.c0}}},
      {"bundle",
       {{"lambda_o", b.lambda_o},       {"lambda_s", b.lambda_s},
        {"c_lambda_o", b.c_lambda_o},   {"c_z", b.c_z},
        {"g1", b.g1},                   {"g2_o", b.g2_o},
        {"g_o", b.g_o},                 {"c_lambda_s", b.c_lambda_s},
        {"a1", b.a1},                   {"b1", b.b1},
        {"c_n_delta", b.c_n_delta},     {"nu_e", b.nu_e},
        {"c_kappa", b.c_kappa},         {"c_r", b.c_r},
        {"eta_bar_4", b.eta_bar_4},     {"c_gt", b.c_gt},
        {"rates", rates}}},
      {"conditions", conditions},
      {"all_satisfied", report.all_satisfied},
      {"cond0_decomposition",
       {{"a1b1", cond0.a1b1}, {"a1b2", cond0.a1b2}, {"a2b1", cond0.a2b1},
        {"a2b2", cond0.a2b2}}},
      {"c_cut_prerequisite_failures", c_cut_prerequisite_failures(b)},
      {"nguyen_tran", {{"lambda_s", nt.lambda_s}, {"lambda_o", nt.lambda_o}}}};
  emit(out.dump(2) + "\n", config);
  return kExitOk;
}

// ------------------------------------------------------------------ verify

int run_verify(const json& config) {
  check_keys(config, {"suite", "seed", "trials", "n", "d", "s", "o", "delta",
                      "sigma", "covariance", "adversary", "lambda_o",
                      "c_lambda_o", "random_probes", "sparsity_levels",
                      "fit_probe", "ns", "deltas", "dims", "workers", "out"},
             "verify");
  const std::uint64_t seed = get_seed(config, "verify");
  apply_workers(config);
  const std::string suite = get_required<std::string>(config, "suite", "verify");

  if (suite == "width") {
    const auto dims =
        get_or<std::vector<long>>(config, "dims", std::vector<long>{3, 10, 100, 1000});
    const long trials = get_or(config, "trials", 2000L);
    std::string csv = width_csv_header();
    bool ok = true;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (dims[k] < 1) invalid("verify: dims must be >= 1");
      Rng rng(derive_seed(seed, k));
      const WidthEstimate w = estimate_width_sigma_ball(
          Matrix::Identity(dims[k], dims[k]), trials, rng);
      ok = ok && w.estimate <= w.bound + 3.0 * w.std_error;
      csv += width_csv_row(w);
    }
    emit(csv, config);
    return ok ? kExitOk : kExitVerifyFailed;
  }

  std::vector<CoverageRecord> records;
  if (suite == "concentration") {
    records = run_concentration_suite(
        get_or<std::vector<long>>(config, "ns", {1000, 10000}),
        get_or<std::vector<double>>(config, "deltas", {0.05, 0.1}),
        get_or(config, "d", 30L), get_or(config, "trials", 2000L), seed);
  } else if (suite == "c_cut") {
    json spec_json = {{"n", get_or(config, "n", 1000L)},
                      {"d", get_or(config, "d", 10L)},
                      {"s", get_or(config, "s", 2L)},
                      {"o", get_or(config, "o", 5L)},
                      {"sigma", get_or(config, "sigma", 1.0)}};
    if (config.contains("covariance")) spec_json["covariance"] = config["covariance"];
    spec_json["adversary"] =
        config.contains("adversary") ? config["adversary"] : json("residual_aligned");
    const InstanceSpec point = instance_spec_from_json(spec_json);
    TuningInputs in;
    in.delta = get_or(config, "delta", in.delta);
    if (config.contains("c_lambda_o")) in.c_lambda_o = get_or(config, "c_lambda_o", 2.0);
    records.push_back(verify_c_cut(point, in, get_or(config, "trials", 200L), seed));
  } else {
    VerifyParams p;
    p.n = get_or(config, "n", p.n);
    p.d = get_or(config, "d", p.d);
    p.s = get_or(config, "s", p.s);
    p.delta = get_or(config, "delta", p.delta);
    p.sigma = get_or(config, "sigma", p.sigma);
    if (config.contains("covariance")) {
      p.covariance =
          instance_spec_from_json({{"covariance", config["covariance"]}}).covariance;
    }
    if (config.contains("lambda_o")) p.lambda_o = get_or(config, "lambda_o", 0.0);
    p.random_probes = get_or(config, "random_probes", p.random_probes);
    p.sparsity_levels = get_or(config, "sparsity_levels", p.sparsity_levels);
    p.fit_probe = get_or(config, "fit_probe", p.fit_probe);
    const long trials = get_or(config, "trials", 1000L);
    Rng rng(seed);
    records.push_back(suite == "atp" ? verify_atp(p, trials, rng)
                                     : verify_inequality(suite, p, trials, rng));
  }
  std::string csv = coverage_csv_header();
  bool ok = true;
  for (const auto& r : records) {
    csv += coverage_csv_row(r);
    ok = ok && r.passed();
  }
  emit(csv, config);
  return ok ? kExitOk : kExitVerifyFailed;
}

// -------------------------------------------------------------- rate-study

int run_rate_study(const json& config) {
  check_keys(config, {"axis", "axis_values", "fixed", "repetitions", "methods",
                      "seed", "delta", "c_lambda_o", "gamma", "kappa", "c0",
                      "record_timing", "solver", "workers", "out", "plot"},
             "rate-study");
  get_seed(config, "rate-study");
  apply_workers(config);
  json spec_json = config;
  for (const char* key : {"workers", "out", "plot"}) spec_json.erase(key);
  if (spec_json.contains("solver")) solver_from_json(spec_json);
  const ExperimentSpec spec = experiment_spec_from_json(spec_json);
  spec.validate();
  const ExperimentRecord record = run_experiment(spec);
  emit(experiment_csv(record), config);
  const std::string plot = get_or<std::string>(config, "plot", "");
  if (!plot.empty()) emit_plot(record, plot);

  for (Method m : spec.methods) {
    const std::string name(method_name(m));
    long unconverged = 0;
    for (const auto& s : summarize(record)) {
      if (s.method == name) unconverged += s.unconverged;
    }
    std::cerr << name << ":";
    try {
      const PowerLawFit fit = fit_power_law(record, name);
      std::cerr << " exponent=" << format_double(fit.exponent)
                << " r_squared=" << format_double(fit.r_squared);
    } catch (const std::invalid_argument& e) {
      std::cerr << " no power-law fit (" << e.what() << ")";
    }
    std::cerr << " unconverged_cells=" << unconverged << "\n";
  }
  return kExitOk;
}

// -------------------------------------------------------------------- plot

int run_plot(const json& config) {
  check_keys(config, {"csv", "out"}, "plot");
  const std::string csv = get_required<std::string>(config, "csv", "plot");
  const std::string out = get_required<std::string>(config, "out", "plot");
  emit_plot(parse_experiment_csv(read_text_file(csv)), out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust sparse regression under adversarial contamination"};
  app.require_subcommand(1);

  auto* simulate = app.add_subcommand("simulate", "Generate an instance directory");
  FlagBinder simulate_flags(simulate);
  bind_instance_flags(simulate_flags, "");
  simulate_flags.value("--seed", "seed", "Instance seed (required)");
  simulate_flags.value("--out", "out", "Output directory");

  auto* fit = app.add_subcommand("fit", "Fit one instance directory");
  FlagBinder fit_flags(fit);
  fit_flags.value("--instance", "instance", "Instance directory");
  fit_flags.value("--formulation", "formulation", "huber or extended");
  fit_flags.value("--tuning", "tuning", "paper, nguyen_tran or manual");
  fit_flags.value("--lambda-s", "lambda_s", "Manual lambda_s");
  fit_flags.value("--lambda-o", "lambda_o", "Manual lambda_o");
  fit_flags.value("--delta", "delta", "Confidence parameter for the recipe tuning");
  fit_flags.value("--c-lambda-o", "c_lambda_o", "Constant C in lambda_o");
  fit_flags.value("--gamma", "gamma", "Nguyen-Tran gamma");
  fit_flags.value("--kappa", "kappa", "Assumed RE constant");
  fit_flags.value("--c0", "c0", "Cone constant");
  fit_flags.value("--s", "s", "Sparsity used by the recipe tuning");
  fit_flags.value("--o", "o", "Outlier count used by the recipe tuning");
  bind_solver_flags(fit_flags);
  fit_flags.value("--out", "out", "Result JSON path (default stdout)");

  auto* tuning = app.add_subcommand("tuning", "Print tuning constants and conditions");
  FlagBinder tuning_flags(tuning);
  tuning_flags.value("--n", "n", "Sample size");
  tuning_flags.value("--d", "d", "Dimension");
  tuning_flags.value("--s", "s", "Sparsity");
  tuning_flags.value("--o", "o", "Outlier count");
  tuning_flags.value("--delta", "delta", "Confidence parameter");
  tuning_flags.value("--sigma", "sigma", "Noise level");
  tuning_flags.value("--rho", "rho", "Max standard deviation of a feature");
  tuning_flags.value("--c-lambda-o", "c_lambda_o",
                     "Constant C in lambda_o (default: smallest with C_gt > 0)");
  tuning_flags.value("--kappa", "kappa", "Assumed RE constant");
  tuning_flags.value("--c0", "c0", "Cone constant");
  tuning_flags.value("--gamma", "gamma", "Nguyen-Tran gamma");
  tuning_flags.value("--out", "out", "Output path (default stdout)");

  auto* verify = app.add_subcommand("verify", "Run a Monte Carlo verification suite");
  FlagBinder verify_flags(verify);
  verify_flags.value("--suite", "suite",
                     "concentration, width, c_cut, atp, noise_supnorm, "
                     "xtxi_supnorm, bernstein_z, chisq, prop3 or prop4");
  verify_flags.value("--seed", "seed", "Master seed (required)");
  verify_flags.value("--trials", "trials", "Trials per record");
  verify_flags.value("--n", "n", "Sample size");
  verify_flags.value("--d", "d", "Dimension");
  verify_flags.value("--s", "s", "Sparsity");
  verify_flags.value("--o", "o", "Outlier count (c_cut suite)");
  verify_flags.value("--delta", "delta", "Confidence parameter");
  verify_flags.value("--sigma", "sigma", "Noise level");
  verify_flags.value("--covariance", "covariance.kind", "Covariance family");
  verify_flags.value("--covariance-r", "covariance.r", "Correlation parameter");
  verify_flags.value("--adversary", "adversary", "Adversary (c_cut suite)");
  verify_flags.value("--lambda-o", "lambda_o", "lambda_o for bernstein_z");
  verify_flags.value("--c-lambda-o", "c_lambda_o", "Constant C (c_cut suite)");
  verify_flags.value("--random-probes", "random_probes", "Random probes per trial");
  verify_flags.list("--sparsity-levels", "sparsity_levels", "m values for prop4");
  verify_flags.toggle("--fit-probe", "fit_probe", true, "Add the fitted-error probe");
  verify_flags.list("--ns", "ns", "Sample sizes (concentration suite)");
  verify_flags.list("--deltas", "deltas", "Deltas (concentration suite)");
  verify_flags.list("--dims", "dims", "Dimensions (width suite)");
  verify_flags.value("--workers", "workers", "Worker threads");
  verify_flags.value("--out", "out", "CSV path (default stdout)");

  auto* rate = app.add_subcommand("rate-study", "Run a rate study");
  FlagBinder rate_flags(rate);
  rate_flags.value("--axis", "axis", "Swept axis: n, o, s or d");
  rate_flags.list("--axis-values", "axis_values", "Strictly increasing axis values");
  rate_flags.value("--repetitions", "repetitions", "Repetitions per point");
  rate_flags.list("--methods", "methods", "paper, nguyen_tran, plain_lasso");
  rate_flags.value("--seed", "seed", "Master seed (required)");
  rate_flags.value("--delta", "delta", "Confidence parameter");
  rate_flags.value("--c-lambda-o", "c_lambda_o", "Constant C in lambda_o");
  rate_flags.value("--gamma", "gamma", "Nguyen-Tran gamma");
  rate_flags.value("--kappa", "kappa", "Assumed RE constant");
  rate_flags.value("--c0", "c0", "Cone constant");
  rate_flags.toggle("--record-timing", "record_timing", true, "Record wall_ms");
  bind_instance_flags(rate_flags, "fixed.");
  bind_solver_flags(rate_flags);
  rate_flags.value("--workers", "workers", "Worker threads");
  rate_flags.value("--out", "out", "CSV path (default stdout)");
  rate_flags.value("--plot", "plot", "SVG path");

  auto* plot = app.add_subcommand("plot", "Render a rate-study CSV as SVG");
  FlagBinder plot_flags(plot);
  plot_flags.value("--csv", "csv", "Input CSV");
  plot_flags.value("--out", "out", "Output SVG");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidConfig;
  }

  try {
    if (simulate->parsed()) return run_simulate(simulate_flags.resolve());
    if (fit->parsed()) return run_fit(fit_flags.resolve());
    if (tuning->parsed()) return run_tuning(tuning_flags.resolve());
    if (verify->parsed()) return run_verify(verify_flags.resolve());
    if (rate->parsed()) return run_rate_study(rate_flags.resolve());
    if (plot->parsed()) return run_plot(plot_flags.resolve());
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const json::exception& e) {
    std::cerr << "error: invalid config: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

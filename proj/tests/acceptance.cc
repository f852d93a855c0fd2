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

// Acceptance suite. Each criterion prints exactly one line starting with
// "PASS" or "FAIL", followed by indented diagnostic lines. The process exits
// with status 0 iff every selected criterion passed.
//
//   acceptance [--criterion N] [--work-dir DIR]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rlasso/bench.h"
#include "rlasso/core.h"
#include "rlasso/random.h"
#include "rlasso/simulate.h"
#include "rlasso/solver.h"
#include "rlasso/text.h"
#include "rlasso/tuning.h"
#include "rlasso/verify.h"

namespace {

using namespace rlasso;

// Fixed seeds of the acceptance suite.
constexpr std::uint64_t kSeed = 20260101;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void detail(const char* format, ...) __attribute__((format(printf, 1, 2)));
void detail(const char* format, ...) {
  std::printf("    ");
  va_list args;
  va_start(args, format);
  std::vprintf(format, args);
  va_end(args);
  std::printf("\n");
}

bool report(int id, bool pass, const std::string& summary) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, summary.c_str());
  std::fflush(stdout);
  return pass;
}

std::string short_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.4g", value);
  return buffer;
}

AdversaryKind adversary_cycle(int k) {
  static const AdversaryKind kinds[] = {
      AdversaryKind::kNone, AdversaryKind::kObliviousConstant,
      AdversaryKind::kSignFlipLarge, AdversaryKind::kResidualAligned,
      AdversaryKind::kLeverageTargeted};
  return kinds[k % 5];
}

// Random small instances with mixed adversaries (n <= 100, d <= 20).
std::vector<ProblemInstance> small_instances(int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ProblemInstance> out;
  for (int k = 0; k < count; ++k) {
    InstanceSpec spec;
    spec.n = 30 + static_cast<long>(rng.below(71));
    spec.d = 2 + static_cast<long>(rng.below(19));
    spec.s = 1 + static_cast<long>(rng.below(std::min<long>(spec.d, 4)));
    spec.adversary.kind = adversary_cycle(k);
    spec.o = spec.adversary.kind == AdversaryKind::kNone
                 ? 0
                 : 1 + static_cast<long>(rng.below(spec.n / 10));
    spec.adversary.parameter = spec.adversary.kind == AdversaryKind::kObliviousConstant
                                   ? 2.0 + 3.0 * rng.uniform()
                                   : 1.0;
    if (k % 3 == 1) spec.covariance = {CovarianceKind::kToeplitz, 0.5, {}};
    spec.seed = rng();
    out.push_back(generate_instance(spec));
  }
  return out;
}

PenaltyPair penalties_for(const ProblemInstance& inst) {
  // Nguyen-Tran penalties keep the fits non-trivial at this scale.
  return nguyen_tran_tuning(inst.n(), std::max<Index>(inst.d(), 2), 1.0,
                            std::sqrt(inst.rho_squared()));
}

// ------------------------------------------------------------------------
// 1. Formulation equivalence.
bool criterion1() {
  const Stopwatch clock;
  const auto instances = small_instances(50, derive_seed(kSeed, 1));
  double worst_beta = 0.0;
  double worst_theta = 0.0;
  int unconverged = 0;
  for (const auto& inst : instances) {
    const PenaltyPair p = penalties_for(inst);
    const FitResult huber = solve_huber_lasso(inst, p);
    const FitResult extended = solve_extended_lasso(inst, p);
    unconverged += !huber.converged + !extended.converged;
    worst_beta = std::max(
        worst_beta, (huber.beta_hat - extended.beta_hat).cwiseAbs().maxCoeff());
    const Vector theta = theta_closed_form(inst, extended.beta_hat, p.lambda_o);
    worst_theta =
        std::max(worst_theta, (extended.theta_hat - theta).cwiseAbs().maxCoeff());
  }
  const double elapsed = clock.seconds();
  const bool pass = worst_beta <= 1e-6 && worst_theta <= 1e-8 && elapsed < 60.0 &&
                    unconverged == 0;
  report(1, pass, "extended and Huber formulations agree on 50 instances");
  detail("max |beta_huber - beta_extended|_inf = %.3e (tolerance 1e-6)", worst_beta);
  detail("max |theta_hat - soft(residual)|_inf = %.3e (tolerance 1e-8)", worst_theta);
  detail("unconverged fits = %d, runtime = %.2f s (limit 60 s)", unconverged, elapsed);
  return pass;
}

// ------------------------------------------------------------------------
// 2. Optimality.
bool criterion2() {
  const auto instances = small_instances(50, derive_seed(kSeed, 2));
  int converged = 0;
  int kkt_failures = 0;
  double worst_grad = 0.0;
  double worst_support = 0.0;
  for (const auto& inst : instances) {
    const PenaltyPair base = penalties_for(inst);
    for (double scale : {0.25, 1.0, 4.0}) {
      const PenaltyPair p{base.lambda_s * scale, base.lambda_o, Provenance::kManual};
      const FitResult fit = solve_huber_lasso(inst, p);
      if (!fit.converged) continue;
      ++converged;
      const KktReport kkt = kkt_check(inst, fit.beta_hat, p, SolverConfig{});
      worst_grad = std::max(worst_grad, kkt.gradient_supnorm / p.lambda_s);
      worst_support = std::max(worst_support, kkt.support_violation / p.lambda_s);
      if (kkt.gradient_supnorm > p.lambda_s * (1.0 + 1e-6) ||
          kkt.support_violation > 1e-6 * p.lambda_s) {
        ++kkt_failures;
      }
    }
  }
  // One-dimensional fits against a grid search with step 1e-4.
  double worst_grid = 0.0;
  int grid_unconverged = 0;
  Rng rng(derive_seed(kSeed, 22));
  for (int k = 0; k < 20; ++k) {
    InstanceSpec spec;
    spec.n = 40 + static_cast<long>(rng.below(61));
    spec.d = 1;
    spec.s = 1;
    spec.adversary.kind = adversary_cycle(k);
    spec.o = spec.adversary.kind == AdversaryKind::kNone ? 0 : spec.n / 10;
    spec.adversary.parameter = 3.0;
    spec.seed = rng();
    const ProblemInstance inst = generate_instance(spec);
    const PenaltyPair p{0.02 + 0.2 * rng.uniform(), 0.1 + 0.5 * rng.uniform(),
                        Provenance::kManual};
    const FitResult fit = solve_huber_lasso(inst, p);
    grid_unconverged += !fit.converged;
    const double center = fit.beta_hat(0);
    // The Huber objective is convex, so scan a window that surely contains
    // the grid minimizer: [-|y|_inf, |y|_inf] scaled generously.
    const double reach = 5.0 + 2.0 * std::abs(center);
    Vector b(1);
    double best = 0.0;
    double best_value = INFINITY;
    for (long i = 0;; ++i) {
      const double t = -reach + 1e-4 * static_cast<double>(i);
      if (t > reach) break;
      b(0) = t;
      const double value = objective_huber(inst, b, p);
      if (value < best_value) {
        best_value = value;
        best = t;
      }
    }
    worst_grid = std::max(worst_grid, std::abs(best - center));
  }
  const bool pass = kkt_failures == 0 && converged > 0 && worst_grid <= 2e-4 &&
                    grid_unconverged == 0;
  report(2, pass, "converged fits satisfy KKT; d = 1 fits match grid search");
  detail("converged fits checked = %d, KKT failures = %d", converged, kkt_failures);
  detail("max gradient_supnorm / lambda_s = %.9f (limit 1 + 1e-6)", worst_grad);
  detail("max support_violation / lambda_s = %.3e (limit 1e-6)", worst_support);
  detail("d = 1: max |beta_hat - grid argmin| = %.3e (limit 2e-4), unconverged = %d",
         worst_grid, grid_unconverged);
  return pass;
}

// ------------------------------------------------------------------------
// 3. Huber identities.
bool criterion3() {
  const int probes = 1000;
  Rng rng(derive_seed(kSeed, 3));
  int convexity_failures = 0;
  int lipschitz_failures = 0;
  int identity_failures = 0;
  double worst_identity = 0.0;
  for (int k = 0; k < probes; ++k) {
    const double a = 8.0 * (rng.uniform() - 0.5);
    const double b = 8.0 * (rng.uniform() - 0.5);
    const double w = rng.uniform();
    const double mix = huber_value(w * a + (1.0 - w) * b);
    if (mix > w * huber_value(a) + (1.0 - w) * huber_value(b) + 1e-12) {
      ++convexity_failures;
    }
    if (std::abs(huber_psi(a) - huber_psi(b)) > std::abs(a - b) + 1e-15) {
      ++lipschitz_failures;
    }
    // min_t (1/2)(r - t)^2 + lam |t| = lam^2 H(r / lam). The minimum is
    // located by a bracketing search, independent of the soft-threshold form.
    const double r = 20.0 * (rng.uniform() - 0.5);
    const double lam = 0.05 + 4.95 * rng.uniform();
    const auto f = [&](double t) { return 0.5 * (r - t) * (r - t) + lam * std::abs(t); };
    double lo = -std::abs(r) - 1.0;
    double hi = std::abs(r) + 1.0;
    for (int it = 0; it < 200; ++it) {
      const double m1 = lo + (hi - lo) / 3.0;
      const double m2 = hi - (hi - lo) / 3.0;
      if (f(m1) <= f(m2)) {
        hi = m2;
      } else {
        lo = m1;
      }
    }
    const double t_star = 0.5 * (lo + hi);
    const double gap = std::abs(f(t_star) - lam * lam * huber_value(r / lam));
    worst_identity = std::max(worst_identity, gap);
    if (gap > 1e-10) ++identity_failures;
  }

  // Finite-difference gradient of the smooth Huber term on random instances.
  int gradient_failures = 0;
  double worst_gradient = 0.0;
  const auto instances = small_instances(10, derive_seed(kSeed, 33));
  const double h = 1e-5;
  for (int k = 0; k < probes; ++k) {
    const ProblemInstance& inst = instances[static_cast<std::size_t>(k % 10)];
    const double lambda_o = 0.1 + rng.uniform();
    const Vector beta = rng.normal_vector(inst.d());
    const Vector grad = huber_smooth_gradient(inst, beta, lambda_o);
    const Index j = static_cast<Index>(rng.below(static_cast<std::uint64_t>(inst.d())));
    Vector up = beta;
    Vector down = beta;
    up(j) += h;
    down(j) -= h;
    const double fd = (huber_smooth_value(inst, up, lambda_o) -
                       huber_smooth_value(inst, down, lambda_o)) /
                      (2.0 * h);
    const double err = std::abs(fd - grad(j));
    worst_gradient = std::max(worst_gradient, err);
    if (err > 1e-6) ++gradient_failures;
  }
  const bool pass = convexity_failures == 0 && lipschitz_failures == 0 &&
                    identity_failures == 0 && gradient_failures == 0;
  report(3, pass, "Huber identities over 1000 probes each");
  detail("convexity failures = %d, 1-Lipschitz psi failures = %d", convexity_failures,
         lipschitz_failures);
  detail("partial minimization: max gap = %.3e (limit 1e-10), failures = %d",
         worst_identity, identity_failures);
  detail("gradient vs central difference (h = 1e-5): max error = %.3e (limit 1e-6), "
         "failures = %d",
         worst_gradient, gradient_failures);
  return pass;
}

// ------------------------------------------------------------------------
// 4. Concentration coverage.
bool criterion4() {
  const Stopwatch clock;
  const auto records =
      run_concentration_suite({1000, 10000}, {0.05, 0.1}, 30, 2000, derive_seed(kSeed, 4));
  const double elapsed = clock.seconds();
  int failed = 0;
  std::vector<std::string> lines;
  for (const auto& r : records) {
    if (!r.passed()) ++failed;
    char line[256];
    std::snprintf(line, sizeof(line),
                  "%-14s n=%-6ld delta=%.2f coverage=%.4f nominal=%.4f halfwidth=%.4f %s",
                  r.inequality_id.c_str(), r.params.value("n", 0L),
                  r.params.value("delta", 0.0), r.empirical_coverage,
                  r.nominal_level, r.wilson_halfwidth, r.passed() ? "ok" : "FAILED");
    lines.push_back(line);
  }
  const bool pass = failed == 0 && records.size() == 16 && elapsed < 600.0;
  report(4, pass, "concentration coverage, 16 records x 2000 trials");
  for (const auto& line : lines) detail("%s", line.c_str());
  detail("failed records = %d, runtime = %.1f s (limit 600 s)", failed, elapsed);
  return pass;
}

// ------------------------------------------------------------------------
// 5. Width bounds.
bool criterion5() {
  bool pass = true;
  std::vector<std::string> lines;
  const long trials = 10000;
  std::uint64_t index = 0;
  for (long d : {3L, 10L, 100L, 1000L}) {
    Rng rng(derive_seed(kSeed * 5, index++));
    const WidthEstimate w = estimate_width_sigma_ball(Matrix::Identity(d, d), trials, rng);
    const bool ok = w.estimate <= w.bound + 3.0 * w.std_error;
    pass = pass && ok;
    char line[200];
    std::snprintf(line, sizeof(line),
                  "d=%-5ld estimate=%.5f se=%.5f sqrt(2 log d)=%.5f %s", d, w.estimate,
                  w.std_error, w.bound, ok ? "ok" : "FAILED");
    lines.push_back(line);
  }
  Rng rng(derive_seed(kSeed * 5, index++));
  const WidthEstimate two = estimate_width_sigma_ball(Matrix::Identity(2, 2), 100000, rng);
  const double closed = 2.0 / std::sqrt(M_PI);
  const bool two_ok = std::abs(two.estimate - closed) <= 0.01;
  pass = pass && two_ok;
  report(5, pass, "Gaussian width of the l1 ball below sqrt(2 log d)");
  for (const auto& line : lines) detail("%s", line.c_str());
  detail("d=2: estimate=%.5f closed form 2/sqrt(pi)=%.5f |diff|=%.5f (limit 0.01)",
         two.estimate, closed, std::abs(two.estimate - closed));
  return pass;
}

// ------------------------------------------------------------------------
// 6. C_cut bound.
bool criterion6() {
  // Search, in a fixed order, for the first point whose tuning satisfies the
  // prerequisites of the C_cut bound.
  std::optional<InstanceSpec> found;
  TuningInputs inputs;
  inputs.delta = 0.1;
  inputs.c_lambda_o = 2.0;
  for (long n : {500L, 1000L, 2000L}) {
    for (long d : {10L, 20L}) {
      for (long o : {10L, 5L}) {
        TuningInputs candidate = inputs;
        candidate.n = n;
        candidate.d = d;
        candidate.s = 2;
        candidate.o = o;
        if (!c_cut_prerequisite_failures(paper_tuning(candidate).bundle).empty()) {
          continue;
        }
        if (!found) {
          InstanceSpec spec;
          spec.n = n;
          spec.d = d;
          spec.s = 2;
          spec.o = o;
          spec.adversary.kind = AdversaryKind::kResidualAligned;
          found = spec;
        }
      }
    }
  }
  bool waived = false;
  if (!found) {
    waived = true;
    InstanceSpec spec;
    spec.n = 1000;
    spec.d = 10;
    spec.s = 2;
    spec.o = 5;
    spec.adversary.kind = AdversaryKind::kResidualAligned;
    found = spec;
  }
  const CoverageRecord r = verify_c_cut(*found, inputs, 200, derive_seed(kSeed, 6));
  const bool pass = r.empirical_coverage >= 0.95;
  report(6, pass,
         std::string("C_cut <= bound in >= 95% of 200 trials") +
             (waived ? " (conditions waived: indicative only)" : ""));
  detail("point: n=%ld d=%ld s=%ld o=%ld adversary=residual_aligned C_lambda_o=2 "
         "delta=0.1",
         found->n, found->d, found->s, found->o);
  detail("lambda_s=%.6g lambda_o=%.6g", r.params["lambda_s"].get<double>(),
         r.params["lambda_o"].get<double>());
  detail("coverage = %.4f (%ld/%ld), max C_cut = %ld, max C_cut/bound = %.3e",
         r.empirical_coverage, r.trials - r.failures, r.trials,
         r.params["max_c_cut"].get<long>(), r.params["max_ratio"].get<double>());
  detail("prerequisite failures: %s", r.params["prerequisite_failures"].dump().c_str());
  if (r.params["max_c_cut"].get<long>() == 0) {
    detail("note: every fit returned an empty support at this lambda_s, so the bound "
           "holds trivially");
  }
  return pass;
}

// ------------------------------------------------------------------------
// 7. Rate behavior.
bool criterion7() {
  const Stopwatch clock;
  ExperimentSpec o_sweep;
  o_sweep.axis = SweepAxis::kO;
  o_sweep.axis_values = {8, 16, 32, 64, 128};
  o_sweep.fixed.n = 2000;
  o_sweep.fixed.d = 100;
  o_sweep.fixed.s = 5;
  o_sweep.fixed.sigma = 1.0;
  o_sweep.fixed.adversary.kind = AdversaryKind::kResidualAligned;
  o_sweep.repetitions = 40;
  o_sweep.master_seed = derive_seed(kSeed, 7);
  o_sweep.c_lambda_o = 2.0;
  const ExperimentRecord o_record = run_experiment(o_sweep);

  const auto exponent = [](const ExperimentRecord& record, const std::string& method,
                           std::string* error) -> std::optional<double> {
    try {
      return fit_power_law(record, method).exponent;
    } catch (const std::invalid_argument& e) {
      *error = e.what();
      return std::nullopt;
    }
  };
  std::string error;
  const auto paper = exponent(o_record, "paper", &error);
  const bool a_pass = paper && *paper >= 0.6 && *paper <= 1.4;

  const auto summaries = summarize(o_record);
  const auto medians = [&](const std::string& method) {
    std::vector<std::pair<long, double>> out;
    for (const auto& s : summaries) {
      if (s.method == method) out.emplace_back(s.axis_value, s.median);
    }
    return out;
  };
  const auto paper_medians = medians("paper");
  bool b_pass = true;
  std::vector<std::string> b_lines;
  for (const std::string baseline : {"nguyen_tran", "plain_lasso"}) {
    std::string baseline_error;
    const auto e = exponent(o_record, baseline, &baseline_error);
    const bool smaller = paper && e && *e <= *paper - 0.25;
    bool larger = true;
    const auto base_medians = medians(baseline);
    for (std::size_t k = 0; k < base_medians.size(); ++k) {
      if (base_medians[k].first >= 32 &&
          !(base_medians[k].second > paper_medians[k].second)) {
        larger = false;
      }
    }
    b_pass = b_pass && (smaller || larger);
    char line[200];
    std::snprintf(line, sizeof(line),
                  "(b) %s exponent=%s, exponent smaller by >= 0.25: %s, medians "
                  "larger at o >= 32: %s",
                  baseline.c_str(), e ? short_number(*e).c_str() : "n/a",
                  smaller ? "yes" : "no", larger ? "yes" : "no");
    b_lines.push_back(line);
  }

  ExperimentSpec n_sweep;
  n_sweep.axis = SweepAxis::kN;
  n_sweep.axis_values = {250, 500, 1000, 2000, 4000};
  n_sweep.fixed.d = 100;
  n_sweep.fixed.s = 5;
  n_sweep.fixed.o = 0;
  n_sweep.fixed.sigma = 1.0;
  n_sweep.repetitions = 40;
  n_sweep.methods = {Method::kPaper};
  n_sweep.master_seed = derive_seed(kSeed, 77);
  n_sweep.c_lambda_o = 2.0;
  const ExperimentRecord n_record = run_experiment(n_sweep);
  const auto n_exponent = exponent(n_record, "paper", &error);
  const bool c_pass = n_exponent && *n_exponent >= -0.65 && *n_exponent <= -0.35;
  const double elapsed = clock.seconds();

  const bool pass = a_pass && b_pass && c_pass && elapsed < 1200.0;
  report(7, pass, "rate behavior of median error_sigma (o-sweep and n-sweep)");
  for (const std::string method : {"paper", "nguyen_tran", "plain_lasso"}) {
    std::string line = method + " medians:";
    long zero_fits = 0;
    long cells = 0;
    for (const auto& row : o_record.rows) {
      if (row.method != method) continue;
      ++cells;
      if (row.support_f1 == 0.0) ++zero_fits;
    }
    for (const auto& [o, m] : medians(method)) {
      line += " o=" + std::to_string(o) + ":" + short_number(m);
    }
    line += "  (fits with empty support: " + std::to_string(zero_fits) + "/" +
            std::to_string(cells) + ")";
    detail("%s", line.c_str());
  }
  detail("(a) method paper: o-exponent = %s (required in [0.6, 1.4])",
         paper ? short_number(*paper).c_str() : error.c_str());
  for (const auto& line : b_lines) detail("%s", line.c_str());
  std::string n_line = "(c) o=0 n-sweep medians:";
  for (const auto& s : summarize(n_record)) {
    n_line += " n=" + std::to_string(s.axis_value) + ":" +
              short_number(s.median);
  }
  detail("%s", n_line.c_str());
  detail("(c) method paper: n-exponent = %s (required in [-0.65, -0.35])",
         n_exponent ? short_number(*n_exponent).c_str() : "n/a");
  detail("runtime = %.1f s (limit 1200 s)", elapsed);
  return pass;
}

// ------------------------------------------------------------------------
// 8. Determinism and I/O.
bool criterion8(const std::filesystem::path& work) {
  std::filesystem::create_directories(work);
  ExperimentSpec spec;
  spec.axis = SweepAxis::kO;
  spec.axis_values = {4, 8, 16};
  spec.fixed.n = 300;
  spec.fixed.d = 20;
  spec.fixed.s = 3;
  spec.fixed.adversary.kind = AdversaryKind::kSignFlipLarge;
  spec.repetitions = 2;
  spec.master_seed = derive_seed(kSeed, 8);
  const ExperimentRecord first = run_experiment(spec);
  const ExperimentRecord second = run_experiment(spec);
  emit_csv(first, (work / "first.csv").string());
  emit_csv(second, (work / "second.csv").string());
  emit_plot(first, (work / "first.svg").string());
  emit_plot(second, (work / "second.svg").string());
  const bool csv_same = read_text_file((work / "first.csv").string()) ==
                        read_text_file((work / "second.csv").string());
  const bool svg_same = read_text_file((work / "first.svg").string()) ==
                        read_text_file((work / "second.svg").string());
  const ExperimentRecord parsed =
      parse_experiment_csv(read_text_file((work / "first.csv").string()));
  const bool csv_round_trip = experiment_csv(parsed) == experiment_csv(first);

  int io_failures = 0;
  int io_cases = 0;
  for (int k = 0; k < 5; ++k) {
    InstanceSpec inst_spec;
    inst_spec.n = 80 + 10 * k;
    inst_spec.d = 7;
    inst_spec.s = 2;
    inst_spec.adversary.kind = adversary_cycle(k);
    inst_spec.o = inst_spec.adversary.kind == AdversaryKind::kNone ? 0 : 6;
    if (k % 2 == 1) inst_spec.covariance = {CovarianceKind::kEquicorrelated, 0.3, {}};
    inst_spec.seed = derive_seed(kSeed, 80 + static_cast<std::uint64_t>(k));
    const ProblemInstance inst = generate_instance(inst_spec);
    const auto dir = work / ("instance_" + std::to_string(k));
    std::filesystem::remove_all(dir);
    write_instance_directory(inst, inst_spec, dir.string());
    const LoadedInstance loaded = read_instance_directory(dir.string());
    const ProblemInstance& back = loaded.instance;
    ++io_cases;
    const bool same = back.X == inst.X && back.y == inst.y &&
                      back.y_clean == inst.y_clean && back.beta_star == inst.beta_star &&
                      back.theta_star == inst.theta_star && back.xi == inst.xi &&
                      back.sigma == inst.sigma && back.sigma_matrix == inst.sigma_matrix &&
                      back.outlier_index == inst.outlier_index && loaded.spec &&
                      to_json(*loaded.spec) == to_json(inst_spec);
    if (!same) ++io_failures;
  }
  const bool pass = csv_same && svg_same && csv_round_trip && io_failures == 0;
  report(8, pass, "determinism of CSV/SVG and lossless instance round trip");
  detail("identical CSV bytes: %s, identical SVG bytes: %s, CSV parse round trip: %s",
         csv_same ? "yes" : "no", svg_same ? "yes" : "no",
         csv_round_trip ? "yes" : "no");
  detail("instance directories round-tripped exactly: %d/%d", io_cases - io_failures,
         io_cases);
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rlasso acceptance suite"};
  int criterion = 0;
  std::string work_dir =
      (std::filesystem::temp_directory_path() / "rlasso_acceptance").string();
  app.add_option("--criterion", criterion, "Criterion to run (1-8; 0 = all)")
      ->check(CLI::Range(0, 8));
  app.add_option("--work-dir", work_dir, "Scratch directory for file checks");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<bool()>> criteria = {
      criterion1, criterion2, criterion3, criterion4, criterion5, criterion6,
      criterion7, [&] { return criterion8(work_dir); }};
  bool all = true;
  for (int k = 1; k <= 8; ++k) {
    if (criterion != 0 && criterion != k) continue;
    try {
      all = criteria[static_cast<std::size_t>(k - 1)]() && all;
    } catch (const std::exception& e) {
      report(k, false, std::string("exception: ") + e.what());
      all = false;
    }
  }
  return all ? 0 : 1;
}

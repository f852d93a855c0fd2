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

// Monte Carlo checks of the probabilistic ingredients behind the error
// bound: Gaussian widths, uniform lower/upper bounds for Gaussian designs,
// noise concentration, the transfer principle, the C_cut bound, and a
// heuristic restricted-eigenvalue estimate.
//
// Statements that hold "for all v (and u)" are probed on a finite,
// seed-reproducible family; a trial fails when any probe violates the
// inequality. Sampling can refute these statements but never prove them.
//
// Probe family for a design Z (n x d):
//   * `random_probes` dense Gaussian directions v;
//   * the same number of sparse Gaussian v, alternating support sizes 1
//     and s;
//   * every coordinate vector e_j;
//   * the right singular vector of Z with the smallest singular value;
//   * optionally v = beta* - beta_hat from a Huber fit on (Z, Z beta* + xi).
// For the bilinear bound each v is paired with m-sparse u for every m in
// `sparsity_levels`: u equal to Zv / sqrt(n) on its m largest entries, and
// u equal to the signs of those entries.
// For the transfer principle each v is paired with u = 0, a dense Gaussian
// u, a sparse Gaussian u, and the designed hard probe u = -Zv / sqrt(n);
// u alone (v = 0) is probed as well.

#ifndef RLASSO_VERIFY_H_
#define RLASSO_VERIFY_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rlasso/core.h"
#include "rlasso/random.h"
#include "rlasso/simulate.h"
#include "rlasso/tuning.h"

namespace rlasso {

// Half-width of the 95% Wilson score interval (z = 1.96) for a proportion p
// observed over `trials` Bernoulli draws.
double wilson_halfwidth(double p, long trials, double z = 1.96);

struct CoverageRecord {
  std::string inequality_id;
  long trials = 0;
  long failures = 0;
  double nominal_level = 0.0;
  double empirical_coverage = 0.0;
  double wilson_halfwidth = 0.0;
  // Parameter echo and diagnostics (for example hard-probe failure counts).
  nlohmann::json params = nlohmann::json::object();

  // empirical_coverage >= nominal_level - wilson_halfwidth.
  bool passed() const;
};

CoverageRecord make_coverage_record(std::string id, long trials, long failures,
                                    double nominal_level, nlohmann::json params);

struct WidthEstimate {
  std::string set_id;  // "sigma_l1_ball" or "l1_l2_intersection"
  long trials = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  // sqrt(2 rho^2 log d) for the Sigma-ball; ||u||_1 sqrt(2 log n) for the
  // intersection.
  double bound = 0.0;
  // 4 sqrt(e) sqrt(m) sqrt(4 + log(n / m)) ||u||_2 with m = ||u||_0; only
  // for the intersection.
  std::optional<double> sparse_bound;
};

// sup over x in B_1^d of <g, Sigma^{1/2} x> = ||Sigma^{1/2} g||_inf.
WidthEstimate estimate_width_sigma_ball(const Matrix& sigma_matrix, long trials,
                                        Rng& rng);

// sup <g, x> over ||x||_1 <= a, ||x||_2 <= b, computed exactly by sorting
// |g| and solving for the soft-threshold level on the active piece.
double l1l2_support(const Vector& g, double a, double b);

WidthEstimate estimate_width_l1l2(const Vector& u, long trials, Rng& rng);

struct VerifyParams {
  long n = 1000;
  long d = 30;
  long s = 5;
  double delta = 0.1;
  double sigma = 1.0;
  CovarianceSpec covariance;
  // lambda_o for the Bernstein check; empty means
  // 2 sqrt(2 sigma^2 log(n / delta) / n).
  std::optional<double> lambda_o;
  int random_probes = 10;
  // m values for the bilinear bound; empty means {1, s, n / 10, n}.
  std::vector<long> sparsity_levels;
  // Adds the v = beta* - beta_hat probe (one Huber fit per trial).
  bool fit_probe = false;

  nlohmann::json to_json() const;
};

// One of: noise_supnorm, xtxi_supnorm, bernstein_z, chisq, prop3, prop4.
// Each trial draws fresh data from derive_seed(rng(), trial). Preconditions
// that fail raise std::invalid_argument naming the condition.
CoverageRecord verify_inequality(std::string_view id, const VerifyParams& params,
                                 long trials, Rng& rng);

// Transfer principle with c1 = C_{n,delta} (alpha = 1/2),
// c2 = 3.6 sqrt(2 rho^2 log d / n), c3 = 2.4 sqrt(2 log n / n).
// params.params["hard_probe_failures"] counts the u = -Zv / sqrt(n) probes
// that failed (they are also counted in `failures`).
CoverageRecord verify_atp(const VerifyParams& params, long trials, Rng& rng);

// #{i not in I_o : |r_i(beta_hat)| > 1}. Requires ground truth.
int measure_c_cut(const ProblemInstance& instance, const FitResult& fit,
                  double lambda_o);

// (2 C_r / lambda_o^2)(sqrt(2 sigma^2) g(n - o) + sqrt(o) lambda_o g(o)
//   + sqrt(s) c_kappa lambda_s) ||Sigma^{1/2}(beta* - beta_hat)||_2,
// with every constant taken from `bundle`.
double c_cut_bound(const TuningBundle& bundle, const FitResult& fit,
                   const ProblemInstance& instance);

// Coverage of C_cut <= c_cut_bound at one parameter point: every trial draws
// an instance from `point` with seed derive_seed(seed, trial), tunes it with
// paper_tuning(inputs) (n, d, s, o and sigma taken from `point`), and fits
// the Huber Lasso. The nominal level is 0.95. params records the tuning, the
// maximum ratio C_cut / bound, and "prerequisite_failures" (names from
// c_cut_prerequisite_failures); a nonempty list means the conditions were
// waived and the record is only indicative.
CoverageRecord verify_c_cut(const InstanceSpec& point, TuningInputs inputs,
                            long trials, std::uint64_t seed);

// Heuristic estimate of the RE constant: the minimum of
// ||Sigma^{1/2} v||_2 / ||v_J||_2 over sampled cone vectors
// (||v_{J^c}||_1 <= c0 ||v_J||_1, |J| <= s), refined by a local random
// search when d <= 8 and s <= 2. Sampling can only overestimate the true
// minimum, so the result is an upper bound on kappa.
double estimate_re_kappa(const Matrix& sigma_matrix, long s, double c0,
                         long samples, Rng& rng);

// The concentration grid: every id in {noise_supnorm, xtxi_supnorm, chisq,
// bernstein_z} at every n in `ns` and delta in `deltas`.
std::vector<CoverageRecord> run_concentration_suite(
    const std::vector<long>& ns, const std::vector<double>& deltas, long d,
    long trials, std::uint64_t seed);

std::string coverage_csv_header();
std::string coverage_csv_row(const CoverageRecord& record);
std::string width_csv_header();
std::string width_csv_row(const WidthEstimate& estimate);

}  // namespace rlasso

#endif  // RLASSO_VERIFY_H_

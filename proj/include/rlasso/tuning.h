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

// Closed-form tuning constants and feasibility conditions for the extended
// Lasso, plus the classical baseline tuning it is compared against.
//
// Everything here is a pure function of (n, d, s, o, delta, sigma, rho) and a
// handful of numerical constants; no data is touched.

#ifndef RLASSO_TUNING_H_
#define RLASSO_TUNING_H_

#include <optional>
#include <string>
#include <vector>

#include "rlasso/core.h"

namespace rlasso {

// Rate ingredients of r_{n,d,s,o} = sqrt(s log d / n)
//                                  + (o / n) sqrt(log(n / o) log n).
struct RateConstants {
  double r1 = 0.0;   // sqrt(s log d / n)
  double r21 = 0.0;  // sqrt((o / n) log(n / o))
  double r22 = 0.0;  // sqrt((o / n) log n)
  double r2 = 0.0;   // r21 * r22
  double r_total = 0.0;
  double eta_delta = 0.0;  // sqrt(log(n / delta) / log n)
  // sqrt((4 + log(n / o)) / log(n / o)); absent when o = 0.
  std::optional<double> eta_4;
};

// Requires n >= 3, d >= 3, 1 <= s <= d, 0 <= o < n and delta in (0, 1].
// delta = 1 is admitted because eta_delta = 1 there is a useful limit.
RateConstants rate_constants(long n, long d, long s, long o, double delta);

struct TuningInputs {
  long n = 0;
  long d = 0;
  long s = 1;
  long o = 0;
  double delta = 0.1;
  double sigma = 1.0;
  double rho = 1.0;
  // Empty means default_c_lambda_o().
  std::optional<double> c_lambda_o;
  double kappa = 1.0;
  double c0 = 5.0;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

// Every computable constant for one parameter point.
struct TuningBundle {
  TuningInputs inputs;
  double lambda_o = 0.0;
  double lambda_s = 0.0;
  double c_lambda_o = 0.0;
  double c_z = 0.0;
  double g1 = 0.0;
  double g2_o = 0.0;  // g2(o); 0 when o = 0
  double g_o = 0.0;   // g(o) = g1 + g2(o); 0 when o = 0
  double c_lambda_s = 0.0;
  double a1 = 0.0;
  double b1 = 0.0;
  double c_n_delta = 0.0;
  double nu_e = 0.0;
  double c_kappa = 0.0;
  double c_r = 0.0;
  double eta_bar_4 = 0.0;
  double c_gt = 0.0;
  RateConstants rates;
};

// Numerical building blocks, exposed for tests and for the verify module.
double g1_value(long n, long s, long d, double delta, double rho,
                double c_kappa);
// 4.8 sqrt(e) sqrt(m / n) sqrt(4 + log(n / m)); requires 1 <= m <= n.
double g2_value(long m, long n);
// g(m) = g1 + g2(m); requires 1 <= m <= n.
double g_function(long m, long n, long s, long d, double delta, double rho,
                  double c_kappa);
double a1_value(long n, double delta);
double b1_value(long n, double delta);
// sqrt(a1^2 + b1 + alpha^2) - sqrt(2 (b1 + alpha^2)), alpha = 1/2 by default.
double c_n_delta_value(double a1, double b1, double alpha = 0.5);
// The constant bound on eta_4, from C_on = (19.2 sqrt(12.5))^2 log 100 / C_bar
// with C_bar = (sqrt 5 - sqrt 2) / 2.
double eta_bar_4();
double c_gt_value(double c_lambda_o);
// Smallest C >= 2 with c_gt_value(C) > 0, by bisection.
double default_c_lambda_o();

struct TuningResult {
  PenaltyPair penalties;
  TuningBundle bundle;
};

// lambda_o = C_lo sqrt(2 sigma^2 log(n / delta) / n) first, then C_z (which
// depends on lambda_o), g(o), C_ls and finally lambda_s = (4 sqrt 2 / sqrt 3)
// C_ls lambda_o.
TuningResult paper_tuning(const TuningInputs& inputs);

// Recomputes every bundle constant for externally chosen penalties (for
// example the baseline tuning) so conditions can be evaluated for them.
TuningBundle evaluate_constants(const TuningInputs& inputs,
                                const PenaltyPair& penalties);

// lambda_o = 2 sqrt(2 sigma^2 log n / n),
// lambda_s = (2 / gamma) sqrt(2 sigma^2 rho^2 log d / n) (1 + sqrt(2 log d / n)).
// gamma must lie in (0, 1]. sigma = 0 gives lambda_o = 0, which the caller
// must treat as degenerate (PenaltyPair::is_positive() is false).
PenaltyPair nguyen_tran_tuning(long n, long d, double sigma, double rho,
                               double gamma = 1.0);

struct ConditionCheck {
  std::string name;
  std::string relation;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
};

struct ConditionReport {
  ConditionCheck c1;  // delta in (0, 1/7] and n >= 100 (lhs = delta)
  ConditionCheck c2;  // sqrt(log(d / delta) / n) <= sqrt 3 - sqrt 2
  ConditionCheck c3;  // 2 sqrt(n log(1/delta)) + 2 log(1/delta) <= n
  ConditionCheck c4;  // a1 > 3/4
  ConditionCheck c5;  // b1 < 1/4
  ConditionCheck cond_iso;
  ConditionCheck cond0;
  ConditionCheck cond_cgt_positive;
  bool all_satisfied = false;

  std::vector<const ConditionCheck*> all() const;
};

ConditionReport condition_report(const TuningBundle& bundle);

struct Cond0Decomposition {
  double a1b1 = 0.0;  // s log d / n
  double a1b2 = 0.0;  // (log d / n) o lambda_o^2 / lambda_s^2
  double a2b1 = 0.0;  // (lambda_s^2 / lambda_o^2)(log n / n) s
  double a2b2 = 0.0;  // o log n / n
};

Cond0Decomposition cond0_decomposition(long n, long d, long s, long o,
                                       const PenaltyPair& penalties);

// Prerequisites of the C_cut bound: (c1)-(c3), lambda_s > C_ls lambda_o,
// the cone-ratio condition, C_lo > 1 and C_r > 0. Returns the names of the
// failing prerequisites (empty when all hold).
std::vector<std::string> c_cut_prerequisite_failures(
    const TuningBundle& bundle);

}  // namespace rlasso

#endif  // RLASSO_TUNING_H_

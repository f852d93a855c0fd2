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

// Solvers for the extended Lasso
//
//   min_{beta, theta} (1/2n)||y - X beta - sqrt(n) theta||^2
//                     + lambda_s ||beta||_1 + lambda_o ||theta||_1
//
// and for its theta-eliminated form, the l1-penalized Huber problem
//
//   L(beta) = lambda_o^2 sum_i H((y_i - X_i^T beta) / (lambda_o sqrt(n)))
//             + lambda_s ||beta||_1.
//
// Both reach the same beta-hat. The Huber route is the primary solver
// (accelerated proximal gradient); the alternating route exists to check the
// equivalence numerically.

#ifndef RLASSO_SOLVER_H_
#define RLASSO_SOLVER_H_

#include <cstdint>
#include <vector>

#include "rlasso/core.h"

namespace rlasso {

enum class StepRule { kFixed, kBacktracking };

struct SolverConfig {
  int max_iterations = 10000;
  // Stall guard: the solve stops (unconverged unless the KKT test passes)
  // once the objective's relative decrease over `stall_window` iterations
  // drops below this.
  double tolerance = 1e-14;
  int stall_window = 100;
  // KKT slack, as a fraction of lambda_s.
  double kkt_relative = 1e-6;
  // The KKT test costs one extra gradient, so it runs every few iterations.
  int kkt_check_every = 5;
  StepRule step_rule = StepRule::kBacktracking;
  bool acceleration = true;
  int power_iterations = 50;
  std::uint64_t power_seed = 0x9e3779b97f4a7c15ULL;
  // Starting point for beta; empty means zero.
  Vector initial_beta;

  // Throws std::invalid_argument on nonsensical settings.
  void validate() const;
};

struct KktReport {
  // ||(lambda_o / sqrt(n)) sum_i X_i psi(r_i)||_inf
  double gradient_supnorm = 0.0;
  // max over j in support(beta) of
  //   |(lambda_o / sqrt(n)) sum_i X_ij psi(r_i) - lambda_s sign(beta_j)|
  double support_violation = 0.0;
  double tolerance = 0.0;
  bool satisfied = false;

  // max(gradient_supnorm - lambda_s, support_violation, 0).
  double residual(double lambda_s) const;
};

double objective_huber(const ProblemInstance& instance, const Vector& beta,
                       const PenaltyPair& penalties);

// Joint objective of the extended Lasso; theta in the sqrt(n)-normalized
// parameterization.
double objective_extended(const ProblemInstance& instance, const Vector& beta,
                          const Vector& theta, const PenaltyPair& penalties);

// (1/2n)||y - X beta||^2 + lambda_s ||beta||_1.
double objective_lasso(const Matrix& X, const Vector& y, const Vector& beta,
                       double lambda_s);

// Componentwise soft thresholding. Throws std::invalid_argument on a
// negative threshold.
Vector prox_l1(const Vector& v, double threshold);

// theta_i = soft((y_i - X_i^T beta) / sqrt(n), lambda_o), the exact
// minimizer over theta of the extended objective at fixed beta.
Vector theta_closed_form(const ProblemInstance& instance, const Vector& beta,
                         double lambda_o);

// Gradient of the smooth part lambda_o^2 sum_i H(r_i(beta)), which is
// -(lambda_o / sqrt(n)) sum_i X_i psi(r_i(beta)).
Vector huber_smooth_gradient(const ProblemInstance& instance,
                             const Vector& beta, double lambda_o);

double huber_smooth_value(const ProblemInstance& instance, const Vector& beta,
                          double lambda_o);

// Stationarity test for L(beta). `tolerance` is an absolute slack.
KktReport kkt_check(const ProblemInstance& instance, const Vector& beta_hat,
                    const PenaltyPair& penalties, double tolerance);

// Same test with the slack taken from `config` (kkt_relative * lambda_s).
KktReport kkt_check(const ProblemInstance& instance, const Vector& beta_hat,
                    const PenaltyPair& penalties, const SolverConfig& config);

// Accelerated proximal gradient with backtracking and objective-increase
// momentum restarts. `converged` means the KKT test passed.
FitResult solve_huber_lasso(const ProblemInstance& instance,
                            const PenaltyPair& penalties,
                            const SolverConfig& config = {});

// Alternating exact block minimization over beta (a Lasso solve) and theta
// (closed form).
FitResult solve_extended_lasso(const ProblemInstance& instance,
                               const PenaltyPair& penalties,
                               const SolverConfig& config = {});

struct LassoFit {
  Vector beta;
  std::vector<double> objective_trace;
  double kkt_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

LassoFit solve_plain_lasso(const Matrix& X, const Vector& y, double lambda_s,
                           const SolverConfig& config = {});

// Largest eigenvalue of X^T X / n by power iteration from a seeded start.
double lipschitz_estimate(const Matrix& X, int iterations, std::uint64_t seed);

}  // namespace rlasso

#endif  // RLASSO_SOLVER_H_

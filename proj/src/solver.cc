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

#include "rlasso/solver.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rlasso/random.h"

namespace rlasso {
namespace {

void require_dimensions(const ProblemInstance& instance, const Vector& beta) {
  if (instance.y.size() != instance.n()) {
    throw std::invalid_argument("solver: y length does not match X");
  }
  if (beta.size() != instance.d()) {
    throw std::invalid_argument("solver: beta has " +
                                std::to_string(beta.size()) +
                                " entries, expected " +
                                std::to_string(instance.d()));
  }
}

// Smooth part of the Huber objective, lambda_o^2 sum_i H(r_i(beta)).
class HuberSmooth {
 public:
  HuberSmooth(const ProblemInstance& instance, double lambda_o)
      : X_(instance.X),
        y_(instance.y),
        lambda_o_(lambda_o),
        scale_(lambda_o * std::sqrt(static_cast<double>(instance.n()))) {}

  double value(const Vector& beta) const {
    const Vector r = (y_ - X_ * beta) / scale_;
    double total = 0.0;
    for (Index i = 0; i < r.size(); ++i) total += huber_value(r(i));
    return lambda_o_ * lambda_o_ * total;
  }

  double value_and_gradient(const Vector& beta, Vector& gradient) const {
    const Vector r = (y_ - X_ * beta) / scale_;
    double total = 0.0;
    Vector psi(r.size());
    for (Index i = 0; i < r.size(); ++i) {
      total += huber_value(r(i));
      psi(i) = huber_psi(r(i));
    }
    // d/dbeta lambda_o^2 H(r_i) = -lambda_o^2 psi(r_i) X_i / scale.
    gradient = -(lambda_o_ * lambda_o_ / scale_) * (X_.transpose() * psi);
    return lambda_o_ * lambda_o_ * total;
  }

 private:
  const Matrix& X_;
  const Vector& y_;
  double lambda_o_;
  double scale_;
};

// Smooth part of the Lasso objective, (1/2n)||y - X beta||^2.
class LeastSquaresSmooth {
 public:
  LeastSquaresSmooth(const Matrix& X, const Vector& y)
      : X_(X), y_(y), inv_n_(1.0 / static_cast<double>(X.rows())) {}

  double value(const Vector& beta) const {
    return 0.5 * inv_n_ * (y_ - X_ * beta).squaredNorm();
  }

  double value_and_gradient(const Vector& beta, Vector& gradient) const {
    const Vector e = y_ - X_ * beta;
    gradient = -inv_n_ * (X_.transpose() * e);
    return 0.5 * inv_n_ * e.squaredNorm();
  }

 private:
  const Matrix& X_;
  const Vector& y_;
  double inv_n_;
};

// Stationarity of f(x) + lambda ||x||_1 from the gradient of f.
KktReport kkt_from_gradient(const Vector& x, const Vector& gradient,
                            double lambda, double tolerance) {
  KktReport report;
  report.tolerance = tolerance;
  report.gradient_supnorm = gradient.size() ? gradient.cwiseAbs().maxCoeff() : 0.0;
  for (Index j = 0; j < x.size(); ++j) {
    if (x(j) == 0.0) continue;
    const double sign = x(j) > 0.0 ? 1.0 : -1.0;
    // The negative gradient must equal lambda * sign(x_j) on the support.
    report.support_violation =
        std::max(report.support_violation, std::abs(-gradient(j) - lambda * sign));
  }
  report.satisfied = report.gradient_supnorm <= lambda + tolerance &&
                     report.support_violation <= tolerance;
  return report;
}

struct ProxResult {
  Vector x;
  std::vector<double> trace;
  KktReport kkt;
  int iterations = 0;
  bool converged = false;
};

// Accelerated proximal gradient on f(x) + lambda ||x||_1.
//
// Each step backtracks until the quadratic upper bound holds at the trial
// point. With acceleration, a trial point whose objective exceeds the current
// one discards the momentum (y = x, t = 1) and the step is redone from x; the
// plain proximal step from x never increases the objective, so the recorded
// trace is monotone.
template <typename Smooth>
ProxResult minimize_composite(const Smooth& smooth, Vector x, double lambda,
                              double lipschitz0, const SolverConfig& config) {
  const double kkt_slack = config.kkt_relative * lambda;
  const auto objective = [&](double f, const Vector& v) {
    return f + lambda * v.lpNorm<1>();
  };
  double lipschitz = lipschitz0 > 0.0 ? lipschitz0 : 1.0;
  if (config.step_rule == StepRule::kFixed) lipschitz *= 1.05;

  ProxResult result;
  Vector gradient;
  double fx = smooth.value_and_gradient(x, gradient);
  double current = objective(fx, x);
  result.trace.push_back(current);
  result.kkt = kkt_from_gradient(x, gradient, lambda, kkt_slack);
  if (result.kkt.satisfied) {
    result.x = std::move(x);
    result.converged = true;
    return result;
  }

  Vector y = x;
  double t = 1.0;
  Vector gy;
  for (int k = 1; k <= config.max_iterations; ++k) {
    result.iterations = k;
    bool restarted = false;
    bool accepted = false;
    Vector z;
    double fz = 0.0;
    while (true) {
      const double fy = smooth.value_and_gradient(y, gy);
      // Backtracking on the quadratic upper bound.
      while (true) {
        z = prox_l1(y - gy / lipschitz, lambda / lipschitz);
        fz = smooth.value(z);
        const Vector step = z - y;
        const double bound =
            fy + gy.dot(step) + 0.5 * lipschitz * step.squaredNorm();
        if (fz <= bound + 1e-15 * std::max(1.0, std::abs(fy))) break;
        lipschitz *= 2.0;
        if (!std::isfinite(lipschitz)) {
          throw std::runtime_error("solver: step size underflow");
        }
      }
      const double candidate = objective(fz, z);
      if (candidate <= current) {
        accepted = true;
        current = candidate;
        break;
      }
      if (restarted || !config.acceleration) break;
      // Objective went up: drop the momentum and retry from x.
      restarted = true;
      y = x;
      t = 1.0;
    }
    if (accepted) {
      if (config.acceleration && !restarted) {
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        y = z + ((t - 1.0) / t_next) * (z - x);
        t = t_next;
      } else {
        y = z;
        t = 1.0;
      }
      x = std::move(z);
    }
    result.trace.push_back(current);

    if (!accepted || k % config.kkt_check_every == 0) {
      smooth.value_and_gradient(x, gradient);
      result.kkt = kkt_from_gradient(x, gradient, lambda, kkt_slack);
      if (result.kkt.satisfied) {
        result.converged = true;
        break;
      }
    }
    // Stall: no measurable progress, either now or over the window.
    if (!accepted) break;
    if (k >= config.stall_window) {
      const double before = result.trace[result.trace.size() - 1 -
                                         static_cast<std::size_t>(config.stall_window)];
      if (before - current <= config.tolerance * std::max(1.0, std::abs(current))) {
        break;
      }
    }
  }
  if (!result.converged) {
    smooth.value_and_gradient(x, gradient);
    result.kkt = kkt_from_gradient(x, gradient, lambda, kkt_slack);
    result.converged = result.kkt.satisfied;
  }
  result.x = std::move(x);
  return result;
}

Vector starting_point(const SolverConfig& config, Index d) {
  if (config.initial_beta.size() == 0) return Vector::Zero(d);
  if (config.initial_beta.size() != d) {
    throw std::invalid_argument("solver: initial_beta has wrong length");
  }
  return config.initial_beta;
}

std::optional<int> count_cut(const ProblemInstance& instance,
                             const Vector& beta, double lambda_o) {
  if (!instance.has_truth()) return std::nullopt;
  const Vector r = residual_scaled(instance, beta, lambda_o);
  int count = 0;
  for (Index i = 0; i < r.size(); ++i) {
    if (instance.theta_star(i) == 0.0 && std::abs(r(i)) > 1.0) ++count;
  }
  return count;
}

LassoFit plain_lasso_with_lipschitz(const Matrix& X, const Vector& y,
                                    double lambda_s, double lipschitz,
                                    const SolverConfig& config) {
  LeastSquaresSmooth smooth(X, y);
  ProxResult run = minimize_composite(smooth, starting_point(config, X.cols()),
                                      lambda_s, lipschitz, config);
  LassoFit fit;
  fit.beta = std::move(run.x);
  fit.objective_trace = std::move(run.trace);
  fit.kkt_residual = run.kkt.residual(lambda_s);
  fit.iterations = run.iterations;
  fit.converged = run.converged;
  return fit;
}

}  // namespace

void SolverConfig::validate() const {
  if (max_iterations < 1) {
    throw std::invalid_argument("solver config: max_iterations must be >= 1");
  }
  if (!(tolerance > 0.0)) {
    throw std::invalid_argument("solver config: tolerance must be > 0");
  }
  if (!(kkt_relative >= 0.0)) {
    throw std::invalid_argument("solver config: kkt_relative must be >= 0");
  }
  if (stall_window < 1 || kkt_check_every < 1 || power_iterations < 1) {
    throw std::invalid_argument(
        "solver config: stall_window, kkt_check_every and power_iterations "
        "must be >= 1");
  }
}

double KktReport::residual(double lambda_s) const {
  return std::max({gradient_supnorm - lambda_s, support_violation, 0.0});
}

double objective_huber(const ProblemInstance& instance, const Vector& beta,
                       const PenaltyPair& penalties) {
  require_positive(penalties);
  require_dimensions(instance, beta);
  return huber_smooth_value(instance, beta, penalties.lambda_o) +
         penalties.lambda_s * beta.lpNorm<1>();
}

double objective_extended(const ProblemInstance& instance, const Vector& beta,
                          const Vector& theta, const PenaltyPair& penalties) {
  require_positive(penalties);
  require_dimensions(instance, beta);
  if (theta.size() != instance.n()) {
    throw std::invalid_argument("objective_extended: theta has wrong length");
  }
  const double n = static_cast<double>(instance.n());
  const Vector e = instance.y - instance.X * beta - std::sqrt(n) * theta;
  return 0.5 / n * e.squaredNorm() + penalties.lambda_s * beta.lpNorm<1>() +
         penalties.lambda_o * theta.lpNorm<1>();
}

double objective_lasso(const Matrix& X, const Vector& y, const Vector& beta,
                       double lambda_s) {
  if (y.size() != X.rows() || beta.size() != X.cols()) {
    throw std::invalid_argument("objective_lasso: dimension mismatch");
  }
  return LeastSquaresSmooth(X, y).value(beta) + lambda_s * beta.lpNorm<1>();
}

Vector prox_l1(const Vector& v, double threshold) {
  if (!(threshold >= 0.0)) {
    throw std::invalid_argument("prox_l1: threshold must be nonnegative");
  }
  Vector out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = soft_threshold(v(i), threshold);
  return out;
}

Vector theta_closed_form(const ProblemInstance& instance, const Vector& beta,
                         double lambda_o) {
  // soft(r_i * lambda_o, lambda_o) with r_i * lambda_o = (y_i - X_i beta)/sqrt(n).
  return prox_l1(residual_scaled(instance, beta, lambda_o) * lambda_o, lambda_o);
}

Vector huber_smooth_gradient(const ProblemInstance& instance,
                             const Vector& beta, double lambda_o) {
  require_dimensions(instance, beta);
  if (!(lambda_o > 0.0)) {
    throw std::invalid_argument("huber_smooth_gradient: lambda_o must be > 0");
  }
  Vector gradient;
  HuberSmooth(instance, lambda_o).value_and_gradient(beta, gradient);
  return gradient;
}

double huber_smooth_value(const ProblemInstance& instance, const Vector& beta,
                          double lambda_o) {
  require_dimensions(instance, beta);
  if (!(lambda_o > 0.0)) {
    throw std::invalid_argument("huber_smooth_value: lambda_o must be > 0");
  }
  return HuberSmooth(instance, lambda_o).value(beta);
}

KktReport kkt_check(const ProblemInstance& instance, const Vector& beta_hat,
                    const PenaltyPair& penalties, double tolerance) {
  require_positive(penalties);
  const Vector gradient =
      huber_smooth_gradient(instance, beta_hat, penalties.lambda_o);
  return kkt_from_gradient(beta_hat, gradient, penalties.lambda_s, tolerance);
}

KktReport kkt_check(const ProblemInstance& instance, const Vector& beta_hat,
                    const PenaltyPair& penalties, const SolverConfig& config) {
  return kkt_check(instance, beta_hat, penalties,
                   config.kkt_relative * penalties.lambda_s);
}

FitResult solve_huber_lasso(const ProblemInstance& instance,
                            const PenaltyPair& penalties,
                            const SolverConfig& config) {
  require_positive(penalties);
  config.validate();
  Vector start = starting_point(config, instance.d());
  require_dimensions(instance, start);

  const double lipschitz =
      lipschitz_estimate(instance.X, config.power_iterations, config.power_seed);
  HuberSmooth smooth(instance, penalties.lambda_o);
  ProxResult run = minimize_composite(smooth, std::move(start),
                                      penalties.lambda_s, lipschitz, config);

  FitResult fit;
  fit.beta_hat = std::move(run.x);
  fit.theta_hat = theta_closed_form(instance, fit.beta_hat, penalties.lambda_o);
  fit.objective_trace = std::move(run.trace);
  fit.kkt_residual = run.kkt.residual(penalties.lambda_s);
  fit.iterations = run.iterations;
  fit.converged = run.converged;
  fit.c_cut = count_cut(instance, fit.beta_hat, penalties.lambda_o);
  return fit;
}

FitResult solve_extended_lasso(const ProblemInstance& instance,
                               const PenaltyPair& penalties,
                               const SolverConfig& config) {
  require_positive(penalties);
  config.validate();
  Vector beta = starting_point(config, instance.d());
  require_dimensions(instance, beta);

  const double root_n = std::sqrt(static_cast<double>(instance.n()));
  const double lipschitz =
      lipschitz_estimate(instance.X, config.power_iterations, config.power_seed);
  // The inner solves run a little tighter than the outer test so that the
  // outer KKT test is limited by the alternation, not by the beta-steps.
  SolverConfig inner = config;
  inner.kkt_relative = 0.5 * config.kkt_relative;

  Vector theta = Vector::Zero(instance.n());
  FitResult fit;
  fit.objective_trace.push_back(
      objective_extended(instance, beta, theta, penalties));
  KktReport kkt = kkt_check(instance, beta, penalties, config);
  int outer = 0;
  bool converged = false;
  while (outer < config.max_iterations) {
    ++outer;
    inner.initial_beta = beta;
    const Vector target = instance.y - root_n * theta;
    LassoFit step = plain_lasso_with_lipschitz(instance.X, target,
                                               penalties.lambda_s, lipschitz, inner);
    beta = std::move(step.beta);
    theta = theta_closed_form(instance, beta, penalties.lambda_o);
    const double current = objective_extended(instance, beta, theta, penalties);
    fit.objective_trace.push_back(current);

    // At theta = theta(beta) the Lasso gradient equals the Huber gradient,
    // so the joint optimum is exactly the Huber stationary point.
    kkt = kkt_check(instance, beta, penalties, config);
    if (kkt.satisfied) {
      converged = true;
      break;
    }
    const auto size = fit.objective_trace.size();
    if (outer >= config.stall_window) {
      const double before =
          fit.objective_trace[size - 1 - static_cast<std::size_t>(config.stall_window)];
      if (before - current <= config.tolerance * std::max(1.0, std::abs(current))) {
        break;
      }
    }
  }

  fit.beta_hat = std::move(beta);
  fit.theta_hat = std::move(theta);
  fit.kkt_residual = kkt.residual(penalties.lambda_s);
  fit.iterations = outer;
  fit.converged = converged || kkt.satisfied;
  fit.c_cut = count_cut(instance, fit.beta_hat, penalties.lambda_o);
  return fit;
}

LassoFit solve_plain_lasso(const Matrix& X, const Vector& y, double lambda_s,
                           const SolverConfig& config) {
  if (!(lambda_s > 0.0) || !std::isfinite(lambda_s)) {
    throw std::invalid_argument("solve_plain_lasso: lambda_s must be > 0");
  }
  if (y.size() != X.rows()) {
    throw std::invalid_argument("solve_plain_lasso: y length does not match X");
  }
  config.validate();
  const double lipschitz =
      lipschitz_estimate(X, config.power_iterations, config.power_seed);
  return plain_lasso_with_lipschitz(X, y, lambda_s, lipschitz, config);
}

double lipschitz_estimate(const Matrix& X, int iterations, std::uint64_t seed) {
  if (X.size() == 0) return 0.0;
  const double n = static_cast<double>(X.rows());
  Rng rng(seed);
  Vector v = rng.normal_vector(X.cols());
  v.normalize();
  double estimate = 0.0;
  for (int k = 0; k < iterations; ++k) {
    const Vector w = X.transpose() * (X * v) / n;
    estimate = v.dot(w);
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
  }
  return estimate;
}

}  // namespace rlasso

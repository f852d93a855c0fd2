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

#include "rlasso/core.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rlasso {
namespace {

void require_finite(double t, const char* what) {
  if (!std::isfinite(t)) {
    throw std::domain_error(std::string(what) + ": non-finite argument");
  }
}

}  // namespace

double huber_value(double t) {
  require_finite(t, "huber_value");
  const double a = std::abs(t);
  return a <= 1.0 ? 0.5 * t * t : a - 0.5;
}

double huber_psi(double t) {
  require_finite(t, "huber_psi");
  return std::clamp(t, -1.0, 1.0);
}

double soft_threshold(double v, double threshold) {
  if (v > threshold) return v - threshold;
  if (v < -threshold) return v + threshold;
  return 0.0;
}

std::string_view provenance_name(Provenance p) {
  switch (p) {
    case Provenance::kPaperRecipe:
      return "paper_recipe";
    case Provenance::kNguyenTran:
      return "nguyen_tran";
    case Provenance::kManual:
      return "manual";
  }
  return "manual";
}

void require_positive(const PenaltyPair& penalties) {
  if (!(penalties.lambda_s > 0.0) || !(penalties.lambda_o > 0.0) ||
      !std::isfinite(penalties.lambda_s) ||
      !std::isfinite(penalties.lambda_o)) {
    throw std::invalid_argument(
        "penalties must be strictly positive and finite (lambda_s=" +
        std::to_string(penalties.lambda_s) +
        ", lambda_o=" + std::to_string(penalties.lambda_o) + ")");
  }
}

double ProblemInstance::rho_squared() const {
  if (sigma_matrix.size() == 0) return 1.0;
  return sigma_matrix.diagonal().maxCoeff();
}

double ProblemInstance::sigma_norm(const Vector& v) const {
  if (sigma_root.size() == 0) return v.norm();
  return (sigma_root * v).norm();
}

void ProblemInstance::validate() const {
  const Index rows = n();
  const Index cols = d();
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("instance: empty design matrix");
  }
  if (y.size() != rows) {
    throw std::invalid_argument("instance: y has " + std::to_string(y.size()) +
                                " entries, expected " + std::to_string(rows));
  }
  if (sigma_matrix.size() != 0) {
    if (sigma_matrix.rows() != cols || sigma_matrix.cols() != cols) {
      throw std::invalid_argument("instance: covariance has wrong shape");
    }
    const double scale = std::max(1.0, sigma_matrix.cwiseAbs().maxCoeff());
    if ((sigma_matrix - sigma_matrix.transpose()).cwiseAbs().maxCoeff() >
        1e-12 * scale) {
      throw std::invalid_argument("instance: covariance is not symmetric");
    }
    if (!(rho_squared() > 0.0)) {
      throw std::invalid_argument("instance: covariance has zero diagonal");
    }
  }
  if (!has_truth()) return;
  if (xi.size() != rows || y_clean.size() != rows) {
    throw std::invalid_argument("instance: truth vectors have wrong length");
  }
  const double root_n = std::sqrt(static_cast<double>(rows));
  const Vector rebuilt = X * beta_star + root_n * theta_star + xi;
  const double scale = std::max(1.0, y.cwiseAbs().maxCoeff());
  if ((rebuilt - y).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument(
        "instance: y != X beta* + sqrt(n) theta* + xi");
  }
  for (Index i : outlier_index) {
    if (i < 0 || i >= rows || theta_star(i) == 0.0) {
      throw std::invalid_argument("instance: outlier index inconsistent");
    }
  }
  const auto nonzero = static_cast<std::size_t>((theta_star.array() != 0.0).count());
  if (nonzero != outlier_index.size()) {
    throw std::invalid_argument("instance: outlier index inconsistent");
  }
}

Vector residual_scaled(const ProblemInstance& instance, const Vector& beta,
                       double lambda_o) {
  if (!(lambda_o > 0.0)) {
    throw std::invalid_argument("residual_scaled: lambda_o must be positive");
  }
  if (beta.size() != instance.d() || instance.y.size() != instance.n()) {
    throw std::invalid_argument("residual_scaled: dimension mismatch");
  }
  const double scale =
      lambda_o * std::sqrt(static_cast<double>(instance.n()));
  return (instance.y - instance.X * beta) / scale;
}

}  // namespace rlasso

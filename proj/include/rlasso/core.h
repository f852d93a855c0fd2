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

#ifndef RLASSO_CORE_H_
#define RLASSO_CORE_H_

#include <Eigen/Dense>

#include <optional>
#include <string_view>
#include <vector>

namespace rlasso {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Huber loss with unit threshold:
//   H(t) = t^2 / 2        for |t| <= 1
//   H(t) = |t| - 1 / 2    for |t| >  1
// The scale of the problem is carried by the residual normalization
// lambda_o * sqrt(n), never by H itself. Both functions throw
// std::domain_error on non-finite input.
double huber_value(double t);

// psi = H' = clamp(t, -1, 1).
double huber_psi(double t);

// sign(v) * max(|v| - threshold, 0); an input exactly at the threshold maps
// to 0.
double soft_threshold(double v, double threshold);

// A (possibly contaminated) regression problem together with whatever ground
// truth generated it:
//
//   y = X * beta_star + sqrt(n) * theta_star + xi
//
// Instances loaded from files without a truth block leave the truth vectors
// empty.
struct ProblemInstance {
  Matrix X;
  Vector y_clean;
  Vector y;
  Vector beta_star;
  Vector theta_star;
  Vector xi;
  double sigma = 0.0;
  // Covariance of the rows of X and a symmetric square root of it.
  Matrix sigma_matrix;
  Matrix sigma_root;
  // Sorted indices i with theta_star(i) != 0.
  std::vector<Index> outlier_index;

  Index n() const { return X.rows(); }
  Index d() const { return X.cols(); }
  bool has_truth() const {
    return beta_star.size() == d() && theta_star.size() == n();
  }

  // rho^2 = max_i Sigma_ii.
  double rho_squared() const;

  // ||Sigma^{1/2} v||_2, falling back to ||v||_2 when no covariance is known.
  double sigma_norm(const Vector& v) const;

  // Throws std::invalid_argument when the shapes disagree, Sigma is not
  // symmetric, or the generative identity is violated beyond 1e-12 relative.
  void validate() const;
};

enum class Provenance { kPaperRecipe, kNguyenTran, kManual };

std::string_view provenance_name(Provenance p);

struct PenaltyPair {
  double lambda_s = 0.0;
  double lambda_o = 0.0;
  Provenance provenance = Provenance::kManual;

  bool is_positive() const { return lambda_s > 0.0 && lambda_o > 0.0; }
};

// Throws std::invalid_argument unless both penalties are strictly positive
// and finite.
void require_positive(const PenaltyPair& penalties);

struct FitResult {
  Vector beta_hat;
  // sqrt(n)-normalized contamination estimate, i.e. the theta of
  // (1/2n)||y - X beta - sqrt(n) theta||^2 + lambda_s|beta|_1 + lambda_o|theta|_1.
  Vector theta_hat;
  std::vector<double> objective_trace;
  double kkt_residual = 0.0;
  int iterations = 0;
  bool converged = false;
  // Number of uncontaminated rows whose scaled residual exceeds 1. Filled
  // only when the instance carries ground truth.
  std::optional<int> c_cut;
};

// r_i(beta) = (y_i - X_i^T beta) / (lambda_o * sqrt(n)).
Vector residual_scaled(const ProblemInstance& instance, const Vector& beta,
                       double lambda_o);

}  // namespace rlasso

#endif  // RLASSO_CORE_H_

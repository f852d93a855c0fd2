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

// Synthetic data for the contaminated sparse regression model
//
//   y = X beta* + sqrt(n) theta* + xi,   X_i ~ N(0, Sigma),  xi_i ~ N(0, sigma^2)
//
// with an s-sparse beta* and an o-sparse theta* chosen by an adversary that
// sees the realized (X, xi, beta*).
//
// generate_instance draws from a single Rng seeded with spec.seed, in this
// order: the standard normals behind X (row by row), the noise xi, the
// support of beta* (partial Fisher-Yates) followed by its signs, and finally
// whatever the adversary consumes.

#ifndef RLASSO_SIMULATE_H_
#define RLASSO_SIMULATE_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"
#include "rlasso/core.h"
#include "rlasso/random.h"

namespace rlasso {

enum class CovarianceKind { kIdentity, kEquicorrelated, kToeplitz, kExplicit };

struct CovarianceSpec {
  CovarianceKind kind = CovarianceKind::kIdentity;
  // Correlation parameter r for the equicorrelated and Toeplitz families.
  double r = 0.0;
  // Used only for kExplicit.
  Matrix explicit_matrix;
};

enum class AdversaryKind {
  kNone,
  kObliviousConstant,
  kSignFlipLarge,
  kResidualAligned,
  kLeverageTargeted,
};

struct AdversarySpec {
  AdversaryKind kind = AdversaryKind::kNone;
  // The constant c for kObliviousConstant, the scale for kResidualAligned and
  // kLeverageTargeted; unused otherwise.
  double parameter = 1.0;
};

struct InstanceSpec {
  long n = 100;
  long d = 10;
  long s = 2;
  long o = 0;
  double sigma = 1.0;
  CovarianceSpec covariance;
  double beta_magnitude = 1.0;
  AdversarySpec adversary;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

std::string_view covariance_kind_name(CovarianceKind kind);
CovarianceKind parse_covariance_kind(std::string_view name);
std::string_view adversary_kind_name(AdversaryKind kind);
AdversaryKind parse_adversary_kind(std::string_view name);

nlohmann::json to_json(const InstanceSpec& spec);
// Missing keys keep their defaults; unknown enum names throw
// std::invalid_argument.
InstanceSpec instance_spec_from_json(const nlohmann::json& j);

// Sigma for the requested family:
//   equicorrelated  Sigma_ij = r + (1 - r) 1{i = j}
//   Toeplitz        Sigma_ij = r^|i - j|
Matrix covariance_matrix(const CovarianceSpec& spec, Index d);

// Symmetric PSD square root. Coordinates with a zero diagonal entry map to
// exactly zero rows and columns of the root. Throws std::invalid_argument
// when Sigma is not symmetric PSD.
Matrix covariance_root(const Matrix& sigma_matrix);

// Rows i.i.d. N(0, Sigma): standard normals (drawn row by row) times the
// symmetric root.
Matrix sample_gaussian_matrix(Index n, const Matrix& sigma_matrix, Rng& rng);
Matrix sample_gaussian_matrix_from_root(Index n, const Matrix& sigma_root,
                                        Rng& rng);

// theta* for the given strategy. Selections by magnitude break ties by
// descending value, then ascending index.
//   oblivious_constant(c)  o uniformly random rows set to c
//   sign_flip_large        theta_i = -2 (X_i beta* + xi_i) / sqrt(n) on o
//                          uniformly random rows, so y_i = -y_clean_i
//   residual_aligned(a)    theta_i = a sign(xi_i) max_k |y_clean_k| / sqrt(n)
//                          on the o rows with the largest |xi_i|
//   leverage_targeted(a)   theta_i = -a X_i beta* / sqrt(n) on the o rows
//                          with the largest ||X_i||_2
Vector adversary_theta(const AdversarySpec& adversary, const Matrix& X,
                       const Vector& xi, const Vector& beta_star, long o,
                       Rng& rng);

ProblemInstance generate_instance(const InstanceSpec& spec);

// First k entries of a partial Fisher-Yates shuffle of 0..size-1.
std::vector<Index> sample_without_replacement(Index size, Index k, Rng& rng);

// Instance directory:
//   X.csv      n rows of d comma-separated values, no header
//   y.csv      header "y,y_clean", one row per sample
//   truth.csv  header "vector,index,value"; vector is beta_star, theta_star
//              or xi (optional)
//   meta.json  {"spec": ..., "seed": ..., "sigma": ..., "sigma_matrix": ...,
//               "outlier_index": [...]}
// Values are written with 17 significant digits, so a round trip is exact.
void write_instance_directory(const ProblemInstance& instance,
                              const InstanceSpec& spec,
                              const std::string& directory);

struct LoadedInstance {
  ProblemInstance instance;
  // Present when meta.json carried a spec.
  std::optional<InstanceSpec> spec;
};

LoadedInstance read_instance_directory(const std::string& directory);

}  // namespace rlasso

#endif  // RLASSO_SIMULATE_H_

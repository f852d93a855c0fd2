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

#include "rlasso/simulate.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rlasso {
namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

// Indices of the k largest keys; ties go to the smaller index.
std::vector<Index> top_k(const Vector& keys, Index k) {
  std::vector<Index> order(static_cast<std::size_t>(keys.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return keys(a) > keys(b);
  });
  order.resize(static_cast<std::size_t>(k));
  return order;
}

double sign_nonzero(double v) { return v < 0.0 ? -1.0 : 1.0; }

}  // namespace

std::string_view covariance_kind_name(CovarianceKind kind) {
  switch (kind) {
    case CovarianceKind::kIdentity:
      return "identity";
    case CovarianceKind::kEquicorrelated:
      return "equicorrelated";
    case CovarianceKind::kToeplitz:
      return "toeplitz";
    case CovarianceKind::kExplicit:
      return "explicit";
  }
  return "identity";
}

CovarianceKind parse_covariance_kind(std::string_view name) {
  for (auto kind : {CovarianceKind::kIdentity, CovarianceKind::kEquicorrelated,
                    CovarianceKind::kToeplitz, CovarianceKind::kExplicit}) {
    if (covariance_kind_name(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown covariance kind '" + std::string(name) +
                              "'");
}

std::string_view adversary_kind_name(AdversaryKind kind) {
  switch (kind) {
    case AdversaryKind::kNone:
      return "none";
    case AdversaryKind::kObliviousConstant:
      return "oblivious_constant";
    case AdversaryKind::kSignFlipLarge:
      return "sign_flip_large";
    case AdversaryKind::kResidualAligned:
      return "residual_aligned";
    case AdversaryKind::kLeverageTargeted:
      return "leverage_targeted";
  }
  return "none";
}

AdversaryKind parse_adversary_kind(std::string_view name) {
  for (auto kind :
       {AdversaryKind::kNone, AdversaryKind::kObliviousConstant,
        AdversaryKind::kSignFlipLarge, AdversaryKind::kResidualAligned,
        AdversaryKind::kLeverageTargeted}) {
    if (adversary_kind_name(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown adversary '" + std::string(name) + "'");
}

void InstanceSpec::validate() const {
  require(n >= 1, "instance spec: n must be >= 1");
  require(d >= 1, "instance spec: d must be >= 1");
  require(s >= 0 && s <= d, "instance spec: s must lie in [0, d]");
  require(o >= 0 && o < n, "instance spec: o must lie in [0, n)");
  require(sigma >= 0.0 && std::isfinite(sigma), "instance spec: sigma must be >= 0");
  require(beta_magnitude >= 0.0 && std::isfinite(beta_magnitude),
          "instance spec: beta_magnitude must be >= 0");
  if (covariance.kind == CovarianceKind::kEquicorrelated ||
      covariance.kind == CovarianceKind::kToeplitz) {
    require(std::abs(covariance.r) < 1.0,
            "instance spec: correlation r must satisfy |r| < 1");
  }
  if (covariance.kind == CovarianceKind::kExplicit) {
    require(covariance.explicit_matrix.rows() == d &&
                covariance.explicit_matrix.cols() == d,
            "instance spec: explicit covariance must be d x d");
  }
  require(std::isfinite(adversary.parameter),
          "instance spec: adversary parameter must be finite");
  if (adversary.kind == AdversaryKind::kObliviousConstant) {
    require(adversary.parameter != 0.0,
            "instance spec: oblivious_constant needs a nonzero constant");
  }
}

nlohmann::json to_json(const InstanceSpec& spec) {
  nlohmann::json cov = {{"kind", covariance_kind_name(spec.covariance.kind)},
                        {"r", spec.covariance.r}};
  if (spec.covariance.kind == CovarianceKind::kExplicit) {
    nlohmann::json rows = nlohmann::json::array();
    for (Index i = 0; i < spec.covariance.explicit_matrix.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (Index j = 0; j < spec.covariance.explicit_matrix.cols(); ++j) {
        row.push_back(spec.covariance.explicit_matrix(i, j));
      }
      rows.push_back(std::move(row));
    }
    cov["matrix"] = std::move(rows);
  }
  return {{"n", spec.n},
          {"d", spec.d},
          {"s", spec.s},
          {"o", spec.o},
          {"sigma", spec.sigma},
          {"covariance", std::move(cov)},
          {"beta_magnitude", spec.beta_magnitude},
          {"adversary",
           {{"kind", adversary_kind_name(spec.adversary.kind)},
            {"parameter", spec.adversary.parameter}}},
          {"seed", spec.seed}};
}

InstanceSpec instance_spec_from_json(const nlohmann::json& j) {
  require(j.is_object(), "instance spec: expected a JSON object");
  InstanceSpec spec;
  try {
    spec.n = j.value("n", spec.n);
    spec.d = j.value("d", spec.d);
    spec.s = j.value("s", spec.s);
    spec.o = j.value("o", spec.o);
    spec.sigma = j.value("sigma", spec.sigma);
    spec.beta_magnitude = j.value("beta_magnitude", spec.beta_magnitude);
    spec.seed = j.value("seed", spec.seed);
    if (j.contains("covariance")) {
      const auto& cov = j.at("covariance");
      if (cov.is_string()) {
        spec.covariance.kind = parse_covariance_kind(cov.get<std::string>());
      } else {
        spec.covariance.kind =
            parse_covariance_kind(cov.value("kind", std::string("identity")));
        spec.covariance.r = cov.value("r", 0.0);
        if (cov.contains("matrix")) {
          const auto& rows = cov.at("matrix");
          const auto d = static_cast<Index>(rows.size());
          spec.covariance.explicit_matrix.resize(d, d);
          for (Index i = 0; i < d; ++i) {
            require(static_cast<Index>(rows[i].size()) == d,
                    "instance spec: explicit covariance must be square");
            for (Index k = 0; k < d; ++k) {
              spec.covariance.explicit_matrix(i, k) = rows[i][k].get<double>();
            }
          }
        }
      }
    }
    if (j.contains("adversary")) {
      const auto& adv = j.at("adversary");
      if (adv.is_string()) {
        spec.adversary.kind = parse_adversary_kind(adv.get<std::string>());
      } else {
        spec.adversary.kind =
            parse_adversary_kind(adv.value("kind", std::string("none")));
        spec.adversary.parameter = adv.value("parameter", 1.0);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("instance spec: ") + e.what());
  }
  return spec;
}

Matrix covariance_matrix(const CovarianceSpec& spec, Index d) {
  switch (spec.kind) {
    case CovarianceKind::kIdentity:
      return Matrix::Identity(d, d);
    case CovarianceKind::kEquicorrelated: {
      Matrix m = Matrix::Constant(d, d, spec.r);
      m.diagonal().setOnes();
      return m;
    }
    case CovarianceKind::kToeplitz: {
      Matrix m(d, d);
      for (Index i = 0; i < d; ++i) {
        for (Index j = 0; j < d; ++j) {
          m(i, j) = std::pow(spec.r, static_cast<double>(std::abs(i - j)));
        }
      }
      return m;
    }
    case CovarianceKind::kExplicit:
      require(spec.explicit_matrix.rows() == d && spec.explicit_matrix.cols() == d,
              "covariance: explicit matrix must be d x d");
      return spec.explicit_matrix;
  }
  return Matrix::Identity(d, d);
}

Matrix covariance_root(const Matrix& sigma) {
  const Index d = sigma.rows();
  require(sigma.cols() == d, "covariance_root: matrix must be square");
  const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
  require((sigma - sigma.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale,
          "covariance_root: matrix is not symmetric");

  const Matrix off_diagonal = sigma - Matrix(sigma.diagonal().asDiagonal());
  if (off_diagonal.cwiseAbs().maxCoeff() == 0.0) {
    require(sigma.diagonal().minCoeff() >= 0.0,
            "covariance_root: matrix is not positive semidefinite");
    return Matrix(sigma.diagonal().cwiseSqrt().asDiagonal());
  }

  std::vector<Index> active;
  for (Index i = 0; i < d; ++i) {
    if (sigma(i, i) != 0.0) {
      active.push_back(i);
    } else {
      require(sigma.row(i).cwiseAbs().maxCoeff() == 0.0,
              "covariance_root: zero variance with nonzero covariance");
    }
  }
  const auto k = static_cast<Index>(active.size());
  Matrix block(k, k);
  for (Index a = 0; a < k; ++a) {
    for (Index b = 0; b < k; ++b) block(a, b) = sigma(active[a], active[b]);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(block);
  require(eig.info() == Eigen::Success,
          "covariance_root: eigendecomposition failed");
  Vector values = eig.eigenvalues();
  require(values.minCoeff() >= -1e-10 * scale,
          "covariance_root: matrix is not positive semidefinite");
  values = values.cwiseMax(0.0).cwiseSqrt();
  const Matrix& vectors = eig.eigenvectors();
  Matrix block_root = vectors * values.asDiagonal() * vectors.transpose();
  block_root = 0.5 * (block_root + block_root.transpose());

  Matrix root = Matrix::Zero(d, d);
  for (Index a = 0; a < k; ++a) {
    for (Index b = 0; b < k; ++b) root(active[a], active[b]) = block_root(a, b);
  }
  return root;
}

Matrix sample_gaussian_matrix_from_root(Index n, const Matrix& sigma_root,
                                        Rng& rng) {
  const Matrix g = rng.normal_matrix(n, sigma_root.rows());
  return g * sigma_root;
}

Matrix sample_gaussian_matrix(Index n, const Matrix& sigma_matrix, Rng& rng) {
  return sample_gaussian_matrix_from_root(n, covariance_root(sigma_matrix), rng);
}

std::vector<Index> sample_without_replacement(Index size, Index k, Rng& rng) {
  require(k >= 0 && k <= size, "sample_without_replacement: k out of range");
  std::vector<Index> pool(static_cast<std::size_t>(size));
  std::iota(pool.begin(), pool.end(), Index{0});
  for (Index i = 0; i < k; ++i) {
    const auto j = i + static_cast<Index>(rng.below(static_cast<std::uint64_t>(size - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(k));
  return pool;
}

Vector adversary_theta(const AdversarySpec& adversary, const Matrix& X,
                       const Vector& xi, const Vector& beta_star, long o,
                       Rng& rng) {
  const Index n = X.rows();
  require(o >= 0 && o < n, "adversary_theta: o must lie in [0, n)");
  require(xi.size() == n && beta_star.size() == X.cols(),
          "adversary_theta: dimension mismatch");
  const double root_n = std::sqrt(static_cast<double>(n));
  Vector theta = Vector::Zero(n);
  if (o == 0) return theta;
  const Vector signal = X * beta_star;
  switch (adversary.kind) {
    case AdversaryKind::kNone:
      break;
    case AdversaryKind::kObliviousConstant:
      for (Index i : sample_without_replacement(n, o, rng)) {
        theta(i) = adversary.parameter;
      }
      break;
    case AdversaryKind::kSignFlipLarge:
      for (Index i : sample_without_replacement(n, o, rng)) {
        theta(i) = -2.0 * (signal(i) + xi(i)) / root_n;
      }
      break;
    case AdversaryKind::kResidualAligned: {
      const double max_clean = (signal + xi).cwiseAbs().maxCoeff() / root_n;
      for (Index i : top_k(xi.cwiseAbs(), o)) {
        theta(i) = adversary.parameter * sign_nonzero(xi(i)) * max_clean;
      }
      break;
    }
    case AdversaryKind::kLeverageTargeted:
      for (Index i : top_k(X.rowwise().norm(), o)) {
        theta(i) = -adversary.parameter * signal(i) / root_n;
      }
      break;
  }
  return theta;
}

ProblemInstance generate_instance(const InstanceSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  ProblemInstance inst;
  const Index n = spec.n;
  const Index d = spec.d;
  inst.sigma = spec.sigma;
  inst.sigma_matrix = covariance_matrix(spec.covariance, d);
  inst.sigma_root = covariance_root(inst.sigma_matrix);
  inst.X = sample_gaussian_matrix_from_root(n, inst.sigma_root, rng);
  inst.xi = spec.sigma * rng.normal_vector(n);

  inst.beta_star = Vector::Zero(d);
  for (Index j : sample_without_replacement(d, spec.s, rng)) {
    inst.beta_star(j) = spec.beta_magnitude;
  }
  // Signs are drawn in coordinate order so the stream does not depend on
  // the shuffle's internal order.
  for (Index j = 0; j < d; ++j) {
    if (inst.beta_star(j) != 0.0) inst.beta_star(j) *= rng.rademacher();
  }

  inst.y_clean = inst.X * inst.beta_star + inst.xi;
  inst.theta_star =
      adversary_theta(spec.adversary, inst.X, inst.xi, inst.beta_star, spec.o, rng);
  const double root_n = std::sqrt(static_cast<double>(n));
  for (Index i = 0; i < n; ++i) {
    if (inst.theta_star(i) != 0.0) inst.outlier_index.push_back(i);
  }
  // Built in the same association order validate() checks against.
  inst.y = inst.X * inst.beta_star + root_n * inst.theta_star + inst.xi;
  if (spec.adversary.kind == AdversaryKind::kSignFlipLarge) {
    // Make y_i = -y_clean_i hold exactly on the flipped rows.
    for (Index i : inst.outlier_index) inst.y(i) = -inst.y_clean(i);
  }
  inst.validate();
  return inst;
}

}  // namespace rlasso

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

#include <cmath>
#include <limits>
#include <stdexcept>

#include <gtest/gtest.h>

namespace rlasso {
namespace {

TEST(HuberTest, ValuesOnBothPieces) {
  EXPECT_DOUBLE_EQ(huber_value(0.0), 0.0);
  EXPECT_DOUBLE_EQ(huber_value(0.5), 0.125);
  EXPECT_DOUBLE_EQ(huber_value(-0.5), 0.125);
  EXPECT_DOUBLE_EQ(huber_value(1.0), 0.5);
  EXPECT_DOUBLE_EQ(huber_value(2.0), 1.5);
  EXPECT_DOUBLE_EQ(huber_value(-3.0), 2.5);
}

TEST(HuberTest, PsiIsClamp) {
  EXPECT_DOUBLE_EQ(huber_psi(0.3), 0.3);
  EXPECT_DOUBLE_EQ(huber_psi(-0.7), -0.7);
  EXPECT_DOUBLE_EQ(huber_psi(5.0), 1.0);
  EXPECT_DOUBLE_EQ(huber_psi(-5.0), -1.0);
}

TEST(HuberTest, RejectsNonFinite) {
  EXPECT_THROW(huber_value(std::numeric_limits<double>::quiet_NaN()),
               std::domain_error);
  EXPECT_THROW(huber_psi(std::numeric_limits<double>::infinity()),
               std::domain_error);
}

TEST(HuberTest, PartialMinimizationIdentity) {
  // min_t (1/2)(r - t)^2 + lam |t| is attained at t = soft(r, lam) and
  // equals lam^2 H(r / lam).
  for (double lam : {0.1, 1.0, 3.0}) {
    for (double r : {-7.0, -1.0, -0.05, 0.0, 0.2, 0.99, 2.5, 40.0}) {
      const double t = soft_threshold(r, lam);
      const double value = 0.5 * (r - t) * (r - t) + lam * std::abs(t);
      EXPECT_NEAR(value, lam * lam * huber_value(r / lam), 1e-12);
    }
  }
}

TEST(SoftThresholdTest, ThreeRegions) {
  EXPECT_DOUBLE_EQ(soft_threshold(3.0, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(soft_threshold(-3.0, 1.0), -2.0);
  EXPECT_DOUBLE_EQ(soft_threshold(0.5, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(soft_threshold(-1.0, 1.0), 0.0);
}

ProblemInstance TinyInstance() {
  ProblemInstance inst;
  inst.X.resize(4, 2);
  inst.X << 1, 0, 0, 1, 1, 1, 2, -1;
  inst.beta_star = Vector(2);
  inst.beta_star << 1.0, -2.0;
  inst.theta_star = Vector::Zero(4);
  inst.theta_star(2) = 0.5;
  inst.outlier_index = {2};
  inst.xi = Vector::Constant(4, 0.1);
  inst.y_clean = inst.X * inst.beta_star + inst.xi;
  inst.y = inst.X * inst.beta_star + 2.0 * inst.theta_star + inst.xi;
  inst.sigma = 0.1;
  return inst;
}

TEST(ProblemInstanceTest, ValidInstancePasses) {
  const ProblemInstance inst = TinyInstance();
  EXPECT_NO_THROW(inst.validate());
  EXPECT_TRUE(inst.has_truth());
  EXPECT_DOUBLE_EQ(inst.rho_squared(), 1.0);
}

TEST(ProblemInstanceTest, DetectsInconsistentResponse) {
  ProblemInstance inst = TinyInstance();
  inst.y(0) += 1e-3;
  EXPECT_THROW(inst.validate(), std::invalid_argument);
}

TEST(ProblemInstanceTest, DetectsOutlierIndexMismatch) {
  ProblemInstance inst = TinyInstance();
  inst.outlier_index = {1};
  EXPECT_THROW(inst.validate(), std::invalid_argument);
}

TEST(ProblemInstanceTest, DetectsWrongLength) {
  ProblemInstance inst = TinyInstance();
  inst.y = Vector::Zero(3);
  EXPECT_THROW(inst.validate(), std::invalid_argument);
}

TEST(ProblemInstanceTest, SigmaNormUsesRoot) {
  ProblemInstance inst = TinyInstance();
  inst.sigma_matrix = Matrix::Identity(2, 2) * 4.0;
  inst.sigma_root = Matrix::Identity(2, 2) * 2.0;
  Vector v(2);
  v << 3.0, 4.0;
  EXPECT_DOUBLE_EQ(inst.sigma_norm(v), 10.0);
  EXPECT_DOUBLE_EQ(inst.rho_squared(), 4.0);
}

TEST(PenaltyPairTest, RequirePositive) {
  EXPECT_NO_THROW(require_positive({1.0, 2.0, Provenance::kManual}));
  EXPECT_THROW(require_positive({0.0, 2.0, Provenance::kManual}),
               std::invalid_argument);
  EXPECT_THROW(require_positive({1.0, -1.0, Provenance::kManual}),
               std::invalid_argument);
  EXPECT_EQ(provenance_name(Provenance::kNguyenTran), "nguyen_tran");
}

TEST(ResidualTest, ScaledResidual) {
  const ProblemInstance inst = TinyInstance();
  const Vector r = residual_scaled(inst, inst.beta_star, 0.5);
  // (y - X beta*) / (lambda_o sqrt(n)) = (2 theta* + xi) / 1.
  EXPECT_NEAR(r(0), 0.1, 1e-15);
  EXPECT_NEAR(r(2), 1.1, 1e-15);
  EXPECT_THROW(residual_scaled(inst, inst.beta_star, 0.0), std::invalid_argument);
}

}  // namespace
}  // namespace rlasso

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

#include "rlasso/verify.h"

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "rlasso/solver.h"

namespace rlasso {
namespace {

// statsmodels' proportion_confint(method="wilson") uses the exact normal
// quantile; the library default pins z = 1.96.
TEST(WilsonTest, ReferenceValues) {
  const double z_exact = 1.959963984540054;
  EXPECT_NEAR(wilson_halfwidth(0.9, 1000, z_exact), 0.0186212598011, 1e-12);
  EXPECT_NEAR(wilson_halfwidth(1.0, 1000, z_exact), 0.00191337924278, 1e-12);
  EXPECT_NEAR(wilson_halfwidth(0.9, 1000), 0.0186216029713242, 1e-14);
  EXPECT_NEAR(wilson_halfwidth(1.0, 1000), 0.00191344929319526, 1e-14);
  EXPECT_THROW(wilson_halfwidth(0.5, 0), std::invalid_argument);
}

TEST(CoverageRecordTest, PassRule) {
  const CoverageRecord ok = make_coverage_record("x", 1000, 110, 0.9, {});
  EXPECT_DOUBLE_EQ(ok.empirical_coverage, 0.89);
  EXPECT_TRUE(ok.passed());
  const CoverageRecord bad = make_coverage_record("x", 1000, 140, 0.9, {});
  EXPECT_FALSE(bad.passed());
  EXPECT_THROW(make_coverage_record("x", 10, 11, 0.9, {}), std::invalid_argument);
}

// Support values of the l1/l2 intersection from a cvxpy solve.
TEST(L1L2SupportTest, MatchesConvexSolver) {
  Vector g(5);
  g << 3.0, -1.0, 2.0, 0.5, -2.5;
  EXPECT_NEAR(l1l2_support(g, 2.0, 1.5), 5.676776685, 1e-7);
  EXPECT_NEAR(l1l2_support(g, 1.0, 5.0), 3.0, 1e-7);
  EXPECT_NEAR(l1l2_support(g, 10.0, 1.0), g.norm(), 1e-9);
  EXPECT_DOUBLE_EQ(l1l2_support(Vector::Zero(3), 1.0, 1.0), 0.0);
}

TEST(WidthTest, TwoDimensionalClosedForm) {
  // E max(|g1|, |g2|) = 2 / sqrt(pi).
  Rng rng(1);
  const WidthEstimate w = estimate_width_sigma_ball(Matrix::Identity(2, 2), 40000, rng);
  EXPECT_NEAR(w.estimate, 2.0 / std::sqrt(M_PI), 0.01);
  EXPECT_NEAR(w.bound, std::sqrt(2.0 * std::log(2.0)), 1e-12);
}

TEST(WidthTest, IntersectionBelowBounds) {
  Rng rng(2);
  Vector u = Vector::Zero(200);
  u.head(5).setConstant(1.0);
  const WidthEstimate w = estimate_width_l1l2(u, 2000, rng);
  ASSERT_TRUE(w.sparse_bound.has_value());
  EXPECT_LT(w.estimate, w.bound);
  EXPECT_LT(w.estimate, *w.sparse_bound);
}

TEST(VerifyInequalityTest, SmallRunsPass) {
  VerifyParams p;
  p.n = 200;
  p.d = 10;
  for (const char* id :
       {"noise_supnorm", "xtxi_supnorm", "bernstein_z", "chisq", "prop3", "prop4"}) {
    Rng rng(3);
    const CoverageRecord r = verify_inequality(id, p, 100, rng);
    EXPECT_EQ(r.trials, 100);
    EXPECT_TRUE(r.passed()) << id << " failures=" << r.failures;
  }
}

TEST(VerifyInequalityTest, DeterministicGivenSeed) {
  VerifyParams p;
  p.n = 300;
  p.d = 10;
  Rng a(4);
  Rng b(4);
  EXPECT_EQ(verify_inequality("chisq", p, 200, a).params,
            verify_inequality("chisq", p, 200, b).params);
}

TEST(VerifyInequalityTest, PreconditionsNameTheCondition) {
  VerifyParams p;
  p.n = 20;
  p.d = 10;
  Rng rng(5);
  try {
    verify_inequality("prop3", p, 10, rng);
    FAIL() << "expected an exception";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("prop3"), std::string::npos);
  }
  EXPECT_THROW(verify_inequality("unknown", p, 10, rng), std::invalid_argument);
}

TEST(VerifyAtpTest, SmallRun) {
  VerifyParams p;
  p.n = 1000;
  p.d = 10;
  p.delta = 0.1;
  Rng rng(6);
  const CoverageRecord r = verify_atp(p, 20, rng);
  EXPECT_EQ(r.trials, 20);
  EXPECT_TRUE(r.params.contains("hard_probe_failures"));
}

TEST(CCutTest, MeasureAndBound) {
  InstanceSpec spec;
  spec.n = 400;
  spec.d = 10;
  spec.s = 2;
  spec.o = 5;
  spec.adversary.kind = AdversaryKind::kResidualAligned;
  spec.seed = 7;
  const ProblemInstance inst = generate_instance(spec);
  TuningInputs in;
  in.n = 400;
  in.d = 10;
  in.s = 2;
  in.o = 5;
  in.c_lambda_o = 2.0;
  const TuningResult t = paper_tuning(in);
  const FitResult fit = solve_huber_lasso(inst, t.penalties);
  EXPECT_EQ(measure_c_cut(inst, fit, t.penalties.lambda_o), *fit.c_cut);
  EXPECT_GT(c_cut_bound(t.bundle, fit, inst), 0.0);
}

TEST(CCutTest, CoverageRecordAtPrerequisitePoint) {
  InstanceSpec point;
  point.n = 500;
  point.d = 10;
  point.s = 2;
  point.o = 5;
  point.adversary.kind = AdversaryKind::kResidualAligned;
  TuningInputs in;
  in.c_lambda_o = 2.0;
  const CoverageRecord r = verify_c_cut(point, in, 10, 8);
  EXPECT_EQ(r.inequality_id, "c_cut");
  EXPECT_DOUBLE_EQ(r.nominal_level, 0.95);
  EXPECT_TRUE(r.params["prerequisite_failures"].empty());
}

TEST(ReKappaTest, EquicorrelatedGridValue) {
  // Grid-search reference for d = 4, s = 1, r = 0.5, c0 = 5: kappa^2 = 0.625.
  CovarianceSpec eq{CovarianceKind::kEquicorrelated, 0.5, {}};
  Rng rng(9);
  const double kappa = estimate_re_kappa(covariance_matrix(eq, 4), 1, 5.0, 4000, rng);
  EXPECT_GE(kappa, std::sqrt(0.625) - 1e-9);
  EXPECT_LE(kappa, std::sqrt(0.625) * 1.02);
}

TEST(ReKappaTest, IdentityIsOne) {
  Rng rng(10);
  const double kappa = estimate_re_kappa(Matrix::Identity(6, 6), 2, 3.0, 500, rng);
  EXPECT_GE(kappa, 1.0 - 1e-12);
  EXPECT_LE(kappa, 1.02);
}

TEST(ConcentrationSuiteTest, GridShapeAndCsv) {
  const auto records = run_concentration_suite({200}, {0.1}, 10, 50, 11);
  ASSERT_EQ(records.size(), 4u);
  const std::string row = coverage_csv_row(records[0]);
  EXPECT_EQ(coverage_csv_header().substr(0, 14), "inequality_id,");
  EXPECT_EQ(row.back(), '\n');
}

}  // namespace
}  // namespace rlasso

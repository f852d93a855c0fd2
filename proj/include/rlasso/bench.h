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

// Rate studies: sweep one of (n, o, s, d), fit every method on the same
// instances, and report errors, medians, power-law exponents, CSV and SVG.
//
// Cell (point p, repetition r) uses the instance seed
// derive_seed(master_seed, p * repetitions + r), and every method is fitted
// to that same instance, so method comparisons are paired.

#ifndef RLASSO_BENCH_H_
#define RLASSO_BENCH_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rlasso/simulate.h"
#include "rlasso/solver.h"

namespace rlasso {

enum class SweepAxis { kN, kO, kS, kD };
enum class Method { kPaper, kNguyenTran, kPlainLasso };

std::string_view axis_name(SweepAxis axis);
SweepAxis parse_axis(std::string_view name);
std::string_view method_name(Method method);
Method parse_method(std::string_view name);

struct ExperimentSpec {
  SweepAxis axis = SweepAxis::kN;
  std::vector<long> axis_values;
  // Every InstanceSpec field except the swept one and the seed.
  InstanceSpec fixed;
  long repetitions = 1;
  std::vector<Method> methods = {Method::kPaper, Method::kNguyenTran,
                                 Method::kPlainLasso};
  std::uint64_t master_seed = 0;
  // Tuning inputs shared by the methods.
  double delta = 0.1;
  double c_lambda_o = 2.0;
  double gamma = 1.0;
  double kappa = 1.0;
  double c0 = 5.0;
  SolverConfig solver;
  // Wall-clock times break byte-for-byte reproducibility, so they are only
  // recorded on request; otherwise wall_ms is 0.
  bool record_timing = false;

  void validate() const;
};

nlohmann::json to_json(const ExperimentSpec& spec);
// Accepts the keys written by to_json; "fixed" holds an InstanceSpec
// object. Throws std::invalid_argument on malformed input.
ExperimentSpec experiment_spec_from_json(const nlohmann::json& j);

struct ExperimentRow {
  std::string axis;
  long axis_value = 0;
  long rep = 0;
  std::string method;
  double error_sigma = 0.0;
  double error_l2 = 0.0;
  double error_l1 = 0.0;
  double support_f1 = 0.0;
  double theta_support_f1 = 0.0;
  long c_cut = 0;
  long iterations = 0;
  double wall_ms = 0.0;
  double r_theory = 0.0;
  // Not part of the CSV schema.
  bool converged = true;
};

struct ExperimentRecord {
  ExperimentSpec spec;
  // Ordered by (point, repetition, method).
  std::vector<ExperimentRow> rows;
};

// The instance spec for one cell of the sweep.
InstanceSpec cell_instance_spec(const ExperimentSpec& spec, std::size_t point,
                                long rep);

ExperimentRecord run_experiment(const ExperimentSpec& spec);

// F1 score of the supports {|a_j| > 1e-8} and {|b_j| > 1e-8}; two empty
// supports score 1.
double support_f1(const Vector& estimate, const Vector& truth);

struct PointSummary {
  long axis_value = 0;
  std::string method;
  double median = 0.0;
  double r_theory = 0.0;
  long cells = 0;
  long unconverged = 0;
};

// Per (axis value, method) medians of `metric` (error_sigma, error_l2,
// error_l1, support_f1, theta_support_f1, c_cut or iterations), in axis
// order, then method order of first appearance.
std::vector<PointSummary> summarize(const ExperimentRecord& record,
                                    std::string_view metric = "error_sigma");

double median(std::vector<double> values);

struct PowerLawFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Least squares of log(median metric) on log(axis value). Requires at least
// three points with positive axis values and positive medians.
PowerLawFit fit_power_law(const ExperimentRecord& record, std::string_view method,
                          std::string_view metric = "error_sigma");
PowerLawFit fit_power_law(const std::vector<double>& x,
                          const std::vector<double>& y);

// CSV with the header
//   axis,axis_value,rep,method,error_sigma,error_l2,error_l1,support_f1,
//   theta_support_f1,c_cut,iterations,wall_ms,r_theory
// LF line endings, RFC 4180 quoting, 17 significant digits.
std::string experiment_csv(const ExperimentRecord& record);
void emit_csv(const ExperimentRecord& record, const std::string& path);
// Inverse of experiment_csv (spec left default except the axis).
ExperimentRecord parse_experiment_csv(std::string_view text);

// Log-log SVG of the median error_sigma per method plus the r_theory overlay.
// Each method and the overlay is one <g class="curve">. Linear axes are used
// when some value is not positive.
std::string experiment_svg(const ExperimentRecord& record);
void emit_plot(const ExperimentRecord& record, const std::string& path);

}  // namespace rlasso

#endif  // RLASSO_BENCH_H_

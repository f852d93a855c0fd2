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

#include "rlasso/tuning.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rlasso {
namespace {

constexpr double kE = 2.718281828459045235360287;

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

double dbl(long v) { return static_cast<double>(v); }

ConditionCheck make_check(std::string name, std::string relation, double lhs,
                          double rhs, bool satisfied) {
  ConditionCheck check;
  check.name = std::move(name);
  check.relation = std::move(relation);
  check.lhs = lhs;
  check.rhs = rhs;
  check.satisfied = satisfied;
  return check;
}

}  // namespace

RateConstants rate_constants(long n, long d, long s, long o, double delta) {
  require(n >= 3, "rate_constants: n must be >= 3");
  require(d >= 3, "rate_constants: d must be >= 3");
  require(s >= 1 && s <= d, "rate_constants: s must lie in [1, d]");
  require(o >= 0 && o < n, "rate_constants: o must lie in [0, n)");
  require(delta > 0.0 && delta <= 1.0, "rate_constants: delta must lie in (0, 1]");
  const double nn = dbl(n);
  RateConstants rc;
  rc.r1 = std::sqrt(dbl(s) * std::log(dbl(d)) / nn);
  if (o > 0) {
    const double frac = dbl(o) / nn;
    rc.r21 = std::sqrt(frac * std::log(nn / dbl(o)));
    rc.r22 = std::sqrt(frac * std::log(nn));
    rc.r2 = rc.r21 * rc.r22;
    const double l = std::log(nn / dbl(o));
    rc.eta_4 = std::sqrt((4.0 + l) / l);
  }
  rc.r_total = rc.r1 + rc.r2;
  rc.eta_delta = std::sqrt(std::log(nn / delta) / std::log(nn));
  return rc;
}

void TuningInputs::validate() const {
  require(n >= 3, "tuning: n must be >= 3");
  require(d >= 3, "tuning: d must be >= 3");
  require(s >= 1, "tuning: s must be >= 1");
  require(s <= d, "tuning: s must be <= d");
  require(o >= 0 && o < n, "tuning: o must lie in [0, n)");
  require(delta > 0.0 && delta <= 1.0, "tuning: delta must lie in (0, 1]");
  require(sigma > 0.0 && std::isfinite(sigma), "tuning: sigma must be > 0");
  require(rho > 0.0 && std::isfinite(rho), "tuning: rho must be > 0");
  require(kappa > 0.0 && std::isfinite(kappa), "tuning: kappa must be > 0");
  require(c0 > 0.0 && std::isfinite(c0), "tuning: c0 must be > 0");
  if (c_lambda_o) {
    require(*c_lambda_o > 0.0 && std::isfinite(*c_lambda_o),
            "tuning: C_lambda_o must be > 0");
  }
}

double g1_value(long n, long s, long d, double delta, double rho,
                double c_kappa) {
  const double nn = dbl(n);
  return std::sqrt(2.0 / nn) * (4.8 + std::sqrt(std::log(81.0 / delta))) +
         1.2 * c_kappa *
             std::sqrt(2.0 * rho * rho * dbl(s) * std::log(dbl(d)) / nn);
}

double g2_value(long m, long n) {
  require(m >= 1 && m <= n, "g_function: m must lie in [1, n]");
  const double ratio = dbl(m) / dbl(n);
  return 4.8 * std::sqrt(kE) * std::sqrt(ratio) *
         std::sqrt(4.0 + std::log(dbl(n) / dbl(m)));
}

double g_function(long m, long n, long s, long d, double delta, double rho,
                  double c_kappa) {
  const double g2 = g2_value(m, n);
  return g1_value(n, s, d, delta, rho, c_kappa) + g2;
}

double a1_value(long n, double delta) {
  return 1.0 - (4.3 + std::sqrt(2.0 * std::log(9.0 / delta))) / std::sqrt(dbl(n));
}

double b1_value(long n, double delta) {
  return std::sqrt(2.0 / dbl(n)) * (4.8 + std::sqrt(std::log(81.0 / delta)));
}

double c_n_delta_value(double a1, double b1, double alpha) {
  const double a2 = alpha * alpha;
  return std::sqrt(a1 * a1 + b1 + a2) - std::sqrt(2.0 * (b1 + a2));
}

double eta_bar_4() {
  const double c_bar = (std::sqrt(5.0) - std::sqrt(2.0)) / 2.0;
  const double root = 19.2 * std::sqrt(12.5);
  const double c_on = root * root * std::log(100.0) / c_bar;
  const double l = std::log(c_on);
  return std::sqrt((4.0 + l) / l);
}

double c_gt_value(double c_lambda_o) {
  const double c2 = c_lambda_o * c_lambda_o;
  if (c2 <= 1.0) return -std::numeric_limits<double>::infinity();
  return 9.0 / 32.0 -
         2.0 * 9.6 * 9.6 * kE * eta_bar_4() * c_lambda_o / (c2 - 1.0);
}

double default_c_lambda_o() {
  // c_gt_value is increasing on (1, inf), so bisection on the sign change.
  double lo = 2.0;
  if (c_gt_value(lo) > 0.0) return lo;
  double hi = 4.0;
  while (!(c_gt_value(hi) > 0.0)) hi *= 2.0;
  for (int k = 0; k < 200 && hi - lo > 1e-12 * hi; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (c_gt_value(mid) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

TuningBundle evaluate_constants(const TuningInputs& inputs,
                                const PenaltyPair& penalties) {
  inputs.validate();
  require(penalties.lambda_o > 0.0 && penalties.lambda_s > 0.0,
          "tuning: penalties must be positive");
  const double n = dbl(inputs.n);
  const double sigma2 = inputs.sigma * inputs.sigma;
  const double rho2 = inputs.rho * inputs.rho;
  const double log_n_delta = std::log(n / inputs.delta);

  TuningBundle b;
  b.inputs = inputs;
  b.lambda_o = penalties.lambda_o;
  b.lambda_s = penalties.lambda_s;
  b.c_lambda_o = b.lambda_o / std::sqrt(2.0 * sigma2 * log_n_delta / n);
  b.c_kappa = (inputs.c0 + 1.0) / inputs.kappa + 1.0;
  b.c_z = std::sqrt(3.0 * rho2 * sigma2 * std::log(dbl(inputs.d) / inputs.delta) /
                    (b.lambda_o * b.lambda_o * n));
  b.g1 = g1_value(inputs.n, inputs.s, inputs.d, inputs.delta, inputs.rho,
                  b.c_kappa);
  if (inputs.o > 0) {
    b.g2_o = g2_value(inputs.o, inputs.n);
    b.g_o = b.g1 + b.g2_o;
  }
  b.c_lambda_s =
      b.c_z + std::sqrt(2.0 * dbl(inputs.o) / dbl(inputs.s)) * b.g_o;
  b.a1 = a1_value(inputs.n, inputs.delta);
  b.b1 = b1_value(inputs.n, inputs.delta);
  b.c_n_delta = c_n_delta_value(b.a1, b.b1);
  b.nu_e = 6.0 / (b.c_n_delta * b.c_n_delta) *
           std::sqrt(b.lambda_s * b.lambda_s * dbl(inputs.s) /
                         (inputs.kappa * inputs.kappa) +
                     6.25 * b.lambda_o * b.lambda_o * dbl(inputs.o));
  b.c_r = 1.0 / (1.0 - 2.0 * sigma2 * log_n_delta / (b.lambda_o * b.lambda_o * n));
  b.eta_bar_4 = eta_bar_4();
  b.c_gt = c_gt_value(b.c_lambda_o);
  b.rates = rate_constants(inputs.n, inputs.d, inputs.s, inputs.o,
                           inputs.delta);
  return b;
}

TuningResult paper_tuning(const TuningInputs& inputs) {
  inputs.validate();
  const double n = dbl(inputs.n);
  const double c_lo = inputs.c_lambda_o ? *inputs.c_lambda_o : default_c_lambda_o();
  const double sigma2 = inputs.sigma * inputs.sigma;

  PenaltyPair penalties;
  penalties.provenance = Provenance::kPaperRecipe;
  penalties.lambda_o =
      c_lo * std::sqrt(2.0 * sigma2 * std::log(n / inputs.delta) / n);
  // C_ls depends on lambda_o only through C_z; a placeholder lambda_s lets
  // evaluate_constants produce it, then lambda_s is set from C_ls.
  penalties.lambda_s = penalties.lambda_o;
  TuningBundle bundle = evaluate_constants(inputs, penalties);
  bundle.c_lambda_o = c_lo;
  bundle.c_gt = c_gt_value(c_lo);
  penalties.lambda_s =
      4.0 * std::sqrt(2.0) / std::sqrt(3.0) * bundle.c_lambda_s * penalties.lambda_o;
  bundle.lambda_s = penalties.lambda_s;
  bundle.nu_e = 6.0 / (bundle.c_n_delta * bundle.c_n_delta) *
                std::sqrt(bundle.lambda_s * bundle.lambda_s * dbl(inputs.s) /
                              (inputs.kappa * inputs.kappa) +
                          6.25 * bundle.lambda_o * bundle.lambda_o *
                              dbl(inputs.o));
  return {penalties, bundle};
}

PenaltyPair nguyen_tran_tuning(long n, long d, double sigma, double rho,
                               double gamma) {
  require(n >= 2, "nguyen_tran_tuning: n must be >= 2");
  require(d >= 2, "nguyen_tran_tuning: d must be >= 2");
  require(gamma > 0.0 && gamma <= 1.0,
          "nguyen_tran_tuning: gamma must lie in (0, 1]");
  require(sigma >= 0.0 && rho > 0.0,
          "nguyen_tran_tuning: sigma must be >= 0 and rho > 0");
  const double nn = dbl(n);
  const double log_d = std::log(dbl(d));
  PenaltyPair p;
  p.provenance = Provenance::kNguyenTran;
  p.lambda_o = 2.0 * std::sqrt(2.0 * sigma * sigma * std::log(nn) / nn);
  p.lambda_s = 2.0 / gamma *
               std::sqrt(2.0 * sigma * sigma * rho * rho * log_d / nn) *
               (1.0 + std::sqrt(2.0 * log_d / nn));
  return p;
}

std::vector<const ConditionCheck*> ConditionReport::all() const {
  return {&c1, &c2, &c3, &c4, &c5, &cond_iso, &cond0, &cond_cgt_positive};
}

ConditionReport condition_report(const TuningBundle& b) {
  const TuningInputs& in = b.inputs;
  const double n = dbl(in.n);
  const double delta = in.delta;
  const double log_inv_delta = std::log(1.0 / delta);
  ConditionReport r;
  r.c1 = make_check("c1", "delta in (0, 1/7] and n >= 100", delta, 1.0 / 7.0,
                    delta > 0.0 && delta <= 1.0 / 7.0 && in.n >= 100);
  {
    const double lhs = std::sqrt(std::log(dbl(in.d) / delta) / n);
    const double rhs = std::sqrt(3.0) - std::sqrt(2.0);
    r.c2 = make_check("c2", "sqrt(log(d/delta)/n) <= sqrt(3) - sqrt(2)", lhs,
                      rhs, lhs <= rhs);
  }
  {
    const double lhs = 2.0 * std::sqrt(n * log_inv_delta) + 2.0 * log_inv_delta;
    r.c3 = make_check("c3", "2 sqrt(n log(1/delta)) + 2 log(1/delta) <= n", lhs,
                      n, lhs <= n);
  }
  r.c4 = make_check("c4", "a1 > 3/4", b.a1, 0.75, b.a1 > 0.75);
  r.c5 = make_check("c5", "b1 < 1/4", b.b1, 0.25, b.b1 < 0.25);
  {
    const double num = b.lambda_s + b.c_lambda_s * b.lambda_o;
    const double den = b.lambda_s - b.c_lambda_s * b.lambda_o;
    const double lhs = den > 0.0 ? num / den
                                 : std::numeric_limits<double>::infinity();
    r.cond_iso = make_check(
        "cond_iso",
        "(lambda_s + C_ls lambda_o) / (lambda_s - C_ls lambda_o) <= c0", lhs,
        in.c0, den > 0.0 && lhs <= in.c0);
  }
  {
    const double rho2 = in.rho * in.rho;
    const double first = 3.6 * std::sqrt(2.0 * rho2 * std::log(dbl(in.d)) / n);
    const double second = 2.4 * (b.lambda_s / b.lambda_o) *
                          std::sqrt(2.0 * std::log(n) / n);
    const double root = std::sqrt(
        dbl(in.s) / (in.kappa * in.kappa) +
        6.25 * dbl(in.o) * b.lambda_o * b.lambda_o / (b.lambda_s * b.lambda_s));
    const double lhs = 8.0 * std::max(first, second) * root;
    r.cond0 = make_check("cond0",
                         "8 max(3.6 sqrt(2 rho^2 log d/n), 2.4 (lambda_s/"
                         "lambda_o) sqrt(2 log n/n)) sqrt(s/kappa^2 + 6.25 o "
                         "lambda_o^2/lambda_s^2) <= C_n_delta",
                         lhs, b.c_n_delta, lhs <= b.c_n_delta);
  }
  r.cond_cgt_positive =
      make_check("cond_cgt_positive", "C_gt > 0", b.c_gt, 0.0, b.c_gt > 0.0);
  r.all_satisfied = true;
  for (const ConditionCheck* check : r.all()) {
    r.all_satisfied = r.all_satisfied && check->satisfied;
  }
  return r;
}

Cond0Decomposition cond0_decomposition(long n, long d, long s, long o,
                                       const PenaltyPair& penalties) {
  require_positive(penalties);
  require(n >= 2 && d >= 2 && s >= 0 && o >= 0,
          "cond0_decomposition: invalid sizes");
  const double nn = dbl(n);
  const double a1 = std::log(dbl(d)) / nn;
  const double ratio = penalties.lambda_s / penalties.lambda_o;
  const double a2 = ratio * ratio * std::log(nn) / nn;
  const double b1 = dbl(s);
  const double b2 = dbl(o) / (ratio * ratio);
  Cond0Decomposition out;
  out.a1b1 = a1 * b1;
  out.a1b2 = a1 * b2;
  out.a2b1 = a2 * b1;
  out.a2b2 = dbl(o) * std::log(nn) / nn;  // A2 B2 with the ratio cancelled
  return out;
}

std::vector<std::string> c_cut_prerequisite_failures(const TuningBundle& b) {
  const ConditionReport r = condition_report(b);
  std::vector<std::string> failures;
  if (!r.c1.satisfied) failures.push_back("c1");
  if (!r.c2.satisfied) failures.push_back("c2");
  if (!r.c3.satisfied) failures.push_back("c3");
  if (!(b.lambda_s - b.c_lambda_s * b.lambda_o > 0.0)) {
    failures.push_back("lambda_s > C_ls lambda_o");
  }
  if (!r.cond_iso.satisfied) failures.push_back("cond_iso");
  if (!(b.c_lambda_o > 1.0)) failures.push_back("C_lambda_o > 1");
  if (!(b.c_r > 0.0)) failures.push_back("C_r > 0");
  return failures;
}

}  // namespace rlasso

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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "rlasso/parallel.h"
#include "rlasso/solver.h"
#include "rlasso/text.h"

namespace rlasso {
namespace {

constexpr double kE = 2.718281828459045235360287;
// Relative slack for floating-point ties when comparing the two sides of an
// inequality; far below any statistical effect.
constexpr double kSlack = 1e-12;

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

double dbl(long v) { return static_cast<double>(v); }

bool holds_leq(double lhs, double rhs) {
  return lhs <= rhs + kSlack * std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

struct Design {
  Matrix root;
  double rho2 = 1.0;
};

Design make_design(const VerifyParams& p) {
  Design design;
  const Matrix sigma = covariance_matrix(p.covariance, p.d);
  design.root = covariance_root(sigma);
  design.rho2 = sigma.diagonal().maxCoeff();
  return design;
}

Vector sparse_gaussian(Index size, Index k, Rng& rng) {
  Vector v = Vector::Zero(size);
  for (Index j : sample_without_replacement(size, std::min(k, size), rng)) {
    v(j) = rng.normal();
  }
  return v;
}

// The v-probe family documented in the header.
std::vector<Vector> v_probes(const VerifyParams& p, const Matrix& Z,
                             const Design& design, Rng& rng) {
  const Index d = Z.cols();
  std::vector<Vector> probes;
  for (int k = 0; k < p.random_probes; ++k) probes.push_back(rng.normal_vector(d));
  for (int k = 0; k < p.random_probes; ++k) {
    probes.push_back(sparse_gaussian(d, k % 2 == 0 ? 1 : p.s, rng));
  }
  for (Index j = 0; j < d; ++j) probes.push_back(Vector::Unit(d, j));
  Eigen::BDCSVD<Matrix> svd(Z, Eigen::ComputeThinV);
  probes.push_back(svd.matrixV().col(svd.matrixV().cols() - 1));
  if (p.fit_probe) {
    ProblemInstance inst;
    inst.X = Z;
    inst.sigma_root = design.root;
    inst.beta_star = Vector::Zero(d);
    for (Index j : sample_without_replacement(d, std::min<Index>(p.s, d), rng)) {
      inst.beta_star(j) = rng.rademacher();
    }
    inst.y = Z * inst.beta_star + p.sigma * rng.normal_vector(Z.rows());
    const PenaltyPair penalties = nguyen_tran_tuning(
        Z.rows(), std::max<long>(d, 2), std::max(p.sigma, 1e-3),
        std::sqrt(design.rho2));
    SolverConfig config;
    config.max_iterations = 2000;
    const FitResult fit = solve_huber_lasso(inst, penalties, config);
    const Vector v = inst.beta_star - fit.beta_hat;
    if (v.norm() > 0.0) probes.push_back(v);
  }
  return probes;
}

std::vector<long> sparsity_levels(const VerifyParams& p) {
  if (!p.sparsity_levels.empty()) return p.sparsity_levels;
  std::vector<long> levels = {1, p.s, std::max<long>(1, p.n / 10), p.n};
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  return levels;
}

// m largest-magnitude entries of w kept (ties to the smaller index).
Vector top_entries(const Vector& w, long m) {
  std::vector<Index> order(static_cast<std::size_t>(w.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return std::abs(w(a)) > std::abs(w(b));
  });
  Vector out = Vector::Zero(w.size());
  for (long k = 0; k < m && k < w.size(); ++k) {
    out(order[static_cast<std::size_t>(k)]) = w(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

double lambda_o_for(const VerifyParams& p) {
  if (p.lambda_o) return *p.lambda_o;
  return 2.0 * std::sqrt(2.0 * p.sigma * p.sigma * std::log(dbl(p.n) / p.delta) /
                         dbl(p.n));
}

// Runs `trial(t, rng)` for every trial in parallel; returns the failures.
template <typename Trial>
long count_failures(long trials, std::uint64_t master, Trial trial) {
  std::vector<char> failed(static_cast<std::size_t>(trials), 0);
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
    Rng rng(derive_seed(master, t));
    failed[t] = trial(t, rng) ? 0 : 1;
  });
  return std::accumulate(failed.begin(), failed.end(), 0L);
}

}  // namespace

double wilson_halfwidth(double p, long trials, double z) {
  require(trials > 0, "wilson_halfwidth: trials must be positive");
  const double nn = dbl(trials);
  const double z2 = z * z;
  return z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / (1.0 + z2 / nn);
}

bool CoverageRecord::passed() const {
  return empirical_coverage >= nominal_level - wilson_halfwidth;
}

CoverageRecord make_coverage_record(std::string id, long trials, long failures,
                                    double nominal_level, nlohmann::json params) {
  require(trials > 0, "coverage: trials must be positive");
  require(failures >= 0 && failures <= trials, "coverage: failures out of range");
  CoverageRecord r;
  r.inequality_id = std::move(id);
  r.trials = trials;
  r.failures = failures;
  r.nominal_level = nominal_level;
  r.empirical_coverage = 1.0 - dbl(failures) / dbl(trials);
  r.wilson_halfwidth = wilson_halfwidth(r.empirical_coverage, trials);
  r.params = std::move(params);
  return r;
}

WidthEstimate estimate_width_sigma_ball(const Matrix& sigma_matrix, long trials,
                                        Rng& rng) {
  require(trials >= 2, "estimate_width_sigma_ball: need at least 2 trials");
  const Matrix root = covariance_root(sigma_matrix);
  const Index d = sigma_matrix.rows();
  double sum = 0.0;
  double sum_sq = 0.0;
  for (long t = 0; t < trials; ++t) {
    const double value = (root * rng.normal_vector(d)).cwiseAbs().maxCoeff();
    sum += value;
    sum_sq += value * value;
  }
  WidthEstimate w;
  w.set_id = "sigma_l1_ball";
  w.trials = trials;
  w.estimate = sum / dbl(trials);
  const double var = std::max(0.0, (sum_sq - sum * w.estimate) / dbl(trials - 1));
  w.std_error = std::sqrt(var / dbl(trials));
  w.bound = std::sqrt(2.0 * sigma_matrix.diagonal().maxCoeff() * std::log(dbl(d)));
  return w;
}

double l1l2_support(const Vector& g, double a, double b) {
  require(a >= 0.0 && b >= 0.0, "l1l2_support: radii must be nonnegative");
  std::vector<double> m(static_cast<std::size_t>(g.size()));
  for (Index i = 0; i < g.size(); ++i) m[static_cast<std::size_t>(i)] = std::abs(g(i));
  std::sort(m.begin(), m.end(), std::greater<>());
  while (!m.empty() && m.back() == 0.0) m.pop_back();
  if (m.empty() || a == 0.0 || b == 0.0) return 0.0;
  // The l1 ball already sits inside the l2 ball.
  if (a <= b) return a * m.front();
  double s1 = 0.0;
  double s2 = 0.0;
  for (double x : m) {
    s1 += x;
    s2 += x * x;
  }
  // Pure l2 optimum x = b g / ||g|| is feasible.
  if (b * s1 <= a * std::sqrt(s2)) return b * std::sqrt(s2);

  // Otherwise x is proportional to soft(|g|, t) with ||x||_1 / ||x||_2 = a / b.
  // On the piece where exactly the k largest entries exceed t, with
  // S1 = sum of those entries and S2 = sum of their squares,
  //   b^2 (S1 - k t)^2 = a^2 (S2 - 2 t S1 + k t^2).
  const double q = (a / b) * (a / b);
  s1 = 0.0;
  s2 = 0.0;
  const auto count = m.size();
  for (std::size_t k = 1; k <= count; ++k) {
    s1 += m[k - 1];
    s2 += m[k - 1] * m[k - 1];
    const double hi = m[k - 1];
    const double lo = k < count ? m[k] : 0.0;
    const double kk = static_cast<double>(k);
    const auto ratio_sq = [&](double t) {
      const double l1 = s1 - kk * t;
      const double l2 = s2 - 2.0 * t * s1 + kk * t * t;
      return l2 > 0.0 ? l1 * l1 / l2 : 1.0;
    };
    // ratio decreases in t; the root lies on this piece iff
    // ratio(hi) <= q <= ratio(lo).
    if (ratio_sq(lo) < q) continue;
    const double A = kk * kk - q * kk;
    const double B = -2.0 * kk * s1 + 2.0 * q * s1;
    const double C = s1 * s1 - q * s2;
    double t;
    if (std::abs(A) < 1e-14 * std::max(1.0, kk * kk)) {
      t = -C / B;
    } else {
      const double disc = std::max(0.0, B * B - 4.0 * A * C);
      const double r1 = (-B - std::sqrt(disc)) / (2.0 * A);
      const double r2 = (-B + std::sqrt(disc)) / (2.0 * A);
      const auto dist = [&](double r) {
        return r < lo ? lo - r : (r > hi ? r - hi : 0.0);
      };
      t = dist(r1) <= dist(r2) ? r1 : r2;
    }
    t = std::clamp(t, lo, hi);
    const double norm = std::sqrt(std::max(0.0, s2 - 2.0 * t * s1 + kk * t * t));
    if (norm == 0.0) return a * m.front();
    return b * (s2 - t * s1) / norm;
  }
  return a * m.front();
}

WidthEstimate estimate_width_l1l2(const Vector& u, long trials, Rng& rng) {
  require(trials >= 2, "estimate_width_l1l2: need at least 2 trials");
  require(u.size() > 0 && u.cwiseAbs().maxCoeff() > 0.0,
          "estimate_width_l1l2: u must be nonzero");
  const double a = u.lpNorm<1>();
  const double b = u.norm();
  const Index n = u.size();
  double sum = 0.0;
  double sum_sq = 0.0;
  for (long t = 0; t < trials; ++t) {
    const double value = l1l2_support(rng.normal_vector(n), a, b);
    sum += value;
    sum_sq += value * value;
  }
  WidthEstimate w;
  w.set_id = "l1_l2_intersection";
  w.trials = trials;
  w.estimate = sum / dbl(trials);
  const double var = std::max(0.0, (sum_sq - sum * w.estimate) / dbl(trials - 1));
  w.std_error = std::sqrt(var / dbl(trials));
  w.bound = a * std::sqrt(2.0 * std::log(dbl(n)));
  const double m = static_cast<double>((u.array() != 0.0).count());
  w.sparse_bound =
      4.0 * std::sqrt(kE) * std::sqrt(m) * std::sqrt(4.0 + std::log(dbl(n) / m)) * b;
  return w;
}

nlohmann::json VerifyParams::to_json() const {
  nlohmann::json j = {{"n", n},
                      {"d", d},
                      {"s", s},
                      {"delta", delta},
                      {"sigma", sigma},
                      {"covariance", covariance_kind_name(covariance.kind)},
                      {"r", covariance.r}};
  if (lambda_o) j["lambda_o"] = *lambda_o;
  return j;
}

CoverageRecord verify_inequality(std::string_view id, const VerifyParams& p,
                                 long trials, Rng& rng) {
  require(trials >= 1, "verify: trials must be >= 1");
  require(p.n >= 2 && p.d >= 1 && p.s >= 1, "verify: invalid sizes");
  require(p.delta > 0.0 && p.delta < 1.0, "verify: delta must lie in (0, 1)");
  require(p.sigma > 0.0, "verify: sigma must be > 0");
  const double n = dbl(p.n);
  const double d = dbl(p.d);
  const double sigma2 = p.sigma * p.sigma;
  const double delta = p.delta;
  const std::uint64_t master = rng();
  nlohmann::json params = p.to_json();
  const Design design = make_design(p);
  const auto draw_x = [&](Rng& r) {
    return sample_gaussian_matrix_from_root(p.n, design.root, r);
  };

  if (id == "noise_supnorm" || id == "xtxi_supnorm") {
    require(n >= 2.0 * std::log(d / delta),
            "verify " + std::string(id) + ": requires n >= 2 log(d / delta)");
    const double nominal = std::pow(1.0 - delta, 3);
    if (id == "noise_supnorm") {
      const double rhs = std::sqrt(2.0 * sigma2 * std::log(n / delta) / n);
      const long failures = count_failures(trials, master, [&](std::size_t, Rng& r) {
        const Vector xi = p.sigma * r.normal_vector(p.n);
        return holds_leq(xi.cwiseAbs().maxCoeff() / std::sqrt(n), rhs);
      });
      params["rhs"] = rhs;
      return make_coverage_record(std::string(id), trials, failures, nominal, params);
    }
    const double rhs =
        2.0 * std::sqrt(2.0 * sigma2 * design.rho2 * std::log(d / delta) / n);
    const long failures = count_failures(trials, master, [&](std::size_t, Rng& r) {
      const Matrix X = draw_x(r);
      const Vector xi = p.sigma * r.normal_vector(p.n);
      return holds_leq((X.transpose() * xi / n).cwiseAbs().maxCoeff(), rhs);
    });
    params["rhs"] = rhs;
    return make_coverage_record(std::string(id), trials, failures, nominal, params);
  }

  if (id == "bernstein_z") {
    require(std::sqrt(std::log(d / delta) / n) <= std::sqrt(3.0) - std::sqrt(2.0),
            "verify bernstein_z: condition (c2) fails");
    const double lambda_o = lambda_o_for(p);
    require(lambda_o > 0.0, "verify bernstein_z: lambda_o must be > 0");
    const double c_z = std::sqrt(3.0 * design.rho2 * sigma2 * std::log(d / delta) /
                                 (n * lambda_o * lambda_o));
    const double scale = lambda_o * std::sqrt(n);
    const long failures = count_failures(trials, master, [&](std::size_t, Rng& r) {
      const Matrix X = draw_x(r);
      const Vector xi = p.sigma * r.normal_vector(p.n);
      Vector psi(p.n);
      for (Index i = 0; i < psi.size(); ++i) psi(i) = huber_psi(xi(i) / scale);
      const Vector z = X.transpose() * psi;
      return holds_leq(z.cwiseAbs().maxCoeff() / std::sqrt(n), c_z);
    });
    params["lambda_o"] = lambda_o;
    params["rhs"] = c_z;
    return make_coverage_record("bernstein_z", trials, failures, 1.0 - delta, params);
  }

  if (id == "chisq") {
    const double l = std::log(1.0 / delta);
    require(2.0 * std::sqrt(n * l) + 2.0 * l <= n, "verify chisq: condition (c3) fails");
    const long failures = count_failures(trials, master, [&](std::size_t, Rng& r) {
      const Vector xi = p.sigma * r.normal_vector(p.n);
      return holds_leq(xi.squaredNorm() / n, 2.0 * sigma2);
    });
    params["rhs"] = 2.0 * sigma2;
    return make_coverage_record("chisq", trials, failures, 1.0 - delta, params);
  }

  if (id == "prop3") {
    require(delta <= 1.0 / 7.0 && p.n >= 100,
            "verify prop3: condition (c1) fails (delta <= 1/7, n >= 100)");
    const double a1 = a1_value(p.n, delta);
    const double width_term = 1.2 * std::sqrt(2.0 * design.rho2 * std::log(d) / n);
    const long failures = count_failures(trials, master, [&](std::size_t, Rng& r) {
      const Matrix Z = draw_x(r);
      for (const Vector& v : v_probes(p, Z, design, r)) {
        const double lhs = (Z * v).norm() / std::sqrt(n);
        const double rhs = a1 * (design.root * v).norm() - width_term * v.lpNorm<1>();
        if (!holds_leq(rhs, lhs)) return false;
      }
      return true;
    });
    params["a1"] = a1;
    return make_coverage_record("prop3", trials, failures, 1.0 - delta, params);
  }

  if (id == "prop4") {
    require(delta <= 1.0 / 7.0, "verify prop4: requires delta in (0, 1/7]");
    const double b1 = b1_value(p.n, delta);
    const double width_term = 1.2 * std::sqrt(2.0 * design.rho2 * std::log(d) / n);
    const std::vector<long> levels = sparsity_levels(p);
    for (long m : levels) require(m >= 1 && m <= p.n, "verify prop4: bad sparsity level");
    const long failures = count_failures(trials, master, [&](std::size_t, Rng& r) {
      const Matrix Z = draw_x(r);
      for (const Vector& v : v_probes(p, Z, design, r)) {
        const Vector zv = Z * v / std::sqrt(n);
        const double sv = (design.root * v).norm();
        const double l1v = v.lpNorm<1>();
        for (long m : levels) {
          const Vector aligned = top_entries(zv, m);
          const Vector signs = aligned.unaryExpr(
              [](double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); });
          for (const Vector* u : {&aligned, &signs}) {
            const double mu = static_cast<double>((u->array() != 0.0).count());
            if (mu == 0.0) continue;
            const double u2 = u->norm();
            const double lhs = std::abs(u->dot(zv));
            const double rhs = sv * u2 * b1 + width_term * l1v * u2 +
                               4.8 * std::sqrt(kE) * sv * u2 * std::sqrt(mu / n) *
                                   std::sqrt(4.0 + std::log(n / mu));
            if (!holds_leq(lhs, rhs)) return false;
          }
        }
      }
      return true;
    });
    params["b1"] = b1;
    return make_coverage_record("prop4", trials, failures, 1.0 - delta, params);
  }

  throw std::invalid_argument("verify: unknown inequality '" + std::string(id) + "'");
}

CoverageRecord verify_atp(const VerifyParams& p, long trials, Rng& rng) {
  require(trials >= 1, "verify atp: trials must be >= 1");
  require(p.n >= 3 && p.d >= 1, "verify atp: invalid sizes");
  require(p.delta > 0.0 && p.delta < 1.0, "verify atp: delta must lie in (0, 1)");
  const double n = dbl(p.n);
  const double c1 = c_n_delta_value(a1_value(p.n, p.delta), b1_value(p.n, p.delta));
  require(c1 > 0.0, "verify atp: C_n_delta must be > 0");
  const Design design = make_design(p);
  const double c2 = 3.6 * std::sqrt(2.0 * design.rho2 * std::log(dbl(p.d)) / n);
  const double c3 = 2.4 * std::sqrt(2.0 * std::log(n) / n);
  const std::uint64_t master = rng();
  std::atomic<long> hard_failures{0};

  const auto holds = [&](const Matrix& Z, const Vector& v, const Vector& u) {
    const double lhs = (Z * v / std::sqrt(n) + u).norm();
    const double rhs = c1 * ((design.root * v).norm() + u.norm()) -
                       c2 * v.lpNorm<1>() - c3 * u.lpNorm<1>();
    return holds_leq(rhs, lhs);
  };
  const long failures = count_failures(trials, master, [&](std::size_t, Rng& r) {
    const Matrix Z = sample_gaussian_matrix_from_root(p.n, design.root, r);
    bool ok = true;
    const Vector zero_u = Vector::Zero(p.n);
    for (const Vector& v : v_probes(p, Z, design, r)) {
      const Vector dense_u = r.normal_vector(p.n) / std::sqrt(n);
      const Vector sparse_u = sparse_gaussian(p.n, std::max<long>(1, p.s), r);
      const Vector hard_u = -(Z * v) / std::sqrt(n);
      ok = ok && holds(Z, v, zero_u) && holds(Z, v, dense_u) && holds(Z, v, sparse_u);
      if (!holds(Z, v, hard_u)) {
        hard_failures.fetch_add(1);
        ok = false;
      }
    }
    const Vector zero_v = Vector::Zero(p.d);
    ok = ok && holds(Z, zero_v, r.normal_vector(p.n)) && holds(Z, zero_v, zero_u);
    return ok;
  });
  nlohmann::json params = p.to_json();
  params["c1"] = c1;
  params["c2"] = c2;
  params["c3"] = c3;
  params["hard_probe_failures"] = hard_failures.load();
  return make_coverage_record("atp", trials, failures, 1.0 - p.delta, params);
}

int measure_c_cut(const ProblemInstance& instance, const FitResult& fit,
                  double lambda_o) {
  require(instance.has_truth(), "measure_c_cut: instance has no ground truth");
  const Vector r = residual_scaled(instance, fit.beta_hat, lambda_o);
  int count = 0;
  for (Index i = 0; i < r.size(); ++i) {
    if (instance.theta_star(i) == 0.0 && std::abs(r(i)) > 1.0) ++count;
  }
  return count;
}

double c_cut_bound(const TuningBundle& bundle, const FitResult& fit,
                   const ProblemInstance& instance) {
  require(instance.has_truth(), "c_cut_bound: instance has no ground truth");
  require(bundle.c_r > 0.0, "c_cut_bound: C_r must be > 0");
  const TuningInputs& in = bundle.inputs;
  require(in.n == instance.n() && in.d == instance.d(),
          "c_cut_bound: bundle and instance sizes differ");
  const double g_rest =
      g_function(in.n - in.o, in.n, in.s, in.d, in.delta, in.rho, bundle.c_kappa);
  const double error = instance.sigma_norm(instance.beta_star - fit.beta_hat);
  const double lo = bundle.lambda_o;
  return 2.0 * bundle.c_r / (lo * lo) *
         (std::sqrt(2.0 * in.sigma * in.sigma) * g_rest +
          std::sqrt(dbl(in.o)) * lo * bundle.g_o +
          std::sqrt(dbl(in.s)) * bundle.c_kappa * bundle.lambda_s) *
         error;
}

CoverageRecord verify_c_cut(const InstanceSpec& point, TuningInputs inputs,
                            long trials, std::uint64_t seed) {
  point.validate();
  require(trials >= 1, "verify_c_cut: trials must be >= 1");
  require(point.sigma > 0.0, "verify_c_cut: sigma must be > 0");
  inputs.n = point.n;
  inputs.d = point.d;
  inputs.s = point.s;
  inputs.o = point.o;
  inputs.sigma = point.sigma;
  inputs.rho = std::sqrt(
      covariance_matrix(point.covariance, point.d).diagonal().maxCoeff());
  const TuningResult tuning = paper_tuning(inputs);
  const std::vector<std::string> waived =
      c_cut_prerequisite_failures(tuning.bundle);
  require(tuning.bundle.c_r > 0.0, "verify_c_cut: C_r > 0 fails");
  std::vector<double> ratio(static_cast<std::size_t>(trials), 0.0);
  std::vector<long> cuts(static_cast<std::size_t>(trials), 0);
  std::vector<char> failed(static_cast<std::size_t>(trials), 0);
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
    InstanceSpec spec = point;
    spec.seed = derive_seed(seed, t);
    const ProblemInstance instance = generate_instance(spec);
    const FitResult fit = solve_huber_lasso(instance, tuning.penalties);
    const int cut = measure_c_cut(instance, fit, tuning.penalties.lambda_o);
    const double bound = c_cut_bound(tuning.bundle, fit, instance);
    cuts[t] = cut;
    ratio[t] = bound > 0.0 ? cut / bound : (cut > 0 ? INFINITY : 0.0);
    failed[t] = holds_leq(cut, bound) ? 0 : 1;
  });
  nlohmann::json params = to_json(point);
  params.erase("seed");
  params["delta"] = inputs.delta;
  params["c_lambda_o"] = tuning.bundle.c_lambda_o;
  params["lambda_s"] = tuning.penalties.lambda_s;
  params["lambda_o"] = tuning.penalties.lambda_o;
  params["max_c_cut"] = *std::max_element(cuts.begin(), cuts.end());
  params["max_ratio"] = *std::max_element(ratio.begin(), ratio.end());
  params["prerequisite_failures"] = waived;
  return make_coverage_record(
      "c_cut", trials, std::accumulate(failed.begin(), failed.end(), 0L), 0.95,
      params);
}

double estimate_re_kappa(const Matrix& sigma_matrix, long s, double c0,
                         long samples, Rng& rng) {
  const Index d = sigma_matrix.rows();
  require(d >= 1 && sigma_matrix.cols() == d, "estimate_re_kappa: bad covariance");
  require(s >= 1 && s <= d, "estimate_re_kappa: s must lie in [1, d]");
  require(c0 > 0.0, "estimate_re_kappa: c0 must be > 0");
  require(samples >= 1, "estimate_re_kappa: samples must be >= 1");
  const Matrix root = covariance_root(sigma_matrix);
  const bool refine = d <= 8 && s <= 2;

  const auto ratio = [&](const Vector& v, const std::vector<char>& in_j) {
    double vj = 0.0;
    for (Index i = 0; i < d; ++i) {
      if (in_j[static_cast<std::size_t>(i)]) vj += v(i) * v(i);
    }
    return (root * v).norm() / std::sqrt(vj);
  };
  // Shrinks v_{J^c} so the cone constraint holds.
  const auto project = [&](Vector& v, const std::vector<char>& in_j) {
    double l1j = 0.0;
    double l1c = 0.0;
    for (Index i = 0; i < d; ++i) {
      (in_j[static_cast<std::size_t>(i)] ? l1j : l1c) += std::abs(v(i));
    }
    if (l1c > c0 * l1j && l1c > 0.0) {
      const double f = c0 * l1j / l1c;
      for (Index i = 0; i < d; ++i) {
        if (!in_j[static_cast<std::size_t>(i)]) v(i) *= f;
      }
    }
  };

  double best = std::numeric_limits<double>::infinity();
  for (long k = 0; k < samples; ++k) {
    const auto size = static_cast<Index>(1 + rng.below(static_cast<std::uint64_t>(s)));
    std::vector<char> in_j(static_cast<std::size_t>(d), 0);
    Vector v = Vector::Zero(d);
    for (Index j : sample_without_replacement(d, size, rng)) {
      in_j[static_cast<std::size_t>(j)] = 1;
      v(j) = rng.normal();
    }
    if (v.norm() == 0.0) continue;
    // Every fourth sample stays J-supported; the rest spend a uniform
    // fraction of the l1 budget, alternating a random direction with the
    // direction -Sigma_{J^c J} v_J that lowers ||Sigma^{1/2} v|| fastest.
    const double fraction = k % 4 == 0 ? 0.0 : rng.uniform();
    if (fraction > 0.0 && size < d) {
      Vector w = k % 2 == 0 ? rng.normal_vector(d) : Vector(-(sigma_matrix * v));
      for (Index i = 0; i < d; ++i) {
        if (in_j[static_cast<std::size_t>(i)]) w(i) = 0.0;
      }
      const double l1w = w.lpNorm<1>();
      if (l1w > 0.0) v += w * (fraction * c0 * v.lpNorm<1>() / l1w);
    }
    double value = ratio(v, in_j);
    if (refine) {
      // (1+1) evolution strategy with the one-fifth success rule.
      double step = 0.3 * v.norm();
      for (int it = 0; it < 300 && step > 1e-9 * v.norm(); ++it) {
        Vector trial = v + step * rng.normal_vector(d);
        project(trial, in_j);
        double vj = 0.0;
        for (Index i = 0; i < d; ++i) {
          if (in_j[static_cast<std::size_t>(i)]) vj += trial(i) * trial(i);
        }
        if (vj == 0.0) continue;
        const double candidate = ratio(trial, in_j);
        if (candidate < value) {
          v = trial;
          value = candidate;
          step *= 1.5;
        } else {
          step *= 0.9;
        }
      }
    }
    best = std::min(best, value);
  }
  return best;
}

std::vector<CoverageRecord> run_concentration_suite(
    const std::vector<long>& ns, const std::vector<double>& deltas, long d,
    long trials, std::uint64_t seed) {
  static const char* const kIds[] = {"noise_supnorm", "xtxi_supnorm", "chisq",
                                     "bernstein_z"};
  std::vector<CoverageRecord> records;
  std::uint64_t index = 0;
  for (const char* id : kIds) {
    for (long n : ns) {
      for (double delta : deltas) {
        VerifyParams p;
        p.n = n;
        p.d = d;
        p.delta = delta;
        Rng rng(derive_seed(seed, index++));
        records.push_back(verify_inequality(id, p, trials, rng));
      }
    }
  }
  return records;
}

std::string coverage_csv_header() {
  return "inequality_id,trials,failures,nominal_level,empirical_coverage,"
         "wilson_halfwidth,passed,params\n";
}

std::string coverage_csv_row(const CoverageRecord& r) {
  return csv_escape(r.inequality_id) + "," + std::to_string(r.trials) + "," +
         std::to_string(r.failures) + "," + format_double(r.nominal_level) + "," +
         format_double(r.empirical_coverage) + "," +
         format_double(r.wilson_halfwidth) + "," + (r.passed() ? "true" : "false") +
         "," + csv_escape(r.params.dump()) + "\n";
}

std::string width_csv_header() {
  return "set_id,trials,estimate,std_error,bound,sparse_bound\n";
}

std::string width_csv_row(const WidthEstimate& w) {
  return csv_escape(w.set_id) + "," + std::to_string(w.trials) + "," +
         format_double(w.estimate) + "," + format_double(w.std_error) + "," +
         format_double(w.bound) + "," +
         (w.sparse_bound ? format_double(*w.sparse_bound) : std::string()) + "\n";
}

}  // namespace rlasso

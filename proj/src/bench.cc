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

#include "rlasso/bench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "rlasso/parallel.h"
#include "rlasso/random.h"
#include "rlasso/text.h"
#include "rlasso/tuning.h"

namespace rlasso {
namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

constexpr double kSupportThreshold = 1e-8;

const char* const kCsvHeader =
    "axis,axis_value,rep,method,error_sigma,error_l2,error_l1,support_f1,"
    "theta_support_f1,c_cut,iterations,wall_ms,r_theory";

double metric_value(const ExperimentRow& row, std::string_view metric) {
  if (metric == "error_sigma") return row.error_sigma;
  if (metric == "error_l2") return row.error_l2;
  if (metric == "error_l1") return row.error_l1;
  if (metric == "support_f1") return row.support_f1;
  if (metric == "theta_support_f1") return row.theta_support_f1;
  if (metric == "c_cut") return static_cast<double>(row.c_cut);
  if (metric == "iterations") return static_cast<double>(row.iterations);
  throw std::invalid_argument("unknown metric '" + std::string(metric) + "'");
}

ExperimentRow fit_one(const ExperimentSpec& spec, const ProblemInstance& inst,
                      Method method, long axis_value, long rep, double r_theory) {
  const auto start = std::chrono::steady_clock::now();
  const double rho = std::sqrt(inst.rho_squared());
  const PenaltyPair nt = nguyen_tran_tuning(inst.n(), inst.d(), inst.sigma, rho,
                                            spec.gamma);
  Vector beta_hat;
  Vector theta_hat;
  long iterations = 0;
  bool converged = true;
  double lambda_o = nt.lambda_o;
  switch (method) {
    case Method::kPaper:
    case Method::kNguyenTran: {
      PenaltyPair penalties = nt;
      if (method == Method::kPaper) {
        TuningInputs in;
        in.n = inst.n();
        in.d = inst.d();
        in.s = spec.fixed.s;
        in.o = static_cast<long>(inst.outlier_index.size());
        if (spec.axis == SweepAxis::kS) in.s = axis_value;
        if (spec.axis == SweepAxis::kO) in.o = axis_value;
        in.delta = spec.delta;
        in.sigma = inst.sigma;
        in.rho = rho;
        in.c_lambda_o = spec.c_lambda_o;
        in.kappa = spec.kappa;
        in.c0 = spec.c0;
        penalties = paper_tuning(in).penalties;
      }
      const FitResult fit = solve_huber_lasso(inst, penalties, spec.solver);
      beta_hat = fit.beta_hat;
      theta_hat = fit.theta_hat;
      iterations = fit.iterations;
      converged = fit.converged;
      lambda_o = penalties.lambda_o;
      break;
    }
    case Method::kPlainLasso: {
      const LassoFit fit = solve_plain_lasso(inst.X, inst.y, nt.lambda_s, spec.solver);
      beta_hat = fit.beta;
      theta_hat = Vector::Zero(inst.n());
      iterations = fit.iterations;
      converged = fit.converged;
      break;
    }
  }
  ExperimentRow row;
  row.axis = std::string(axis_name(spec.axis));
  row.axis_value = axis_value;
  row.rep = rep;
  row.method = std::string(method_name(method));
  const Vector diff = beta_hat - inst.beta_star;
  row.error_sigma = inst.sigma_norm(diff);
  row.error_l2 = diff.norm();
  row.error_l1 = diff.lpNorm<1>();
  row.support_f1 = support_f1(beta_hat, inst.beta_star);
  row.theta_support_f1 = support_f1(theta_hat, inst.theta_star);
  const Vector r = residual_scaled(inst, beta_hat, lambda_o);
  for (Index i = 0; i < r.size(); ++i) {
    if (inst.theta_star(i) == 0.0 && std::abs(r(i)) > 1.0) ++row.c_cut;
  }
  row.iterations = iterations;
  row.converged = converged;
  row.r_theory = r_theory;
  if (spec.record_timing) {
    row.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  }
  return row;
}

std::string svg_number(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", v);
  return buffer;
}

std::string label_number(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.4g", v);
  return buffer;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

std::string_view axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kN:
      return "n";
    case SweepAxis::kO:
      return "o";
    case SweepAxis::kS:
      return "s";
    case SweepAxis::kD:
      return "d";
  }
  return "n";
}

SweepAxis parse_axis(std::string_view name) {
  for (auto a : {SweepAxis::kN, SweepAxis::kO, SweepAxis::kS, SweepAxis::kD}) {
    if (axis_name(a) == name) return a;
  }
  throw std::invalid_argument("unknown sweep axis '" + std::string(name) + "'");
}

std::string_view method_name(Method method) {
  switch (method) {
    case Method::kPaper:
      return "paper";
    case Method::kNguyenTran:
      return "nguyen_tran";
    case Method::kPlainLasso:
      return "plain_lasso";
  }
  return "paper";
}

Method parse_method(std::string_view name) {
  for (auto m : {Method::kPaper, Method::kNguyenTran, Method::kPlainLasso}) {
    if (method_name(m) == name) return m;
  }
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

void ExperimentSpec::validate() const {
  require(!axis_values.empty(), "experiment: axis_values must not be empty");
  for (std::size_t i = 1; i < axis_values.size(); ++i) {
    require(axis_values[i] > axis_values[i - 1],
            "experiment: axis_values must be strictly increasing");
  }
  require(repetitions >= 1, "experiment: repetitions must be >= 1");
  require(!methods.empty(), "experiment: at least one method is required");
  require(delta > 0.0 && delta <= 1.0, "experiment: delta must lie in (0, 1]");
  require(c_lambda_o > 0.0, "experiment: c_lambda_o must be > 0");
  require(gamma > 0.0 && gamma <= 1.0, "experiment: gamma must lie in (0, 1]");
  solver.validate();
  for (std::size_t p = 0; p < axis_values.size(); ++p) {
    const InstanceSpec cell = cell_instance_spec(*this, p, 0);
    cell.validate();
    require(cell.n >= 3 && cell.d >= 3 && cell.s >= 1,
            "experiment: every point needs n >= 3, d >= 3 and s >= 1");
    require(cell.sigma > 0.0, "experiment: sigma must be > 0");
  }
}

nlohmann::json to_json(const ExperimentSpec& spec) {
  nlohmann::json methods = nlohmann::json::array();
  for (Method m : spec.methods) methods.push_back(method_name(m));
  nlohmann::json fixed = to_json(spec.fixed);
  fixed.erase("seed");
  return {{"axis", axis_name(spec.axis)},
          {"axis_values", spec.axis_values},
          {"fixed", fixed},
          {"repetitions", spec.repetitions},
          {"methods", methods},
          {"seed", spec.master_seed},
          {"delta", spec.delta},
          {"c_lambda_o", spec.c_lambda_o},
          {"gamma", spec.gamma},
          {"kappa", spec.kappa},
          {"c0", spec.c0},
          {"record_timing", spec.record_timing},
          {"solver",
           {{"max_iterations", spec.solver.max_iterations},
            {"tolerance", spec.solver.tolerance},
            {"kkt_relative", spec.solver.kkt_relative},
            {"step_rule",
             spec.solver.step_rule == StepRule::kFixed ? "fixed" : "backtracking"},
            {"acceleration", spec.solver.acceleration}}}};
}

ExperimentSpec experiment_spec_from_json(const nlohmann::json& j) {
  require(j.is_object(), "experiment: expected a JSON object");
  ExperimentSpec spec;
  try {
    spec.axis = parse_axis(j.value("axis", std::string("n")));
    if (j.contains("axis_values")) {
      spec.axis_values = j.at("axis_values").get<std::vector<long>>();
    }
    if (j.contains("fixed")) spec.fixed = instance_spec_from_json(j.at("fixed"));
    spec.repetitions = j.value("repetitions", spec.repetitions);
    if (j.contains("methods")) {
      spec.methods.clear();
      for (const auto& m : j.at("methods")) {
        spec.methods.push_back(parse_method(m.get<std::string>()));
      }
    }
    spec.master_seed = j.value("seed", spec.master_seed);
    spec.delta = j.value("delta", spec.delta);
    spec.c_lambda_o = j.value("c_lambda_o", spec.c_lambda_o);
    spec.gamma = j.value("gamma", spec.gamma);
    spec.kappa = j.value("kappa", spec.kappa);
    spec.c0 = j.value("c0", spec.c0);
    spec.record_timing = j.value("record_timing", spec.record_timing);
    if (j.contains("solver")) {
      const auto& s = j.at("solver");
      spec.solver.max_iterations = s.value("max_iterations", spec.solver.max_iterations);
      spec.solver.tolerance = s.value("tolerance", spec.solver.tolerance);
      spec.solver.kkt_relative = s.value("kkt_relative", spec.solver.kkt_relative);
      const std::string rule = s.value("step_rule", std::string("backtracking"));
      require(rule == "fixed" || rule == "backtracking",
              "experiment: step_rule must be 'fixed' or 'backtracking'");
      spec.solver.step_rule =
          rule == "fixed" ? StepRule::kFixed : StepRule::kBacktracking;
      spec.solver.acceleration = s.value("acceleration", spec.solver.acceleration);
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("experiment: ") + e.what());
  }
  return spec;
}

InstanceSpec cell_instance_spec(const ExperimentSpec& spec, std::size_t point,
                                long rep) {
  InstanceSpec cell = spec.fixed;
  const long value = spec.axis_values.at(point);
  switch (spec.axis) {
    case SweepAxis::kN:
      cell.n = value;
      break;
    case SweepAxis::kO:
      cell.o = value;
      break;
    case SweepAxis::kS:
      cell.s = value;
      break;
    case SweepAxis::kD:
      cell.d = value;
      break;
  }
  cell.seed = derive_seed(spec.master_seed,
                          static_cast<std::uint64_t>(point) *
                                  static_cast<std::uint64_t>(spec.repetitions) +
                              static_cast<std::uint64_t>(rep));
  return cell;
}

ExperimentRecord run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const std::size_t points = spec.axis_values.size();
  const auto reps = static_cast<std::size_t>(spec.repetitions);
  std::vector<std::vector<ExperimentRow>> cells(points * reps);
  parallel_for(cells.size(), [&](std::size_t c) {
    const std::size_t point = c / reps;
    const long rep = static_cast<long>(c % reps);
    const InstanceSpec cell = cell_instance_spec(spec, point, rep);
    const ProblemInstance inst = generate_instance(cell);
    const double r_theory =
        rate_constants(cell.n, cell.d, cell.s, cell.o, spec.delta).r_total;
    for (Method m : spec.methods) {
      cells[c].push_back(
          fit_one(spec, inst, m, spec.axis_values[point], rep, r_theory));
    }
  });
  ExperimentRecord record;
  record.spec = spec;
  for (auto& cell : cells) {
    for (auto& row : cell) record.rows.push_back(std::move(row));
  }
  return record;
}

double support_f1(const Vector& estimate, const Vector& truth) {
  require(estimate.size() == truth.size(), "support_f1: length mismatch");
  long tp = 0;
  long est = 0;
  long tru = 0;
  for (Index i = 0; i < truth.size(); ++i) {
    const bool a = std::abs(estimate(i)) > kSupportThreshold;
    const bool b = std::abs(truth(i)) > kSupportThreshold;
    est += a;
    tru += b;
    tp += a && b;
  }
  if (est + tru == 0) return 1.0;
  return 2.0 * static_cast<double>(tp) / static_cast<double>(est + tru);
}

double median(std::vector<double> values) {
  require(!values.empty(), "median: no values");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<PointSummary> summarize(const ExperimentRecord& record,
                                    std::string_view metric) {
  std::vector<long> axis_values;
  std::vector<std::string> methods;
  for (const auto& row : record.rows) {
    if (std::find(axis_values.begin(), axis_values.end(), row.axis_value) ==
        axis_values.end()) {
      axis_values.push_back(row.axis_value);
    }
    if (std::find(methods.begin(), methods.end(), row.method) == methods.end()) {
      methods.push_back(row.method);
    }
  }
  std::sort(axis_values.begin(), axis_values.end());
  std::vector<PointSummary> out;
  for (long value : axis_values) {
    for (const auto& method : methods) {
      std::vector<double> values;
      PointSummary summary;
      summary.axis_value = value;
      summary.method = method;
      for (const auto& row : record.rows) {
        if (row.axis_value != value || row.method != method) continue;
        values.push_back(metric_value(row, metric));
        summary.r_theory = row.r_theory;
        summary.unconverged += row.converged ? 0 : 1;
      }
      if (values.empty()) continue;
      summary.cells = static_cast<long>(values.size());
      summary.median = median(std::move(values));
      out.push_back(summary);
    }
  }
  return out;
}

PowerLawFit fit_power_law(const std::vector<double>& x,
                          const std::vector<double>& y) {
  require(x.size() == y.size(), "fit_power_law: length mismatch");
  require(x.size() >= 3, "fit_power_law: need at least 3 points");
  const auto k = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(x[i] > 0.0, "fit_power_law: axis values must be positive");
    require(y[i] > 0.0, "fit_power_law: medians must be positive");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
    mx += lx.back();
    my += ly.back();
  }
  mx /= k;
  my /= k;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  require(sxx > 0.0, "fit_power_law: axis values must not all be equal");
  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  // A flat response is fitted exactly.
  fit.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  return fit;
}

PowerLawFit fit_power_law(const ExperimentRecord& record, std::string_view method,
                          std::string_view metric) {
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& s : summarize(record, metric)) {
    if (s.method != method) continue;
    x.push_back(static_cast<double>(s.axis_value));
    y.push_back(s.median);
  }
  return fit_power_law(x, y);
}

std::string experiment_csv(const ExperimentRecord& record) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : record.rows) {
    out += csv_escape(r.axis) + ',' + std::to_string(r.axis_value) + ',' +
           std::to_string(r.rep) + ',' + csv_escape(r.method) + ',' +
           format_double(r.error_sigma) + ',' + format_double(r.error_l2) + ',' +
           format_double(r.error_l1) + ',' + format_double(r.support_f1) + ',' +
           format_double(r.theta_support_f1) + ',' + std::to_string(r.c_cut) + ',' +
           std::to_string(r.iterations) + ',' + format_double(r.wall_ms) + ',' +
           format_double(r.r_theory) + '\n';
  }
  return out;
}

void emit_csv(const ExperimentRecord& record, const std::string& path) {
  write_text_file(path, experiment_csv(record));
}

ExperimentRecord parse_experiment_csv(std::string_view text) {
  const auto records = parse_csv(text);
  require(!records.empty(), "experiment csv: missing header");
  std::string header;
  for (std::size_t i = 0; i < records[0].size(); ++i) {
    if (i) header += ',';
    header += records[0][i];
  }
  require(header == kCsvHeader, "experiment csv: unexpected header '" + header + "'");
  ExperimentRecord record;
  for (std::size_t k = 1; k < records.size(); ++k) {
    const auto& f = records[k];
    if (f.size() == 1 && f[0].empty()) continue;
    require(f.size() == 13, "experiment csv: row " + std::to_string(k + 1) +
                                " has " + std::to_string(f.size()) + " fields");
    ExperimentRow r;
    r.axis = f[0];
    r.axis_value = static_cast<long>(parse_integer(f[1]));
    r.rep = static_cast<long>(parse_integer(f[2]));
    r.method = f[3];
    r.error_sigma = parse_double(f[4]);
    r.error_l2 = parse_double(f[5]);
    r.error_l1 = parse_double(f[6]);
    r.support_f1 = parse_double(f[7]);
    r.theta_support_f1 = parse_double(f[8]);
    r.c_cut = static_cast<long>(parse_integer(f[9]));
    r.iterations = static_cast<long>(parse_integer(f[10]));
    r.wall_ms = parse_double(f[11]);
    r.r_theory = parse_double(f[12]);
    record.rows.push_back(std::move(r));
  }
  if (!record.rows.empty()) record.spec.axis = parse_axis(record.rows[0].axis);
  return record;
}

std::string experiment_svg(const ExperimentRecord& record) {
  require(!record.rows.empty(), "plot: record is empty");
  const auto summaries = summarize(record, "error_sigma");
  std::vector<std::string> methods;
  for (const auto& s : summaries) {
    if (std::find(methods.begin(), methods.end(), s.method) == methods.end()) {
      methods.push_back(s.method);
    }
  }
  // Theory overlay: one value per axis point.
  std::vector<std::pair<double, double>> theory;
  for (const auto& s : summaries) {
    if (theory.empty() || theory.back().first != static_cast<double>(s.axis_value)) {
      theory.emplace_back(static_cast<double>(s.axis_value), s.r_theory);
    }
  }

  bool log_x = true;
  bool log_y = true;
  double x_min = INFINITY, x_max = -INFINITY, y_min = INFINITY, y_max = -INFINITY;
  const auto include = [&](double x, double y) {
    log_x = log_x && x > 0.0;
    log_y = log_y && y > 0.0;
    x_min = std::min(x_min, x);
    x_max = std::max(x_max, x);
    y_min = std::min(y_min, y);
    y_max = std::max(y_max, y);
  };
  for (const auto& s : summaries) include(static_cast<double>(s.axis_value), s.median);
  for (const auto& t : theory) include(t.first, t.second);
  const auto tx = [&](double v) { return log_x ? std::log10(v) : v; };
  const auto ty = [&](double v) { return log_y ? std::log10(v) : v; };
  double lo_x = tx(x_min), hi_x = tx(x_max), lo_y = ty(y_min), hi_y = ty(y_max);
  if (hi_x - lo_x <= 0.0) {
    lo_x -= 0.5;
    hi_x += 0.5;
  }
  if (hi_y - lo_y <= 0.0) {
    lo_y -= 0.5;
    hi_y += 0.5;
  }
  const double pad_y = 0.05 * (hi_y - lo_y);
  lo_y -= pad_y;
  hi_y += pad_y;

  const double width = 640, height = 440, left = 70, right = 170, top = 30,
               bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  const auto px = [&](double v) { return left + (tx(v) - lo_x) / (hi_x - lo_x) * plot_w; };
  const auto py = [&](double v) {
    return top + plot_h - (ty(v) - lo_y) / (hi_y - lo_y) * plot_h;
  };
  static const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                        "#9467bd", "#8c564b", "#e377c2"};

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"440\" "
         "viewBox=\"0 0 640 440\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"440\" fill=\"white\"/>\n";
  svg += "<rect x=\"" + svg_number(left) + "\" y=\"" + svg_number(top) +
         "\" width=\"" + svg_number(plot_w) + "\" height=\"" + svg_number(plot_h) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  const std::string axis = xml_escape(record.rows.front().axis);
  svg += "<text x=\"" + svg_number(left + plot_w / 2) + "\" y=\"" +
         svg_number(height - 15) + "\" text-anchor=\"middle\" font-size=\"13\">" +
         axis + (log_x ? " (log scale)" : "") + "</text>\n";
  svg += "<text x=\"15\" y=\"" + svg_number(top + plot_h / 2) +
         "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 15 " +
         svg_number(top + plot_h / 2) + ")\">median error_sigma" +
         (log_y ? " (log scale)" : "") + "</text>\n";
  // Ticks at the sweep values and at the extremes of the vertical range.
  for (const auto& t : theory) {
    svg += "<text x=\"" + svg_number(px(t.first)) + "\" y=\"" +
           svg_number(top + plot_h + 18) + "\" text-anchor=\"middle\" font-size=\"11\">" +
           label_number(t.first) + "</text>\n";
  }
  for (double v : {lo_y, hi_y}) {
    const double value = log_y ? std::pow(10.0, v) : v;
    const double y = top + plot_h - (v - lo_y) / (hi_y - lo_y) * plot_h;
    svg += "<text x=\"" + svg_number(left - 6) + "\" y=\"" + svg_number(y + 4) +
           "\" text-anchor=\"end\" font-size=\"11\">" + label_number(value) +
           "</text>\n";
  }

  const auto curve = [&](const std::string& name, const std::string& color,
                         const std::vector<std::pair<double, double>>& pts,
                         bool dashed, std::size_t slot) {
    std::string g = "<g class=\"curve\" data-series=\"" + xml_escape(name) + "\">\n";
    if (pts.size() >= 2) {
      g += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\"";
      if (dashed) g += " stroke-dasharray=\"6 4\"";
      g += " points=\"";
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) g += ' ';
        g += svg_number(px(pts[i].first)) + "," + svg_number(py(pts[i].second));
      }
      g += "\"/>\n";
    }
    for (const auto& p : pts) {
      g += "<circle cx=\"" + svg_number(px(p.first)) + "\" cy=\"" +
           svg_number(py(p.second)) + "\" r=\"3.5\" fill=\"" + color + "\"/>\n";
    }
    const double ly = top + 16 + 20 * static_cast<double>(slot);
    g += "<line x1=\"" + svg_number(width - right + 12) + "\" y1=\"" +
         svg_number(ly) + "\" x2=\"" + svg_number(width - right + 36) + "\" y2=\"" +
         svg_number(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"" +
         (dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
    g += "<text x=\"" + svg_number(width - right + 42) + "\" y=\"" +
         svg_number(ly + 4) + "\" font-size=\"12\">" + xml_escape(name) + "</text>\n";
    g += "</g>\n";
    return g;
  };

  std::size_t slot = 0;
  for (const auto& method : methods) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& s : summaries) {
      if (s.method == method) pts.emplace_back(static_cast<double>(s.axis_value), s.median);
    }
    svg += curve(method, kColors[slot % 6], pts, false, slot);
    ++slot;
  }
  svg += curve("r_theory", "#555555", theory, true, slot);
  svg += "</svg>\n";
  return svg;
}

void emit_plot(const ExperimentRecord& record, const std::string& path) {
  write_text_file(path, experiment_svg(record));
}

}  // namespace rlasso

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

#include <filesystem>
#include <stdexcept>
#include <string>

#include "rlasso/simulate.h"
#include "rlasso/text.h"

namespace rlasso {
namespace {

namespace fs = std::filesystem;

std::string join(const std::string& directory, const char* name) {
  return (fs::path(directory) / name).string();
}

std::string matrix_csv(const Matrix& m) {
  std::string out;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

nlohmann::json matrix_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

void append_vector(std::string& out, const char* name, const Vector& v) {
  for (Index i = 0; i < v.size(); ++i) {
    out += name;
    out += ',';
    out += std::to_string(i);
    out += ',';
    out += format_double(v(i));
    out += '\n';
  }
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::invalid_argument(path + ": " + what);
}

}  // namespace

void write_instance_directory(const ProblemInstance& instance,
                              const InstanceSpec& spec,
                              const std::string& directory) {
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) {
    throw std::runtime_error("cannot create '" + directory + "': " + ec.message());
  }
  write_text_file(join(directory, "X.csv"), matrix_csv(instance.X));

  std::string y = "y,y_clean\n";
  for (Index i = 0; i < instance.n(); ++i) {
    y += format_double(instance.y(i));
    y += ',';
    y += instance.y_clean.size() ? format_double(instance.y_clean(i)) : "";
    y += '\n';
  }
  write_text_file(join(directory, "y.csv"), y);

  if (instance.has_truth()) {
    std::string truth = "vector,index,value\n";
    append_vector(truth, "beta_star", instance.beta_star);
    append_vector(truth, "theta_star", instance.theta_star);
    append_vector(truth, "xi", instance.xi);
    write_text_file(join(directory, "truth.csv"), truth);
  }

  nlohmann::json meta = {{"spec", to_json(spec)},
                         {"seed", spec.seed},
                         {"sigma", instance.sigma},
                         {"outlier_index", instance.outlier_index}};
  if (instance.sigma_matrix.size()) meta["sigma_matrix"] = matrix_json(instance.sigma_matrix);
  write_text_file(join(directory, "meta.json"), meta.dump(2) + "\n");
}

LoadedInstance read_instance_directory(const std::string& directory) {
  LoadedInstance loaded;
  ProblemInstance& inst = loaded.instance;

  const std::string x_path = join(directory, "X.csv");
  const auto x_rows = parse_csv(read_text_file(x_path));
  if (x_rows.empty()) fail(x_path, "empty design matrix");
  const auto n = static_cast<Index>(x_rows.size());
  const auto d = static_cast<Index>(x_rows.front().size());
  inst.X.resize(n, d);
  for (Index i = 0; i < n; ++i) {
    const auto& row = x_rows[static_cast<std::size_t>(i)];
    if (static_cast<Index>(row.size()) != d) {
      fail(x_path, "row " + std::to_string(i + 1) + " has " +
                       std::to_string(row.size()) + " fields, expected " +
                       std::to_string(d));
    }
    for (Index j = 0; j < d; ++j) {
      inst.X(i, j) = parse_double(row[static_cast<std::size_t>(j)]);
    }
  }

  const std::string y_path = join(directory, "y.csv");
  const auto y_rows = parse_csv(read_text_file(y_path));
  if (y_rows.empty() || y_rows.front().empty() || y_rows.front()[0] != "y") {
    fail(y_path, "missing header 'y,y_clean'");
  }
  if (static_cast<Index>(y_rows.size()) != n + 1) {
    fail(y_path, "expected " + std::to_string(n) + " rows");
  }
  inst.y.resize(n);
  bool has_clean = y_rows.front().size() > 1;
  Vector clean(n);
  for (Index i = 0; i < n; ++i) {
    const auto& row = y_rows[static_cast<std::size_t>(i + 1)];
    inst.y(i) = parse_double(row.at(0));
    if (has_clean) {
      if (row.size() < 2 || row[1].empty()) {
        has_clean = false;
      } else {
        clean(i) = parse_double(row[1]);
      }
    }
  }
  if (has_clean) inst.y_clean = clean;

  const std::string truth_path = join(directory, "truth.csv");
  if (std::filesystem::exists(truth_path)) {
    const auto rows = parse_csv(read_text_file(truth_path));
    inst.beta_star = Vector::Zero(d);
    inst.theta_star = Vector::Zero(n);
    inst.xi = Vector::Zero(n);
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const auto& row = rows[r];
      if (row.size() != 3) fail(truth_path, "expected 3 fields per row");
      const auto index = static_cast<Index>(parse_integer(row[1]));
      const double value = parse_double(row[2]);
      Vector* target = nullptr;
      if (row[0] == "beta_star") target = &inst.beta_star;
      if (row[0] == "theta_star") target = &inst.theta_star;
      if (row[0] == "xi") target = &inst.xi;
      if (!target) fail(truth_path, "unknown vector '" + row[0] + "'");
      if (index < 0 || index >= target->size()) fail(truth_path, "index out of range");
      (*target)(index) = value;
    }
  }

  const std::string meta_path = join(directory, "meta.json");
  if (std::filesystem::exists(meta_path)) {
    nlohmann::json meta;
    try {
      meta = nlohmann::json::parse(read_text_file(meta_path));
      inst.sigma = meta.value("sigma", 0.0);
      if (meta.contains("sigma_matrix")) {
        const auto& rows = meta.at("sigma_matrix");
        inst.sigma_matrix.resize(d, d);
        if (static_cast<Index>(rows.size()) != d) fail(meta_path, "sigma_matrix must be d x d");
        for (Index i = 0; i < d; ++i) {
          if (static_cast<Index>(rows[i].size()) != d) {
            fail(meta_path, "sigma_matrix must be d x d");
          }
          for (Index j = 0; j < d; ++j) inst.sigma_matrix(i, j) = rows[i][j].get<double>();
        }
        inst.sigma_root = covariance_root(inst.sigma_matrix);
      }
      if (meta.contains("outlier_index")) {
        inst.outlier_index = meta.at("outlier_index").get<std::vector<Index>>();
      }
      if (meta.contains("spec")) loaded.spec = instance_spec_from_json(meta.at("spec"));
    } catch (const nlohmann::json::exception& e) {
      fail(meta_path, e.what());
    }
  }
  if (inst.has_truth() && inst.outlier_index.empty()) {
    for (Index i = 0; i < n; ++i) {
      if (inst.theta_star(i) != 0.0) inst.outlier_index.push_back(i);
    }
  }
  inst.validate();
  return loaded;
}

}  // namespace rlasso

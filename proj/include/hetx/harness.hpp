/*
 * (C) Copyright 2026 hetx developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hetx/simulate.hpp"
#include "hetx/testing.hpp"

namespace hetx {

// Directory holding the shipped quantile tables; the HETX_DATA_DIR environment
// variable overrides the compile-time default.
std::string default_data_dir();
std::string default_selfnorm_table_path();
std::string default_archf_table_path();

struct ProcessSpec {
  enum class Kind { indep, armax, arch };
  Kind kind = Kind::indep;
  double lambda = 0.0;
  long long burn_in = 10000;
  double tail_index = 0.0; // 0 = auto (tabulated)

  std::string name() const;
  double extremal_index() const;
};

struct ExperimentSpec {
  std::vector<ProcessSpec> processes;
  std::vector<FamilyKind> families;
  std::vector<double> betas;
  int n = 2000;
  std::vector<int> k_list;  // exceedance counts
  std::vector<int> r_list;  // bootstrap block lengths (rejection experiment)
  std::vector<int> q_list;  // block sizes (extremal-index experiment)
  int B = 200;
  double alpha = 0.05;
  int N = 200; // Monte Carlo replicates per cell
  double h = 0.2;
  double kappa = 0.1;
  int ei_grid_size = 1024;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string selfnorm_table; // empty = shipped default
  std::string archf_table;    // empty = shipped default

  std::string to_json() const;
  static ExperimentSpec from_json(const std::string& json_text);
  static ExperimentSpec table1_defaults();
  static ExperimentSpec mse_defaults();
};

// Long-format result table; cells are written as strings so that a written
// and re-read table compares equal byte for byte.
struct ResultTable {
  std::string schema;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  bool operator==(const ResultTable&) const = default;
  std::string find(const std::vector<std::pair<std::string, std::string>>& match,
                   const std::string& column) const;
};

void write_result_table(const ResultTable& table, const std::string& path);
ResultTable read_result_table(const std::string& path);

// Empirical rejection rates of all five tests over the cell grid
// (process x family x beta x k x r); deterministic given the seed.
ResultTable run_rejection_experiment(const ExperimentSpec& spec);

// MSE / bias of both extremal-index estimators over (process x family x beta
// x k x q).
ResultTable run_ei_experiment(const ExperimentSpec& spec);

// Runs an experiment and writes the table plus the effective config echo into
// out_dir; returns the table file path.
std::string run_experiment_to_dir(const ExperimentSpec& spec, const std::string& kind,
                                  const std::string& out_dir);

struct AnalyzeOptions {
  std::string input_path;
  std::string column = "0";
  int k = 0;
  int r = 4;
  int q = 32;
  double h = 0.1;
  double kappa = 0.1;
  double alpha = 0.05;
  int B = 200;
  std::uint64_t seed = 1;
  std::string selfnorm_table; // empty = shipped default
  std::string out_dir = ".";
};

// Full single-dataset analysis: scedasis curve, all tests, extremal-index
// estimate; writes report.json plus plot-ready CSV files and returns the
// report JSON.
std::string analyze_csv(const AnalyzeOptions& opts);

} // namespace hetx

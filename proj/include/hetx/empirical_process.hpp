/*
 * (C) Copyright 2026 hetx developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <string>
#include <vector>

#include "hetx/scedasis.hpp"
#include "hetx/truth.hpp"

namespace hetx {

// A (time fraction s, threshold level x) matrix of process values, row-major
// with rows indexed by s.
struct StepMatrix {
  std::vector<double> grid_s;
  std::vector<double> grid_x;
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const { return values[i * grid_x.size() + j]; }
  void write_csv(const std::string& path) const;
};

std::vector<double> uniform_grid(int points, double lo = 0.0, double hi = 1.0);

// Sequential tail empirical process of the uniformized series: counts of
// u_i above time-varying thresholds 1 - (k/n) c(i/n) x, centered at x C(s)
// and scaled by sqrt(k). Requires simulation truth.
StepMatrix simple_step_matrix(const std::vector<double>& u_series, const TruthModel& truth, int k,
                              const std::vector<double>& grid_s,
                              const std::vector<double>& grid_x);

// Sequential tail empirical process of the observable series: counts above
// the reference tail quantile V(n/(k x)), same centering.
StepMatrix step_matrix(const Series& series, const TruthModel& truth, int k,
                       const std::vector<double>& grid_s, const std::vector<double>& grid_x);

} // namespace hetx

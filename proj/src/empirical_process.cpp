/*
 * (C) Copyright 2026 hetx developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "hetx/empirical_process.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "hetx/error.hpp"

namespace hetx {

namespace {

void validate_grids(const std::vector<double>& grid_s, const std::vector<double>& grid_x) {
  if (grid_s.empty() || grid_x.empty()) throw_config("empty evaluation grid");
  if (!std::is_sorted(grid_s.begin(), grid_s.end()) ||
      !std::is_sorted(grid_x.begin(), grid_x.end()))
    throw_config("evaluation grids must be sorted");
  if (grid_s.front() < 0.0 || grid_s.back() > 1.0) throw_config("s-grid must lie in [0,1]");
  if (grid_x.front() < 0.0) throw_config("x-grid must be non-negative");
}

// Cut points floor(n*s) for each s, with a roundoff guard at exact jumps.
std::vector<int> cut_points(const std::vector<double>& grid_s, int n) {
  std::vector<int> cuts(grid_s.size());
  for (std::size_t i = 0; i < grid_s.size(); ++i) {
    int m = static_cast<int>(std::floor(static_cast<double>(n) * grid_s[i] + 1e-9));
    cuts[i] = std::min(m, n);
  }
  return cuts;
}

// Accumulate sqrt(k) * (count(s)/k - x*C(s)) over the s-grid for one fixed x.
template <class Indicator>
void fill_column(const Indicator& exceeds, const std::vector<int>& cuts,
                 const std::vector<double>& grid_s, const TruthModel& truth, int k, double x,
                 std::size_t col, std::size_t n_cols, std::vector<double>& out) {
  const double sqrt_k = std::sqrt(static_cast<double>(k));
  const double inv_k = 1.0 / static_cast<double>(k);
  int count = 0;
  int i = 0;
  for (std::size_t row = 0; row < cuts.size(); ++row) {
    for (; i < cuts[row]; ++i)
      if (exceeds(i)) ++count;
    out[row * n_cols + col] =
        sqrt_k * (static_cast<double>(count) * inv_k - x * truth.integrated(grid_s[row]));
  }
}

} // namespace

std::vector<double> uniform_grid(int points, double lo, double hi) {
  if (points < 2) throw_config("grid needs at least 2 points");
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    g[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  return g;
}

StepMatrix simple_step_matrix(const std::vector<double>& u_series, const TruthModel& truth, int k,
                              const std::vector<double>& grid_s,
                              const std::vector<double>& grid_x) {
  validate_grids(grid_s, grid_x);
  const int n = static_cast<int>(u_series.size());
  if (k < 1 || k >= n) throw_config("simple STEP needs 1 <= k < n");
  for (double u : u_series)
    if (!(u > 0.0 && u < 1.0)) throw_config("uniformized series must lie strictly inside (0,1)");
  if (!truth.scedasis || !truth.integrated) throw_config("truth model lacks the scedasis function");

  // The indicator threshold 1 - (k/n) c(i/n) x must stay non-negative.
  const double ratio = static_cast<double>(k) / static_cast<double>(n);
  std::vector<double> c_values(static_cast<std::size_t>(n));
  double c_max = 0.0;
  for (int i = 0; i < n; ++i) {
    c_values[static_cast<std::size_t>(i)] =
        truth.scedasis(static_cast<double>(i + 1) / static_cast<double>(n));
    c_max = std::max(c_max, c_values[static_cast<std::size_t>(i)]);
  }
  if (ratio * c_max * grid_x.back() > 1.0 + 1e-12)
    throw_config("x-grid too coarse: threshold 1 - (k/n) c(i/n) x drops below 0");

  StepMatrix out;
  out.grid_s = grid_s;
  out.grid_x = grid_x;
  out.values.assign(grid_s.size() * grid_x.size(), 0.0);
  const std::vector<int> cuts = cut_points(grid_s, n);
  for (std::size_t col = 0; col < grid_x.size(); ++col) {
    const double x = grid_x[col];
    fill_column(
        [&](int i) {
          return u_series[static_cast<std::size_t>(i)] >
                 1.0 - ratio * c_values[static_cast<std::size_t>(i)] * x;
        },
        cuts, grid_s, truth, k, x, col, grid_x.size(), out.values);
  }
  return out;
}

StepMatrix step_matrix(const Series& series, const TruthModel& truth, int k,
                       const std::vector<double>& grid_s, const std::vector<double>& grid_x) {
  validate_grids(grid_s, grid_x);
  const int n = series.n();
  if (k < 1 || k >= n) throw_config("STEP needs 1 <= k < n");
  if (!truth.quantile) throw_config("truth model lacks an invertible reference c.d.f.");
  if (!truth.scedasis || !truth.integrated) throw_config("truth model lacks the scedasis function");
  const double ratio = static_cast<double>(k) / static_cast<double>(n);
  if (ratio * truth.c_max * grid_x.back() > 1.0 + 1e-12)
    throw_config("x-grid too coarse: tail quantile argument drops below 1");

  StepMatrix out;
  out.grid_s = grid_s;
  out.grid_x = grid_x;
  out.values.assign(grid_s.size() * grid_x.size(), 0.0);
  const std::vector<int> cuts = cut_points(grid_s, n);
  for (std::size_t col = 0; col < grid_x.size(); ++col) {
    const double x = grid_x[col];
    if (x == 0.0) continue; // threshold at the upper endpoint: the column is 0
    const double v = truth.tail_quantile(static_cast<double>(n) / (static_cast<double>(k) * x));
    fill_column([&](int i) { return series[i] > v; }, cuts, grid_s, truth, k, x, col,
                grid_x.size(), out.values);
  }
  return out;
}

void StepMatrix::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw_data("cannot write matrix to '" + path + "'");
  char buf[64];
  out << "s\\x";
  for (double x : grid_x) {
    std::snprintf(buf, sizeof(buf), ",%.10g", x);
    out << buf;
  }
  out << "\n";
  for (std::size_t i = 0; i < grid_s.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.10g", grid_s[i]);
    out << buf;
    for (std::size_t j = 0; j < grid_x.size(); ++j) {
      std::snprintf(buf, sizeof(buf), ",%.10g", at(i, j));
      out << buf;
    }
    out << "\n";
  }
}

} // namespace hetx

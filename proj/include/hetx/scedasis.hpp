/*
 * (C) Copyright 2026 hetx developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <vector>

#include "hetx/kernels.hpp"

namespace hetx {

// An observed real-valued series x_1, ..., x_n.
class Series {
public:
  explicit Series(std::vector<double> values);

  int n() const { return static_cast<int>(values_.size()); }
  const std::vector<double>& values() const { return values_; }
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; } // 0-based

private:
  std::vector<double> values_;
};

// Indicators of the k largest observations: x_i counts as an exceedance iff it
// lies strictly above the (n-k)-th order statistic. With ties at the threshold
// fewer than k exceedances may occur; callers can check exceedance count.
struct ExceedanceSet {
  double threshold;              // the (n-k)-th order statistic
  std::vector<bool> indicators;  // indicators[i] for observation i+1
  std::vector<int> indices;      // sorted 1-based positions of exceedances
};

ExceedanceSet find_exceedances(const Series& series, int k);

struct ScedasisConfig {
  int k = 0;
  double h = 0.1;
  double kappa = 0.1;
  std::vector<double> grid; // sorted evaluation points in [0,1]
};

// Default evaluation grid: 512 equispaced interior points plus both endpoints.
std::vector<double> default_scedasis_grid();

struct ScedasisCurve {
  std::vector<double> grid;
  // Raw kernel estimate. The linear boundary correction can push it slightly
  // below zero near the interval edges; chat restores nonnegativity.
  std::vector<double> ctilde;
  std::vector<double> chat;    // max(ctilde, kappa)
  int k = 0;
  double h = 0.0;
  double kappa = 0.0;
  int exceedance_count = 0;
  double threshold = 0.0;
};

ScedasisCurve scedasis_estimate(const Series& series, const ScedasisConfig& cfg,
                                const BoundaryKernel& bk);

// The empirical integrated-scedasis step function: a non-decreasing,
// right-continuous step function with jumps of 1/k at exceedance positions
// i/n, together with its centered, sqrt(k)-scaled deviation from the identity.
class SequentialProcess {
public:
  SequentialProcess(int n, int k, double threshold, std::vector<int> exceedance_indices);

  int n() const { return n_; }
  int k() const { return k_; }
  double threshold() const { return threshold_; }
  const std::vector<int>& exceedance_indices() const { return indices_; }
  int exceedance_count() const { return static_cast<int>(indices_.size()); }

  double integrated(double s) const;      // value at s (right-continuous)
  double integrated_left(double s) const; // left limit at s
  double deviation(double s) const;       // sqrt(k) * (integrated(s) - s)

private:
  int count_up_to(int index) const;

  int n_;
  int k_;
  double threshold_;
  std::vector<int> indices_; // sorted, 1-based
};

SequentialProcess integrated_scedasis(const Series& series, int k);

// Kolmogorov-Smirnov-type statistic: exact supremum of |deviation| over [0,1].
double sup_statistic(const SequentialProcess& proc);

// Cramer-von-Mises-type statistic: exact integral of deviation^2 over [0,1].
double cvm_statistic(const SequentialProcess& proc);

} // namespace hetx

/*
 * (C) Copyright 2026 hetx developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "hetx/scedasis.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "hetx/error.hpp"

namespace hetx {

namespace {

// Guards against 1-ulp roundoff when s is an exact jump location i/n.
constexpr double kFloorGuard = 1e-9;

} // namespace

Series::Series(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) throw_config("series must contain at least 2 observations");
  for (double v : values_)
    if (!std::isfinite(v)) throw_data("series contains a non-finite value");
}

ExceedanceSet find_exceedances(const Series& series, int k) {
  const int n = series.n();
  if (k <= 0 || k >= n) throw_config("number of top order statistics k must satisfy 1 <= k < n");
  std::vector<double> work = series.values();
  // X_{n,1} <= ... <= X_{n,n}; the threshold is X_{n,n-k}, 0-based position n-k-1.
  std::nth_element(work.begin(), work.begin() + (n - k - 1), work.end());
  const double threshold = work[static_cast<std::size_t>(n - k - 1)];

  ExceedanceSet out;
  out.threshold = threshold;
  out.indicators.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const bool exceeds = series[i] > threshold;
    out.indicators[static_cast<std::size_t>(i)] = exceeds;
    if (exceeds) out.indices.push_back(i + 1);
  }
  return out;
}

std::vector<double> default_scedasis_grid() {
  std::vector<double> grid;
  grid.reserve(514);
  grid.push_back(0.0);
  for (int i = 1; i <= 512; ++i) grid.push_back(static_cast<double>(i) / 513.0);
  grid.push_back(1.0);
  return grid;
}

ScedasisCurve scedasis_estimate(const Series& series, const ScedasisConfig& cfg,
                                const BoundaryKernel& bk) {
  const int n = series.n();
  if (cfg.k <= 0 || cfg.k >= n) throw_config("scedasis k must satisfy 1 <= k < n");
  if (cfg.kappa < 0.0) throw_config("scedasis truncation kappa must be >= 0");
  if (cfg.grid.empty()) throw_config("scedasis evaluation grid is empty");
  if (!std::is_sorted(cfg.grid.begin(), cfg.grid.end()))
    throw_config("scedasis evaluation grid must be sorted");
  if (cfg.grid.front() < 0.0 || cfg.grid.back() > 1.0)
    throw_config("scedasis evaluation grid must lie in [0,1]");
  if (std::abs(bk.bandwidth() - cfg.h) > 1e-12)
    throw_config("boundary kernel bandwidth does not match the scedasis config");

  const ExceedanceSet exc = find_exceedances(series, cfg.k);

  ScedasisCurve curve;
  curve.grid = cfg.grid;
  curve.k = cfg.k;
  curve.h = cfg.h;
  curve.kappa = cfg.kappa;
  curve.exceedance_count = static_cast<int>(exc.indices.size());
  curve.threshold = exc.threshold;
  curve.ctilde.resize(cfg.grid.size());
  curve.chat.resize(cfg.grid.size());

  const double inv_kh = 1.0 / (static_cast<double>(cfg.k) * cfg.h);
  const double dn = static_cast<double>(n);
  for (std::size_t g = 0; g < cfg.grid.size(); ++g) {
    const double s = cfg.grid[g];
    const BoundaryKernel::Correction corr = bk.correction(s);
    // Only exceedances with |s - i/n| <= h contribute.
    const int lo_idx = static_cast<int>(std::ceil((s - cfg.h) * dn)) - 1;
    const int hi_idx = static_cast<int>(std::floor((s + cfg.h) * dn)) + 1;
    auto it = std::lower_bound(exc.indices.begin(), exc.indices.end(), lo_idx);
    double sum = 0.0;
    for (; it != exc.indices.end() && *it <= hi_idx; ++it) {
      const double x = (s - static_cast<double>(*it) / dn) / cfg.h;
      if (x < -1.0 || x > 1.0) continue;
      sum += corr.factor(x) * bk.base()(x);
    }
    const double raw = sum * inv_kh;
    curve.ctilde[g] = raw;
    curve.chat[g] = std::max(raw, cfg.kappa);
  }
  return curve;
}

SequentialProcess::SequentialProcess(int n, int k, double threshold,
                                     std::vector<int> exceedance_indices)
    : n_(n), k_(k), threshold_(threshold), indices_(std::move(exceedance_indices)) {
  if (n_ < 2) throw_config("sequential process needs n >= 2");
  if (k_ <= 0 || k_ >= n_) throw_config("sequential process needs 1 <= k < n");
  if (!std::is_sorted(indices_.begin(), indices_.end()))
    throw_config("exceedance indices must be sorted");
  if (!indices_.empty() && (indices_.front() < 1 || indices_.back() > n_))
    throw_config("exceedance indices out of range");
}

int SequentialProcess::count_up_to(int index) const {
  return static_cast<int>(std::upper_bound(indices_.begin(), indices_.end(), index) -
                          indices_.begin());
}

double SequentialProcess::integrated(double s) const {
  if (!(s >= 0.0 && s <= 1.0)) throw_config("sequential process argument s must lie in [0,1]");
  int m = static_cast<int>(std::floor(static_cast<double>(n_) * s + kFloorGuard));
  m = std::min(m, n_);
  return static_cast<double>(count_up_to(m)) / static_cast<double>(k_);
}

double SequentialProcess::integrated_left(double s) const {
  if (!(s >= 0.0 && s <= 1.0)) throw_config("sequential process argument s must lie in [0,1]");
  const double t = static_cast<double>(n_) * s;
  int m = static_cast<int>(std::floor(t + kFloorGuard));
  if (std::abs(t - std::round(t)) < kFloorGuard) m = static_cast<int>(std::round(t)) - 1;
  m = std::max(std::min(m, n_), 0);
  return static_cast<double>(count_up_to(m)) / static_cast<double>(k_);
}

double SequentialProcess::deviation(double s) const {
  return std::sqrt(static_cast<double>(k_)) * (integrated(s) - s);
}

SequentialProcess integrated_scedasis(const Series& series, int k) {
  ExceedanceSet exc = find_exceedances(series, k);
  return SequentialProcess(series.n(), k, exc.threshold, std::move(exc.indices));
}

// Between exceedance positions the deviation is affine with slope -sqrt(k), so
// extrema occur at segment endpoints; both one-sided values are inspected.
double sup_statistic(const SequentialProcess& proc) {
  const auto& idx = proc.exceedance_indices();
  const int count = proc.exceedance_count();
  const double dn = static_cast<double>(proc.n());
  const double inv_k = 1.0 / static_cast<double>(proc.k());
  double best = 0.0;
  for (int j = 0; j <= count; ++j) {
    const double value = j * inv_k;
    const double a = (j == 0) ? 0.0 : static_cast<double>(idx[static_cast<std::size_t>(j - 1)]) / dn;
    const double b = (j == count) ? 1.0 : static_cast<double>(idx[static_cast<std::size_t>(j)]) / dn;
    best = std::max(best, std::abs(value - a));
    best = std::max(best, std::abs(value - b));
  }
  return std::sqrt(static_cast<double>(proc.k())) * best;
}

double cvm_statistic(const SequentialProcess& proc) {
  const auto& idx = proc.exceedance_indices();
  const int count = proc.exceedance_count();
  const double dn = static_cast<double>(proc.n());
  const double inv_k = 1.0 / static_cast<double>(proc.k());
  double total = 0.0;
  for (int j = 0; j <= count; ++j) {
    const double value = j * inv_k;
    const double a = (j == 0) ? 0.0 : static_cast<double>(idx[static_cast<std::size_t>(j - 1)]) / dn;
    const double b = (j == count) ? 1.0 : static_cast<double>(idx[static_cast<std::size_t>(j)]) / dn;
    const double da = value - a;
    const double db = value - b;
    total += (da * da * da - db * db * db) / 3.0;
  }
  return static_cast<double>(proc.k()) * total;
}

} // namespace hetx

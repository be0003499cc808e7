/*
 * (C) Copyright 2026 hetx developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "hetx/stats.hpp"

#include <algorithm>
#include <cmath>

#include "hetx/error.hpp"

namespace hetx {

double mean(const std::vector<double>& v) {
  if (v.empty()) throw_config("mean of an empty sample");
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

double sample_variance(const std::vector<double>& v) {
  if (v.size() < 2) throw_config("sample variance needs at least 2 observations");
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return ss / static_cast<double>(v.size() - 1);
}

double empirical_quantile(std::vector<double> values, double p) {
  if (values.empty()) throw_config("quantile of an empty sample");
  if (!(p > 0.0 && p <= 1.0)) throw_config("quantile level must lie in (0,1]");
  std::sort(values.begin(), values.end());
  const auto n = static_cast<long long>(values.size());
  long long idx = static_cast<long long>(std::ceil(p * static_cast<double>(n)));
  idx = std::max(1ll, std::min(idx, n));
  return values[static_cast<std::size_t>(idx - 1)];
}

double ks_distance_uniform(std::vector<double> values) {
  if (values.empty()) throw_config("KS distance of an empty sample");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double u = values[i];
    d = std::max(d, (static_cast<double>(i) + 1.0) / n - u);
    d = std::max(d, u - static_cast<double>(i) / n);
  }
  return d;
}

double hill_tail_index(std::vector<double> values, int k) {
  const auto n = static_cast<int>(values.size());
  if (k < 1 || k >= n) throw_config("Hill estimator needs 1 <= k < n");
  std::sort(values.begin(), values.end());
  const double x_nk = values[static_cast<std::size_t>(n - k - 1)];
  if (!(x_nk > 0.0)) throw_config("Hill estimator needs a positive threshold order statistic");
  double acc = 0.0;
  for (int i = n - k; i < n; ++i)
    acc += std::log(values[static_cast<std::size_t>(i)] / x_nk);
  const double gamma = acc / static_cast<double>(k);
  if (!(gamma > 0.0)) throw_config("Hill estimator is degenerate (tied top order statistics)");
  return 1.0 / gamma;
}

} // namespace hetx

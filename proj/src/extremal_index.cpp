/*
 * (C) Copyright 2026 hetx developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "hetx/extremal_index.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

#include "hetx/error.hpp"
#include "hetx/numerics.hpp"
#include "hetx/stats.hpp"

namespace hetx {

namespace {

std::vector<double> block_maxima(const Series& series, int q) {
  const int n = series.n();
  if (q < 2) throw_config("block size q must be >= 2");
  if (q >= n) throw_config("block size q must be smaller than the series length");
  const int k_prime = n / q;
  if (k_prime < 2) throw_config("need at least 2 complete blocks");
  std::vector<double> maxima(static_cast<std::size_t>(k_prime));
  for (int j = 0; j < k_prime; ++j) {
    double m = series[j * q];
    for (int i = j * q + 1; i < (j + 1) * q; ++i) m = std::max(m, series[i]);
    maxima[static_cast<std::size_t>(j)] = m;
  }
  return maxima;
}

} // namespace

std::vector<double> block_pseudo_obs(const Series& series, int q) {
  const std::vector<double> maxima = block_maxima(series, q);
  std::vector<double> sorted = series.values();
  std::sort(sorted.begin(), sorted.end());
  const double dn = static_cast<double>(series.n());
  std::vector<double> z(maxima.size());
  for (std::size_t j = 0; j < maxima.size(); ++j) {
    const auto count_le =
        std::upper_bound(sorted.begin(), sorted.end(), maxima[j]) - sorted.begin();
    z[j] = static_cast<double>(q) * (1.0 - static_cast<double>(count_le) / dn);
  }
  return z;
}

std::vector<double> true_pseudo_obs(const Series& series, const TruthModel& truth, int q) {
  if (!truth.has_cdf())
    throw_config("true pseudo-observations need the reference c.d.f. (simulation truth)");
  const std::vector<double> maxima = block_maxima(series, q);
  std::vector<double> z(maxima.size());
  for (std::size_t j = 0; j < maxima.size(); ++j)
    z[j] = static_cast<double>(q) * (1.0 - truth.cdf(maxima[j]));
  return z;
}

double integrated_inverse_scedasis(const ScedasisCurve& curve, int grid_size) {
  if (!(curve.kappa > 0.0))
    throw_config("inverse-scedasis integral needs a positive truncation floor kappa");
  if (grid_size < 2) throw_config("integration grid must have at least 2 points");
  if (curve.grid.empty() || curve.grid.front() > 1e-12 || curve.grid.back() < 1.0 - 1e-12)
    throw_config("scedasis curve grid must cover [0,1]");
  std::vector<double> values(static_cast<std::size_t>(grid_size));
  for (int i = 0; i < grid_size; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(grid_size - 1);
    const double c = interp_linear(curve.grid, curve.chat, s);
    values[static_cast<std::size_t>(i)] = 1.0 / c;
  }
  return trapezoid_uniform(values, 0.0, 1.0);
}

EiEstimate estimate_extremal_index(const Series& series, const EiConfig& cfg,
                                   const BoundaryKernel& bk) {
  if (!(cfg.kappa > 0.0)) throw_config("extremal-index estimation needs kappa > 0");

  EiEstimate est;
  est.config = cfg;
  est.z_hat = block_pseudo_obs(series, cfg.q);
  est.k_prime = static_cast<int>(est.z_hat.size());
  est.t_hat = mean(est.z_hat);
  if (est.t_hat == 0.0)
    throw_data("all block maxima sit at the sample maximum; extremal index is undefined here");

  // Scedasis curve on a uniform grid for the integral, and at the block
  // fractions j/k' for the weighted moment estimator.
  ScedasisConfig scfg;
  scfg.k = cfg.k;
  scfg.h = cfg.h;
  scfg.kappa = cfg.kappa;
  scfg.grid.resize(static_cast<std::size_t>(cfg.grid_size));
  for (int i = 0; i < cfg.grid_size; ++i)
    scfg.grid[static_cast<std::size_t>(i)] =
        static_cast<double>(i) / static_cast<double>(cfg.grid_size - 1);
  const ScedasisCurve curve = scedasis_estimate(series, scfg, bk);
  est.exceedance_count = curve.exceedance_count;
  est.tau_hat = integrated_inverse_scedasis(curve, cfg.grid_size);

  ScedasisConfig block_cfg = scfg;
  block_cfg.grid.resize(static_cast<std::size_t>(est.k_prime));
  for (int j = 1; j <= est.k_prime; ++j)
    block_cfg.grid[static_cast<std::size_t>(j - 1)] =
        static_cast<double>(j) / static_cast<double>(est.k_prime);
  const ScedasisCurve block_curve = scedasis_estimate(series, block_cfg, bk);

  double weighted = 0.0;
  for (int j = 0; j < est.k_prime; ++j)
    weighted += est.z_hat[static_cast<std::size_t>(j)] * block_curve.chat[static_cast<std::size_t>(j)];
  weighted /= static_cast<double>(est.k_prime);
  if (weighted == 0.0)
    throw_data("scedasis-weighted block mean is zero; extremal index is undefined here");

  est.theta1_raw = est.tau_hat / est.t_hat;
  est.theta2_raw = 1.0 / weighted;
  // theta lies in (0,1]; finite-sample estimates may overshoot and are clamped.
  est.theta1 = std::min(est.theta1_raw, 1.0);
  est.theta1_clamped = est.theta1_raw > 1.0;
  est.theta2 = std::min(est.theta2_raw, 1.0);
  est.theta2_clamped = est.theta2_raw > 1.0;
  return est;
}

std::string EiEstimate::to_json() const {
  nlohmann::json j;
  j["k_prime"] = k_prime;
  j["t_hat"] = t_hat;
  j["tau_hat"] = tau_hat;
  j["theta1"] = theta1;
  j["theta1_raw"] = theta1_raw;
  j["theta1_clamped"] = theta1_clamped;
  j["theta2"] = theta2;
  j["theta2_raw"] = theta2_raw;
  j["theta2_clamped"] = theta2_clamped;
  j["config"] = {{"q", config.q},
                 {"k", config.k},
                 {"h", config.h},
                 {"kappa", config.kappa},
                 {"grid_size", config.grid_size}};
  j["exceedance_count"] = exceedance_count;
  const auto mm = std::minmax_element(z_hat.begin(), z_hat.end());
  j["z_hat"] = {{"count", z_hat.size()}, {"min", *mm.first}, {"max", *mm.second}};
  return j.dump(2);
}

} // namespace hetx

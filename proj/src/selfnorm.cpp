/*
 * (C) Copyright 2026 hetx developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "hetx/error.hpp"
#include "hetx/rng.hpp"
#include "hetx/stats.hpp"
#include "hetx/testing.hpp"

namespace hetx {

// 95% quantile of the integrated squared Brownian bridge; simulated once with
// paths=200000, grid=2000, seed=97531 (regenerate: hetx quantiles cvm).
const double kIndepCvm95 = 0.4602495181;

namespace {

// Fill a Brownian bridge on the uniform grid 0, 1/grid, ..., 1 and compute the
// sup of |B| (grid max) and the integral of B^2 (trapezoid).
struct BridgeStats {
  double sup;
  double integral;
};

BridgeStats simulate_bridge(int grid, Rng& rng, std::vector<double>& scratch) {
  const double step_sd = std::sqrt(1.0 / static_cast<double>(grid));
  double w = 0.0;
  scratch[0] = 0.0;
  for (int i = 1; i <= grid; ++i) {
    w += step_sd * rng.normal();
    scratch[static_cast<std::size_t>(i)] = w;
  }
  const double w1 = scratch[static_cast<std::size_t>(grid)];
  double sup = 0.0;
  double integral = 0.0;
  double prev_sq = 0.0;
  for (int i = 1; i <= grid; ++i) {
    const double b = scratch[static_cast<std::size_t>(i)] -
                     (static_cast<double>(i) / static_cast<double>(grid)) * w1;
    scratch[static_cast<std::size_t>(i)] = b;
    sup = std::max(sup, std::abs(b));
    const double sq = b * b;
    integral += 0.5 * (prev_sq + sq);
    prev_sq = sq;
  }
  integral /= static_cast<double>(grid);
  return BridgeStats{sup, integral};
}

void validate_bridge_args(const std::vector<double>& alphas, long long paths, int grid) {
  if (grid < 2) throw_config("bridge simulation grid must have at least 2 cells");
  if (paths < 2) throw_config("bridge simulation needs at least 2 paths");
  if (alphas.empty()) throw_config("no quantile levels requested");
  for (double a : alphas)
    if (!(a > 0.0 && a < 1.0)) throw_config("quantile levels must lie in (0,1)");
}

std::string cache_file_name(long long paths, int grid, std::uint64_t seed) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "selfnorm_q_p%lld_g%d_s%llu.csv", paths, grid,
                static_cast<unsigned long long>(seed));
  return buf;
}

} // namespace

SelfNormQuantiles selfnorm_reference_quantiles(const std::vector<double>& alphas, long long paths,
                                               int grid, std::uint64_t seed) {
  validate_bridge_args(alphas, paths, grid);
  std::vector<double> sup_ratio(static_cast<std::size_t>(paths));
  std::vector<double> cvm_ratio(static_cast<std::size_t>(paths));
  std::vector<double> bridge0(static_cast<std::size_t>(grid) + 1);
  std::vector<double> bridge1(static_cast<std::size_t>(grid) + 1);
  std::vector<double> bridge2(static_cast<std::size_t>(grid) + 1);
  for (long long p = 0; p < paths; ++p) {
    Rng rng = make_stream(seed, static_cast<std::uint64_t>(p));
    // one triple of independent bridges per path
    const BridgeStats b0 = simulate_bridge(grid, rng, bridge0);
    simulate_bridge(grid, rng, bridge1);
    simulate_bridge(grid, rng, bridge2);
    double sup_d = 0.0;
    double int_d = 0.0;
    double prev_sq = 0.0;
    for (int i = 1; i <= grid; ++i) {
      const double d = bridge1[static_cast<std::size_t>(i)] - bridge2[static_cast<std::size_t>(i)];
      sup_d = std::max(sup_d, std::abs(d));
      const double sq = d * d;
      int_d += 0.5 * (prev_sq + sq);
      prev_sq = sq;
    }
    int_d /= static_cast<double>(grid);
    if (sup_d == 0.0 || int_d == 0.0) throw error(errc::internal, "degenerate bridge difference");
    sup_ratio[static_cast<std::size_t>(p)] = b0.sup / sup_d;
    cvm_ratio[static_cast<std::size_t>(p)] = b0.integral / int_d;
  }

  SelfNormQuantiles out;
  out.paths = paths;
  out.grid = grid;
  out.seed = seed;
  std::vector<double> alphas_sorted = alphas;
  std::sort(alphas_sorted.begin(), alphas_sorted.end(),
            [](double a, double b) { return a > b; });
  for (double a : alphas_sorted)
    out.rows.push_back({a, empirical_quantile(sup_ratio, 1.0 - a),
                        empirical_quantile(cvm_ratio, 1.0 - a)});
  return out;
}

SelfNormQuantiles selfnorm_reference_quantiles_cached(const std::vector<double>& alphas,
                                                      long long paths, int grid,
                                                      std::uint64_t seed,
                                                      const std::string& cache_dir) {
  namespace fs = std::filesystem;
  const fs::path file = fs::path(cache_dir) / cache_file_name(paths, grid, seed);
  if (fs::exists(file)) {
    SelfNormQuantiles cached = SelfNormQuantiles::load_csv(file.string());
    bool all_present = true;
    for (double a : alphas) {
      const bool found = std::any_of(cached.rows.begin(), cached.rows.end(),
                                     [&](const auto& row) { return std::abs(row.alpha - a) < 1e-9; });
      all_present = all_present && found;
    }
    if (all_present) return cached;
  }
  SelfNormQuantiles fresh = selfnorm_reference_quantiles(alphas, paths, grid, seed);
  std::error_code ec;
  fs::create_directories(fs::path(cache_dir), ec);
  fresh.save_csv(file.string());
  return fresh;
}

std::vector<double> cvm_reference_quantiles(const std::vector<double>& levels, long long paths,
                                            int grid, std::uint64_t seed) {
  validate_bridge_args(levels, paths, grid);
  std::vector<double> integrals(static_cast<std::size_t>(paths));
  std::vector<double> scratch(static_cast<std::size_t>(grid) + 1);
  for (long long p = 0; p < paths; ++p) {
    Rng rng = make_stream(seed, static_cast<std::uint64_t>(p));
    integrals[static_cast<std::size_t>(p)] = simulate_bridge(grid, rng, scratch).integral;
  }
  std::vector<double> out;
  out.reserve(levels.size());
  for (double level : levels) out.push_back(empirical_quantile(integrals, level));
  return out;
}

double SelfNormQuantiles::quantile(Statistic statistic, double alpha) const {
  for (const auto& row : rows)
    if (std::abs(row.alpha - alpha) < 1e-9)
      return statistic == Statistic::ks ? row.q_sup : row.q_cvm;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "no self-normalization quantile tabulated for alpha=%g", alpha);
  throw_config(buf);
}

void SelfNormQuantiles::save_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw_data("cannot write quantile table to '" + path + "'");
  out << "alpha,q_S,q_T,paths,grid,seed\n";
  char buf[160];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof(buf), "%.10g,%.17g,%.17g,%lld,%d,%llu\n", row.alpha, row.q_sup,
                  row.q_cvm, paths, grid, static_cast<unsigned long long>(seed));
    out << buf;
  }
}

SelfNormQuantiles SelfNormQuantiles::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_data("cannot open quantile table '" + path + "'");
  SelfNormQuantiles out;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    double alpha = 0.0, qs = 0.0, qt = 0.0;
    long long paths = 0;
    int grid = 0;
    unsigned long long seed = 0;
    if (std::sscanf(line.c_str(), "%lg,%lg,%lg,%lld,%d,%llu", &alpha, &qs, &qt, &paths, &grid,
                    &seed) != 6)
      throw_data("malformed quantile table row in '" + path + "': " + line);
    out.rows.push_back({alpha, qs, qt});
    out.paths = paths;
    out.grid = grid;
    out.seed = seed;
  }
  if (out.rows.empty()) throw_data("quantile table '" + path + "' contains no rows");
  return out;
}

} // namespace hetx

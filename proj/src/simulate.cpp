/*
 * (C) Copyright 2026 hetx developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "hetx/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <utility>

#include "hetx/error.hpp"
#include "hetx/rng.hpp"

namespace hetx {

namespace {

constexpr double kArchOffset = 2e-5;
constexpr double kArchTailIndexLambda07 = 1.586;

double frechet1_cdf(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
double frechet1_quantile(double level) { return -1.0 / std::log(level); }

} // namespace

const char* family_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::c1: return "c1";
    case FamilyKind::c2: return "c2";
    case FamilyKind::c1_threshold: return "c1t";
    case FamilyKind::c2_threshold: return "c2t";
  }
  return "?";
}

FamilyKind family_from_name(const std::string& name) {
  if (name == "c1") return FamilyKind::c1;
  if (name == "c2") return FamilyKind::c2;
  if (name == "c1t" || name == "c1-threshold") return FamilyKind::c1_threshold;
  if (name == "c2t" || name == "c2-threshold") return FamilyKind::c2_threshold;
  throw_config("unknown scedasis family '" + name + "' (use c1, c2, c1t, c2t)");
}

ScedasisFamily::ScedasisFamily(FamilyKind kind, double beta, double threshold_level)
    : kind_(kind), beta_(beta), threshold_level_(threshold_level) {
  if (!(beta > 0.0 && beta <= 1.0)) throw_config("scedasis family beta must lie in (0,1]");
  if (!(threshold_level > 0.0 && threshold_level < 1.0))
    throw_config("scedasis family threshold level must lie in (0,1)");
}

double ScedasisFamily::value(double s) const {
  if (!(s >= 0.0 && s <= 1.0)) throw_config("scedasis family argument s must lie in [0,1]");
  switch (kind_) {
    case FamilyKind::c1:
    case FamilyKind::c1_threshold:
      return beta_ + 2.0 * (1.0 - beta_) * s;
    case FamilyKind::c2:
    case FamilyKind::c2_threshold:
      if (s <= 0.5) return beta_ + 4.0 * (1.0 - beta_) * s;
      return 4.0 - 3.0 * beta_ - 4.0 * (1.0 - beta_) * s;
  }
  return 1.0;
}

double ScedasisFamily::integrated(double s) const {
  if (!(s >= 0.0 && s <= 1.0)) throw_config("scedasis family argument s must lie in [0,1]");
  switch (kind_) {
    case FamilyKind::c1:
    case FamilyKind::c1_threshold:
      return beta_ * s + (1.0 - beta_) * s * s;
    case FamilyKind::c2:
    case FamilyKind::c2_threshold:
      if (s <= 0.5) return beta_ * s + 2.0 * (1.0 - beta_) * s * s;
      return 0.5 + (4.0 - 3.0 * beta_) * (s - 0.5) - 2.0 * (1.0 - beta_) * (s * s - 0.25);
  }
  return s;
}

double ScedasisFamily::scale_factor(double s, double w, double p, double inv_tail_index) const {
  const double scaled = std::pow(value(s), inv_tail_index);
  if (!thresholded()) return scaled;
  if (std::isnan(p)) throw_config("threshold scale family requires the base-series threshold");
  return w >= p ? scaled : 1.0;
}

ArchMarginalTable::ArchMarginalTable(std::vector<double> levels, std::vector<double> values,
                                     long long n_sim, std::uint64_t seed, double lambda,
                                     double tail_index)
    : levels_(std::move(levels)), values_(std::move(values)), n_sim_(n_sim), seed_(seed),
      lambda_(lambda), tail_index_(tail_index) {
  if (levels_.size() < 2 || levels_.size() != values_.size())
    throw_config("marginal table needs at least 2 (level, value) rows");
  if (!std::is_sorted(levels_.begin(), levels_.end()) ||
      !std::is_sorted(values_.begin(), values_.end()))
    throw_config("marginal table rows must be sorted");
  if (levels_.front() <= 0.0 || levels_.back() >= 1.0)
    throw_config("marginal table levels must lie strictly inside (0,1)");
  if (!(tail_index_ > 0.0)) throw_config("marginal table tail index must be positive");
}

double ArchMarginalTable::quantile(double level) const {
  if (!(level > 0.0 && level < 1.0)) throw_config("marginal quantile level must lie in (0,1)");
  if (level <= levels_.front()) {
    // lower regularly-varying tail (symmetric base process)
    return values_.front() * std::pow(level / levels_.front(), -1.0 / tail_index_);
  }
  if (level >= levels_.back()) {
    return values_.back() *
           std::pow((1.0 - level) / (1.0 - levels_.back()), -1.0 / tail_index_);
  }
  const auto hi =
      std::upper_bound(levels_.begin(), levels_.end(), level) - levels_.begin();
  const auto lo = hi - 1;
  const double span = levels_[hi] - levels_[lo];
  const double w = span > 0.0 ? (level - levels_[lo]) / span : 0.0;
  return values_[lo] + w * (values_[hi] - values_[lo]);
}

double ArchMarginalTable::cdf(double x) const {
  if (x <= values_.front()) {
    const double ratio = x / values_.front(); // both negative in the left tail
    return ratio >= 1.0 ? levels_.front() * std::pow(ratio, -tail_index_) : levels_.front();
  }
  if (x >= values_.back()) {
    const double ratio = x / values_.back();
    const double tail = (1.0 - levels_.back()) * std::pow(ratio, -tail_index_);
    return 1.0 - tail;
  }
  const auto hi = std::upper_bound(values_.begin(), values_.end(), x) - values_.begin();
  const auto lo = hi - 1;
  const double span = values_[hi] - values_[lo];
  const double w = span > 0.0 ? (x - values_[lo]) / span : 1.0;
  return levels_[lo] + w * (levels_[hi] - levels_[lo]);
}

void ArchMarginalTable::save_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw_data("cannot write marginal table to '" + path + "'");
  char buf[160];
  std::snprintf(buf, sizeof(buf), "# arch marginal table lambda=%.6g tail_index=%.6g\n", lambda_,
                tail_index_);
  out << buf;
  out << "level,value,n_sim,seed\n";
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%lld,%llu\n", levels_[i], values_[i], n_sim_,
                  static_cast<unsigned long long>(seed_));
    out << buf;
  }
}

ArchMarginalTable ArchMarginalTable::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_data("cannot open marginal table '" + path + "'");
  std::string line;
  double lambda = 0.7;
  double tail_index = kArchTailIndexLambda07;
  std::vector<double> levels;
  std::vector<double> values;
  long long n_sim = 0;
  std::uint64_t seed = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::sscanf(line.c_str(), "# arch marginal table lambda=%lg tail_index=%lg", &lambda,
                  &tail_index);
      continue;
    }
    if (!header_seen) { // column header
      header_seen = true;
      continue;
    }
    double lv = 0.0, val = 0.0;
    long long ns = 0;
    unsigned long long sd = 0;
    if (std::sscanf(line.c_str(), "%lg,%lg,%lld,%llu", &lv, &val, &ns, &sd) != 4)
      throw_data("malformed marginal table row in '" + path + "': " + line);
    levels.push_back(lv);
    values.push_back(val);
    n_sim = ns;
    seed = sd;
  }
  return ArchMarginalTable(std::move(levels), std::move(values), n_sim, seed, lambda, tail_index);
}

ArchMarginalTable generate_arch_marginal_table(long long n_sim, long long burn_in, double lambda,
                                               std::uint64_t seed) {
  if (n_sim < 1000) throw_config("marginal table simulation size must be >= 1000");
  if (burn_in < 1000) throw_config("marginal table burn-in must be >= 1000");
  if (!(lambda > 0.0 && lambda < 1.0)) throw_config("ARCH lambda must lie in (0,1)");
  Rng rng = make_stream(seed, 0);
  double w = 0.0;
  for (long long t = 0; t < burn_in; ++t) w = std::sqrt(kArchOffset + lambda * w * w) * rng.normal();
  std::vector<double> draws(static_cast<std::size_t>(n_sim));
  for (long long t = 0; t < n_sim; ++t) {
    w = std::sqrt(kArchOffset + lambda * w * w) * rng.normal();
    draws[static_cast<std::size_t>(t)] = w;
  }
  std::sort(draws.begin(), draws.end());

  std::vector<double> levels;
  for (double lv : {1e-6, 2e-6, 5e-6, 1e-5, 2e-5, 5e-5, 1e-4, 2e-4, 5e-4}) levels.push_back(lv);
  for (int i = 1; i <= 999; ++i) levels.push_back(static_cast<double>(i) / 1000.0);
  for (double lv : {5e-4, 2e-4, 1e-4, 5e-5, 2e-5, 1e-5, 5e-6, 2e-6, 1e-6}) levels.push_back(1.0 - lv);

  std::vector<double> values;
  values.reserve(levels.size());
  for (double lv : levels) {
    long long idx = static_cast<long long>(std::ceil(lv * static_cast<double>(n_sim)));
    idx = std::max(1ll, std::min(idx, n_sim));
    values.push_back(draws[static_cast<std::size_t>(idx - 1)]);
  }
  // Enforce strict monotonicity where duplicate order statistics collide.
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] < values[i - 1]) values[i] = values[i - 1];

  const double tail_index = (std::abs(lambda - 0.7) < 1e-12) ? kArchTailIndexLambda07 : 0.0;
  if (tail_index == 0.0)
    throw_config("no tabulated tail index for ARCH lambda != 0.7; supply it explicitly");
  return ArchMarginalTable(std::move(levels), std::move(values), n_sim, seed, lambda, tail_index);
}

double arch_extremal_index(double lambda) {
  if (std::abs(lambda - 0.7) < 1e-12) return 0.721;
  throw_config("extremal index of the ARCH model is tabulated only for lambda = 0.7");
}

SimOutput simulate_armax(int n, double lambda, const ScedasisFamily& family, std::uint64_t seed) {
  if (n < 2) throw_config("simulation length must be >= 2");
  if (!(lambda >= 0.0 && lambda < 1.0)) throw_config("ARMAX lambda must lie in [0,1)");

  Rng rng = make_stream(seed, 0);
  std::vector<double> w(static_cast<std::size_t>(n));
  double state = rng.frechet1(); // exact stationary start
  for (int t = 0; t < n; ++t) {
    state = std::max(lambda * state, (1.0 - lambda) * rng.frechet1());
    w[static_cast<std::size_t>(t)] = state;
  }

  const double p = family.thresholded()
                       ? frechet1_quantile(family.threshold_level())
                       : std::numeric_limits<double>::quiet_NaN();
  std::vector<double> x(static_cast<std::size_t>(n));
  std::vector<double> u(static_cast<std::size_t>(n));
  const double dn = static_cast<double>(n);
  for (int i = 0; i < n; ++i) {
    const double s = static_cast<double>(i + 1) / dn;
    const double wi = w[static_cast<std::size_t>(i)];
    x[static_cast<std::size_t>(i)] = family.scale_factor(s, wi, p, 1.0) * wi;
    u[static_cast<std::size_t>(i)] = frechet1_cdf(wi);
  }

  TruthModel truth;
  truth.cdf = [](double v) { return frechet1_cdf(v); };
  truth.quantile = [](double level) { return frechet1_quantile(level); };
  truth.scedasis = [family](double s) { return family.value(s); };
  truth.integrated = [family](double s) { return family.integrated(s); };
  truth.c_max = family.max_value();
  truth.theta = 1.0 - lambda;

  return SimOutput{Series(std::move(x)), std::move(w), std::move(u), std::move(truth), "armax",
                   lambda};
}

SimOutput simulate_arch(int n, double lambda, const ScedasisFamily& family, long long burn_in,
                        std::uint64_t seed, double tail_index,
                        std::shared_ptr<const ArchMarginalTable> marginal) {
  if (n < 2) throw_config("simulation length must be >= 2");
  if (!(lambda > 0.0 && lambda < 1.0)) throw_config("ARCH lambda must lie in (0,1)");
  if (burn_in < 1000) throw_config("ARCH burn-in must be >= 1000");
  if (tail_index <= 0.0) {
    if (std::abs(lambda - 0.7) > 1e-12)
      throw_config("ARCH tail index is tabulated only for lambda = 0.7; supply it explicitly");
    tail_index = kArchTailIndexLambda07;
  }

  Rng rng = make_stream(seed, 0);
  double state = 0.0;
  for (long long t = 0; t < burn_in; ++t)
    state = std::sqrt(kArchOffset + lambda * state * state) * rng.normal();
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    state = std::sqrt(kArchOffset + lambda * state * state) * rng.normal();
    w[static_cast<std::size_t>(t)] = state;
  }

  double p = std::numeric_limits<double>::quiet_NaN();
  if (family.thresholded()) {
    if (!marginal)
      throw_config("threshold scale families for the ARCH model need the marginal table");
    p = marginal->quantile(family.threshold_level());
  }

  std::vector<double> x(static_cast<std::size_t>(n));
  const double inv_tail = 1.0 / tail_index;
  const double dn = static_cast<double>(n);
  for (int i = 0; i < n; ++i) {
    const double s = static_cast<double>(i + 1) / dn;
    const double wi = w[static_cast<std::size_t>(i)];
    x[static_cast<std::size_t>(i)] = family.scale_factor(s, wi, p, inv_tail) * wi;
  }

  std::vector<double> u;
  TruthModel truth;
  if (marginal) {
    u.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      u[static_cast<std::size_t>(i)] = marginal->cdf(w[static_cast<std::size_t>(i)]);
    auto table = marginal;
    truth.cdf = [table](double v) { return table->cdf(v); };
    truth.quantile = [table](double level) { return table->quantile(level); };
  }
  truth.scedasis = [family](double s) { return family.value(s); };
  truth.integrated = [family](double s) { return family.integrated(s); };
  truth.c_max = family.max_value();
  if (std::abs(lambda - 0.7) < 1e-12) truth.theta = 0.721;

  return SimOutput{Series(std::move(x)), std::move(w), std::move(u), std::move(truth), "arch",
                   lambda};
}

} // namespace hetx

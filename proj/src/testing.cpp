/*
 * (C) Copyright 2026 hetx developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "hetx/testing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "json.hpp"

#include "hetx/error.hpp"
#include "hetx/stats.hpp"

namespace hetx {

const char* statistic_name(Statistic s) { return s == Statistic::ks ? "KS" : "CvM"; }

const char* multiplier_name(MultiplierLaw law) {
  switch (law) {
    case MultiplierLaw::rademacher: return "rademacher";
    case MultiplierLaw::mammen: return "mammen";
    case MultiplierLaw::uniform: return "uniform";
  }
  return "?";
}

Statistic statistic_from_name(const std::string& name) {
  if (name == "ks" || name == "KS") return Statistic::ks;
  if (name == "cvm" || name == "CvM" || name == "CVM") return Statistic::cvm;
  throw_config("unknown statistic '" + name + "' (use ks or cvm)");
}

MultiplierLaw multiplier_from_name(const std::string& name) {
  if (name == "rademacher") return MultiplierLaw::rademacher;
  if (name == "mammen") return MultiplierLaw::mammen;
  if (name == "uniform") return MultiplierLaw::uniform;
  throw_config("unknown multiplier law '" + name + "'");
}

MultiplierDraw draw_multipliers(int m, MultiplierLaw law, Rng& rng) {
  if (m < 2) throw_config("multiplier draw needs at least 2 blocks");
  MultiplierDraw draw;
  draw.xi.resize(static_cast<std::size_t>(m));
  switch (law) {
    case MultiplierLaw::rademacher: {
      draw.bound = 1.0;
      for (auto& v : draw.xi) v = rng.rademacher();
      break;
    }
    case MultiplierLaw::mammen: {
      // Two-point law with mean 0, variance 1: values (1 -+ sqrt(5))/2.
      const double sqrt5 = std::sqrt(5.0);
      const double lo = (1.0 - sqrt5) / 2.0;
      const double hi = (1.0 + sqrt5) / 2.0;
      const double p_lo = (sqrt5 + 1.0) / (2.0 * sqrt5);
      draw.bound = hi;
      for (auto& v : draw.xi) v = rng.uniform_open() < p_lo ? lo : hi;
      break;
    }
    case MultiplierLaw::uniform: {
      const double sqrt3 = std::sqrt(3.0);
      draw.bound = sqrt3;
      for (auto& v : draw.xi) v = sqrt3 * (2.0 * rng.uniform_open() - 1.0);
      break;
    }
  }
  double sum = 0.0;
  for (double v : draw.xi) sum += v;
  draw.mean = sum / static_cast<double>(m);
  return draw;
}

MultiplierPath multiplier_path(const SequentialProcess& proc, const MultiplierDraw& draw,
                               int block_length) {
  const int n = proc.n();
  const int k = proc.k();
  if (block_length < 1 || block_length >= n)
    throw_config("bootstrap block length must satisfy 1 <= r < n");
  const int m = n / block_length;
  if (m < 2) throw_config("bootstrap needs at least 2 complete blocks");
  if (static_cast<int>(draw.xi.size()) != m)
    throw_config("multiplier draw size does not match the number of blocks");

  const auto& idx = proc.exceedance_indices();
  const int count = proc.exceedance_count();
  const double inv_sqrt_k = 1.0 / std::sqrt(static_cast<double>(k));
  const int last_covered = m * block_length;

  MultiplierPath path;
  path.n_ = n;
  path.bounds_.resize(static_cast<std::size_t>(count) + 2);
  path.values_.resize(static_cast<std::size_t>(count) + 1);
  path.bounds_[0] = 0.0;
  for (int j = 0; j < count; ++j)
    path.bounds_[static_cast<std::size_t>(j) + 1] =
        static_cast<double>(idx[static_cast<std::size_t>(j)]) / static_cast<double>(n);
  path.bounds_.back() = 1.0;

  // Cumulative perturbation mass after each exceedance.
  std::vector<double> cum(static_cast<std::size_t>(count) + 1, 0.0);
  for (int j = 0; j < count; ++j) {
    const int i = idx[static_cast<std::size_t>(j)];
    double weight = 0.0;
    if (i <= last_covered) {
      const int block = (i - 1) / block_length; // 0-based block index
      weight = (draw.xi[static_cast<std::size_t>(block)] - draw.mean) * inv_sqrt_k;
    }
    cum[static_cast<std::size_t>(j) + 1] = cum[static_cast<std::size_t>(j)] + weight;
  }
  path.total_ = cum.back();

  // Centered path: perturbation minus the observed step function times the
  // total perturbation mass.
  const double inv_k = 1.0 / static_cast<double>(k);
  for (int j = 0; j <= count; ++j)
    path.values_[static_cast<std::size_t>(j)] =
        cum[static_cast<std::size_t>(j)] - static_cast<double>(j) * inv_k * path.total_;
  return path;
}

double MultiplierPath::sup_abs() const {
  double best = 0.0;
  for (double v : values_) best = std::max(best, std::abs(v));
  return best;
}

double MultiplierPath::integral_sq() const {
  double total = 0.0;
  for (std::size_t j = 0; j < values_.size(); ++j)
    total += values_[j] * values_[j] * (bounds_[j + 1] - bounds_[j]);
  return total;
}

double MultiplierPath::evaluate(double s) const {
  if (!(s >= 0.0 && s <= 1.0)) throw_config("multiplier path argument s must lie in [0,1]");
  // right-continuous: find the segment containing s
  const auto it = std::upper_bound(bounds_.begin() + 1, bounds_.end(), s + 1e-12);
  const auto seg = static_cast<std::size_t>(it - bounds_.begin()) - 1;
  return values_[std::min(seg, values_.size() - 1)];
}

MultiplierPath MultiplierPath::difference(const MultiplierPath& a, const MultiplierPath& b) {
  if (a.bounds_.size() != b.bounds_.size() || a.n_ != b.n_)
    throw_config("multiplier paths do not share breakpoints");
  MultiplierPath out = a;
  for (std::size_t j = 0; j < out.values_.size(); ++j) out.values_[j] -= b.values_[j];
  out.total_ -= b.total_;
  return out;
}

std::vector<ReplicatePair> bootstrap_replicates(const SequentialProcess& proc, int r,
                                                MultiplierLaw law, std::uint64_t seed, int B) {
  if (B < 1) throw_config("bootstrap replicate count must be >= 1");
  const int m = proc.n() / r;
  if (r < 1 || r >= proc.n()) throw_config("bootstrap block length must satisfy 1 <= r < n");
  if (m < 2) throw_config("bootstrap needs at least 2 complete blocks");
  std::vector<ReplicatePair> out(static_cast<std::size_t>(B));
  for (int b = 0; b < B; ++b) {
    Rng rng = make_stream(seed, static_cast<std::uint64_t>(b));
    const MultiplierDraw draw = draw_multipliers(m, law, rng);
    const MultiplierPath path = multiplier_path(proc, draw, r);
    out[static_cast<std::size_t>(b)] = ReplicatePair{path.sup_abs(), path.integral_sq()};
  }
  return out;
}

namespace {

double pick(const ReplicatePair& p, Statistic s) { return s == Statistic::ks ? p.sup : p.cvm; }

void echo_config(TestReport& rep, const SequentialProcess& proc) {
  rep.n = proc.n();
  rep.k = proc.k();
  rep.exceedance_count = proc.exceedance_count();
  rep.exceedance_mismatch = proc.exceedance_count() != proc.k();
}

} // namespace

TestReport bootstrap_test(const Series& series, int k, const BootstrapConfig& cfg,
                          Statistic statistic) {
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw_config("test level alpha must lie in (0,1)");
  if (cfg.B < 20) throw_config("bootstrap with B < 20 replicates gives an unreliable quantile");

  const SequentialProcess proc = integrated_scedasis(series, k);
  const double observed =
      statistic == Statistic::ks ? sup_statistic(proc) : cvm_statistic(proc);

  const std::vector<ReplicatePair> reps =
      bootstrap_replicates(proc, cfg.r, cfg.law, cfg.seed, cfg.B);

  TestReport rep;
  rep.name = std::string(statistic_name(statistic)) + "-boot";
  rep.statistic = observed;
  rep.replicates.reserve(reps.size());
  int count_ge = 0;
  for (const auto& pr : reps) {
    const double v = pick(pr, statistic);
    rep.replicates.push_back(v);
    if (v >= observed) ++count_ge;
  }
  rep.quantile = empirical_quantile(rep.replicates, 1.0 - cfg.alpha);
  rep.reject = observed > rep.quantile;
  rep.p_value = (1.0 + count_ge) / (static_cast<double>(cfg.B) + 1.0);
  rep.has_p_value = true;
  rep.r = cfg.r;
  rep.B = cfg.B;
  rep.alpha = cfg.alpha;
  rep.law = cfg.law;
  rep.seed = cfg.seed;
  echo_config(rep, proc);
  return rep;
}

TestReport selfnorm_test(const Series& series, int k, int r, Statistic statistic,
                         const SelfNormQuantiles& quantiles, double alpha, std::uint64_t seed,
                         MultiplierLaw law) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw_config("test level alpha must lie in (0,1)");
  const SequentialProcess proc = integrated_scedasis(series, k);
  const int m = proc.n() / r;
  if (r < 1 || r >= proc.n()) throw_config("block length must satisfy 1 <= r < n");
  if (m < 2) throw_config("self-normalization needs at least 2 complete blocks");

  Rng rng1 = make_stream(seed, 0);
  Rng rng2 = make_stream(seed, 1);
  const MultiplierPath path1 = multiplier_path(proc, draw_multipliers(m, law, rng1), r);
  const MultiplierPath path2 = multiplier_path(proc, draw_multipliers(m, law, rng2), r);
  const MultiplierPath diff = MultiplierPath::difference(path1, path2);

  double numerator, denominator;
  if (statistic == Statistic::ks) {
    numerator = sup_statistic(proc);
    denominator = diff.sup_abs();
  } else {
    numerator = cvm_statistic(proc);
    denominator = diff.integral_sq();
  }
  if (denominator == 0.0)
    throw_data("self-normalization denominator is zero; the test is uninformative here");

  TestReport rep;
  rep.name = std::string(statistic_name(statistic)) + "-selfnorm";
  rep.statistic = numerator / denominator;
  rep.quantile = quantiles.quantile(statistic, alpha);
  rep.reject = rep.statistic > rep.quantile;
  rep.has_p_value = false;
  rep.p_value = std::numeric_limits<double>::quiet_NaN();
  rep.r = r;
  rep.B = 2;
  rep.alpha = alpha;
  rep.law = law;
  rep.seed = seed;
  echo_config(rep, proc);
  return rep;
}

TestReport indep_cvm_test(const Series& series, int k, double cvm_quantile_95) {
  if (!(cvm_quantile_95 > 0.0)) throw_config("reference quantile must be positive");
  const SequentialProcess proc = integrated_scedasis(series, k);
  TestReport rep;
  rep.name = "CvM-indep";
  rep.statistic = cvm_statistic(proc);
  rep.quantile = cvm_quantile_95;
  rep.reject = rep.statistic > rep.quantile;
  rep.has_p_value = false;
  rep.p_value = std::numeric_limits<double>::quiet_NaN();
  rep.r = 0;
  rep.B = 0;
  rep.alpha = 0.05;
  rep.seed = 0;
  echo_config(rep, proc);
  return rep;
}

std::string TestReport::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["statistic"] = statistic;
  j["quantile"] = quantile;
  j["reject"] = reject;
  if (has_p_value)
    j["p_value"] = p_value;
  else
    j["p_value"] = nullptr;
  j["config"] = {
      {"n", n},       {"k", k},
      {"r", r},       {"B", B},
      {"alpha", alpha}, {"multiplier", multiplier_name(law)},
      {"seed", seed}, {"exceedance_count", exceedance_count},
      {"exceedance_mismatch", exceedance_mismatch},
  };
  if (!replicates.empty()) {
    std::vector<double> sorted = replicates;
    std::sort(sorted.begin(), sorted.end());
    const auto q = [&](double p) {
      return sorted[static_cast<std::size_t>(
          std::min<double>(std::floor(p * static_cast<double>(sorted.size() - 1)),
                           static_cast<double>(sorted.size() - 1)))];
    };
    j["replicates"] = {{"count", sorted.size()}, {"min", sorted.front()},
                       {"q25", q(0.25)},         {"median", q(0.5)},
                       {"q75", q(0.75)},         {"max", sorted.back()}};
  }
  return j.dump(2);
}

} // namespace hetx

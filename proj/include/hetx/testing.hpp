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

#include "hetx/rng.hpp"
#include "hetx/scedasis.hpp"

namespace hetx {

enum class Statistic { ks, cvm };
enum class MultiplierLaw { rademacher, mammen, uniform };

const char* statistic_name(Statistic s);
const char* multiplier_name(MultiplierLaw law);
Statistic statistic_from_name(const std::string& name);
MultiplierLaw multiplier_from_name(const std::string& name);

// One vector of i.i.d. bounded multipliers with mean 0 and variance 1.
struct MultiplierDraw {
  std::vector<double> xi;
  double mean = 0.0;
  double bound = 1.0; // |xi_j| <= bound for the chosen law
};

MultiplierDraw draw_multipliers(int m, MultiplierLaw law, Rng& rng);

// The centered multiplier perturbation of the integrated-scedasis process: a
// step function sharing the exceedance breakpoints of the observed process.
// Observations beyond the last complete block of length r are excluded from
// the multiplier sums; the observed process itself uses all n points.
class MultiplierPath {
public:
  double sup_abs() const;
  double integral_sq() const;
  double evaluate(double s) const;
  double total() const { return total_; } // perturbation mass at s = 1

  // Difference of two paths built from the same observed process.
  static MultiplierPath difference(const MultiplierPath& a, const MultiplierPath& b);

private:
  friend MultiplierPath multiplier_path(const SequentialProcess&, const MultiplierDraw&, int);

  int n_ = 0;
  std::vector<double> bounds_; // 0, jump positions, 1
  std::vector<double> values_; // one value per segment
  double total_ = 0.0;
};

MultiplierPath multiplier_path(const SequentialProcess& proc, const MultiplierDraw& draw,
                               int block_length);

struct BootstrapConfig {
  int r = 4;                                      // block length
  int B = 200;                                    // bootstrap replicates
  MultiplierLaw law = MultiplierLaw::rademacher;  // multiplier distribution
  double alpha = 0.05;
  std::uint64_t seed = 0;
};

// Sup and integral statistics of one multiplier replicate.
struct ReplicatePair {
  double sup;
  double cvm;
};

// Replicate b is driven by the stream (seed, b), so results do not depend on
// evaluation order or thread count.
std::vector<ReplicatePair> bootstrap_replicates(const SequentialProcess& proc, int r,
                                                MultiplierLaw law, std::uint64_t seed, int B);

struct TestReport {
  std::string name; // "KS-boot", "CvM-boot", "KS-selfnorm", "CvM-selfnorm", "CvM-indep"
  double statistic = 0.0;
  double quantile = 0.0; // reference the statistic is compared against
  double p_value = 0.0;
  bool has_p_value = false;
  bool reject = false;
  std::vector<double> replicates; // bootstrap replicate statistics (may be empty)
  // configuration echo
  int n = 0;
  int k = 0;
  int r = 0;
  int B = 0;
  double alpha = 0.05;
  MultiplierLaw law = MultiplierLaw::rademacher;
  std::uint64_t seed = 0;
  int exceedance_count = 0;
  bool exceedance_mismatch = false; // ties at the threshold produced fewer than k

  std::string to_json() const;
};

// Multiplier block bootstrap test of homoscedastic extremes.
TestReport bootstrap_test(const Series& series, int k, const BootstrapConfig& cfg,
                          Statistic statistic);

// Reference quantiles of the self-normalized statistics, simulated from
// triples of independent Brownian bridges.
struct SelfNormQuantiles {
  struct Row {
    double alpha;
    double q_sup; // (1-alpha)-quantile of the sup ratio
    double q_cvm; // (1-alpha)-quantile of the integral ratio
  };
  std::vector<Row> rows;
  long long paths = 0;
  int grid = 0;
  std::uint64_t seed = 0;

  double quantile(Statistic statistic, double alpha) const;
  void save_csv(const std::string& path) const;
  static SelfNormQuantiles load_csv(const std::string& path);
};

// Intended operating range: paths >= 10^4 and grid >= 500; smaller values are
// accepted for quick experimentation but give unreliable quantiles.
SelfNormQuantiles selfnorm_reference_quantiles(const std::vector<double>& alphas, long long paths,
                                               int grid, std::uint64_t seed);

// Disk-cached variant keyed by (paths, grid, seed) inside cache_dir.
SelfNormQuantiles selfnorm_reference_quantiles_cached(const std::vector<double>& alphas,
                                                      long long paths, int grid,
                                                      std::uint64_t seed,
                                                      const std::string& cache_dir);

// Simulated upper quantiles of the integrated squared Brownian bridge.
std::vector<double> cvm_reference_quantiles(const std::vector<double>& levels, long long paths,
                                            int grid, std::uint64_t seed);

// Self-normalized test: the sup (or integral) statistic divided by the same
// functional of the difference of two fresh multiplier replicates.
TestReport selfnorm_test(const Series& series, int k, int r, Statistic statistic,
                         const SelfNormQuantiles& quantiles, double alpha, std::uint64_t seed,
                         MultiplierLaw law = MultiplierLaw::rademacher);

// 95% quantile of the integrated squared Brownian bridge, pinned from the
// simulator (paths=200000, grid=2000, seed=97531).
extern const double kIndepCvm95;

// Integral-statistic test calibrated by the Brownian-bridge limit; valid for
// serially independent data only (comparison baseline).
TestReport indep_cvm_test(const Series& series, int k, double cvm_quantile_95 = kIndepCvm95);

} // namespace hetx

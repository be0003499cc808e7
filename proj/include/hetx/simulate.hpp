/*
 * (C) Copyright 2026 hetx developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hetx/scedasis.hpp"
#include "hetx/truth.hpp"

namespace hetx {

// Scale families for the simulated models. The threshold variants apply the
// scale factor only to observations of the base series above its 80% quantile;
// their limiting scedasis function is the same c as for the plain variants.
enum class FamilyKind { c1, c2, c1_threshold, c2_threshold };

const char* family_name(FamilyKind kind);
FamilyKind family_from_name(const std::string& name);

class ScedasisFamily {
public:
  ScedasisFamily(FamilyKind kind, double beta, double threshold_level = 0.8);

  FamilyKind kind() const { return kind_; }
  double beta() const { return beta_; }
  double threshold_level() const { return threshold_level_; }
  bool thresholded() const {
    return kind_ == FamilyKind::c1_threshold || kind_ == FamilyKind::c2_threshold;
  }

  double value(double s) const;      // c(s)
  double integrated(double s) const; // C(s)
  double max_value() const { return 2.0 - beta_; }

  // Multiplier applied to the base observation at time fraction s. For the
  // plain variants this is value(s)^inv_tail_index; for threshold variants it
  // is 1 below the base-series threshold p.
  double scale_factor(double s, double w, double p, double inv_tail_index) const;

private:
  FamilyKind kind_;
  double beta_;
  double threshold_level_;
};

// Cached marginal quantile table for base processes without a closed-form
// c.d.f. (the ARCH recursion). Built once from a long burned-in simulation;
// evaluation beyond the table range uses the regularly-varying tail.
class ArchMarginalTable {
public:
  ArchMarginalTable(std::vector<double> levels, std::vector<double> values, long long n_sim,
                    std::uint64_t seed, double lambda, double tail_index);

  double quantile(double level) const;
  double cdf(double x) const;

  long long n_sim() const { return n_sim_; }
  std::uint64_t seed() const { return seed_; }
  double lambda() const { return lambda_; }
  double tail_index() const { return tail_index_; }
  const std::vector<double>& levels() const { return levels_; }
  const std::vector<double>& values() const { return values_; }

  void save_csv(const std::string& path) const;
  static ArchMarginalTable load_csv(const std::string& path);

private:
  std::vector<double> levels_;
  std::vector<double> values_;
  long long n_sim_;
  std::uint64_t seed_;
  double lambda_;
  double tail_index_;
};

ArchMarginalTable generate_arch_marginal_table(long long n_sim, long long burn_in, double lambda,
                                               std::uint64_t seed);

// One simulated dataset: the observable series, the latent base series, the
// uniformized series u = F(w), and the truth quantities.
struct SimOutput {
  Series x;
  std::vector<double> w;
  std::vector<double> u; // empty when the base marginal c.d.f. is unknown
  TruthModel truth;
  std::string model; // "armax" / "arch"
  double lambda = 0.0;
};

// ARMAX recursion w_t = max(lambda * w_{t-1}, (1-lambda) * v_t) with
// Frechet(1) innovations, started exactly at the stationary law. The plain
// scale model multiplies w_i by c(i/n); extremal index 1 - lambda.
SimOutput simulate_armax(int n, double lambda, const ScedasisFamily& family, std::uint64_t seed);

// ARCH recursion w_t = sqrt(2e-5 + lambda * w_{t-1}^2) * v_t with standard
// normal innovations, burned in from w_0 = 0. The scale model multiplies w_i
// by c(i/n)^{1/tail_index}; tail_index auto-fills to 1.586 for lambda = 0.7
// and must be supplied otherwise. The marginal table is required for the
// threshold variants and for truth-based diagnostics; pass nullptr to skip.
SimOutput simulate_arch(int n, double lambda, const ScedasisFamily& family, long long burn_in,
                        std::uint64_t seed, double tail_index = 0.0,
                        std::shared_ptr<const ArchMarginalTable> marginal = nullptr);

// Extremal index of the ARCH(lambda) recursion where tabulated.
double arch_extremal_index(double lambda);

} // namespace hetx

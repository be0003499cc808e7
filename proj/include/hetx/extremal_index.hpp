/*
 * (C) Copyright 2026 hetx developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <string>
#include <vector>

#include "hetx/kernels.hpp"
#include "hetx/scedasis.hpp"
#include "hetx/truth.hpp"

namespace hetx {

struct EiConfig {
  int q = 32;            // block size
  int k = 400;           // exceedances for the embedded scedasis estimate
  double h = 0.2;        // bandwidth
  double kappa = 0.1;    // truncation floor (must be > 0)
  int grid_size = 1024;  // integration grid for the inverse-scedasis integral
};

// Rank-based block pseudo-observations: q * (1 - Fhat_n(block maximum)) per
// complete block of size q; a trailing partial block is dropped.
std::vector<double> block_pseudo_obs(const Series& series, int q);

// Same with the true reference c.d.f. in place of the empirical one
// (simulation diagnostics only).
std::vector<double> true_pseudo_obs(const Series& series, const TruthModel& truth, int q);

// Trapezoid-rule integral of 1/chat over [0,1] on a uniform grid; the curve
// must have been computed with a positive truncation floor.
double integrated_inverse_scedasis(const ScedasisCurve& curve, int grid_size);

struct EiEstimate {
  std::vector<double> z_hat;   // block pseudo-observations
  double t_hat = 0.0;          // mean of z_hat
  double tau_hat = 0.0;        // integral of 1/chat
  double theta1_raw = 0.0;     // tau_hat / t_hat, unclamped
  double theta1 = 0.0;         // clamped to (0, 1]
  bool theta1_clamped = false;
  double theta2_raw = 0.0;     // moment estimator with scedasis-weighted blocks
  double theta2 = 0.0;
  bool theta2_clamped = false;
  int k_prime = 0;             // number of complete blocks
  EiConfig config;
  int exceedance_count = 0;

  std::string to_json() const;
};

// Both method-of-moments extremal-index estimators.
EiEstimate estimate_extremal_index(const Series& series, const EiConfig& cfg,
                                   const BoundaryKernel& bk);

} // namespace hetx

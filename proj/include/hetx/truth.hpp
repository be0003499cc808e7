/*
 * (C) Copyright 2026 hetx developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cmath>
#include <functional>
#include <limits>

#include "hetx/error.hpp"

namespace hetx {

// Simulation-truth quantities: the reference marginal c.d.f. F (with its
// quantile function) and the scedasis function c with integral C. Available
// only for simulated data; estimators never touch it, diagnostics do.
struct TruthModel {
  std::function<double(double)> cdf;        // F(x); may be empty (unknown marginal)
  std::function<double(double)> quantile;   // F^{-1}(level), level in (0,1)
  std::function<double(double)> scedasis;   // c(s), positive on [0,1]
  std::function<double(double)> integrated; // C(s) = int_0^s c
  double c_max = 1.0;
  double theta = std::numeric_limits<double>::quiet_NaN(); // extremal index when known

  bool has_cdf() const { return static_cast<bool>(cdf); }
  bool has_theta() const { return !std::isnan(theta); }

  // Tail quantile V(t) = F^{-1}(1 - 1/t), t > 1.
  double tail_quantile(double t) const {
    if (!quantile) throw_config("truth model has no quantile function");
    if (!(t > 1.0)) throw_config("tail quantile argument must exceed 1");
    return quantile(1.0 - 1.0 / t);
  }
};

} // namespace hetx

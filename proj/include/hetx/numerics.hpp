/*
 * (C) Copyright 2026 hetx developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "hetx/error.hpp"

namespace hetx {

namespace detail {

inline double simpson_rule(double fa, double fm, double fb, double a, double b) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adaptive_simpson_rec(const F& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson_rule(fa, flm, fm, a, m);
  const double right = simpson_rule(fm, frm, fb, m, b);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace detail

// Adaptive Simpson quadrature with an absolute tolerance.
template <class F>
double integrate(const F& f, double a, double b, double abs_tol = 1e-12, int max_depth = 48) {
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, abs_tol, max_depth);
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = detail::simpson_rule(fa, fm, fb, a, b);
  return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

// Trapezoid rule for values sampled on a uniform grid over [a,b].
inline double trapezoid_uniform(const std::vector<double>& values, double a, double b) {
  const std::size_t n = values.size();
  if (n < 2) throw_config("trapezoid rule needs at least 2 grid points");
  double sum = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < n; ++i) sum += values[i];
  return sum * (b - a) / static_cast<double>(n - 1);
}

// Piecewise-linear interpolation on a sorted grid; clamps outside the range.
inline double interp_linear(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  if (xs.empty() || xs.size() != ys.size()) throw_config("interp_linear: bad grid");
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  std::size_t lo = 0;
  std::size_t hi = xs.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (xs[mid] <= x)
      lo = mid;
    else
      hi = mid;
  }
  const double w = (xs[hi] == xs[lo]) ? 0.0 : (x - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + w * (ys[hi] - ys[lo]);
}

} // namespace hetx

/*
 * (C) Copyright 2026 hetx developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "hetx/kernels.hpp"

#include <cmath>
#include <utility>

#include "hetx/error.hpp"
#include "hetx/numerics.hpp"

namespace hetx {

namespace {

constexpr int kCacheCells = 2048;
constexpr double kDegenerateDen = 1e-14;
constexpr double kMomentTol = 1e-12;

void check_moment_args(int j, double p) {
  if (j < 0 || j > 2) throw_config("kernel moment index j must be in {0,1,2}");
  if (!(p >= 0.0 && p <= 1.0)) throw_config("kernel moment argument p must lie in [0,1]");
}

} // namespace

double biweight(double x) {
  if (x < -1.0 || x > 1.0) return 0.0;
  const double u = 1.0 - x * x;
  return 0.9375 * u * u;
}

const Kernel& biweight_kernel() {
  static const Kernel k{"biweight", [](double x) { return biweight(x); }, 15.0 / 4.0};
  return k;
}

void validate_kernel(const Kernel& kernel) {
  if (!kernel.eval) throw_config("kernel has no evaluator");
  const double mass = integrate([&](double x) { return kernel(x); }, -1.0, 1.0, 1e-13);
  if (std::abs(mass - 1.0) > 1e-10)
    throw_config("kernel '" + kernel.name + "' does not integrate to 1 on [-1,1]");
  for (int i = 0; i <= 200; ++i) {
    const double x = -1.0 + 2.0 * i / 200.0;
    if (std::abs(kernel(x) - kernel(-x)) > 1e-12)
      throw_config("kernel '" + kernel.name + "' is not symmetric");
  }
  for (double x : {1.0 + 1e-9, 1.5, 2.0, 100.0}) {
    if (kernel(x) != 0.0 || kernel(-x) != 0.0)
      throw_config("kernel '" + kernel.name + "' is nonzero outside [-1,1]");
  }
}

double kernel_moment_a(const Kernel& kernel, int j, double p) {
  check_moment_args(j, p);
  return integrate([&](double x) { return std::pow(x, j) * kernel(x); }, -1.0, p, kMomentTol);
}

double kernel_moment_b(const Kernel& kernel, int j, double p) {
  check_moment_args(j, p);
  return integrate([&](double x) { return std::pow(x, j) * kernel(x); }, -p, 1.0, kMomentTol);
}

BoundaryKernel::BoundaryKernel(Kernel base, double bandwidth, MomentMode mode)
    : base_(std::move(base)), h_(bandwidth), mode_(mode) {
  // Jones-style correction assumes disjoint boundary regions; h >= 1/2 is rejected.
  if (!(h_ > 0.0 && h_ < 0.5)) throw_config("boundary kernel bandwidth must lie in (0, 1/2)");
  validate_kernel(base_);
  if (mode_ == MomentMode::cached) build_cache();
  // The correction factor at p = 0 must be well defined; kernels failing this
  // are rejected up front.
  const Moments m0 = moments(0.0);
  if (std::abs(m0.a[0] * m0.a[2] - m0.a[1] * m0.a[1]) < kDegenerateDen ||
      std::abs(m0.b[0] * m0.b[2] - m0.b[1] * m0.b[1]) < kDegenerateDen)
    throw_config("kernel '" + base_.name + "' is degenerate at the boundary (p=0)");
}

BoundaryKernel::Moments BoundaryKernel::exact_moments(double p) const {
  Moments m{};
  for (int j = 0; j <= 2; ++j) {
    m.a[j] = kernel_moment_a(base_, j, p);
    m.b[j] = kernel_moment_b(base_, j, p);
  }
  return m;
}

void BoundaryKernel::build_cache() {
  cache_.resize(kCacheCells + 1);
  cache_[0] = exact_moments(0.0);
  const double dp = 1.0 / kCacheCells;
  for (int i = 1; i <= kCacheCells; ++i) {
    const double lo = (i - 1) * dp;
    const double hi = i * dp;
    Moments m = cache_[i - 1];
    for (int j = 0; j <= 2; ++j) {
      m.a[j] += integrate([&](double x) { return std::pow(x, j) * base_(x); }, lo, hi, 1e-14);
      m.b[j] += integrate([&](double x) { return std::pow(x, j) * base_(x); }, -hi, -lo, 1e-14);
    }
    cache_[i] = m;
  }
}

BoundaryKernel::Moments BoundaryKernel::moments(double p) const {
  if (mode_ == MomentMode::exact || cache_.empty()) return exact_moments(p);
  const double t = p * kCacheCells;
  int cell = static_cast<int>(t);
  if (cell >= kCacheCells) return cache_[kCacheCells];
  const double dp = 1.0 / kCacheCells;
  const double u = t - cell; // local coordinate in [0,1)
  const Moments& lo = cache_[cell];
  const Moments& hi = cache_[cell + 1];
  const double p0 = cell * dp;
  const double p1 = (cell + 1) * dp;
  // Cubic Hermite with exact endpoint derivatives: d/dp a_j = p^j K(p) and
  // d/dp b_j = (-p)^j K(-p).
  const double h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
  const double h10 = u * (1.0 - u) * (1.0 - u);
  const double h01 = u * u * (3.0 - 2.0 * u);
  const double h11 = u * u * (u - 1.0);
  Moments out{};
  for (int j = 0; j <= 2; ++j) {
    const double da0 = std::pow(p0, j) * base_(p0);
    const double da1 = std::pow(p1, j) * base_(p1);
    const double db0 = std::pow(-p0, j) * base_(-p0);
    const double db1 = std::pow(-p1, j) * base_(-p1);
    out.a[j] = h00 * lo.a[j] + h10 * dp * da0 + h01 * hi.a[j] + h11 * dp * da1;
    out.b[j] = h00 * lo.b[j] + h10 * dp * db0 + h01 * hi.b[j] + h11 * dp * db1;
  }
  return out;
}

BoundaryKernel::Correction BoundaryKernel::correction(double s) const {
  if (!(s >= 0.0 && s <= 1.0)) throw_config("boundary kernel location s must lie in [0,1]");
  Correction c{};
  if (s > h_ && s < 1.0 - h_) {
    c.interior = true;
    c.num0 = 1.0;
    c.num1 = 0.0;
    c.den = 1.0;
    return c;
  }
  c.interior = false;
  if (s <= h_) {
    const Moments m = moments(s / h_);
    c.num0 = m.a[2];
    c.num1 = m.a[1];
    c.den = m.a[0] * m.a[2] - m.a[1] * m.a[1];
  } else {
    const Moments m = moments((1.0 - s) / h_);
    c.num0 = m.b[2];
    c.num1 = m.b[1];
    c.den = m.b[0] * m.b[2] - m.b[1] * m.b[1];
  }
  if (std::abs(c.den) < kDegenerateDen)
    throw_config("degenerate boundary correction denominator for kernel '" + base_.name + "'");
  return c;
}

double BoundaryKernel::evaluate(double x, double s) const {
  if (!(s >= 0.0 && s <= 1.0)) throw_config("boundary kernel location s must lie in [0,1]");
  if (x < -1.0 || x > 1.0) return 0.0;
  const Correction c = correction(s);
  return c.factor(x) * base_(x);
}

} // namespace hetx

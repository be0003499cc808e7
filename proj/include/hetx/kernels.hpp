/*
 * (C) Copyright 2026 hetx developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <functional>
#include <string>
#include <vector>

namespace hetx {

// A smoothing kernel on [-1,1]: symmetric, unit mass, zero outside the
// support. Custom kernels are validated by quadrature on registration.
struct Kernel {
  std::string name;
  std::function<double(double)> eval;
  double lipschitz_bound{0.0}; // documented property, not enforced at runtime

  double operator()(double x) const { return eval(x); }
};

/// Biweight kernel (15/16)(1-x^2)^2 on [-1,1], 0 elsewhere.
double biweight(double x);
const Kernel& biweight_kernel();

// Throws errc::config if the kernel violates unit mass (quadrature, 1e-10),
// symmetry (pointwise), or the support restriction.
void validate_kernel(const Kernel& kernel);

// Partial moments used by the boundary correction, j in {0,1,2}:
//   moment_a = integral of x^j K(x) over [-1, p]
//   moment_b = integral of x^j K(x) over [-p, 1]
double kernel_moment_a(const Kernel& kernel, int j, double p);
double kernel_moment_b(const Kernel& kernel, int j, double p);

// Boundary-corrected kernel. Inside (h, 1-h) it equals the base kernel; near
// the edges the base kernel is rescaled by a linear-in-x factor so that local
// mass is 1 and the local first moment is 0.
class BoundaryKernel {
public:
  enum class MomentMode {
    cached, // cumulative moments precomputed on a fine p-grid, Hermite interpolation
    exact,  // quadrature per call (slow; used by tests)
  };

  BoundaryKernel(Kernel base, double bandwidth, MomentMode mode = MomentMode::cached);

  // Correction factor for location s, as coefficients of (num0 - num1*x)/den.
  struct Correction {
    bool interior;
    double num0;
    double num1;
    double den;

    double factor(double x) const { return interior ? 1.0 : (num0 - num1 * x) / den; }
  };

  // Resolve the factor once per location; hot loops then only evaluate the
  // base kernel per data point.
  Correction correction(double s) const;

  /// K_b(x, s); zero for |x| > 1.
  double evaluate(double x, double s) const;

  double bandwidth() const { return h_; }
  const Kernel& base() const { return base_; }
  MomentMode mode() const { return mode_; }

private:
  struct Moments {
    double a[3]; // integrals of x^j K over [-1, p]
    double b[3]; // integrals of x^j K over [-p, 1]
  };

  Moments moments(double p) const;
  Moments exact_moments(double p) const;
  void build_cache();

  Kernel base_;
  double h_;
  MomentMode mode_;
  std::vector<Moments> cache_; // values at p = i/kCacheCells
};

} // namespace hetx

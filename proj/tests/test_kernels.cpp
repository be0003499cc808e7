#include "doctest.h"

#include <cmath>
#include <vector>

#include "hetx/error.hpp"
#include "hetx/kernels.hpp"

using namespace hetx;

namespace {

// Independent composite-Simpson quadrature (test oracle; deliberately not the
// library integrator).
template <class F>
double simpson(const F& f, double a, double b, int panels = 2048) {
  const double h = (b - a) / panels;
  double sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return sum * h / 3.0;
}

// Closed-form partial moments of the biweight kernel on [-1, p].
double biweight_a(int j, double p) {
  const double c = 15.0 / 16.0;
  switch (j) {
    case 0: return c * (p - 2.0 * p * p * p / 3.0 + std::pow(p, 5) / 5.0 + 8.0 / 15.0);
    case 1: return c * (p * p / 2.0 - std::pow(p, 4) / 2.0 + std::pow(p, 6) / 6.0 - 1.0 / 6.0);
    case 2:
      return c * (std::pow(p, 3) / 3.0 - 2.0 * std::pow(p, 5) / 5.0 + std::pow(p, 7) / 7.0 +
                  8.0 / 105.0);
  }
  return 0.0;
}

} // namespace

TEST_SUITE("kernels") {

TEST_CASE("biweight point values") {
  CHECK(biweight(0.0) == doctest::Approx(0.9375).epsilon(1e-15));
  CHECK(biweight(1.0) == 0.0);
  CHECK(biweight(-1.0) == 0.0);
  CHECK(biweight(0.5) == doctest::Approx(0.52734375).epsilon(1e-15));
  CHECK(biweight(1.5) == 0.0);
  CHECK(biweight(-2.0) == 0.0);
  for (double x : {0.1, 0.37, 0.83}) CHECK(biweight(x) == biweight(-x));
}

TEST_CASE("moment operations match the closed forms") {
  const Kernel& kern = biweight_kernel();
  CHECK(kernel_moment_a(kern, 0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(kernel_moment_a(kern, 1, 1.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(kernel_moment_a(kern, 2, 1.0) == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
  for (double p : {0.0, 0.13, 0.5, 0.77, 1.0}) {
    for (int j = 0; j <= 2; ++j) {
      CHECK(kernel_moment_a(kern, j, p) == doctest::Approx(biweight_a(j, p)).epsilon(1e-10));
      // symmetry relation b_j(p) = (-1)^j a_j(p)
      const double sign = j == 1 ? -1.0 : 1.0;
      CHECK(kernel_moment_b(kern, j, p) ==
            doctest::Approx(sign * biweight_a(j, p)).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(kernel_moment_a(kern, 3, 0.5), error);
  CHECK_THROWS_AS(kernel_moment_a(kern, -1, 0.5), error);
  CHECK_THROWS_AS(kernel_moment_a(kern, 0, 1.5), error);
  CHECK_THROWS_AS(kernel_moment_b(kern, 0, -0.1), error);
}

TEST_CASE("boundary kernel equals the base kernel in the interior") {
  const BoundaryKernel bk(biweight_kernel(), 0.2);
  for (double s : {0.21, 0.5, 0.79}) {
    for (double x : {-0.9, -0.3, 0.0, 0.4, 1.0})
      CHECK(bk.evaluate(x, s) == biweight(x));
  }
  CHECK(bk.evaluate(1.5, 0.0) == 0.0);
  CHECK(bk.evaluate(-1.01, 1.0) == 0.0);
}

TEST_CASE("boundary branches coincide with the interior at s = h and s = 1-h") {
  const BoundaryKernel bk(biweight_kernel(), 0.2);
  for (double x = -1.0; x <= 1.0; x += 0.05) {
    CHECK(bk.evaluate(x, 0.2) == doctest::Approx(biweight(x)).epsilon(1e-12));
    CHECK(bk.evaluate(x, 0.8) == doctest::Approx(biweight(x)).epsilon(1e-12));
  }
}

TEST_CASE("boundary kernel is continuous in s at the region edges") {
  const BoundaryKernel bk(biweight_kernel(), 0.2);
  const double eps = 1e-12;
  for (double x = -1.0; x <= 1.0; x += 0.125) {
    for (double edge : {0.2, 0.8}) {
      const double at = bk.evaluate(x, edge);
      CHECK(std::abs(bk.evaluate(x, edge - eps) - at) < 1e-10);
      CHECK(std::abs(bk.evaluate(x, edge + eps) - at) < 1e-10);
    }
  }
}

TEST_CASE("local mass and first moment identities at both boundaries") {
  const BoundaryKernel bk(biweight_kernel(), 0.2);
  for (int i = 0; i <= 10; ++i) {
    const double p = i / 10.0;
    const double s_left = p * 0.2;
    const double mass_l = simpson([&](double x) { return bk.evaluate(x, s_left); }, -1.0, p);
    const double first_l = simpson([&](double x) { return x * bk.evaluate(x, s_left); }, -1.0, p);
    CHECK(std::abs(mass_l - 1.0) < 1e-8);
    CHECK(std::abs(first_l) < 1e-8);

    const double s_right = 1.0 - p * 0.2;
    const double mass_r = simpson([&](double x) { return bk.evaluate(x, s_right); }, -p, 1.0);
    const double first_r = simpson([&](double x) { return x * bk.evaluate(x, s_right); }, -p, 1.0);
    CHECK(std::abs(mass_r - 1.0) < 1e-8);
    CHECK(std::abs(first_r) < 1e-8);
  }
}

TEST_CASE("cached moments agree with the exact mode") {
  const BoundaryKernel cached(biweight_kernel(), 0.15);
  const BoundaryKernel exact(biweight_kernel(), 0.15, BoundaryKernel::MomentMode::exact);
  for (double s : {0.0, 0.013, 0.07, 0.149, 0.15, 0.86, 0.93, 0.999, 1.0}) {
    for (double x : {-0.8, -0.2, 0.0, 0.5, 0.9})
      CHECK(cached.evaluate(x, s) == doctest::Approx(exact.evaluate(x, s)).epsilon(1e-10));
  }
}

TEST_CASE("bandwidth validation") {
  CHECK_THROWS_AS(BoundaryKernel(biweight_kernel(), 0.5), error);
  CHECK_THROWS_AS(BoundaryKernel(biweight_kernel(), 0.0), error);
  CHECK_THROWS_AS(BoundaryKernel(biweight_kernel(), -0.1), error);
  CHECK_NOTHROW(BoundaryKernel(biweight_kernel(), 0.499));
}

TEST_CASE("custom kernel registration") {
  Kernel epanechnikov{"epanechnikov",
                      [](double x) { return (x < -1.0 || x > 1.0) ? 0.0 : 0.75 * (1.0 - x * x); },
                      1.5};
  CHECK_NOTHROW(validate_kernel(epanechnikov));
  const BoundaryKernel bk(epanechnikov, 0.2);
  for (double p : {0.0, 0.4, 1.0}) {
    const double s = p * 0.2;
    const double mass = simpson([&](double x) { return bk.evaluate(x, s); }, -1.0, p);
    CHECK(std::abs(mass - 1.0) < 1e-8);
  }

  Kernel not_normalized{"bad-mass", [](double x) { return (x < -1.0 || x > 1.0) ? 0.0 : 0.6; }, 0.0};
  CHECK_THROWS_AS(validate_kernel(not_normalized), error);

  Kernel asymmetric{"bad-sym",
                    [](double x) { return (x < -1.0 || x > 1.0) ? 0.0 : (x > 0 ? 0.75 : 0.25); },
                    0.0};
  CHECK_THROWS_AS(validate_kernel(asymmetric), error);
}

} // TEST_SUITE

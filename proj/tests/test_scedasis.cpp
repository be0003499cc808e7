#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "hetx/error.hpp"
#include "hetx/kernels.hpp"
#include "hetx/rng.hpp"
#include "hetx/scedasis.hpp"
#include "hetx/simulate.hpp"

using namespace hetx;

namespace {

std::vector<double> random_values(int n, std::uint64_t seed) {
  Rng rng = make_stream(seed, 0);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = rng.normal();
  return v;
}

// Grid oracle for the sup statistic: evaluates both one-sided limits on a grid
// aligned with the jump positions (grid size a multiple of n).
double sup_oracle(const SequentialProcess& proc, int min_points) {
  const int n = proc.n();
  const int mult = (min_points + n - 1) / n;
  const int m = n * mult;
  const double sqrt_k = std::sqrt(static_cast<double>(proc.k()));
  double best = 0.0;
  for (int i = 0; i <= m; ++i) {
    const double s = static_cast<double>(i) / m;
    best = std::max(best, std::abs(sqrt_k * (proc.integrated(s) - s)));
    best = std::max(best, std::abs(sqrt_k * (proc.integrated_left(s) - s)));
  }
  return best;
}

// Midpoint-rule oracle for the integral statistic on the same aligned grid.
double cvm_oracle(const SequentialProcess& proc, int min_points) {
  const int n = proc.n();
  const int mult = (min_points + n - 1) / n;
  const int m = n * mult;
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    const double s = (i + 0.5) / m;
    const double d = proc.deviation(s);
    total += d * d;
  }
  return total / m;
}

} // namespace

TEST_SUITE("scedasis") {

TEST_CASE("series validation") {
  CHECK_THROWS_AS(Series({1.0}), error);
  CHECK_THROWS_AS(Series({1.0, std::nan("")}), error);
  CHECK_THROWS_AS(Series({1.0, std::numeric_limits<double>::infinity()}), error);
  CHECK_NOTHROW(Series({1.0, 2.0}));
}

TEST_CASE("exceedance indicators") {
  const Series series({1.0, 4.0, 2.0, 3.0});
  const ExceedanceSet exc = find_exceedances(series, 2);
  CHECK(exc.threshold == 2.0);
  CHECK(exc.indicators == std::vector<bool>{false, true, false, true});
  CHECK(exc.indices == std::vector<int>{2, 4});

  // strict inequality with total ties
  const ExceedanceSet tied = find_exceedances(Series({5.0, 5.0, 5.0, 5.0}), 2);
  CHECK(tied.threshold == 5.0);
  CHECK(tied.indices.empty());

  // k = n-1: exactly the values strictly above the sample minimum
  const Series series2({3.0, 1.0, 7.0, 5.0, 1.0});
  const ExceedanceSet top = find_exceedances(series2, 4);
  CHECK(top.threshold == 1.0);
  CHECK(top.indices == std::vector<int>{1, 3, 4});

  CHECK_THROWS_AS(find_exceedances(series, 0), error);
  CHECK_THROWS_AS(find_exceedances(series, 4), error);
  CHECK_THROWS_AS(find_exceedances(series, -1), error);
}

TEST_CASE("kernel estimate with a single exceedance") {
  // one exceedance exactly at i/n = s; the sum reduces to K(0)/(k h)
  const Series series({0.0, 10.0, 0.0, 0.0});
  const BoundaryKernel bk(biweight_kernel(), 0.25);
  ScedasisConfig cfg;
  cfg.k = 2;
  cfg.h = 0.25;
  cfg.kappa = 0.0;
  cfg.grid = {0.5};
  const ScedasisCurve curve = scedasis_estimate(series, cfg, bk);
  CHECK(curve.ctilde[0] == doctest::Approx(0.9375 / (2.0 * 0.25)).epsilon(1e-12));
  CHECK(curve.exceedance_count == 1);

  // no exceedance within bandwidth of s -> estimate is 0 there
  cfg.grid = {0.0};
  const ScedasisCurve zero = scedasis_estimate(series, cfg, bk);
  CHECK(zero.ctilde[0] == 0.0);
  CHECK(zero.chat[0] == 0.0);

  cfg.grid.clear();
  CHECK_THROWS_AS(scedasis_estimate(series, cfg, bk), error);
  cfg.grid = {0.5};
  cfg.h = 0.2; // mismatch with bk bandwidth
  CHECK_THROWS_AS(scedasis_estimate(series, cfg, bk), error);
}

TEST_CASE("truncation floor") {
  const Series series(random_values(200, 7));
  const BoundaryKernel bk(biweight_kernel(), 0.2);
  ScedasisConfig cfg;
  cfg.k = 40;
  cfg.h = 0.2;
  cfg.kappa = 0.3;
  cfg.grid = default_scedasis_grid();
  const ScedasisCurve curve = scedasis_estimate(series, cfg, bk);
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    CHECK(curve.chat[i] >= 0.3);
    if (curve.ctilde[i] >= 0.3) CHECK(curve.chat[i] == curve.ctilde[i]);
  }
}

TEST_CASE("homoscedastic consistency (Monte Carlo)") {
  // c == 1: the grid-average of the raw estimate on [h, 1-h] settles near 1.
  const BoundaryKernel bk(biweight_kernel(), 0.2);
  ScedasisConfig cfg;
  cfg.k = 200;
  cfg.h = 0.2;
  cfg.kappa = 0.0;
  cfg.grid = default_scedasis_grid();
  const ScedasisFamily fam(FamilyKind::c1, 1.0);
  double acc = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const SimOutput sim = simulate_armax(2000, 0.0, fam, 5000 + rep);
    const ScedasisCurve curve = scedasis_estimate(sim.x, cfg, bk);
    double avg = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
      if (curve.grid[i] < 0.2 || curve.grid[i] > 0.8) continue;
      avg += curve.ctilde[i];
      ++count;
    }
    acc += avg / count;
  }
  CHECK(std::abs(acc / 50.0 - 1.0) < 0.15);
}

TEST_CASE("integrated scedasis step function") {
  const Series series({1.0, 4.0, 2.0, 3.0});
  const SequentialProcess proc = integrated_scedasis(series, 2);
  CHECK(proc.integrated(0.5) == doctest::Approx(0.5));
  CHECK(proc.integrated(0.0) == 0.0);
  CHECK(proc.integrated(1.0) == doctest::Approx(1.0));
  // right-continuity at a jump: the exceedance at index 2 enters at s = 0.5
  CHECK(proc.integrated(0.49) == 0.0);
  CHECK(proc.integrated_left(0.5) == 0.0);
  CHECK(proc.integrated(0.5) - proc.integrated_left(0.5) == doctest::Approx(0.5));
}

TEST_CASE("hand-computed statistics on a 2-point series") {
  const Series series({2.0, 1.0});
  const SequentialProcess proc = integrated_scedasis(series, 1);
  CHECK(proc.integrated(0.5) == 1.0); // exceedance at index 1 enters at s = 1/2
  CHECK(sup_statistic(proc) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(cvm_statistic(proc) == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
}

TEST_CASE("degenerate all-tied series") {
  const Series series({3.0, 3.0, 3.0, 3.0, 3.0});
  const SequentialProcess proc = integrated_scedasis(series, 2);
  CHECK(proc.exceedance_count() == 0);
  CHECK(sup_statistic(proc) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(cvm_statistic(proc) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("exact statistics match dense grid oracles") {
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 50 + 37 * (rep % 13);
    const int k = 5 + rep % (n / 2);
    const Series series(random_values(n, 100 + rep));
    const SequentialProcess proc = integrated_scedasis(series, k);
    CHECK(sup_statistic(proc) == doctest::Approx(sup_oracle(proc, 100000)).epsilon(1e-9));
    CHECK(cvm_statistic(proc) == doctest::Approx(cvm_oracle(proc, 100000)).epsilon(1e-6));
  }
}

TEST_CASE("rank invariance under strictly increasing transforms") {
  const Series series(random_values(300, 42));
  const SequentialProcess base = integrated_scedasis(series, 60);
  const auto transforms = {
      +[](double x) { return std::exp(x); },
      +[](double x) { return 2.0 * x + 3.0; },
      +[](double x) { return x * x * x + 0.5 * x; },
  };
  for (auto f : transforms) {
    std::vector<double> mapped(series.values().size());
    std::transform(series.values().begin(), series.values().end(), mapped.begin(), f);
    const SequentialProcess other = integrated_scedasis(Series(mapped), 60);
    CHECK(other.exceedance_indices() == base.exceedance_indices());
    CHECK(sup_statistic(other) == sup_statistic(base));
    CHECK(cvm_statistic(other) == cvm_statistic(base));
  }
}

TEST_CASE("step function is monotone with unit total mass") {
  const Series series(random_values(500, 99));
  const SequentialProcess proc = integrated_scedasis(series, 100);
  CHECK(proc.exceedance_count() == 100); // continuous values: no ties
  CHECK(proc.integrated(1.0) == doctest::Approx(1.0));
  double prev = -1.0;
  for (double s = 0.0; s <= 1.0; s += 0.001) {
    const double v = proc.integrated(s);
    CHECK(v >= prev);
    prev = v;
  }
}

} // TEST_SUITE

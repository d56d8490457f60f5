#include <cmath>
#include <map>

#include "doctest.h"
#include "oracles.hpp"

#include "aggint/error.hpp"
#include "aggint/pointproc.hpp"

using namespace aggint;

namespace {

PointSet two_points(double d, double m0 = 0.3, double m1 = 0.7) {
  PointSet p;
  p.positions.resize(2, 2);
  p.positions << 0.0, d, 0.0, 0.0;
  p.marks.resize(2);
  p.marks << m0, m1;
  return p;
}

}  // namespace

TEST_CASE("poisson annulus: trivial cases") {
  CHECK(sample_poisson_annulus(0.0, {100.0, 1000.0}, 7).empty());
  CHECK_THROWS_AS(sample_poisson_annulus(1e-3, {100.0, 100.0}, 7), ConfigError);
  CHECK_THROWS_AS(sample_poisson_annulus(1e-3, {200.0, 100.0}, 7), ConfigError);
}

TEST_CASE("poisson annulus: counts are Poisson, radii follow the annulus law") {
  const double lambda = 3e-4;
  const AnnulusRegion region{100.0, 1000.0};
  const double mean = lambda * M_PI * (1000.0 * 1000.0 - 100.0 * 100.0);
  CHECK(mean == doctest::Approx(932.9).epsilon(1e-3));

  const int draws = 10000;
  std::map<long, long> counts;
  std::vector<double> radii, angles;
  double total = 0.0;
  Engine rng = substream(11, 0);
  for (int i = 0; i < draws; ++i) {
    const PointSet p = sample_poisson_annulus(lambda, region, rng);
    ++counts[p.size()];
    total += static_cast<double>(p.size());
    if (i < 20)
      for (Eigen::Index k = 0; k < p.size(); ++k) {
        radii.push_back(p.positions.col(k).norm());
        angles.push_back(std::atan2(p.positions(1, k), p.positions(0, k)));
      }
  }
  const double se = std::sqrt(mean / draws);
  CHECK(std::abs(total / draws - mean) < 3 * se);

  // Chi-square over bins of width 10 around the mean, tails pooled.
  std::vector<double> observed, expected;
  const long lo = 850, hi = 1020, width = 10;
  double obs_lo = 0, exp_lo = 0, obs_hi = 0, exp_hi = 0;
  for (long k = 0; k < 2000; ++k) {
    const double e = draws * oracle::poisson_pmf(k, mean);
    const double o = counts.count(k) ? static_cast<double>(counts[k]) : 0.0;
    if (k < lo) {
      obs_lo += o;
      exp_lo += e;
    } else if (k >= hi) {
      obs_hi += o;
      exp_hi += e;
    } else {
      const std::size_t b = static_cast<std::size_t>((k - lo) / width);
      if (observed.size() <= b) {
        observed.push_back(0);
        expected.push_back(0);
      }
      observed[b] += o;
      expected[b] += e;
    }
  }
  observed.push_back(obs_lo);
  expected.push_back(exp_lo);
  observed.push_back(obs_hi);
  expected.push_back(exp_hi);
  double chi2 = 0.0;
  for (std::size_t b = 0; b < observed.size(); ++b) {
    REQUIRE(expected[b] > 5.0);
    chi2 += (observed[b] - expected[b]) * (observed[b] - expected[b]) / expected[b];
  }
  const double df = static_cast<double>(observed.size() - 1);
  CHECK(chi2 < oracle::chi2_critical_01(df));

  REQUIRE(radii.size() > 10000);
  const double n = static_cast<double>(radii.size());
  CHECK(oracle::ks_statistic(radii, [](double r) {
          return (r * r - 1e4) / (1e6 - 1e4);
        }) < oracle::ks_critical_01(n));
  CHECK(oracle::ks_statistic(angles, [](double a) { return (a + M_PI) / (2 * M_PI); }) <
        oracle::ks_critical_01(n));
}

TEST_CASE("same seed gives the same points") {
  const PointSet a = sample_poisson_annulus(1e-3, {0.0, 200.0}, 5, true);
  const PointSet b = sample_poisson_annulus(1e-3, {0.0, 200.0}, 5, true);
  CHECK(a.positions == b.positions);
  CHECK(a.marks == b.marks);
}

TEST_CASE("matern thinning: trivial cases and ties") {
  const PointSet p = sample_poisson_annulus(1e-3, {0.0, 300.0}, 3, true);
  CHECK(matern_hardcore_thin(p, 0.0, 1).size() == p.size());

  PointSet one;
  one.positions = Eigen::Matrix2Xd::Zero(2, 1);
  one.marks = Eigen::VectorXd::Constant(1, 0.5);
  CHECK(matern_hardcore_thin(one, 50.0, 1).size() == 1);
  CHECK(matern_hardcore_thin(PointSet{}, 50.0, 1).empty());

  // Lower mark wins; on equal marks the lower index wins.
  CHECK(matern_retained(two_points(10.0), 20.0) == std::vector<bool>{true, false});
  CHECK(matern_retained(two_points(10.0, 0.9, 0.1), 20.0) == std::vector<bool>{false, true});
  CHECK(matern_retained(two_points(10.0, 0.5, 0.5), 20.0) == std::vector<bool>{true, false});
  CHECK(matern_retained(two_points(30.0), 20.0) == std::vector<bool>{true, true});
}

TEST_CASE("matern thinning: hard core holds and the retained fraction is q") {
  const double lambda = 3e-4, d = 20.0, window = 500.0;
  const double x = lambda * M_PI * d * d;
  const double q = (1.0 - std::exp(-x)) / x;
  CHECK(q == doctest::Approx(0.833).epsilon(1e-3));
  CHECK(retaining_probability(lambda, d) == doctest::Approx(q).epsilon(1e-14));

  const int reps = 500;
  std::vector<double> parents(reps), kept(reps);
  for (int i = 0; i < reps; ++i) {
    const PointSet p = sample_poisson_annulus(lambda, {0.0, window}, 1000 + i, true);
    const PointSet t = matern_hardcore_thin(p, d, 0);
    if (t.size() > 1) CHECK(min_pairwise_distance(t.positions) >= d);
    parents[i] = static_cast<double>(p.size());
    kept[i] = static_cast<double>(t.size());
  }
  // Interior retention: only points whose full exclusion disk lies inside
  // the window see the unbounded-plane competition.
  double inner_parents = 0, inner_kept = 0;
  for (int i = 0; i < 100; ++i) {
    const PointSet p = sample_poisson_annulus(lambda, {0.0, window}, 5000 + i, true);
    const std::vector<bool> keep = matern_retained(p, d);
    for (Eigen::Index k = 0; k < p.size(); ++k) {
      if (p.positions.col(k).norm() > window - d) continue;
      inner_parents += 1;
      inner_kept += keep[static_cast<std::size_t>(k)] ? 1 : 0;
    }
  }
  const double frac = inner_kept / inner_parents;
  CHECK(std::abs(frac - q) < 3 * std::sqrt(q * (1 - q) / inner_parents));

  // Ratio of means over the whole window, edge bias included, stays close.
  double sp = 0, sk = 0;
  for (int i = 0; i < reps; ++i) {
    sp += parents[i];
    sk += kept[i];
  }
  CHECK(sk / sp == doctest::Approx(q).epsilon(0.01));
}

TEST_CASE("nearest neighbour distances") {
  const Eigen::VectorXd nn = nearest_neighbor_distances(two_points(7.5));
  CHECK(nn(0) == doctest::Approx(7.5));
  CHECK(nn(1) == doctest::Approx(7.5));
  PointSet one;
  one.positions = Eigen::Matrix2Xd::Zero(2, 1);
  CHECK_THROWS_AS(nearest_neighbor_distances(one), InsufficientDataError);

  // Brute force on a small set.
  const PointSet p = sample_poisson_annulus(1e-3, {0.0, 150.0}, 9);
  const Eigen::VectorXd fast = nearest_neighbor_distances(p);
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    double best = INFINITY;
    for (Eigen::Index j = 0; j < p.size(); ++j)
      if (j != i) best = std::min(best, (p.positions.col(i) - p.positions.col(j)).norm());
    CHECK(fast(i) == doctest::Approx(best).epsilon(1e-12));
  }

  // Rayleigh law 1 - exp(-lambda pi x^2), interior points only.
  const double lambda = 3e-4, window = 3600.0, margin = 150.0;
  const PointSet big = sample_poisson_annulus(lambda, {0.0, window}, 21);
  const Eigen::VectorXd d = nearest_neighbor_distances(big);
  std::vector<double> inner;
  for (Eigen::Index i = 0; i < big.size(); ++i)
    if (big.positions.col(i).norm() < window - margin) inner.push_back(d(i));
  REQUIRE(inner.size() >= 10000);
  CHECK(oracle::ks_statistic(inner, [&](double x) { return 1 - std::exp(-lambda * M_PI * x * x); }) <
        oracle::ks_critical_01(static_cast<double>(inner.size())));
}

TEST_CASE("retaining probability limits") {
  CHECK(retaining_probability(3e-4, 0.0) == 1.0);
  CHECK(retaining_probability(0.0, 20.0) == 1.0);
  CHECK(retaining_probability(3e-4, 1e-6) == doctest::Approx(1.0).epsilon(1e-12));
  const double x = 3e-4 * M_PI * 1e4 * 1e4;
  CHECK(retaining_probability(3e-4, 1e4) == doctest::Approx(1.0 / x).epsilon(1e-12));
  double last = 1.0;
  for (double d = 1; d < 200; d += 7) {
    const double q = retaining_probability(3e-4, d);
    CHECK(q < last);
    CHECK(q > 0.0);
    last = q;
  }
  CHECK_THROWS_AS(retaining_probability(-1.0, 20.0), DomainError);
}

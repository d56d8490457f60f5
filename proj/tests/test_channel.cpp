#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

#include "aggint/channel.hpp"
#include "aggint/error.hpp"

using namespace aggint;

namespace {

struct Moments {
  double mean = 0, var = 0;
};

Moments log_moments(const CompositeChannelParams& p, GainMode mode, std::size_t n, std::uint64_t seed) {
  Engine rng = substream(seed, 0);
  GainSampler s(p, mode);
  double sum = 0, sum2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double l = std::log(s(rng));
    sum += l;
    sum2 += l * l;
  }
  const double mean = sum / n;
  return {mean, (sum2 - n * mean * mean) / (n - 1)};
}

// Independent values of the log-moments of Gamma(m, 1/m): H_{m-1} - ln m -
// gamma and the trigamma sum to 1e7 terms plus its integral tail.
double oracle_mu(int m) {
  double h = 0;
  for (int k = 1; k < m; ++k) h += 1.0 / k;
  return h - std::log(static_cast<double>(m)) - 0.5772;
}
double oracle_var(int m) {
  double s = 0;
  const long n = 10000000;
  for (long k = n - 1; k >= 0; --k) s += 1.0 / ((m + k) * static_cast<double>(m + k));
  return s + 1.0 / (m + n - 0.5);
}

}  // namespace

TEST_CASE("pathloss") {
  CHECK(pathloss_gain(1.0, 4.0) == 1.0);
  CHECK(pathloss_gain(100.0, 4.0) == doctest::Approx(1e-8).epsilon(1e-14));
  CHECK_THROWS_AS(pathloss_gain(0.0, 4.0), DomainError);
  CHECK_THROWS_AS(pathloss_gain(-3.0, 4.0), DomainError);
  CHECK_THROWS_AS(PathlossModel{2.0}.validate(), ConfigError);
  for (double beta : {2.5, 3.0, 4.0, 5.5}) {
    double last = INFINITY;
    for (double r = 0.5; r < 2000; r *= 1.37) {
      const double g = pathloss_gain(r, beta);
      CHECK(g < last);
      last = g;
      CHECK(pathloss_inverse(g, beta) == doctest::Approx(r).epsilon(1e-12));
    }
  }
}

TEST_CASE("composite log-normal moments") {
  CHECK(composite_lognormal_moments({1.0, 0.0, 0.0}).mu == doctest::Approx(-0.5772).epsilon(1e-12));
  CHECK(composite_lognormal_moments({1.0, 0.0, 0.0}).sigma2 ==
        doctest::Approx(M_PI * M_PI / 6).epsilon(1e-12));
  const LogNormalParams m100 = composite_lognormal_moments({100.0, 0.0, 0.0});
  CHECK(m100.mu == doctest::Approx(oracle_mu(100)).epsilon(1e-10));
  CHECK(m100.mu == doctest::Approx(-0.0050).epsilon(0.01));
  for (int m : {1, 2, 5, 37, 100}) {
    CHECK(composite_lognormal_moments({double(m), 0.0, 0.0}).sigma2 ==
          doctest::Approx(oracle_var(m)).epsilon(1e-9));
    CHECK(composite_lognormal_moments({double(m), 0.3, 0.0}).mu == doctest::Approx(oracle_mu(m) + 0.3));
  }
  // No fading: shadowing only.
  const LogNormalParams s = composite_lognormal_moments(CompositeChannelParams::from_db(INFINITY, 0.1, 4.0));
  CHECK(s.mu == 0.1);
  CHECK(s.sigma() == doctest::Approx(4.0 * std::log(10.0) / 10.0));

  // sigma^2 falls with m and rises with sigma_omega.
  for (double so : {0.0, 0.5, 1.0}) {
    double last = INFINITY;
    for (double m : {1.0, 2.0, 3.0, 10.0, 100.0, 1000.0}) {
      const double v = composite_lognormal_moments({m, 0.0, so}).sigma2;
      CHECK(v < last);
      last = v;
    }
  }
  for (double m : {1.0, 4.0, 50.0}) {
    double last = -1;
    for (double so : {0.0, 0.2, 0.7, 1.5}) {
      const double v = composite_lognormal_moments({m, 0.0, so}).sigma2;
      CHECK(v > last);
      last = v;
    }
  }

  CHECK_THROWS_AS(composite_lognormal_moments({1.5, 0.0, 0.0}), ConfigError);
  CHECK_THROWS_AS(composite_lognormal_moments({0.0, 0.0, 0.0}), ConfigError);
  CHECK_THROWS_AS(composite_lognormal_moments({1.0, 0.0, -1.0}), ConfigError);
}

TEST_CASE("gain samplers") {
  SUBCASE("degenerate fading") {
    Engine rng = substream(3, 0);
    GainSampler s({1e6, 0.2, 0.0}, GainMode::exact_composite);
    double sum = 0, sum2 = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
      const double h = s(rng);
      sum += h;
      sum2 += h * h;
    }
    const double mean = sum / n;
    CHECK(mean == doctest::Approx(std::exp(0.2)).epsilon(1e-3));
    CHECK(std::sqrt(sum2 / n - mean * mean) < 0.01 * mean);
  }
  SUBCASE("approx mode hits its log-moments") {
    const CompositeChannelParams p = CompositeChannelParams::from_db(2.0, 0.0, 4.0);
    const LogNormalParams ln = composite_lognormal_moments(p);
    const std::size_t n = 100000;
    const Moments m = log_moments(p, GainMode::approx_lognormal, n, 5);
    CHECK(std::abs(m.mean - ln.mu) < 3 * std::sqrt(ln.sigma2 / n));
    // Median.
    Engine rng = substream(6, 0);
    GainSampler s(p, GainMode::approx_lognormal);
    std::vector<double> v(n);
    for (auto& x : v) x = s(rng);
    std::nth_element(v.begin(), v.begin() + n / 2, v.end());
    CHECK(v[n / 2] == doctest::Approx(std::exp(ln.mu)).epsilon(0.02));
  }
  SUBCASE("exact and approx agree on E[ln h], Var[ln h]") {
    const std::size_t n = 400000;
    for (double m : {1.0, 3.0}) {
      const CompositeChannelParams p = CompositeChannelParams::from_db(m, 0.0, 4.0);
      const Moments e = log_moments(p, GainMode::exact_composite, n, 8);
      const Moments a = log_moments(p, GainMode::approx_lognormal, n, 9);
      const double se_mean = std::sqrt(2 * a.var / n);
      CHECK(std::abs(e.mean - a.mean) < 4 * se_mean + 1e-4);  // 0.5772 truncation
      // Var of a sample variance ~ (mu4 - s^4)/n; log-gamma kurtosis stays small.
      CHECK(e.var == doctest::Approx(a.var).epsilon(0.02));
    }
  }
}

TEST_CASE("log-normal density") {
  const double mu = 0.4, sigma = 0.8;
  CHECK(lognormal_pdf(std::exp(mu), mu, sigma) ==
        doctest::Approx(1.0 / (std::sqrt(2 * M_PI) * sigma * std::exp(mu))).epsilon(1e-14));
  CHECK(lognormal_pdf(0.0, mu, sigma) == 0.0);
  CHECK(lognormal_pdf(-1.0, mu, sigma) == 0.0);
  CHECK_THROWS_AS(lognormal_pdf(1.0, mu, 0.0), DomainError);
  // Integral in log space: int f(e^t) e^t dt.
  const double total = oracle::simpson([&](double t) { return lognormal_pdf(std::exp(t), mu, sigma) * std::exp(t); },
                                       mu - 14 * sigma, mu + 14 * sigma, 20000);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
}

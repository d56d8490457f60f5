#include <cmath>
#include <complex>

#include "doctest.h"
#include "oracles.hpp"

#include "aggint/error.hpp"
#include "aggint/kernel.hpp"

using namespace aggint;
using cd = std::complex<double>;

namespace {

// int_R^inf (exp(i a r^-beta) - 1) 2 r dr with s = (R/r)^2, for beta >= 4
// where the integrand in s is bounded.
cd radial_oracle(double a, double radius, double beta, long n = 1000000) {
  const double x = a * std::pow(radius, -beta);
  const cd sum = oracle::midpoint(
      [&](double s) {
        const double ph = x * std::pow(s, beta / 2);
        return (cd(std::cos(ph), std::sin(ph)) - 1.0) / (s * s);
      },
      0.0, 1.0, n);
  return radius * radius * sum;
}

// tau(x) = 1 - e^{ix} + i x J(x) with J = (1/nu) int_0^1 exp(i x s^{1/nu}) ds.
cd tau_oracle(double x, double beta) {
  const double nu = 1.0 - 2.0 / beta;
  const cd j = oracle::midpoint(
                   [&](double s) {
                     const double ph = x * std::pow(s, 1.0 / nu);
                     return cd(std::cos(ph), std::sin(ph));
                   },
                   0.0, 1.0, 1000000) /
               nu;
  return 1.0 - cd(std::cos(x), std::sin(x)) + cd(0, x) * j;
}

}  // namespace

TEST_CASE("T kernel trivial values") {
  CHECK(t_kernel(0.0, 1.0, 1.0, 100.0, 4.0) == cd(0.0));
  CHECK(t_kernel(1.0, 0.0, 1.0, 100.0, 4.0) == cd(0.0));
  CHECK(t_kernel(1.0, 1.0, 0.0, 100.0, 4.0) == cd(0.0));
  CHECK_THROWS_AS(t_kernel(1.0, 1.0, 1.0, 100.0, 2.0), DomainError);
  CHECK_THROWS_AS(t_kernel(1.0, 1.0, 1.0, -1.0, 4.0), DomainError);
}

TEST_CASE("T kernel against brute-force radial integral") {
  const cd ref = radial_oracle(1.0, 100.0, 4.0);
  const cd got = t_kernel(1.0, 1.0, 1.0, 100.0, 4.0);
  CHECK(std::abs(got - ref) < 1e-6 * std::abs(ref));

  // Every regime of the kernel: small, middle and asymptotic arguments.
  for (double beta : {4.0, 5.0, 6.0}) {
    for (double a : {0.3, 2.0, 3.9, 4.1, 9.0, 25.0, 39.0, 41.0, 90.0, 300.0}) {
      const cd r = radial_oracle(a, 1.0, beta, 2000000);
      const cd g = t_kernel(1.0, a, 1.0, 1.0, beta);
      CAPTURE(beta);
      CAPTURE(a);
      CHECK(std::abs(g - r) < 1e-8 * std::abs(r));
    }
  }
}

TEST_CASE("kernel against the substituted integral, beta below 4 included") {
  for (double beta : {2.5, 3.0, 4.0, 6.0, 8.0}) {
    for (double x : {0.01, 1.0, 3.99, 4.01, 12.0, 39.9, 40.1, 150.0}) {
      const cd ref = tau_oracle(x, beta);
      const cd got = interference_kernel(x, beta);
      CAPTURE(beta);
      CAPTURE(x);
      CHECK(std::abs(got - ref) < 1e-8 * std::abs(ref));
    }
  }
}

TEST_CASE("kernel symmetry, continuity and the R -> 0 limit") {
  for (double x : {0.5, 7.0, 70.0}) CHECK(interference_kernel(-x, 4.0) == std::conj(interference_kernel(x, 4.0)));
  CHECK(t_kernel(-2.0, 1.0, 1.0, 10.0, 4.0) == std::conj(t_kernel(2.0, 1.0, 1.0, 10.0, 4.0)));
  for (double edge : {4.0, 40.0})
    for (double beta : {3.0, 4.0, 6.0}) {
      const cd lo = interference_kernel(edge * (1 - 1e-12), beta);
      const cd hi = interference_kernel(edge * (1 + 1e-12), beta);
      CHECK(std::abs(lo - hi) < 1e-10 * std::abs(lo));
    }
  for (double beta : {3.0, 4.0, 6.0}) {
    const cd zero = t_kernel(1.0, 2.0, 1.0, 0.0, beta);
    const cd small = t_kernel(1.0, 2.0, 1.0, 1e-3, beta);
    CHECK(std::abs(zero - small) < 1e-5 * std::abs(zero));
  }
  CHECK(kernel_series_coefficient(1, 4.0) == doctest::Approx(1.0));
  CHECK(kernel_series_coefficient(2, 4.0) == doctest::Approx(1.0 / 3));
  CHECK_THROWS_AS(interference_kernel(INFINITY, 4.0), NumericError);
}

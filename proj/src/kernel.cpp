#include "aggint/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "aggint/error.hpp"
#include "aggint/quadrature.hpp"

namespace aggint {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

constexpr double kSeriesLimit = 4.0;
constexpr double kAsymptoticLimit = 40.0;

cd kernel_series(double x, double beta) {
  // term_n = (ix)^n / n!
  cd term = 1.0;
  cd sum = 0.0;
  for (int n = 1; n < 200; ++n) {
    term *= kI * x / static_cast<double>(n);
    const cd add = term * (2.0 / (n * beta - 2.0));
    sum += add;
    if (std::abs(add) <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// 1 - e^{ix} without cancellation for small x.
cd one_minus_expi(double x) {
  const double s = std::sin(x / 2);
  return {2.0 * s * s, -std::sin(x)};
}

cd kernel_quadrature(double x, double beta) {
  const double nu = 1.0 - 2.0 / beta;
  // J = int_0^1 u^{nu-1} e^{ixu} du. Below eps = 1/x the power series in u
  // converges fast; above it the integrand is smooth on the panel scale.
  const double eps = std::min(1.0, 1.0 / x);
  cd head = 0.0;
  cd term = 1.0;  // (ix)^k / k!
  for (int k = 0; k < 100; ++k) {
    if (k > 0) term *= kI * x / static_cast<double>(k);
    const cd add = term * std::pow(eps, k + nu) / (k + nu);
    head += add;
    if (std::abs(add) <= 1e-18 * std::abs(head)) break;
  }
  const std::size_t panels = 1 + static_cast<std::size_t>(std::ceil(x / 4.0));
  const cd tail = integrate_legendre(
      [&](double u) { return std::pow(u, nu - 1.0) * cd(std::cos(x * u), std::sin(x * u)); },
      eps, 1.0, panels);
  return one_minus_expi(x) + kI * x * (head + tail);
}

cd kernel_asymptotic(double x, double beta) {
  const double nu = 1.0 - 2.0 / beta;
  // int_1^inf u^{nu-1} e^{ixu} du = (i e^{ix} / x) L(x) with
  // L(x) = sum_k (nu-1)(nu-2)...(nu-k) (i/x)^k (asymptotic, truncated at its
  // smallest term).
  cd term = 1.0;
  cd one_minus_l = 0.0;
  double last = 1.0;
  for (int k = 1; k < 400; ++k) {
    term *= (nu - k) * kI / x;
    const double mag = std::abs(term);
    if (mag > last) break;
    one_minus_l -= term;
    last = mag;
    if (mag < 1e-18) break;
  }
  const cd stable = kI * std::tgamma(nu) * std::pow(x, 1.0 - nu) *
                    cd(std::cos(M_PI * nu / 2), std::sin(M_PI * nu / 2));
  return 1.0 + stable - cd(std::cos(x), std::sin(x)) * one_minus_l;
}

}  // namespace

double kernel_series_coefficient(int n, double beta) { return 2.0 / (n * beta - 2.0); }

std::complex<double> interference_kernel(double x, double beta) {
  if (!(beta > 2.0)) throw DomainError("kernel needs pathloss exponent > 2");
  if (x == 0.0) return 0.0;
  if (x < 0.0) return std::conj(interference_kernel(-x, beta));
  if (!std::isfinite(x)) throw NumericError("kernel argument is not finite");
  if (x <= kSeriesLimit) return kernel_series(x, beta);
  if (x <= kAsymptoticLimit) return kernel_quadrature(x, beta);
  return kernel_asymptotic(x, beta);
}

std::complex<double> t_kernel(double omega, double p, double h, double radius, double beta) {
  if (!(beta > 2.0)) throw DomainError("T kernel needs pathloss exponent > 2");
  if (!(radius >= 0.0)) throw DomainError("T kernel needs R >= 0");
  const double a = omega * p * h;
  if (a == 0.0) return 0.0;
  if (radius == 0.0) {
    const double nu = 1.0 - 2.0 / beta;
    const cd rot(std::cos(M_PI * nu / 2), std::sin(M_PI * nu / 2));
    const cd value = kI * std::tgamma(nu) * std::pow(std::abs(a), 2.0 / beta) * rot;
    return a > 0 ? value : std::conj(value);
  }
  return radius * radius * interference_kernel(a * std::pow(radius, -beta), beta);
}

}  // namespace aggint

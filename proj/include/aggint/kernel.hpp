#ifndef AGGINT_KERNEL_HPP_
#define AGGINT_KERNEL_HPP_

#include <complex>

namespace aggint {

// Dimensionless annulus kernel
//   tau(x) = int_1^inf (exp(i x s^-beta) - 1) 2 s ds
//          = 1 - e^{ix} + i x int_0^1 u^{-2/beta} e^{ixu} du,
// so that for an interferer of amplitude a outside radius R,
//   T(omega a) = R^2 tau(omega a R^-beta).
// Evaluated by its power series for small |x|, composite Gauss-Legendre on a
// singularity-free substitution for moderate |x| and a contour-rotated
// asymptotic expansion for large |x|. tau(-x) = conj(tau(x)).
std::complex<double> interference_kernel(double x, double beta);

// T(omega p h) for an interference-region radius R >= 0. R = 0 returns the
// limit i Gamma(1-2/beta) e^{i pi (1-2/beta)/2} (omega p h)^{2/beta}.
std::complex<double> t_kernel(double omega, double p, double h, double radius, double beta);

// n-th derivative weight of tau at 0: tau(x) = sum_n (ix)^n / n! * 2/(n beta - 2).
double kernel_series_coefficient(int n, double beta);

}  // namespace aggint

#endif  // AGGINT_KERNEL_HPP_

#ifndef AGGINT_ANALYTIC_HPP_
#define AGGINT_ANALYTIC_HPP_

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "aggint/charfn.hpp"
#include "aggint/inversion.hpp"
#include "aggint/kernel.hpp"
#include "aggint/scenario.hpp"

namespace aggint {

enum class CumulantSource { closed_form, quadrature, numeric_charfn, monte_carlo };
std::string to_string(CumulantSource source);

// k[0] is k_1 (the mean), k[1] is k_2 (the variance) and so on.
struct CumulantSet {
  std::vector<double> k;
  CumulantSource source = CumulantSource::closed_form;

  // 1-based access: order(1) == k_1.
  double order(int n) const { return k.at(static_cast<std::size_t>(n - 1)); }
};

// E[p^n] / P_max^n under nearest-neighbour power control with u0 =
// lambda pi r_pwc^2 and k = n alpha / 2:
//   int_0^u0 e^{-u} (u/u0)^k du + e^{-u0}.
// Integer k uses the finite sum k!/u0^k (1 - e^{-u0})
//   - e^{-u0} sum_{i=1}^{k-1} k! / ((k-i)! u0^i)
// when it is well conditioned and a positive series for the incomplete gamma
// function otherwise (any real k).
double power_mark_moment(double n, double alpha, double u0);

// k_n for nearest-neighbour power control, receiver at the center of the
// interference region:
//   2 pi lambda P_max^n E[h^n] bracket / ((n beta - 2) R^{n beta - 2}).
double cumulant_power(int n, const ScenarioConfig& cfg);

// k_n for contention control:
//   2 p^n (1 - e^{-lambda pi d^2}) E[h^n] / ((n beta - 2) d^2 R^{n beta - 2}).
double cumulant_contention(int n, const ScenarioConfig& cfg);

// Same form for the uncontrolled field (every point at max_power).
double cumulant_none(int n, const ScenarioConfig& cfg);

// Dispatches on the scheme (known receiver) or on the hidden geometry
// (numeric area integral). Hybrid throws ConfigError.
double cumulant(int n, const ScenarioConfig& cfg);
double cumulant_power_hidden(int n, const ScenarioConfig& cfg);
double cumulant_contention_hidden(int n, const ScenarioConfig& cfg);
CumulantSet cumulants(const ScenarioConfig& cfg, int count = 2);

// K with the aggregate for beta = 4 and R = 0 being one-sided stable:
// sqrt(P_max) E[sqrt h] (bracket at n = 1/2) and q_mh sqrt(p) E[sqrt h].
double k_factor_power(const ScenarioConfig& cfg);
double k_factor_contention(const ScenarioConfig& cfg);
double k_factor(const ScenarioConfig& cfg);

struct LogNormalFit {
  double mu = 0.0;
  double sigma2 = 0.0;

  double mean() const;
  double variance() const;
  double pdf(double y) const;
};

// Cumulant matching: sigma^2 = ln(k2/k1^2 + 1), mu = ln(k1 / sqrt(k2/k1^2 + 1)).
LogNormalFit lognormal_fit(double k1, double k2);
DistributionEstimate lognormal_estimate(const LogNormalFit& fit, double y_max,
                                        std::size_t points = 2048);

// k_n = (d^n/domega^n ln phi)(0) / i^n by central differences with two levels
// of Richardson extrapolation. The base step is chosen from |ln phi|. A
// log characteristic function that is identically zero gives all zeros.
CumulantSet cumulants_from_log_charfn(const std::function<std::complex<double>(double)>& log_phi,
                                      int count);
CumulantSet cumulants_from_charfn(const std::function<std::complex<double>(double)>& phi,
                                  int count);

}  // namespace aggint

#endif  // AGGINT_ANALYTIC_HPP_

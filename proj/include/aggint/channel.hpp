#ifndef AGGINT_CHANNEL_HPP_
#define AGGINT_CHANNEL_HPP_

#include <cmath>
#include <limits>
#include <random>

#include "aggint/rng.hpp"

namespace aggint {

// Euler-Mascheroni constant truncated to the four digits used by the
// composite log-normal approximation, so closed forms match it exactly.
inline constexpr double kEulerGammaTruncated = 0.5772;

inline double db_to_nat(double sigma_db) { return sigma_db * std::log(10.0) / 10.0; }

// g(r) = r^-beta.
struct PathlossModel {
  double exponent = 4.0;

  void validate() const;
  double gain(double r) const;
  // g^-1(t) = t^(-1/beta).
  double inverse(double t) const;
};

double pathloss_gain(double r, double beta);
double pathloss_inverse(double t, double beta);

// Nakagami-m fading (unit-mean power) times log-normal shadowing with
// natural-log parameters mu_omega, sigma_omega. nakagami_m = +inf means no
// fading at all.
struct CompositeChannelParams {
  double nakagami_m = 1.0;
  double mu_omega = 0.0;
  double sigma_omega = 0.0;

  static CompositeChannelParams from_db(double m, double mu_omega, double sigma_db) {
    return {m, mu_omega, db_to_nat(sigma_db)};
  }
  bool fading() const { return std::isfinite(nakagami_m); }
  // m must be a positive integer or +inf; sigma_omega >= 0.
  void validate() const;
};

struct LogNormalParams {
  double mu = 0.0;
  double sigma2 = 0.0;

  double sigma() const { return std::sqrt(sigma2); }
  // E[h^n] = exp(n mu + n^2 sigma^2 / 2).
  double raw_moment(double n) const { return std::exp(n * mu + n * n * sigma2 / 2); }
};

// Log-normal approximation of the composite gain:
//   mu      = H_{m-1} - ln m - 0.5772 + mu_omega
//   sigma^2 = sum_{k>=0} 1/(m+k)^2 + sigma_omega^2
LogNormalParams composite_lognormal_moments(const CompositeChannelParams& params);

enum class GainMode { approx_lognormal, exact_composite };

// Draws composite power gains. approx_lognormal: h = exp(N(mu, sigma^2)) with
// the approximated moments. exact_composite: h = G * S, G ~ Gamma(m, 1/m),
// S = exp(N(mu_omega, sigma_omega^2)).
class GainSampler {
 public:
  GainSampler(const CompositeChannelParams& params, GainMode mode);

  double operator()(Engine& rng);
  // E[h] under the sampled law.
  double mean() const;

 private:
  GainMode mode_;
  CompositeChannelParams params_;
  LogNormalParams approx_;
  std::normal_distribution<double> normal_;
  std::gamma_distribution<double> gamma_;
};

double sample_gain(const CompositeChannelParams& params, GainMode mode, Engine& rng);

// Standard log-normal density; returns 0 for x <= 0.
double lognormal_pdf(double x, double mu, double sigma);

}  // namespace aggint

#endif  // AGGINT_CHANNEL_HPP_

#include "aggint/channel.hpp"

#include <cmath>
#include <string>

#include "aggint/error.hpp"

namespace aggint {

void PathlossModel::validate() const {
  if (!(exponent > 2.0))
    throw ConfigError("pathloss exponent must exceed 2 (got " + std::to_string(exponent) + ")");
}

double PathlossModel::gain(double r) const { return pathloss_gain(r, exponent); }
double PathlossModel::inverse(double t) const { return pathloss_inverse(t, exponent); }

double pathloss_gain(double r, double beta) {
  if (!(r > 0.0)) throw DomainError("pathloss gain needs r > 0");
  return std::pow(r, -beta);
}

double pathloss_inverse(double t, double beta) {
  if (!(t > 0.0)) throw DomainError("inverse pathloss needs t > 0");
  return std::pow(t, -1.0 / beta);
}

void CompositeChannelParams::validate() const {
  if (!(sigma_omega >= 0.0)) throw ConfigError("sigma_omega must be >= 0");
  if (!std::isfinite(mu_omega)) throw ConfigError("mu_omega must be finite");
  if (std::isinf(nakagami_m) && nakagami_m > 0) return;
  if (!(nakagami_m >= 1.0) || std::floor(nakagami_m) != nakagami_m)
    throw ConfigError("Nakagami m must be a positive integer (or inf for no fading); got " +
                      std::to_string(nakagami_m));
}

namespace {

// H_{m-1} for integer m >= 1.
double harmonic_before(double m) {
  if (m <= 1e6) {
    double sum = 0.0;
    for (long k = static_cast<long>(m) - 1; k >= 1; --k) sum += 1.0 / static_cast<double>(k);
    return sum;
  }
  // psi(m) + gamma with the asymptotic digamma series.
  const double inv = 1.0 / m, inv2 = inv * inv;
  const double psi = std::log(m) - inv / 2 - inv2 / 12 + inv2 * inv2 / 120 - inv2 * inv2 * inv2 / 252;
  return psi + 0.57721566490153286;
}

// sum_{k>=0} 1/(m+k)^2: explicit head, Euler-Maclaurin tail from N >= 32.
// The omitted remainder is below 1e-17 relative for every m >= 1.
double trigamma_series(double m) {
  double head = 0.0;
  double n = m;
  while (n < 32.0) {
    head += 1.0 / (n * n);
    n += 1.0;
  }
  const double i1 = 1.0 / n, i2 = i1 * i1;
  const double tail = i1 + i2 / 2 + i2 * i1 / 6 - i2 * i2 * i1 / 30 + i2 * i2 * i2 * i1 / 42 -
                      i2 * i2 * i2 * i2 * i1 / 30;
  return head + tail;
}

}  // namespace

LogNormalParams composite_lognormal_moments(const CompositeChannelParams& params) {
  params.validate();
  LogNormalParams out;
  out.mu = params.mu_omega;
  out.sigma2 = params.sigma_omega * params.sigma_omega;
  if (params.fading()) {
    const double m = params.nakagami_m;
    out.mu += harmonic_before(m) - std::log(m) - kEulerGammaTruncated;
    out.sigma2 += trigamma_series(m);
  }
  return out;
}

GainSampler::GainSampler(const CompositeChannelParams& params, GainMode mode)
    : mode_(mode), params_(params), approx_(composite_lognormal_moments(params)) {
  if (mode_ == GainMode::approx_lognormal) {
    normal_ = std::normal_distribution<double>(approx_.mu, approx_.sigma());
  } else {
    normal_ = std::normal_distribution<double>(params.mu_omega, params.sigma_omega);
    if (params.fading())
      gamma_ = std::gamma_distribution<double>(params.nakagami_m, 1.0 / params.nakagami_m);
  }
}

double GainSampler::operator()(Engine& rng) {
  if (mode_ == GainMode::approx_lognormal) return std::exp(normal_(rng));
  double g = 1.0;
  if (params_.fading()) {
    do g = gamma_(rng); while (!(g > 0.0));
  }
  const double s = params_.sigma_omega > 0.0 ? std::exp(normal_(rng)) : std::exp(params_.mu_omega);
  return g * s;
}

double GainSampler::mean() const {
  if (mode_ == GainMode::approx_lognormal) return approx_.raw_moment(1.0);
  return std::exp(params_.mu_omega + params_.sigma_omega * params_.sigma_omega / 2);
}

double sample_gain(const CompositeChannelParams& params, GainMode mode, Engine& rng) {
  GainSampler sampler(params, mode);
  return sampler(rng);
}

double lognormal_pdf(double x, double mu, double sigma) {
  if (!(sigma > 0.0)) throw DomainError("log-normal density needs sigma > 0");
  if (!(x > 0.0)) return 0.0;
  const double z = (std::log(x) - mu) / sigma;
  return std::exp(-0.5 * z * z) / (std::sqrt(2.0 * M_PI) * sigma * x);
}

}  // namespace aggint

#include "aggint/charfn.hpp"

#include <cmath>

#include "aggint/error.hpp"
#include "aggint/kernel.hpp"
#include "aggint/pointproc.hpp"
#include "aggint/quadrature.hpp"

namespace aggint {

namespace {

using cd = std::complex<double>;

// Gain nodes (h_k, w_k) of the composite channel; a single unit node when
// the channel is pathloss-only.
void gain_nodes(const ScenarioConfig& cfg, Eigen::VectorXd& h, Eigen::VectorXd& w) {
  if (cfg.channel.pathloss_only) {
    h = Eigen::VectorXd::Ones(1);
    w = Eigen::VectorXd::Ones(1);
    return;
  }
  const LogNormalParams ln = cfg.gain_lognormal();
  if (ln.sigma2 == 0.0) {
    h = Eigen::VectorXd::Constant(1, std::exp(ln.mu));
    w = Eigen::VectorXd::Ones(1);
    return;
  }
  const auto& rule = hermite_rule(cfg.analytic.hermite_nodes);
  h = (ln.mu + std::sqrt(2.0 * ln.sigma2) * rule.nodes.array()).exp().matrix();
  w = rule.weights / std::sqrt(M_PI);
}

// Transmit-power nodes of the scheme (weights sum to one).
void power_nodes(const ScenarioConfig& cfg, Eigen::VectorXd& p, Eigen::VectorXd& w,
                 double& activity) {
  activity = 1.0;
  switch (cfg.scheme()) {
    case Scheme::none:
      p = Eigen::VectorXd::Constant(1, cfg.control.power.max_power);
      w = Eigen::VectorXd::Ones(1);
      return;
    case Scheme::contention:
      p = Eigen::VectorXd::Constant(1, cfg.control.contention.power);
      w = Eigen::VectorXd::Ones(1);
      activity = retaining_probability(cfg.density, cfg.control.contention.min_distance);
      return;
    case Scheme::power: {
      const auto& pc = cfg.control.power;
      const double u0 = cfg.density * M_PI * pc.range * pc.range;
      if (u0 == 0.0) {
        p = Eigen::VectorXd::Constant(1, pc.max_power);
        w = Eigen::VectorXd::Ones(1);
        return;
      }
      const QuadratureRule<double> rule = composite_legendre(0.0, u0, cfg.analytic.power_panels);
      const Eigen::Index n = rule.size();
      p.resize(n + 1);
      w.resize(n + 1);
      for (Eigen::Index k = 0; k < n; ++k) {
        const double u = rule.nodes(k);
        p(k) = pc.max_power * std::pow(u / u0, pc.exponent / 2);
        w(k) = rule.weights(k) * std::exp(-u);
      }
      // Neighbour beyond the range: full power with probability e^{-u0}.
      p(n) = pc.max_power;
      w(n) = std::exp(-u0);
      return;
    }
    case Scheme::hybrid:
      break;
  }
  throw ConfigError(
      "hybrid control has no analytic model (nearest-neighbour law of the hard-core field is "
      "unknown); use the Monte Carlo simulator");
}

// e^{i phase} - 1 without cancellation.
inline cd expi_minus_one(double phase) {
  const double s = std::sin(phase / 2);
  return {-2.0 * s * s, std::sin(phase)};
}

}  // namespace

double MarkMixture::moment(double n) const {
  return (weight.array() * amplitude.array().pow(n)).sum();
}

MarkMixture mark_mixture(const ScenarioConfig& cfg) {
  Eigen::VectorXd p, wp, h, wh;
  MarkMixture out;
  power_nodes(cfg, p, wp, out.activity);
  gain_nodes(cfg, h, wh);
  out.amplitude.resize(p.size() * h.size());
  out.weight.resize(out.amplitude.size());
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    for (Eigen::Index j = 0; j < h.size(); ++j, ++k) {
      out.amplitude(k) = p(i) * h(j);
      out.weight(k) = wp(i) * wh(j);
    }
  return out;
}

double r_cp(double r, double theta, double r_p) {
  const double s = r_p * std::sin(theta);
  const double disc = r * r - s * s;
  if (!(r > 0.0) || !(disc > 0.0))
    throw DomainError("r_cp needs r > r_p |sin(theta)| (transmitter outside the receiver offset)");
  return r_p * std::cos(theta) + std::sqrt(disc);
}

GeometryRule hidden_geometry_rule(double inner, double outer, double offset, double beta,
                                  HiddenGeometryModel model, std::size_t radial_panels,
                                  std::size_t angle_steps) {
  if (!(inner > 0.0)) throw DomainError("hidden geometry needs a positive inner radius");
  if (!(offset >= 0.0) || !(offset < inner))
    throw DomainError("hidden geometry needs 0 <= receiver offset < inner radius");
  if (!(outer > inner)) throw DomainError("hidden geometry needs outer > inner radius");
  const double e = beta - 2.0;
  const double u_lo = std::isinf(outer) ? 0.0 : std::pow(inner / outer, e);
  const QuadratureRule<double> radial = composite_legendre(u_lo, 1.0, radial_panels);
  const std::size_t na = angle_steps + 1;
  GeometryRule rule;
  rule.gain.resize(radial.size() * static_cast<Eigen::Index>(na));
  rule.weight.resize(rule.gain.size());
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < radial.size(); ++i) {
    const double u = radial.nodes(i);
    const double r = inner * std::pow(u, -1.0 / e);
    // r dr = R^2/(beta-2) u^{-2/(beta-2)-1} du
    const double area = inner * inner / e * std::pow(u, -2.0 / e - 1.0) * radial.weights(i);
    for (std::size_t a = 0; a < na; ++a, ++k) {
      const double theta = M_PI * static_cast<double>(a) / static_cast<double>(angle_steps);
      // Trapezoid on [0, pi], doubled for the mirror half.
      const double wa = 2.0 * M_PI / static_cast<double>(angle_steps) *
                        ((a == 0 || a == angle_steps) ? 0.5 : 1.0);
      double dist;
      if (model == HiddenGeometryModel::receiver_angle) {
        dist = r_cp(r, theta, offset);
      } else {
        dist = std::sqrt(std::max(0.0, r * r + offset * offset - 2.0 * r * offset * std::cos(theta)));
      }
      rule.gain(k) = std::pow(dist, -beta);
      rule.weight(k) = area * wa;
    }
  }
  return rule;
}

CharacteristicFunction::CharacteristicFunction(const ScenarioConfig& cfg)
    : cfg_(cfg), mixture_(mark_mixture(cfg)) {
  cfg_.validate();
  hidden_ = cfg_.geometry.hidden;
  inner_ = cfg_.geometry.inner_radius;
  if (cfg_.geometry.outer_radius) outer_ = *cfg_.geometry.outer_radius;
  if (hidden_)
    geometry_ = hidden_geometry_rule(inner_, outer_, cfg_.geometry.receiver_offset,
                                     cfg_.channel.pathloss_exponent, cfg_.analytic.hidden_geometry);
}

std::complex<double> CharacteristicFunction::log(double omega) const {
  if (omega == 0.0 || cfg_.density == 0.0) return 0.0;
  const double beta = cfg_.channel.pathloss_exponent;
  const double scale = cfg_.density * mixture_.activity;
  cd sum = 0.0;
  if (!hidden_) {
    const double g_inner = inner_ > 0.0 ? std::pow(inner_, -beta) : 0.0;
    const bool finite_outer = std::isfinite(outer_);
    const double g_outer = finite_outer ? std::pow(outer_, -beta) : 0.0;
    for (Eigen::Index j = 0; j < mixture_.amplitude.size(); ++j) {
      const double a = mixture_.amplitude(j);
      cd t = inner_ > 0.0 ? inner_ * inner_ * interference_kernel(omega * a * g_inner, beta)
                          : t_kernel(omega, a, 1.0, 0.0, beta);
      if (finite_outer) t -= outer_ * outer_ * interference_kernel(omega * a * g_outer, beta);
      sum += mixture_.weight(j) * t;
    }
    return scale * M_PI * sum;
  }
  for (Eigen::Index j = 0; j < mixture_.amplitude.size(); ++j) {
    const double wa = omega * mixture_.amplitude(j);
    cd inner_sum = 0.0;
    for (Eigen::Index k = 0; k < geometry_.gain.size(); ++k)
      inner_sum += geometry_.weight(k) * expi_minus_one(wa * geometry_.gain(k));
    sum += mixture_.weight(j) * inner_sum;
  }
  return scale * sum;
}

double CharacteristicFunction::quadrature_cumulant(int n) const {
  if (n < 1) throw DomainError("cumulant order must be >= 1");
  const double beta = cfg_.channel.pathloss_exponent;
  double geometric;
  if (hidden_) {
    geometric = (geometry_.weight.array() * geometry_.gain.array().pow(n)).sum();
  } else {
    const double e = n * beta - 2.0;
    if (inner_ == 0.0) throw NumericError("cumulants diverge without an interference region");
    geometric = 2.0 * M_PI / e * std::pow(inner_, -e);
    if (std::isfinite(outer_)) geometric -= 2.0 * M_PI / e * std::pow(outer_, -e);
  }
  return cfg_.density * mixture_.activity * mixture_.moment(n) * geometric;
}

namespace {

CharacteristicFunction checked(const ScenarioConfig& cfg, Scheme scheme, bool hidden) {
  if (cfg.scheme() != scheme)
    throw ConfigError("scenario scheme is " + to_string(cfg.scheme()) + ", expected " +
                      to_string(scheme));
  if (cfg.geometry.hidden != hidden)
    throw ConfigError(hidden ? "scenario has no hidden receiver" : "scenario has a hidden receiver");
  return CharacteristicFunction(cfg);
}

}  // namespace

std::complex<double> charfn_power(double omega, const ScenarioConfig& cfg) {
  return checked(cfg, Scheme::power, false)(omega);
}
std::complex<double> charfn_contention(double omega, const ScenarioConfig& cfg) {
  return checked(cfg, Scheme::contention, false)(omega);
}
std::complex<double> charfn_power_hidden(double omega, const ScenarioConfig& cfg) {
  return checked(cfg, Scheme::power, true)(omega);
}
std::complex<double> charfn_contention_hidden(double omega, const ScenarioConfig& cfg) {
  return checked(cfg, Scheme::contention, true)(omega);
}

}  // namespace aggint

#include "aggint/analytic.hpp"

#include <algorithm>
#include <cmath>

#include "aggint/error.hpp"
#include "aggint/pointproc.hpp"

namespace aggint {

using cd = std::complex<double>;

std::string to_string(CumulantSource source) {
  switch (source) {
    case CumulantSource::closed_form: return "closed_form";
    case CumulantSource::quadrature: return "quadrature";
    case CumulantSource::numeric_charfn: return "numeric_charfn";
    case CumulantSource::monte_carlo: return "monte_carlo";
  }
  return "unknown";
}

namespace {

// int_0^u0 e^{-u} (u/u0)^k du via gamma(k+1, u0) = u0^{k+1} e^{-u0}
// sum_m u0^m / ((k+1)...(k+1+m)); all terms positive.
double bracket_series(double k, double u0) {
  double term = 1.0 / (k + 1.0);
  double sum = term;
  for (int m = 1; m < 100000; ++m) {
    term *= u0 / (k + 1.0 + m);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return u0 * std::exp(-u0) * sum;
}

double h_moment(double n, const ScenarioConfig& cfg) {
  if (cfg.channel.pathloss_only) return 1.0;
  return cfg.gain_lognormal().raw_moment(n);
}

// 2 pi int_R^l r^{1 - n beta} dr.
double radial_factor(int n, const ScenarioConfig& cfg) {
  const double beta = cfg.channel.pathloss_exponent;
  const double e = n * beta - 2.0;
  if (!(e > 0.0)) throw DomainError("cumulant of order " + std::to_string(n) + " diverges for n beta <= 2");
  const double R = cfg.geometry.inner_radius;
  if (!(R > 0.0)) throw DomainError("cumulants diverge without an interference region (R = 0)");
  double f = 2.0 * M_PI / e * std::pow(R, -e);
  if (cfg.geometry.outer_radius) f *= 1.0 - std::pow(R / *cfg.geometry.outer_radius, e);
  return f;
}

void require(const ScenarioConfig& cfg, Scheme scheme, bool hidden) {
  cfg.validate();
  if (cfg.scheme() != scheme)
    throw ConfigError("scenario scheme is " + to_string(cfg.scheme()) + ", expected " + to_string(scheme));
  if (cfg.geometry.hidden != hidden)
    throw ConfigError(hidden ? "scenario has no hidden receiver" : "scenario has a hidden receiver");
}

}  // namespace

double power_mark_moment(double n, double alpha, double u0) {
  if (!(u0 >= 0.0)) throw DomainError("power moment needs u0 >= 0");
  if (u0 == 0.0) return 1.0;
  const double k = n * alpha / 2;
  const double atom = std::exp(-u0);
  const double kr = std::round(k);
  if (std::abs(k - kr) < 1e-12 && kr >= 1 && kr <= 170) {
    const int ki = static_cast<int>(kr);
    const double kfact = std::tgamma(kr + 1.0);
    const double lead = kfact * std::pow(u0, -kr) * (-std::expm1(-u0));
    double tail = 0.0;
    double ratio = 1.0;  // k! / (k-i)! / u0^i built up term by term
    for (int i = 1; i <= ki - 1; ++i) {
      ratio *= (kr - i + 1) / u0;
      tail += ratio;
    }
    const double value = lead - atom * tail;
    // Accept the finite sum unless cancellation ate the digits.
    if (value > 0.0 && lead * 1e-16 < 1e-13 * value) return value;
  }
  return bracket_series(k, u0) + atom;
}

double cumulant_power(int n, const ScenarioConfig& cfg) {
  require(cfg, Scheme::power, false);
  const auto& pc = cfg.control.power;
  const double u0 = cfg.density * M_PI * pc.range * pc.range;
  return cfg.density * std::pow(pc.max_power, n) * power_mark_moment(n, pc.exponent, u0) *
         h_moment(n, cfg) * radial_factor(n, cfg);
}

double cumulant_contention(int n, const ScenarioConfig& cfg) {
  require(cfg, Scheme::contention, false);
  const auto& cc = cfg.control.contention;
  const double d2 = cc.min_distance * cc.min_distance;
  // lambda q_mh = (1 - e^{-lambda pi d^2}) / (pi d^2), lambda in the d -> 0 limit.
  const double active = d2 > 0.0 ? -std::expm1(-cfg.density * M_PI * d2) / (M_PI * d2) : cfg.density;
  return active * std::pow(cc.power, n) * h_moment(n, cfg) * radial_factor(n, cfg);
}

double cumulant_none(int n, const ScenarioConfig& cfg) {
  require(cfg, Scheme::none, false);
  return cfg.density * std::pow(cfg.control.power.max_power, n) * h_moment(n, cfg) * radial_factor(n, cfg);
}

double cumulant_power_hidden(int n, const ScenarioConfig& cfg) {
  require(cfg, Scheme::power, true);
  return CharacteristicFunction(cfg).quadrature_cumulant(n);
}

double cumulant_contention_hidden(int n, const ScenarioConfig& cfg) {
  require(cfg, Scheme::contention, true);
  return CharacteristicFunction(cfg).quadrature_cumulant(n);
}

double cumulant(int n, const ScenarioConfig& cfg) {
  if (n < 1) throw DomainError("cumulant order must be >= 1");
  if (cfg.geometry.hidden) {
    if (cfg.scheme() == Scheme::hybrid)
      throw ConfigError("hybrid control has no analytic model; use the Monte Carlo simulator");
    cfg.validate();
    return CharacteristicFunction(cfg).quadrature_cumulant(n);
  }
  switch (cfg.scheme()) {
    case Scheme::power: return cumulant_power(n, cfg);
    case Scheme::contention: return cumulant_contention(n, cfg);
    case Scheme::none: return cumulant_none(n, cfg);
    case Scheme::hybrid: break;
  }
  throw ConfigError("hybrid control has no analytic model; use the Monte Carlo simulator");
}

CumulantSet cumulants(const ScenarioConfig& cfg, int count) {
  CumulantSet out;
  out.source = cfg.geometry.hidden ? CumulantSource::quadrature : CumulantSource::closed_form;
  for (int n = 1; n <= count; ++n) out.k.push_back(cumulant(n, cfg));
  return out;
}

namespace {

void require_beta4(const ScenarioConfig& cfg) {
  if (cfg.channel.pathloss_exponent != 4.0) throw DomainError("K is defined for pathloss exponent 4 only");
  if (cfg.geometry.hidden) throw DomainError("K has no hidden-receiver form");
}

}  // namespace

double k_factor_power(const ScenarioConfig& cfg) {
  require_beta4(cfg);
  if (cfg.scheme() != Scheme::power) throw ConfigError("k_factor_power needs the power scheme");
  const auto& pc = cfg.control.power;
  const double u0 = cfg.density * M_PI * pc.range * pc.range;
  return std::sqrt(pc.max_power) * h_moment(0.5, cfg) * power_mark_moment(0.5, pc.exponent, u0);
}

double k_factor_contention(const ScenarioConfig& cfg) {
  require_beta4(cfg);
  if (cfg.scheme() != Scheme::contention) throw ConfigError("k_factor_contention needs the contention scheme");
  const auto& cc = cfg.control.contention;
  return retaining_probability(cfg.density, cc.min_distance) * std::sqrt(cc.power) * h_moment(0.5, cfg);
}

double k_factor(const ScenarioConfig& cfg) {
  switch (cfg.scheme()) {
    case Scheme::power: return k_factor_power(cfg);
    case Scheme::contention: return k_factor_contention(cfg);
    case Scheme::none:
      require_beta4(cfg);
      return std::sqrt(cfg.control.power.max_power) * h_moment(0.5, cfg);
    case Scheme::hybrid: break;
  }
  throw ConfigError("hybrid control has no analytic model");
}

double LogNormalFit::mean() const { return std::exp(mu + sigma2 / 2); }

double LogNormalFit::variance() const { return std::expm1(sigma2) * std::exp(2 * mu + sigma2); }

double LogNormalFit::pdf(double y) const { return lognormal_pdf(y, mu, std::sqrt(sigma2)); }

LogNormalFit lognormal_fit(double k1, double k2) {
  if (!(k1 > 0.0) || !(k2 > 0.0) || !std::isfinite(k1) || !std::isfinite(k2))
    throw NumericError("log-normal fit needs positive finite k1 and k2 (got " + format_double(k1) +
                       ", " + format_double(k2) + ")");
  const double r = k2 / (k1 * k1);
  LogNormalFit fit;
  fit.sigma2 = std::log1p(r);
  fit.mu = std::log(k1) - fit.sigma2 / 2;
  return fit;
}

DistributionEstimate lognormal_estimate(const LogNormalFit& fit, double y_max, std::size_t points) {
  return tabulate([&](double y) { return fit.pdf(y); }, y_max, points, DistributionKind::lognormal_fit);
}

namespace {

// Target |ln phi(h)| for the base step of the n-th difference.
double step_target(int n) {
  if (n <= 2) return 1e-4;
  if (n == 3) return 3e-3;
  return 1e-2;
}

cd central_difference(const std::function<cd(double)>& g, int n, double h, cd g0) {
  switch (n) {
    case 1: return (g(h) - g(-h)) / (2 * h);
    case 2: return (g(h) - 2.0 * g0 + g(-h)) / (h * h);
    case 3: return (g(2 * h) - 2.0 * g(h) + 2.0 * g(-h) - g(-2 * h)) / (2 * h * h * h);
    case 4: return (g(2 * h) - 4.0 * g(h) + 6.0 * g0 - 4.0 * g(-h) + g(-2 * h)) / (h * h * h * h);
    default: break;
  }
  throw DomainError("numeric cumulants are available up to order 4");
}

}  // namespace

CumulantSet cumulants_from_log_charfn(const std::function<cd(double)>& log_phi, int count) {
  if (count < 1 || count > 4) throw DomainError("numeric cumulants are available for orders 1..4");
  CumulantSet out;
  out.source = CumulantSource::numeric_charfn;
  const cd g0 = log_phi(0.0);
  const cd i_pow[] = {1.0, cd(0, 1), -1.0, cd(0, -1), 1.0};
  for (int n = 1; n <= count; ++n) {
    const double target = step_target(n);
    double h = 1.0;
    bool flat = false;
    for (int it = 0; it < 400; ++it) {
      const double m = std::abs(log_phi(h) - g0);
      if (m == 0.0) {
        if (h > 1e300) {
          flat = true;
          break;
        }
        h *= 1e3;
        continue;
      }
      if (!std::isfinite(m)) {
        h *= 1e-3;
        continue;
      }
      const double ratio = target / m;
      if (std::abs(std::log(ratio)) < 0.1) break;
      h *= std::clamp(ratio, 1e-3, 1e3);
    }
    if (flat) {
      out.k.push_back(0.0);
      continue;
    }
    const cd d0 = central_difference(log_phi, n, h, g0);
    const cd d1 = central_difference(log_phi, n, h / 2, g0);
    const cd d2 = central_difference(log_phi, n, h / 4, g0);
    const cd r0 = (4.0 * d1 - d0) / 3.0;
    const cd r1 = (4.0 * d2 - d1) / 3.0;
    const cd r2 = (16.0 * r1 - r0) / 15.0;
    const double k = (r2 / i_pow[n]).real();
    const double spread = std::abs(r2 - r1) / std::max(std::abs(r2), 1e-300);
    if (n <= 2 && spread > 1e-3)
      throw NumericError("numeric derivative of order " + std::to_string(n) +
                         " unstable: base step " + format_double(h) + ", Richardson spread " +
                         format_double(spread));
    out.k.push_back(k);
  }
  return out;
}

CumulantSet cumulants_from_charfn(const std::function<cd(double)>& phi, int count) {
  return cumulants_from_log_charfn([&](double w) { return std::log(phi(w)); }, count);
}

}  // namespace aggint

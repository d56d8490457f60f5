#include "aggint/control.hpp"

#include <algorithm>
#include <cmath>

#include "aggint/error.hpp"

namespace aggint {

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::none: return "none";
    case Scheme::power: return "power";
    case Scheme::contention: return "contention";
    case Scheme::hybrid: return "hybrid";
  }
  return "unknown";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "none") return Scheme::none;
  if (name == "power") return Scheme::power;
  if (name == "contention") return Scheme::contention;
  if (name == "hybrid") return Scheme::hybrid;
  throw ConfigError("unknown scheme '" + name + "' (expected none, power, contention or hybrid)");
}

void PowerControlConfig::validate() const {
  if (!(max_power > 0.0)) throw ConfigError("power control: max_power must be > 0");
  if (!(range > 0.0)) throw ConfigError("power control: range must be > 0");
  if (!(exponent > 2.0)) throw ConfigError("power control: exponent must be > 2");
}

void ContentionConfig::validate() const {
  if (!(power > 0.0)) throw ConfigError("contention: power must be > 0");
  if (!(min_distance > 0.0)) throw ConfigError("contention: min_distance must be > 0");
}

void HybridConfig::validate() const {
  if (!(power > 0.0)) throw ConfigError("hybrid: power must be > 0");
  if (!(min_distance > 0.0)) throw ConfigError("hybrid: min_distance must be > 0");
  if (!(range >= min_distance)) throw ConfigError("hybrid: range must be >= min_distance");
  if (!(exponent > 2.0)) throw ConfigError("hybrid: exponent must be > 2");
}

double HybridConfig::max_power() const {
  return std::pow(range / min_distance, exponent) * power;
}

void SchemeParams::validate() const {
  switch (scheme) {
    case Scheme::none:
    case Scheme::power: power.validate(); break;
    case Scheme::contention: contention.validate(); break;
    case Scheme::hybrid: hybrid.validate(); break;
  }
}

std::optional<std::string> SchemeParams::exponent_warning(double pathloss_exponent) const {
  double alpha = pathloss_exponent;
  if (scheme == Scheme::power) alpha = power.exponent;
  if (scheme == Scheme::hybrid) alpha = hybrid.exponent;
  if (alpha == pathloss_exponent) return std::nullopt;
  return "power-control exponent " + std::to_string(alpha) + " differs from pathloss exponent " +
         std::to_string(pathloss_exponent) + "; the capped-interference property no longer holds";
}

double power_pwc(double r_cc, const PowerControlConfig& cfg) {
  if (!(r_cc > 0.0)) throw DomainError("power control needs a positive neighbour distance");
  if (r_cc >= cfg.range) return cfg.max_power;
  return std::pow(r_cc / cfg.range, cfg.exponent) * cfg.max_power;
}

double power_hybrid(double r, const HybridConfig& cfg) {
  // One part in 1e12 absorbs sqrt rounding of distances exactly at d_min.
  if (!(r >= cfg.min_distance * (1.0 - 1e-12)))
    throw DomainError("hybrid power: neighbour at " + std::to_string(r) +
                      " m violates the hard-core distance " + std::to_string(cfg.min_distance));
  const double capped = std::clamp(r, cfg.min_distance, cfg.range);
  return std::pow(capped / cfg.min_distance, cfg.exponent) * cfg.power;
}

double coverage_radius(Scheme scheme, double r, const SchemeParams& params) {
  switch (scheme) {
    case Scheme::power: return std::min(r, params.power.range) / 2;
    case Scheme::contention: return params.contention.min_distance / 2;
    case Scheme::hybrid: return std::min(r, params.hybrid.range) / 2;
    case Scheme::none: break;
  }
  throw ConfigError("coverage is only defined for power, contention and hybrid schemes");
}

double edge_power_check(Scheme scheme, const SchemeParams& params, double pathloss_exponent) {
  const auto& pc = params.power;
  const auto& cc = params.contention;
  const auto& hy = params.hybrid;
  if (pc.range != cc.min_distance || hy.min_distance != cc.min_distance)
    throw ConfigError("comparison setup requires power-control range == contention distance == "
                      "hybrid contention distance");
  if (pc.max_power != cc.power || hy.power != cc.power)
    throw ConfigError("comparison setup requires max_power == contention power == hybrid power");
  const double scale = std::pow(2.0, pathloss_exponent);
  switch (scheme) {
    case Scheme::power: return scale * pc.max_power / std::pow(pc.range, pathloss_exponent);
    case Scheme::contention: return scale * cc.power / std::pow(cc.min_distance, pathloss_exponent);
    case Scheme::hybrid: return scale * hy.power / std::pow(hy.min_distance, pathloss_exponent);
    case Scheme::none: break;
  }
  throw ConfigError("edge power is only defined for power, contention and hybrid schemes");
}

}  // namespace aggint

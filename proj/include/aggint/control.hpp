#ifndef AGGINT_CONTROL_HPP_
#define AGGINT_CONTROL_HPP_

#include <optional>
#include <string>

namespace aggint {

enum class Scheme { none, power, contention, hybrid };

std::string to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);

// Nearest-neighbour power control: (r/range)^exponent * max_power inside the
// range, max_power beyond it.
struct PowerControlConfig {
  double max_power = 1.0;
  double range = 20.0;
  double exponent = 4.0;

  void validate() const;
};

// Fixed-power transmitters separated by at least min_distance.
struct ContentionConfig {
  double power = 1.0;
  double min_distance = 20.0;

  void validate() const;
};

// Contention first, then power control among the survivors:
// (r/min_distance)^exponent * power for r up to range, capped beyond.
struct HybridConfig {
  double power = 1.0;
  double min_distance = 20.0;
  double range = 30.0;
  double exponent = 4.0;

  void validate() const;
  double max_power() const;
};

// All scheme parameters of one scenario. `none` transmits power.max_power
// everywhere (no control at all).
struct SchemeParams {
  Scheme scheme = Scheme::power;
  PowerControlConfig power;
  ContentionConfig contention;
  HybridConfig hybrid;

  void validate() const;
  // Warning text when the active power-control exponent differs from the
  // pathloss exponent; nullopt otherwise.
  std::optional<std::string> exponent_warning(double pathloss_exponent) const;
};

double power_pwc(double r_cc, const PowerControlConfig& cfg);

// Throws DomainError when r < min_distance: thinned fields never contain
// such pairs, so this signals a broken hard-core invariant upstream.
double power_hybrid(double r, const HybridConfig& cfg);

// Coverage disk radius of a transmitter whose nearest active neighbour sits
// at distance r.
double coverage_radius(Scheme scheme, double r, const SchemeParams& params);

// Received power at the coverage edge under pathloss only. Requires the
// comparison setup range == min_distance and max_power == power across the
// three schemes (ConfigError otherwise).
double edge_power_check(Scheme scheme, const SchemeParams& params, double pathloss_exponent);

}  // namespace aggint

#endif  // AGGINT_CONTROL_HPP_

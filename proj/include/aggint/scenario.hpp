#ifndef AGGINT_SCENARIO_HPP_
#define AGGINT_SCENARIO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aggint/channel.hpp"
#include "aggint/control.hpp"

namespace aggint {

// Interference region of radius inner_radius. With hidden = false it is
// centered at the receiver; with hidden = true it is centered at the primary
// transmitter and the receiver sits receiver_offset meters away.
// outer_radius == nullopt means "auto" (unbounded field).
struct Geometry {
  double inner_radius = 100.0;
  std::optional<double> outer_radius;
  bool hidden = false;
  double receiver_offset = 0.0;
};

struct ChannelConfig {
  double pathloss_exponent = 4.0;
  bool pathloss_only = true;
  CompositeChannelParams composite;
  GainMode sampler = GainMode::approx_lognormal;
};

// How the simulator realizes scheme marks.
//   exact:       Matérn II thinning and nearest-neighbour distances measured
//                on the simulated field (the physical model).
//   independent: independent thinning with the retaining probability and
//                i.i.d. Rayleigh neighbour distances; the assumptions under
//                which the analytic characteristic functions are exact.
enum class MarkModel { exact, independent };

// Parameterization of the hidden-receiver integrals.
//   receiver_angle: angle measured at the receiver, area element r dr dtheta
//                   with r the distance to the primary transmitter.
//   exact:          polar coordinates about the primary transmitter.
enum class HiddenGeometryModel { receiver_angle, exact };

struct SimulationConfig {
  std::size_t trials = 100000;
  std::uint64_t seed = 1;
  MarkModel mark_model = MarkModel::exact;
  unsigned threads = 0;
  // Add the mean of the field beyond the truncation radius to each sample.
  bool far_field_correction = true;
};

struct AnalyticConfig {
  std::size_t hermite_nodes = 64;
  std::size_t power_panels = 2;
  HiddenGeometryModel hidden_geometry = HiddenGeometryModel::receiver_angle;
};

struct ScenarioConfig {
  std::string name;
  double density = 3e-4;
  Geometry geometry;
  ChannelConfig channel;
  SchemeParams control;
  SimulationConfig simulation;
  AnalyticConfig analytic;

  Scheme scheme() const { return control.scheme; }
  PathlossModel pathloss() const { return {channel.pathloss_exponent}; }

  // Throws ConfigError on any inconsistency; returns non-fatal warnings.
  std::vector<std::string> validate() const;
  // The log-normal parameters of h (degenerate mu = sigma2 = 0 when
  // pathloss_only).
  LogNormalParams gain_lognormal() const;
};

std::string to_string(MarkModel m);
std::string to_string(HiddenGeometryModel m);
std::string to_string(GainMode m);

// JSON (de)serialization. Units: meters, watts, dB for the shadowing spread
// only ("sigma_omega_db"); everything else natural units.
std::string scenario_to_json(const ScenarioConfig& cfg, int indent = 2);
ScenarioConfig scenario_from_json(const std::string& text);
// Throws IoError if the file cannot be read, ConfigError if it is malformed.
ScenarioConfig load_scenario(const std::string& path);

// FNV-1a over the canonical JSON form, as 16 hex digits.
std::string config_hash(const ScenarioConfig& cfg);

// Round-trip-exact, locale-independent scientific formatting.
std::string format_double(double v);

}  // namespace aggint

#endif  // AGGINT_SCENARIO_HPP_

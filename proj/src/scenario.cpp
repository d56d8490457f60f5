#include "aggint/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "aggint/error.hpp"
#include "json.hpp"

namespace aggint {

using nlohmann::json;

std::string to_string(MarkModel m) { return m == MarkModel::exact ? "exact" : "independent"; }
std::string to_string(HiddenGeometryModel m) {
  return m == HiddenGeometryModel::exact ? "exact" : "receiver_angle";
}
std::string to_string(GainMode m) {
  return m == GainMode::exact_composite ? "exact_composite" : "approx_lognormal";
}

std::vector<std::string> ScenarioConfig::validate() const {
  std::vector<std::string> warnings;
  if (!(density >= 0.0) || !std::isfinite(density)) throw ConfigError("density must be >= 0");
  pathloss().validate();
  if (!channel.pathloss_only) channel.composite.validate();
  control.validate();
  const auto& g = geometry;
  if (!(g.inner_radius >= 0.0)) throw ConfigError("inner radius must be >= 0");
  if (g.outer_radius && !(*g.outer_radius > g.inner_radius))
    throw ConfigError("outer radius must exceed the inner radius");
  if (g.hidden) {
    if (!(g.receiver_offset >= 0.0) || !(g.receiver_offset < g.inner_radius))
      throw ConfigError("hidden receiver needs 0 <= receiver_offset < inner radius");
  } else if (g.receiver_offset != 0.0) {
    throw ConfigError("receiver_offset is only meaningful with hidden = true");
  }
  if (simulation.trials == 0) throw ConfigError("trials must be positive");
  if (analytic.hermite_nodes == 0 || analytic.power_panels == 0)
    throw ConfigError("quadrature node counts must be positive");
  if (auto w = control.exponent_warning(channel.pathloss_exponent)) warnings.push_back(*w);
  return warnings;
}

LogNormalParams ScenarioConfig::gain_lognormal() const {
  if (channel.pathloss_only) return {};
  return composite_lognormal_moments(channel.composite);
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific,
                           std::numeric_limits<double>::max_digits10 - 1);
  return std::string(buf, res.ptr);
}

namespace {

json number_or_inf(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

double read_number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string() && (v.get<std::string>() == "inf" || v.get<std::string>() == "infinity"))
    return std::numeric_limits<double>::infinity();
  throw ConfigError(std::string("field '") + key + "' must be a number");
}

json to_json(const ScenarioConfig& c) {
  json j;
  j["name"] = c.name;
  j["scheme"] = to_string(c.scheme());
  j["density"] = c.density;
  j["geometry"] = {
      {"inner_radius", c.geometry.inner_radius},
      {"outer_radius", c.geometry.outer_radius ? json(*c.geometry.outer_radius) : json("auto")},
      {"hidden", c.geometry.hidden},
      {"receiver_offset", c.geometry.receiver_offset}};
  j["channel"] = {{"pathloss_exponent", c.channel.pathloss_exponent},
                  {"pathloss_only", c.channel.pathloss_only},
                  {"nakagami_m", number_or_inf(c.channel.composite.nakagami_m)},
                  {"mu_omega", c.channel.composite.mu_omega},
                  {"sigma_omega_db", c.channel.composite.sigma_omega * 10.0 / std::log(10.0)},
                  {"gain_sampler", to_string(c.channel.sampler)}};
  j["power_control"] = {{"max_power", c.control.power.max_power},
                        {"range", c.control.power.range},
                        {"exponent", c.control.power.exponent}};
  j["contention"] = {{"power", c.control.contention.power},
                     {"min_distance", c.control.contention.min_distance}};
  j["hybrid"] = {{"power", c.control.hybrid.power},
                 {"min_distance", c.control.hybrid.min_distance},
                 {"range", c.control.hybrid.range},
                 {"exponent", c.control.hybrid.exponent}};
  j["simulation"] = {{"trials", c.simulation.trials},
                     {"seed", c.simulation.seed},
                     {"mark_model", to_string(c.simulation.mark_model)},
                     {"far_field_correction", c.simulation.far_field_correction}};
  j["analytic"] = {{"hermite_nodes", c.analytic.hermite_nodes},
                   {"power_panels", c.analytic.power_panels},
                   {"hidden_geometry", to_string(c.analytic.hidden_geometry)}};
  return j;
}

ScenarioConfig from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("scenario must be a JSON object");
  ScenarioConfig c;
  c.name = j.value("name", std::string{});
  c.control.scheme = scheme_from_string(j.value("scheme", std::string("power")));
  c.density = read_number(j, "density", c.density);
  if (j.contains("geometry")) {
    const json& g = j.at("geometry");
    c.geometry.inner_radius = read_number(g, "inner_radius", c.geometry.inner_radius);
    if (g.contains("outer_radius")) {
      const json& o = g.at("outer_radius");
      if (o.is_string() && o.get<std::string>() == "auto")
        c.geometry.outer_radius.reset();
      else
        c.geometry.outer_radius = read_number(g, "outer_radius", 0.0);
    }
    c.geometry.hidden = g.value("hidden", false);
    c.geometry.receiver_offset = read_number(g, "receiver_offset", 0.0);
  }
  if (j.contains("channel")) {
    const json& ch = j.at("channel");
    c.channel.pathloss_exponent = read_number(ch, "pathloss_exponent", 4.0);
    c.channel.pathloss_only = ch.value("pathloss_only", true);
    c.channel.composite.nakagami_m = read_number(ch, "nakagami_m", 1.0);
    c.channel.composite.mu_omega = read_number(ch, "mu_omega", 0.0);
    c.channel.composite.sigma_omega = db_to_nat(read_number(ch, "sigma_omega_db", 0.0));
    const std::string sampler = ch.value("gain_sampler", std::string("approx_lognormal"));
    if (sampler == "approx_lognormal")
      c.channel.sampler = GainMode::approx_lognormal;
    else if (sampler == "exact_composite")
      c.channel.sampler = GainMode::exact_composite;
    else
      throw ConfigError("unknown gain_sampler '" + sampler + "'");
  }
  // Power-control exponents default to the pathloss exponent.
  c.control.power.exponent = c.channel.pathloss_exponent;
  c.control.hybrid.exponent = c.channel.pathloss_exponent;
  if (j.contains("power_control")) {
    const json& p = j.at("power_control");
    c.control.power.max_power = read_number(p, "max_power", c.control.power.max_power);
    c.control.power.range = read_number(p, "range", c.control.power.range);
    c.control.power.exponent = read_number(p, "exponent", c.control.power.exponent);
  }
  if (j.contains("contention")) {
    const json& p = j.at("contention");
    c.control.contention.power = read_number(p, "power", c.control.contention.power);
    c.control.contention.min_distance =
        read_number(p, "min_distance", c.control.contention.min_distance);
  }
  if (j.contains("hybrid")) {
    const json& p = j.at("hybrid");
    c.control.hybrid.power = read_number(p, "power", c.control.hybrid.power);
    c.control.hybrid.min_distance = read_number(p, "min_distance", c.control.hybrid.min_distance);
    c.control.hybrid.range = read_number(p, "range", c.control.hybrid.range);
    c.control.hybrid.exponent = read_number(p, "exponent", c.control.hybrid.exponent);
  }
  if (j.contains("simulation")) {
    const json& s = j.at("simulation");
    c.simulation.trials = s.value("trials", c.simulation.trials);
    c.simulation.seed = s.value("seed", c.simulation.seed);
    const std::string mm = s.value("mark_model", std::string("exact"));
    if (mm == "exact")
      c.simulation.mark_model = MarkModel::exact;
    else if (mm == "independent")
      c.simulation.mark_model = MarkModel::independent;
    else
      throw ConfigError("unknown mark_model '" + mm + "'");
    c.simulation.far_field_correction = s.value("far_field_correction", true);
  }
  if (j.contains("analytic")) {
    const json& a = j.at("analytic");
    c.analytic.hermite_nodes = a.value("hermite_nodes", c.analytic.hermite_nodes);
    c.analytic.power_panels = a.value("power_panels", c.analytic.power_panels);
    const std::string hg = a.value("hidden_geometry", std::string("receiver_angle"));
    if (hg == "receiver_angle")
      c.analytic.hidden_geometry = HiddenGeometryModel::receiver_angle;
    else if (hg == "exact")
      c.analytic.hidden_geometry = HiddenGeometryModel::exact;
    else
      throw ConfigError("unknown hidden_geometry '" + hg + "'");
  }
  return c;
}

}  // namespace

std::string scenario_to_json(const ScenarioConfig& cfg, int indent) {
  return to_json(cfg).dump(indent);
}

ScenarioConfig scenario_from_json(const std::string& text) {
  try {
    ScenarioConfig c = from_json(json::parse(text));
    c.validate();
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed scenario: ") + e.what());
  }
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return scenario_from_json(ss.str());
}

std::string config_hash(const ScenarioConfig& cfg) {
  const std::string canonical = to_json(cfg).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace aggint

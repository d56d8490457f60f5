#include "aggint/recipes.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "aggint/analytic.hpp"
#include "aggint/error.hpp"
#include "json.hpp"

namespace aggint {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string to_string(CurveMethod method) {
  switch (method) {
    case CurveMethod::inverted: return "inverted";
    case CurveMethod::lognormal_fit: return "lognormal_fit";
    case CurveMethod::monte_carlo: return "monte_carlo";
  }
  return "unknown";
}

ScenarioConfig base_scenario(Scheme scheme) {
  ScenarioConfig cfg;
  cfg.name = to_string(scheme);
  cfg.control.scheme = scheme;
  return cfg;
}

ScenarioConfig with_shadowing(ScenarioConfig cfg, double nakagami_m, double sigma_db) {
  cfg.channel.pathloss_only = false;
  cfg.channel.composite = CompositeChannelParams::from_db(nakagami_m, 0.0, sigma_db);
  return cfg;
}

namespace {

ScenarioConfig hidden(ScenarioConfig cfg, double offset) {
  cfg.geometry.inner_radius = 200.0;
  cfg.geometry.hidden = true;
  cfg.geometry.receiver_offset = offset;
  return cfg;
}

void add(ExperimentRecipe& r, const std::string& name, ScenarioConfig cfg, CurveMethod m) {
  cfg.name = r.name + "/" + name;
  r.curves.push_back({name, std::move(cfg), m});
}

ExperimentRecipe lognormal_recipe(const std::string& name, Scheme scheme) {
  ExperimentRecipe r{name, "log-normal fit against the inverted density, pathloss only and 4 dB shadowing", {}};
  const ScenarioConfig plain = base_scenario(scheme);
  const ScenarioConfig shadow = with_shadowing(plain);
  add(r, "pathloss_inverted", plain, CurveMethod::inverted);
  add(r, "pathloss_lognormal", plain, CurveMethod::lognormal_fit);
  add(r, "shadowing_inverted", shadow, CurveMethod::inverted);
  add(r, "shadowing_lognormal", shadow, CurveMethod::lognormal_fit);
  if (scheme == Scheme::contention) {
    add(r, "pathloss_simulated", plain, CurveMethod::monte_carlo);
    add(r, "shadowing_simulated", shadow, CurveMethod::monte_carlo);
  }
  return r;
}

ExperimentRecipe hidden_recipe(const std::string& name, Scheme scheme) {
  ExperimentRecipe r{name, "hidden receiver (R = 200 m, r_p = 100 m) against a receiver at the center", {}};
  ScenarioConfig known = base_scenario(scheme);
  known.geometry.inner_radius = 200.0;
  ScenarioConfig h = hidden(base_scenario(scheme), 100.0);
  ScenarioConfig h_exact = h;
  h_exact.analytic.hidden_geometry = HiddenGeometryModel::exact;
  add(r, "known_inverted", known, CurveMethod::inverted);
  add(r, "known_lognormal", known, CurveMethod::lognormal_fit);
  add(r, "hidden_inverted", h, CurveMethod::inverted);
  add(r, "hidden_lognormal", h, CurveMethod::lognormal_fit);
  add(r, "hidden_inverted_exact_geometry", h_exact, CurveMethod::inverted);
  add(r, "hidden_simulated", h, CurveMethod::monte_carlo);
  return r;
}

ExperimentRecipe sweep_recipe(const std::string& name, Scheme scheme) {
  ExperimentRecipe r{name, "deployment parameter sweep", {}};
  const ScenarioConfig base = base_scenario(scheme);
  add(r, "no_control", base_scenario(Scheme::none), CurveMethod::inverted);
  add(r, "baseline", base, CurveMethod::inverted);
  ScenarioConfig c = base;
  if (scheme == Scheme::power) {
    c.control.power.max_power /= 2;
    add(r, "half_max_power", c, CurveMethod::inverted);
    c = base;
    c.control.power.range *= 2;
    add(r, "double_range", c, CurveMethod::inverted);
  } else {
    c.control.contention.power /= 2;
    add(r, "half_power", c, CurveMethod::inverted);
    c = base;
    c.control.contention.min_distance *= 2;
    add(r, "double_min_distance", c, CurveMethod::inverted);
  }
  c = base;
  c.density /= 2;
  add(r, "half_density", c, CurveMethod::inverted);
  c = base;
  c.geometry.inner_radius *= 2;
  add(r, "double_inner_radius", c, CurveMethod::inverted);
  return r;
}

ExperimentRecipe fading_recipe(const std::string& name, Scheme scheme) {
  ExperimentRecipe r{name, "shadowing and Nakagami fading (4 dB shadowing, m = 1 and 100)", {}};
  const ScenarioConfig base = base_scenario(scheme);
  add(r, "pathloss_only", base, CurveMethod::inverted);
  add(r, "shadowing", with_shadowing(base), CurveMethod::inverted);
  add(r, "m1_shadowing", with_shadowing(base, 1.0), CurveMethod::inverted);
  add(r, "m100_shadowing", with_shadowing(base, 100.0), CurveMethod::inverted);
  return r;
}

}  // namespace

std::vector<std::string> recipe_names() {
  return {"fig2", "fig3a", "fig3b", "fig5a", "fig5b", "fig6", "fig7a", "fig7b", "fig8a", "fig8b"};
}

ExperimentRecipe make_recipe(const std::string& name) {
  if (name == "fig2") {
    ExperimentRecipe r{name, "power, contention and hybrid control, simulated", {}};
    add(r, "power", base_scenario(Scheme::power), CurveMethod::monte_carlo);
    add(r, "contention", base_scenario(Scheme::contention), CurveMethod::monte_carlo);
    add(r, "hybrid", base_scenario(Scheme::hybrid), CurveMethod::monte_carlo);
    return r;
  }
  if (name == "fig3a") return lognormal_recipe(name, Scheme::power);
  if (name == "fig3b") return lognormal_recipe(name, Scheme::contention);
  if (name == "fig5a") return hidden_recipe(name, Scheme::power);
  if (name == "fig5b") return hidden_recipe(name, Scheme::contention);
  if (name == "fig6") {
    ExperimentRecipe r{name, "hybrid control with a hidden receiver, simulated", {}};
    ScenarioConfig known = base_scenario(Scheme::hybrid);
    known.geometry.inner_radius = 200.0;
    add(r, "known_simulated", known, CurveMethod::monte_carlo);
    add(r, "hidden_simulated", hidden(base_scenario(Scheme::hybrid), 100.0), CurveMethod::monte_carlo);
    return r;
  }
  if (name == "fig7a") return sweep_recipe(name, Scheme::power);
  if (name == "fig7b") return sweep_recipe(name, Scheme::contention);
  if (name == "fig8a") return fading_recipe(name, Scheme::power);
  if (name == "fig8b") return fading_recipe(name, Scheme::contention);
  std::string known;
  for (const auto& n : recipe_names()) known += " " + n;
  throw ConfigError("unknown figure '" + name + "'; available:" + known);
}

ScenarioConfig apply_overrides(ScenarioConfig cfg, const RunOptions& options) {
  if (options.seed) cfg.simulation.seed = *options.seed;
  if (options.trials) cfg.simulation.trials = *options.trials;
  cfg.simulation.threads = options.threads;
  return cfg;
}

CurveResult evaluate_curve(const Curve& curve, const RunOptions& options) {
  CurveResult out{curve, {}, std::nullopt, 0.0, 0.0};
  out.curve.cfg = apply_overrides(curve.cfg, options);
  const ScenarioConfig& cfg = out.curve.cfg;
  cfg.validate();
  switch (curve.method) {
    case CurveMethod::inverted: {
      InversionOptions inv;
      inv.threads = options.threads;
      out.estimate = invert(CharacteristicFunction(cfg), inv);
      break;
    }
    case CurveMethod::lognormal_fit: {
      const CumulantSet k = cumulants(cfg, 2);
      out.estimate = lognormal_estimate(lognormal_fit(k.order(1), k.order(2)),
                                        suggest_y_max(k.order(1), k.order(2)));
      break;
    }
    case CurveMethod::monte_carlo:
      out.empirical = simulate_aggregate(cfg);
      out.estimate = out.empirical->estimate();
      out.mean = out.empirical->cumulants.order(1);
      out.variance = out.empirical->cumulants.order(2);
      return out;
  }
  out.mean = out.estimate.mean();
  out.variance = out.estimate.variance();
  return out;
}

std::string estimate_csv(const DistributionEstimate& est,
                         const std::vector<std::pair<std::string, std::string>>& meta) {
  std::string s;
  for (const auto& [k, v] : meta) s += "# " + k + "=" + v + "\n";
  if (est.binned()) {
    s += "bin_left,bin_right,density\n";
    for (Eigen::Index i = 0; i < est.density.size(); ++i)
      s += format_double(est.edges(i)) + "," + format_double(est.edges(i + 1)) + "," +
           format_double(est.density(i)) + "\n";
  } else {
    s += "y,density\n";
    for (Eigen::Index i = 0; i < est.y.size(); ++i)
      s += format_double(est.y(i)) + "," + format_double(est.density(i)) + "\n";
  }
  return s;
}

void write_files(const std::string& dir, const std::vector<std::pair<std::string, std::string>>& files) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir + "'");
  std::vector<fs::path> temps;
  const auto cleanup = [&] {
    for (const auto& t : temps) fs::remove(t, ec);
  };
  for (const auto& [name, content] : files) {
    const fs::path tmp = fs::path(dir) / (name + ".partial");
    temps.push_back(tmp);
    std::ofstream out(tmp, std::ios::binary);
    out << content;
    out.close();
    if (!out) {
      cleanup();
      throw IoError("cannot write '" + tmp.string() + "'");
    }
  }
  for (std::size_t i = 0; i < files.size(); ++i) {
    fs::rename(temps[i], fs::path(dir) / files[i].first, ec);
    if (ec) {
      cleanup();
      throw IoError("cannot move output into '" + (fs::path(dir) / files[i].first).string() + "'");
    }
  }
}

std::vector<std::string> run_recipe(const ExperimentRecipe& recipe, const RunOptions& options,
                                    const std::string& out_dir) {
  std::vector<std::pair<std::string, std::string>> files;
  json manifest;
  manifest["recipe"] = recipe.name;
  manifest["description"] = recipe.description;
  // Enough to re-run: reproduce <recipe> with these overrides.
  manifest["seed"] = options.seed ? json(*options.seed) : json(nullptr);
  manifest["trials"] = options.trials ? json(*options.trials) : json(nullptr);
  manifest["curves"] = json::array();
  for (const Curve& curve : recipe.curves) {
    const CurveResult r = evaluate_curve(curve, options);
    const std::string hash = config_hash(r.curve.cfg);
    const std::string seed = std::to_string(r.curve.cfg.simulation.seed);
    const std::string file = curve.name + ".csv";
    files.emplace_back(file, estimate_csv(r.estimate, {{"recipe", recipe.name},
                                                       {"curve", curve.name},
                                                       {"method", to_string(curve.method)},
                                                       {"config_hash", hash},
                                                       {"seed", seed}}));
    json entry;
    entry["curve"] = curve.name;
    entry["method"] = to_string(curve.method);
    entry["file"] = file;
    entry["config_hash"] = hash;
    entry["seed"] = r.curve.cfg.simulation.seed;
    entry["mean"] = format_double(r.mean);
    entry["variance"] = format_double(r.variance);
    if (r.empirical) {
      entry["trials"] = r.empirical->trials;
      json k = json::array();
      for (double v : r.empirical->cumulants.k) k.push_back(format_double(v));
      entry["sample_cumulants"] = k;
    }
    entry["config"] = json::parse(scenario_to_json(r.curve.cfg));
    manifest["curves"].push_back(entry);
  }
  files.emplace_back("manifest.json", manifest.dump(2) + "\n");
  write_files(out_dir, files);
  std::vector<std::string> names;
  for (const auto& f : files) names.push_back(f.first);
  return names;
}

}  // namespace aggint

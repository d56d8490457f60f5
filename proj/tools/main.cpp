// Command-line front end: aggint <subcommand> [options].
//
// Exit codes: 0 ok, 1 usage (bad flags, unknown figure), 2 configuration,
// 3 numeric, 4 validation failure, 5 I/O. Nothing is written unless the whole computation succeeded.
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "aggint/analytic.hpp"
#include "aggint/error.hpp"
#include "aggint/montecarlo.hpp"
#include "aggint/recipes.hpp"
#include "aggint/validation.hpp"

using namespace aggint;
using json = nlohmann::json;

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::string out_dir = ".";
  unsigned threads = 0;
  std::string profile = "strict";
};

void add_common(CLI::App* app, Common& c, bool needs_config) {
  auto* opt = app->add_option("--config", c.config, "scenario file (JSON)");
  if (needs_config) opt->required();
  app->add_option("--seed", c.seed, "master seed (overrides the config)");
  app->add_option("--trials", c.trials, "Monte Carlo trials (overrides the config)");
  app->add_option("--out-dir", c.out_dir, "output directory")->capture_default_str();
  app->add_option("--threads", c.threads, "worker threads, 0 = all cores")->capture_default_str();
  app->add_option("--tolerance-profile", c.profile, "strict or fast")
      ->check(CLI::IsMember({"strict", "fast"}))
      ->capture_default_str();
}

RunOptions run_options(const Common& c) { return {c.seed, c.trials, c.threads}; }

ScenarioConfig load(const Common& c) {
  ScenarioConfig cfg = load_scenario(c.config);
  for (const auto& w : cfg.validate()) std::cerr << "warning: " << w << "\n";
  return apply_overrides(cfg, run_options(c));
}

std::vector<std::pair<std::string, std::string>> meta(const ScenarioConfig& cfg, const std::string& what) {
  return {{"output", what}, {"scenario", cfg.name}, {"config_hash", config_hash(cfg)},
          {"seed", std::to_string(cfg.simulation.seed)}};
}

json cumulant_json(const CumulantSet& k) {
  json j;
  j["source"] = to_string(k.source);
  j["k"] = json::array();
  for (double v : k.k) j["k"].push_back(format_double(v));
  return j;
}

json summary(const ScenarioConfig& cfg, const EmpiricalDistribution& e) {
  json j;
  j["config_hash"] = config_hash(cfg);
  j["seed"] = e.seed;
  j["trials"] = e.trials;
  j["mark_model"] = to_string(cfg.simulation.mark_model);
  j["sample_cumulants"] = cumulant_json(e.cumulants);
  return j;
}

int cmd_pdf(const Common& c) {
  const ScenarioConfig cfg = load(c);
  InversionOptions o;
  o.threads = c.threads;
  const DistributionEstimate d = invert(CharacteristicFunction(cfg), o);
  write_files(c.out_dir, {{"pdf.csv", estimate_csv(d, meta(cfg, "inverted_pdf"))}});
  std::printf("wrote %s/pdf.csv (%zu points)\n", c.out_dir.c_str(), static_cast<std::size_t>(d.y.size()));
  return 0;
}

int cmd_fit(const Common& c) {
  const ScenarioConfig cfg = load(c);
  const CumulantSet k = cumulants(cfg, 2);
  const LogNormalFit fit = lognormal_fit(k.order(1), k.order(2));
  const DistributionEstimate d = lognormal_estimate(fit, suggest_y_max(k.order(1), k.order(2)));
  json j;
  j["config_hash"] = config_hash(cfg);
  j["mu"] = format_double(fit.mu);
  j["sigma2"] = format_double(fit.sigma2);
  j["cumulants"] = cumulant_json(k);
  write_files(c.out_dir, {{"fit.json", j.dump(2) + "\n"}, {"fit_pdf.csv", estimate_csv(d, meta(cfg, "lognormal_fit"))}});
  std::printf("mu = %s, sigma2 = %s\n", format_double(fit.mu).c_str(), format_double(fit.sigma2).c_str());
  return 0;
}

int cmd_simulate(const Common& c) {
  const ScenarioConfig cfg = load(c);
  const EmpiricalDistribution e = simulate_aggregate(cfg);
  write_files(c.out_dir, {{"histogram.csv", estimate_csv(e.estimate(), meta(cfg, "empirical_histogram"))},
                          {"summary.json", summary(cfg, e).dump(2) + "\n"}});
  std::printf("mean %s, variance %s over %zu trials\n", format_double(e.cumulants.order(1)).c_str(),
              format_double(e.cumulants.order(2)).c_str(), e.trials);
  return 0;
}

int cmd_hidden(const Common& c) {
  const ScenarioConfig cfg = load(c);
  if (!cfg.geometry.hidden) throw ConfigError("the hidden subcommand needs geometry.hidden = true");
  std::vector<std::pair<std::string, std::string>> files;
  const EmpiricalDistribution e = simulate_hidden(cfg);
  json j = summary(cfg, e);
  files.emplace_back("hidden_histogram.csv", estimate_csv(e.estimate(), meta(cfg, "hidden_histogram")));
  if (cfg.scheme() != Scheme::hybrid) {
    InversionOptions o;
    o.threads = c.threads;
    const DistributionEstimate d = invert(CharacteristicFunction(cfg), o);
    files.emplace_back("hidden_pdf.csv", estimate_csv(d, meta(cfg, "hidden_inverted_pdf")));
    j["analytic_cumulants"] = cumulant_json(cumulants(cfg, 2));
    j["hidden_geometry"] = to_string(cfg.analytic.hidden_geometry);
  }
  files.emplace_back("summary.json", j.dump(2) + "\n");
  write_files(c.out_dir, files);
  std::printf("mean %s, variance %s over %zu trials\n", format_double(e.cumulants.order(1)).c_str(),
              format_double(e.cumulants.order(2)).c_str(), e.trials);
  return 0;
}

int cmd_coverage(const Common& c, const std::string& mode, std::size_t realizations, double window) {
  const ScenarioConfig cfg = load(c);
  CoverageOptions o;
  o.mode = mode == "union" ? CoverageMode::union_area : CoverageMode::sum;
  o.realizations = realizations;
  o.window = window;
  o.seed = cfg.simulation.seed;
  o.threads = c.threads;
  const CoverageResult r = coverage_experiment(cfg, o);
  json j;
  j["config_hash"] = config_hash(cfg);
  j["seed"] = o.seed;
  j["mode"] = mode;
  j["realizations"] = r.realizations;
  j["window"] = window;
  const char* names[3] = {"power", "contention", "hybrid"};
  for (int s = 0; s < 3; ++s) {
    j["ratio"][names[s]] = format_double(r.ratio[s]);
    j["mean_area"][names[s]] = format_double(r.mean_area[s]);
    j["stderr_area"][names[s]] = format_double(r.stderr_area[s]);
  }
  write_files(c.out_dir, {{"coverage.json", j.dump(2) + "\n"}});
  std::printf("power %.4f : contention %.4f : hybrid %.4f\n", r.ratio[0], r.ratio[1], r.ratio[2]);
  return 0;
}

int cmd_reproduce(const Common& c, const std::string& figure) {
  const ExperimentRecipe recipe = make_recipe(figure);
  const auto files = run_recipe(recipe, run_options(c), c.out_dir);
  for (const auto& f : files) std::printf("wrote %s/%s\n", c.out_dir.c_str(), f.c_str());
  return 0;
}

int cmd_validate(const Common& c) {
  ValidationOptions o;
  o.profile = profile_from_string(c.profile);
  if (c.seed) o.seed = *c.seed;
  o.threads = c.threads;
  const auto results = run_acceptance(o, [](const CheckResult& r) {
    std::printf("%s\n", format_check(r).c_str());
    std::fflush(stdout);
  });
  if (all_passed(results)) return 0;
  std::fprintf(stderr, "validation failed\n");
  return static_cast<int>(ExitCode::validation);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Aggregate interference of cognitive-radio fields under power, contention and hybrid control"};
  app.require_subcommand(1);
  Common c;
  auto* pdf = app.add_subcommand("pdf", "analytic density by characteristic-function inversion");
  add_common(pdf, c, true);
  auto* fit = app.add_subcommand("fit", "cumulant-matched log-normal fit");
  add_common(fit, c, true);
  auto* sim = app.add_subcommand("simulate", "Monte Carlo histogram and sample cumulants");
  add_common(sim, c, true);
  auto* hid = app.add_subcommand("hidden", "hidden receiver: simulation plus analytic density");
  add_common(hid, c, true);
  auto* cov = app.add_subcommand("coverage", "coverage ratios of the three schemes");
  add_common(cov, c, true);
  std::string mode = "sum";
  std::size_t realizations = 2000;
  double window = 500.0;
  cov->add_option("--mode", mode, "sum of disk areas or their union")
      ->check(CLI::IsMember({"sum", "union"}))
      ->capture_default_str();
  cov->add_option("--realizations", realizations, "field realizations")->capture_default_str();
  cov->add_option("--window", window, "radius of the counting window [m]")->capture_default_str();
  auto* rep = app.add_subcommand("reproduce", "write every curve of a figure recipe plus a manifest");
  add_common(rep, c, false);
  std::string figure;
  rep->add_option("figure", figure, "fig2 fig3a fig3b fig5a fig5b fig6 fig7a fig7b fig8a fig8b")
      ->required()
      ->check(CLI::IsMember(recipe_names()));
  auto* val = app.add_subcommand("validate", "closed form vs numeric vs Monte Carlo cross-checks");
  add_common(val, c, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ExitCode::usage);
  }

  try {
    if (*pdf) return cmd_pdf(c);
    if (*fit) return cmd_fit(c);
    if (*sim) return cmd_simulate(c);
    if (*hid) return cmd_hidden(c);
    if (*cov) return cmd_coverage(c, mode, realizations, window);
    if (*rep) return cmd_reproduce(c, figure);
    if (*val) return cmd_validate(c);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return static_cast<int>(e.exit_code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return static_cast<int>(ExitCode::numeric);
  }
  return 0;
}

#ifndef AGGINT_RECIPES_HPP_
#define AGGINT_RECIPES_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aggint/inversion.hpp"
#include "aggint/montecarlo.hpp"
#include "aggint/scenario.hpp"

namespace aggint {

enum class CurveMethod { inverted, lognormal_fit, monte_carlo };
std::string to_string(CurveMethod method);

struct Curve {
  std::string name;
  ScenarioConfig cfg;
  CurveMethod method = CurveMethod::inverted;
};

struct ExperimentRecipe {
  std::string name;
  std::string description;
  std::vector<Curve> curves;
};

// Baseline parameter sets (R = 100 m, lambda = 3e-4 /m^2, beta = alpha = 4,
// 1 W, 20 m ranges).
ScenarioConfig base_scenario(Scheme scheme);
// Shadowing of 4 dB without small-scale fading.
ScenarioConfig with_shadowing(ScenarioConfig cfg, double nakagami_m = INFINITY, double sigma_db = 4.0);

std::vector<std::string> recipe_names();
// ConfigError for an unknown name.
ExperimentRecipe make_recipe(const std::string& name);

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  unsigned threads = 0;
};

// Applies seed / trials / threads overrides.
ScenarioConfig apply_overrides(ScenarioConfig cfg, const RunOptions& options);

struct CurveResult {
  Curve curve;
  DistributionEstimate estimate;
  // Filled for monte_carlo curves.
  std::optional<EmpiricalDistribution> empirical;
  double mean = 0.0;
  double variance = 0.0;
};

CurveResult evaluate_curve(const Curve& curve, const RunOptions& options);

// CSV with '#' metadata lines (curve, method, config hash, seed) followed by
// "y,density" or "bin_left,bin_right,density" rows.
std::string estimate_csv(const DistributionEstimate& est,
                         const std::vector<std::pair<std::string, std::string>>& meta);

// Writes files into a directory only after all contents exist: each file
// goes to a temporary name first and is renamed in place. IoError on any
// failure (temporaries are removed).
void write_files(const std::string& dir, const std::vector<std::pair<std::string, std::string>>& files);

// Evaluates every curve, then writes <curve>.csv files plus manifest.json.
// Returns the written file names.
std::vector<std::string> run_recipe(const ExperimentRecipe& recipe, const RunOptions& options,
                                    const std::string& out_dir);

}  // namespace aggint

#endif  // AGGINT_RECIPES_HPP_

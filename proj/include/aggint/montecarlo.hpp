#ifndef AGGINT_MONTECARLO_HPP_
#define AGGINT_MONTECARLO_HPP_

#include <array>
#include <cstdint>

#include <Eigen/Dense>

#include "aggint/analytic.hpp"
#include "aggint/inversion.hpp"
#include "aggint/pointproc.hpp"
#include "aggint/scenario.hpp"

namespace aggint {

// Resolved simulation geometry. Interference is accumulated from active
// transmitters with inner <= |x| <= outer; points in (outer, outer + buffer]
// exist only as neighbours (thinning competitors, nearest neighbours) so the
// schemes see no artificial edge at `outer`.
struct SimulationPlan {
  double inner_radius = 0.0;
  double outer_radius = 0.0;
  double buffer = 0.0;
  bool hidden = false;
  double receiver_offset = 0.0;
  // When the outer radius is automatic: int_{|x| > outer} g(distance) dA,
  // multiplied per trial by the realized power density and E[h].
  bool far_field = false;
  double tail_gain = 0.0;
};

// Automatic outer radius: the variance contribution of the field beyond it
// is below 1e-4 of the total, max(2R, R_near * 10^(4 / (2 beta - 2))) with
// R_near the smallest receiver-to-region distance.
double auto_outer_radius(const ScenarioConfig& cfg);
SimulationPlan plan_simulation(const ScenarioConfig& cfg);

// Active transmitters of one realization, positions relative to the center
// of the interference region.
struct FieldRealization {
  Eigen::Matrix2Xd positions;
  Eigen::VectorXd powers;
};

FieldRealization realize_field(const ScenarioConfig& cfg, const SimulationPlan& plan, Engine& rng);

// One draw of the aggregate interference.
double interference_sample(const ScenarioConfig& cfg, const SimulationPlan& plan, Engine& rng);

struct Histogram {
  Eigen::VectorXd edges;
  Eigen::VectorXd density;
};

// Freedman-Diaconis bins on ln y for the positive samples; a leading bin
// [0, smallest positive) holds exact zeros when there are any.
Histogram histogram(const Eigen::VectorXd& samples);

// Unbiased k-statistics k_1..k_count (count <= 4).
CumulantSet sample_cumulants(const Eigen::VectorXd& samples, int count = 4);

double sample_quantile(Eigen::VectorXd samples, double p);

struct EmpiricalDistribution {
  Eigen::VectorXd samples;
  Histogram hist;
  CumulantSet cumulants;
  std::size_t trials = 0;
  std::uint64_t seed = 0;

  DistributionEstimate estimate() const;
};

// Samples only (no histogram), in trial order.
Eigen::VectorXd simulate_samples(const ScenarioConfig& cfg);

EmpiricalDistribution simulate_aggregate(const ScenarioConfig& cfg);
// Requires geometry.hidden (receiver offset 0 <= r_p < R).
EmpiricalDistribution simulate_hidden(const ScenarioConfig& cfg);

enum class CoverageMode { sum, union_area };

struct CoverageOptions {
  std::size_t realizations = 2000;
  double window = 500.0;
  CoverageMode mode = CoverageMode::sum;
  // Probe points per realization in union mode.
  std::size_t probes = 4000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

// Index order: power, contention, hybrid.
struct CoverageResult {
  std::array<double, 3> mean_area{};
  std::array<double, 3> stderr_area{};
  std::array<double, 3> ratio{};
  std::size_t realizations = 0;
};

// Coverage disks of the three schemes on shared Poisson realizations inside
// a disk window. Requires range == min_distance and equal powers across the
// schemes (edge_power_check).
CoverageResult coverage_experiment(const ScenarioConfig& cfg, const CoverageOptions& options = {});

}  // namespace aggint

#endif  // AGGINT_MONTECARLO_HPP_

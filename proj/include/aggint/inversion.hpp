#ifndef AGGINT_INVERSION_HPP_
#define AGGINT_INVERSION_HPP_

#include <complex>
#include <functional>
#include <string>

#include <Eigen/Dense>

#include "aggint/charfn.hpp"

namespace aggint {

// phi sampled on the half grid omega_k = k * step, k = 0..n-1. The negative
// half follows from Hermitian symmetry and is never stored.
struct CharacteristicGrid {
  Eigen::VectorXd omega;
  Eigen::VectorXcd phi;
  std::string scheme;
  std::string scenario_hash;

  double step() const { return omega.size() > 1 ? omega(1) - omega(0) : 0.0; }
};

enum class DistributionKind { inverted, closed_form, lognormal_fit, empirical };
std::string to_string(DistributionKind kind);

// A density on a grid. Continuous estimates carry point values density(i) at
// y(i); empirical ones also carry bin `edges` (size y+1), with y the bin
// centers and density constant on each bin.
struct DistributionEstimate {
  Eigen::VectorXd y;
  Eigen::VectorXd density;
  Eigen::VectorXd edges;
  DistributionKind kind = DistributionKind::inverted;

  bool binned() const { return edges.size() == y.size() + 1 && y.size() > 0; }
  // Trapezoid (or bin-sum) integral of the density.
  double integral() const;
  double peak() const { return density.size() ? density.maxCoeff() : 0.0; }
  // First two moments computed from the density itself.
  double mean() const;
  double variance() const;
  // Density at y: linear interpolation / bin lookup, 0 off the support.
  double at(double v) const;
};

struct InversionOptions {
  // Upper end of the y grid; <= 0 picks it from a log-normal fit of the
  // first two cumulants.
  double y_max = 0.0;
  std::size_t y_points = 2048;
  // The inversion is periodic in y with period period_factor * y_max.
  double period_factor = 4.0;
  double decay = 1e-6;
  std::size_t min_points = 512;
  std::size_t max_points = std::size_t{1} << 20;
  // Throw NumericError when |phi| has not decayed by max_points.
  bool require_decay = true;
  // Largest tolerated negative ripple relative to the peak.
  double ripple = 1e-3;
  unsigned threads = 0;
};

// Samples phi from 0 with spacing `step` until |phi| < decay. If that takes
// fewer than min_points samples the same span is resampled with min_points.
CharacteristicGrid sample_charfn(const std::function<std::complex<double>(double)>& phi,
                                 double step, const InversionOptions& options);

// f(y) = (step / pi) * sum'_k Re(phi_k exp(-i omega_k y)) on y_j = j y_max /
// (y_points - 1); the k = 0 term carries weight 1/2. Negative ripple is
// clipped; ripple beyond options.ripple * peak raises NumericError.
DistributionEstimate pdf_from_charfn(const CharacteristicGrid& grid, double y_max,
                                     const InversionOptions& options = {});

// Upper y limit exp(mu + 4.75 sigma) of the cumulant-matched log-normal.
double suggest_y_max(double k1, double k2);

// Full pipeline for a scenario: sample, invert. The grid can be requested
// back through `grid_out`.
DistributionEstimate invert(const CharacteristicFunction& phi, const InversionOptions& options = {},
                            CharacteristicGrid* grid_out = nullptr);

// One-sided stable density for beta = 4 and no interference region:
// (pi/2) K lambda y^{-3/2} exp(-pi^3 lambda^2 K^2 / (4 y)); 0 for y <= 0.
double pdf_closed_form_stable(double y, double k_factor, double density);

// Throws DomainError unless the scenario has beta = 4 and R = 0.
void check_stable_applicable(const ScenarioConfig& cfg);

// Tabulates a continuous density on a uniform grid [0, y_max].
DistributionEstimate tabulate(const std::function<double(double)>& pdf, double y_max,
                              std::size_t points, DistributionKind kind);

}  // namespace aggint

#endif  // AGGINT_INVERSION_HPP_

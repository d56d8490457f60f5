#ifndef AGGINT_CHARFN_HPP_
#define AGGINT_CHARFN_HPP_

#include <complex>
#include <limits>

#include <Eigen/Dense>

#include "aggint/scenario.hpp"

namespace aggint {

// Discrete law of the per-transmitter amplitude a = p * h used by the
// analytic model: amplitudes with weights summing to one, plus the fraction
// `activity` of Poisson points that transmit at all.
struct MarkMixture {
  Eigen::VectorXd amplitude;
  Eigen::VectorXd weight;
  double activity = 1.0;

  // sum_j w_j a_j^n, i.e. E[a^n] under the quadrature.
  double moment(double n) const;
};

// Builds the mixture for the none / power / contention schemes. Power
// control integrates the Rayleigh neighbour-distance law in u = lambda pi r^2
// with composite Gauss-Legendre below the range and an atom at max_power
// above it; the composite gain uses Gauss-Hermite in ln h. Hybrid has no
// analytic model and raises ConfigError.
MarkMixture mark_mixture(const ScenarioConfig& cfg);

// Cubature over a planar region outside the interference disk: nodes carry
// the pathloss gain towards the receiver and an area weight, so that
// sum_j weight_j f(gain_j) approximates the area integral of f(g(distance)).
struct GeometryRule {
  Eigen::VectorXd gain;
  Eigen::VectorXd weight;
};

// Region r in [inner, outer) around the primary transmitter with the receiver
// `offset` meters away. outer may be +inf. Radial variable u = (R/r)^(beta-2)
// with composite Gauss-Legendre; angular trapezoid on [0, pi] using the
// mirror symmetry of both parameterizations.
GeometryRule hidden_geometry_rule(double inner, double outer, double offset, double beta,
                                  HiddenGeometryModel model, std::size_t radial_panels = 12,
                                  std::size_t angle_steps = 128);

// Receiver-to-transmitter distance when the angle theta is measured at the
// receiver: r_p cos(theta) + sqrt(r^2 - r_p^2 sin^2(theta)).
double r_cp(double r, double theta, double r_p);

// ln phi_Y and phi_Y for a scenario (schemes none / power / contention, with
// or without a hidden receiver). Known-receiver scenarios use the annulus
// kernel; hidden ones integrate the geometry rule directly with integrand
// (exp(i w a g) - 1). Immutable after construction; concurrent calls are
// safe.
class CharacteristicFunction {
 public:
  explicit CharacteristicFunction(const ScenarioConfig& cfg);

  std::complex<double> log(double omega) const;
  std::complex<double> operator()(double omega) const { return std::exp(log(omega)); }

  // Cumulant obtained by expanding ln phi under the same quadrature:
  // activity * lambda * E[a^n] * (area integral of g^n).
  double quadrature_cumulant(int n) const;

  const ScenarioConfig& config() const { return cfg_; }
  const MarkMixture& mixture() const { return mixture_; }

 private:
  ScenarioConfig cfg_;
  MarkMixture mixture_;
  bool hidden_ = false;
  double inner_ = 0.0;
  double outer_ = std::numeric_limits<double>::infinity();
  GeometryRule geometry_;
};

std::complex<double> charfn_power(double omega, const ScenarioConfig& cfg);
std::complex<double> charfn_contention(double omega, const ScenarioConfig& cfg);
std::complex<double> charfn_power_hidden(double omega, const ScenarioConfig& cfg);
std::complex<double> charfn_contention_hidden(double omega, const ScenarioConfig& cfg);

}  // namespace aggint

#endif  // AGGINT_CHARFN_HPP_

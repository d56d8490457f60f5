#include "aggint/inversion.hpp"

#include <algorithm>
#include <cmath>

#include "aggint/error.hpp"
#include "aggint/rng.hpp"
#include "aggint/scenario.hpp"

namespace aggint {

using cd = std::complex<double>;

std::string to_string(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::inverted: return "inverted";
    case DistributionKind::closed_form: return "closed_form";
    case DistributionKind::lognormal_fit: return "lognormal_fit";
    case DistributionKind::empirical: return "empirical";
  }
  return "unknown";
}

double DistributionEstimate::integral() const {
  if (binned()) return (density.array() * (edges.tail(y.size()) - edges.head(y.size())).array()).sum();
  double s = 0.0;
  for (Eigen::Index i = 1; i < y.size(); ++i)
    s += 0.5 * (density(i) + density(i - 1)) * (y(i) - y(i - 1));
  return s;
}

namespace {

// int y^n f(y) dy over the grid.
double raw_moment(const DistributionEstimate& d, int n) {
  double s = 0.0;
  if (d.binned()) {
    for (Eigen::Index i = 0; i < d.y.size(); ++i) {
      const double a = d.edges(i), b = d.edges(i + 1);
      s += d.density(i) * (std::pow(b, n + 1) - std::pow(a, n + 1)) / (n + 1);
    }
    return s;
  }
  for (Eigen::Index i = 1; i < d.y.size(); ++i)
    s += 0.5 * (d.density(i) * std::pow(d.y(i), n) + d.density(i - 1) * std::pow(d.y(i - 1), n)) *
         (d.y(i) - d.y(i - 1));
  return s;
}

}  // namespace

double DistributionEstimate::mean() const {
  const double m0 = integral();
  return m0 > 0 ? raw_moment(*this, 1) / m0 : 0.0;
}

double DistributionEstimate::variance() const {
  const double m0 = integral();
  if (!(m0 > 0)) return 0.0;
  const double m1 = raw_moment(*this, 1) / m0;
  return std::max(0.0, raw_moment(*this, 2) / m0 - m1 * m1);
}

double DistributionEstimate::at(double v) const {
  if (y.size() == 0) return 0.0;
  if (binned()) {
    if (v < edges(0) || v > edges(edges.size() - 1)) return 0.0;
    const auto it = std::upper_bound(edges.data(), edges.data() + edges.size(), v);
    Eigen::Index i = std::min<Eigen::Index>(it - edges.data() - 1, y.size() - 1);
    return density(std::max<Eigen::Index>(i, 0));
  }
  if (v < y(0) || v > y(y.size() - 1)) return 0.0;
  const auto it = std::upper_bound(y.data(), y.data() + y.size(), v);
  const Eigen::Index i = it - y.data();
  if (i >= y.size()) return density(y.size() - 1);
  const double t = (v - y(i - 1)) / (y(i) - y(i - 1));
  return density(i - 1) + t * (density(i) - density(i - 1));
}

namespace {

Eigen::VectorXcd evaluate(const std::function<cd(double)>& phi, double step, std::size_t lo,
                          std::size_t hi, unsigned threads) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(hi - lo));
  parallel_for(hi - lo, threads, [&](std::size_t i) {
    out(static_cast<Eigen::Index>(i)) = phi(step * static_cast<double>(lo + i));
  });
  return out;
}

}  // namespace

CharacteristicGrid sample_charfn(const std::function<cd(double)>& phi, double step,
                                 const InversionOptions& options) {
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("frequency step must be positive");
  if (options.max_points < 2) throw DomainError("need at least two frequency samples");
  const std::size_t block = 256;
  std::vector<cd> values;
  std::size_t found = 0;
  while (values.size() < options.max_points && found == 0) {
    const std::size_t lo = values.size();
    const std::size_t hi = std::min(options.max_points, lo + block);
    const Eigen::VectorXcd chunk = evaluate(phi, step, lo, hi, options.threads);
    for (Eigen::Index i = 0; i < chunk.size(); ++i) {
      values.push_back(chunk(i));
      if (lo + i > 0 && std::abs(chunk(i)) < options.decay) {
        found = values.size();
        break;
      }
    }
  }
  if (found == 0) {
    if (options.require_decay)
      throw NumericError("characteristic function still at |phi| = " +
                         format_double(std::abs(values.back())) + " after " +
                         std::to_string(values.size()) + " samples (omega = " +
                         format_double(step * static_cast<double>(values.size() - 1)) +
                         "); widen the frequency range or raise y_max");
    found = values.size();
  }
  CharacteristicGrid grid;
  if (found < options.min_points) {
    // Too coarse: keep the same frequency span with min_points samples.
    const double fine = step * static_cast<double>(found - 1) /
                        static_cast<double>(options.min_points - 1);
    grid.phi = evaluate(phi, fine, 0, options.min_points, options.threads);
    step = fine;
  } else {
    grid.phi = Eigen::Map<const Eigen::VectorXcd>(values.data(), static_cast<Eigen::Index>(found));
  }
  grid.omega = Eigen::VectorXd::LinSpaced(grid.phi.size(), 0.0,
                                          step * static_cast<double>(grid.phi.size() - 1));
  return grid;
}

DistributionEstimate pdf_from_charfn(const CharacteristicGrid& grid, double y_max,
                                     const InversionOptions& options) {
  const Eigen::Index n = grid.phi.size();
  if (n < 2) throw DomainError("inversion needs at least two frequency samples");
  if (!(y_max > 0.0)) throw DomainError("inversion needs y_max > 0");
  if (options.y_points < 2) throw DomainError("inversion needs at least two y points");
  const double step = grid.step();
  DistributionEstimate out;
  out.kind = DistributionKind::inverted;
  out.y = Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(options.y_points), 0.0, y_max);
  out.density.resize(out.y.size());
  parallel_for(options.y_points, options.threads, [&](std::size_t j) {
    const double y = out.y(static_cast<Eigen::Index>(j));
    const double phase = -step * y;
    const cd rot(std::cos(phase), std::sin(phase));
    cd w = 1.0;
    double s = 0.5 * grid.phi(0).real();
    for (Eigen::Index k = 1; k < n; ++k) {
      // Resynchronize the rotation now and then to bound drift.
      if ((k & 1023) == 0) {
        const double p = phase * static_cast<double>(k);
        w = cd(std::cos(p), std::sin(p));
      } else {
        w *= rot;
      }
      s += (grid.phi(k) * w).real();
    }
    out.density(static_cast<Eigen::Index>(j)) = s * step / M_PI;
  });
  const double peak = out.density.maxCoeff();
  const double low = out.density.minCoeff();
  if (!(peak > 0.0)) throw NumericError("inverted density has no positive values");
  if (low < -options.ripple * peak)
    throw NumericError("inverted density ripple " + format_double(-low / peak) +
                       " of the peak exceeds tolerance; refine the frequency grid");
  out.density = out.density.cwiseMax(0.0);
  return out;
}

double suggest_y_max(double k1, double k2) {
  if (!(k1 > 0.0) || !(k2 > 0.0)) throw DomainError("y_max needs positive k1 and k2");
  const double s2 = std::log1p(k2 / (k1 * k1));
  const double mu = std::log(k1) - s2 / 2;
  return std::exp(mu + 4.75 * std::sqrt(s2));
}

DistributionEstimate invert(const CharacteristicFunction& phi, const InversionOptions& options,
                            CharacteristicGrid* grid_out) {
  double y_max = options.y_max;
  if (!(y_max > 0.0)) y_max = suggest_y_max(phi.quadrature_cumulant(1), phi.quadrature_cumulant(2));
  const double step = 2.0 * M_PI / (options.period_factor * y_max);
  CharacteristicGrid grid = sample_charfn([&](double w) { return phi(w); }, step, options);
  grid.scheme = to_string(phi.config().scheme());
  grid.scenario_hash = config_hash(phi.config());
  DistributionEstimate out = pdf_from_charfn(grid, y_max, options);
  if (grid_out) *grid_out = std::move(grid);
  return out;
}

double pdf_closed_form_stable(double y, double k_factor, double density) {
  if (!(y > 0.0)) return 0.0;
  const double c = M_PI * M_PI * M_PI * density * density * k_factor * k_factor / 4.0;
  return M_PI / 2 * k_factor * density * std::pow(y, -1.5) * std::exp(-c / y);
}

void check_stable_applicable(const ScenarioConfig& cfg) {
  if (cfg.channel.pathloss_exponent != 4.0)
    throw DomainError("the stable closed form needs pathloss exponent 4");
  if (cfg.geometry.inner_radius != 0.0)
    throw DomainError("the stable closed form needs an empty interference region (R = 0)");
  if (cfg.geometry.hidden) throw DomainError("the stable closed form has no hidden-receiver form");
}

DistributionEstimate tabulate(const std::function<double(double)>& pdf, double y_max,
                              std::size_t points, DistributionKind kind) {
  if (!(y_max > 0.0) || points < 2) throw DomainError("tabulate needs y_max > 0 and >= 2 points");
  DistributionEstimate out;
  out.kind = kind;
  out.y = Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(points), 0.0, y_max);
  out.density = out.y.unaryExpr(pdf);
  return out;
}

}  // namespace aggint

#include "aggint/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "aggint/control.hpp"
#include "aggint/error.hpp"

namespace aggint {

namespace {

constexpr std::uint64_t kTrialTag = 0x7472696c;
constexpr std::uint64_t kCoverageTag = 0x636f7672;

double inf() { return std::numeric_limits<double>::infinity(); }

double neighbour_buffer(const ScenarioConfig& cfg) {
  switch (cfg.scheme()) {
    case Scheme::none: return 0.0;
    case Scheme::power: return cfg.control.power.range;
    case Scheme::contention: return cfg.control.contention.min_distance;
    case Scheme::hybrid: return cfg.control.hybrid.range + cfg.control.hybrid.min_distance;
  }
  return 0.0;
}

}  // namespace

double auto_outer_radius(const ScenarioConfig& cfg) {
  const double beta = cfg.channel.pathloss_exponent;
  const double R = cfg.geometry.inner_radius;
  const double near = cfg.geometry.hidden ? R - cfg.geometry.receiver_offset : R;
  if (!(near > 0.0)) throw ConfigError("simulation needs a positive interference-region radius");
  return std::max(2.0 * R, near * std::pow(10.0, 4.0 / (2.0 * beta - 2.0)));
}

SimulationPlan plan_simulation(const ScenarioConfig& cfg) {
  cfg.validate();
  SimulationPlan plan;
  plan.inner_radius = cfg.geometry.inner_radius;
  plan.hidden = cfg.geometry.hidden;
  plan.receiver_offset = cfg.geometry.hidden ? cfg.geometry.receiver_offset : 0.0;
  if (cfg.geometry.outer_radius) {
    // A finite field: nothing beyond the outer radius.
    plan.outer_radius = *cfg.geometry.outer_radius;
    return plan;
  }
  plan.outer_radius = auto_outer_radius(cfg);
  plan.buffer = neighbour_buffer(cfg);
  plan.far_field = cfg.simulation.far_field_correction;
  const double beta = cfg.channel.pathloss_exponent;
  if (plan.hidden && plan.receiver_offset > 0.0) {
    const GeometryRule tail = hidden_geometry_rule(plan.outer_radius, inf(), plan.receiver_offset,
                                                   beta, HiddenGeometryModel::exact);
    plan.tail_gain = tail.weight.dot(tail.gain);
  } else {
    plan.tail_gain = 2.0 * M_PI * std::pow(plan.outer_radius, 2.0 - beta) / (beta - 2.0);
  }
  return plan;
}

FieldRealization realize_field(const ScenarioConfig& cfg, const SimulationPlan& plan, Engine& rng) {
  const Scheme scheme = cfg.scheme();
  const bool independent = cfg.simulation.mark_model == MarkModel::independent;
  if (independent && scheme == Scheme::hybrid)
    throw ConfigError("the independent mark model has no hybrid counterpart; use mark_model = exact");
  const bool marks = !independent && (scheme == Scheme::contention || scheme == Scheme::hybrid);
  const AnnulusRegion region{plan.inner_radius, plan.outer_radius + plan.buffer};
  PointSet parents = sample_poisson_annulus(cfg.density, region, rng, marks);
  const Eigen::Index n = parents.size();
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  FieldRealization out;
  switch (scheme) {
    case Scheme::none:
      out.positions = std::move(parents.positions);
      out.powers = Eigen::VectorXd::Constant(n, cfg.control.power.max_power);
      break;
    case Scheme::power: {
      const auto& pc = cfg.control.power;
      Eigen::VectorXd nn;
      if (independent) {
        // Rayleigh nearest-neighbour law, one independent draw per point.
        nn.resize(n);
        for (Eigen::Index i = 0; i < n; ++i) {
          double u;
          do u = unit(rng); while (u <= 0.0);
          nn(i) = std::sqrt(-std::log(u) / (cfg.density * M_PI));
        }
      } else {
        nn = nearest_neighbor_distances_capped(parents.positions, pc.range);
      }
      out.powers.resize(n);
      for (Eigen::Index i = 0; i < n; ++i)
        out.powers(i) = std::isfinite(nn(i)) && nn(i) > 0.0 ? power_pwc(nn(i), pc) : pc.max_power;
      out.positions = std::move(parents.positions);
      break;
    }
    case Scheme::contention: {
      const auto& cc = cfg.control.contention;
      std::vector<bool> keep;
      if (independent) {
        const double q = retaining_probability(cfg.density, cc.min_distance);
        keep.resize(static_cast<std::size_t>(n));
        for (Eigen::Index i = 0; i < n; ++i) keep[static_cast<std::size_t>(i)] = unit(rng) < q;
      } else {
        keep = matern_retained(parents, cc.min_distance);
      }
      out.positions = parents.select(keep).positions;
      out.powers = Eigen::VectorXd::Constant(out.positions.cols(), cc.power);
      break;
    }
    case Scheme::hybrid: {
      const auto& hc = cfg.control.hybrid;
      out.positions = parents.select(matern_retained(parents, hc.min_distance)).positions;
      const Eigen::VectorXd nn = nearest_neighbor_distances_capped(out.positions, hc.range);
      out.powers.resize(out.positions.cols());
      for (Eigen::Index i = 0; i < nn.size(); ++i)
        out.powers(i) = power_hybrid(std::min(nn(i), hc.range), hc);
      break;
    }
  }
  return out;
}

double interference_sample(const ScenarioConfig& cfg, const SimulationPlan& plan, Engine& rng) {
  const FieldRealization field = realize_field(cfg, plan, rng);
  const double beta = cfg.channel.pathloss_exponent;
  const double outer2 = plan.outer_radius * plan.outer_radius;
  const Eigen::Vector2d receiver(plan.receiver_offset, 0.0);
  std::optional<GainSampler> sampler;
  double mean_h = 1.0;
  if (!cfg.channel.pathloss_only) {
    const LogNormalParams ln = cfg.gain_lognormal();
    if (cfg.channel.sampler == GainMode::approx_lognormal && ln.sigma2 == 0.0) {
      mean_h = std::exp(ln.mu);
    } else {
      sampler.emplace(cfg.channel.composite, cfg.channel.sampler);
      mean_h = sampler->mean();
    }
  }
  // The far-field density is read off the outer half ring only: counts
  // there are independent of the near field that dominates y, whereas the
  // whole-field count would add a spurious covariance of order (R/l)^4.
  const double ring2 = std::max(outer2 / 4, plan.inner_radius * plan.inner_radius);
  double y = 0.0;
  double power_sum = 0.0;
  for (Eigen::Index i = 0; i < field.positions.cols(); ++i) {
    const Eigen::Vector2d x = field.positions.col(i);
    const double r2 = x.squaredNorm();
    if (r2 > outer2) continue;
    const double p = field.powers(i);
    if (r2 >= ring2) power_sum += p;
    const double h = sampler ? (*sampler)(rng) : mean_h;
    const double d2 = (x - receiver).squaredNorm();
    y += p * h * (beta == 4.0 ? 1.0 / (d2 * d2) : std::pow(d2, -beta / 2));
  }
  if (plan.far_field && power_sum > 0.0) {
    const double area = M_PI * (outer2 - ring2);
    y += power_sum / area * mean_h * plan.tail_gain;
  }
  return y;
}

Histogram histogram(const Eigen::VectorXd& samples) {
  if (samples.size() == 0) throw InsufficientDataError("histogram needs at least one sample");
  std::vector<double> logs;
  logs.reserve(static_cast<std::size_t>(samples.size()));
  std::size_t zeros = 0;
  for (Eigen::Index i = 0; i < samples.size(); ++i) {
    const double v = samples(i);
    if (v < 0.0 || !std::isfinite(v)) throw NumericError("histogram samples must be finite and >= 0");
    if (v == 0.0)
      ++zeros;
    else
      logs.push_back(std::log(v));
  }
  const double n_total = static_cast<double>(samples.size());
  Histogram h;
  std::vector<double> edges;
  std::vector<double> counts;
  if (!logs.empty()) {
    std::sort(logs.begin(), logs.end());
    const double lo = logs.front(), hi = logs.back();
    const auto q = [&](double p) {
      const double pos = p * static_cast<double>(logs.size() - 1);
      const std::size_t i = static_cast<std::size_t>(pos);
      const double t = pos - static_cast<double>(i);
      return i + 1 < logs.size() ? logs[i] * (1 - t) + logs[i + 1] * t : logs[i];
    };
    const double iqr = q(0.75) - q(0.25);
    const double width = 2.0 * iqr * std::pow(static_cast<double>(logs.size()), -1.0 / 3.0);
    std::size_t bins = 1;
    if (hi > lo && width > 0.0)
      bins = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil((hi - lo) / width)), 1, 10000);
    const double w = hi > lo ? (hi - lo) / static_cast<double>(bins) : 1.0;
    std::vector<double> log_edges(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b) log_edges[b] = lo + w * static_cast<double>(b);
    if (!(hi > lo)) log_edges = {lo - 0.5, lo + 0.5};
    counts.assign(bins, 0.0);
    for (double v : logs) {
      std::size_t b = static_cast<std::size_t>((v - log_edges[0]) / (log_edges[1] - log_edges[0]));
      counts[std::min(b, bins - 1)] += 1.0;
    }
    for (double e : log_edges) edges.push_back(std::exp(e));
    // Pin the outer edges to the exact sample extremes.
    if (hi > lo) {
      edges.front() = std::exp(lo);
      edges.back() = std::exp(hi);
    }
  }
  if (zeros > 0) {
    const double first = edges.empty() ? 1.0 : edges.front();
    edges.insert(edges.begin(), 0.0);
    counts.insert(counts.begin(), static_cast<double>(zeros));
    if (logs.empty()) edges.back() = first;
  }
  h.edges = Eigen::Map<Eigen::VectorXd>(edges.data(), static_cast<Eigen::Index>(edges.size()));
  h.density.resize(static_cast<Eigen::Index>(counts.size()));
  for (std::size_t b = 0; b < counts.size(); ++b)
    h.density(static_cast<Eigen::Index>(b)) = counts[b] / (n_total * (edges[b + 1] - edges[b]));
  return h;
}

CumulantSet sample_cumulants(const Eigen::VectorXd& samples, int count) {
  if (count < 1 || count > 4) throw DomainError("sample cumulants are available for orders 1..4");
  const double n = static_cast<double>(samples.size());
  if (n < count + 0.5 || (count >= 2 && n < 2)) throw InsufficientDataError("too few samples for k-statistics");
  CumulantSet out;
  out.source = CumulantSource::monte_carlo;
  const double mean = samples.mean();
  const Eigen::ArrayXd c = samples.array() - mean;
  const double m2 = c.square().mean();
  const double m3 = c.cube().mean();
  const double m4 = c.square().square().mean();
  out.k.push_back(mean);
  if (count >= 2) out.k.push_back(n / (n - 1) * m2);
  if (count >= 3) out.k.push_back(n * n / ((n - 1) * (n - 2)) * m3);
  if (count >= 4)
    out.k.push_back(n * n * ((n + 1) * m4 - 3 * (n - 1) * m2 * m2) / ((n - 1) * (n - 2) * (n - 3)));
  return out;
}

double sample_quantile(Eigen::VectorXd samples, double p) {
  if (samples.size() == 0) throw InsufficientDataError("quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantile level must be in [0, 1]");
  std::sort(samples.data(), samples.data() + samples.size());
  const double pos = p * static_cast<double>(samples.size() - 1);
  const Eigen::Index i = static_cast<Eigen::Index>(pos);
  const double t = pos - static_cast<double>(i);
  return i + 1 < samples.size() ? samples(i) * (1 - t) + samples(i + 1) * t : samples(i);
}

DistributionEstimate EmpiricalDistribution::estimate() const {
  DistributionEstimate d;
  d.kind = DistributionKind::empirical;
  d.edges = hist.edges;
  d.density = hist.density;
  const Eigen::Index b = hist.density.size();
  d.y = 0.5 * (hist.edges.head(b) + hist.edges.tail(b));
  return d;
}

Eigen::VectorXd simulate_samples(const ScenarioConfig& cfg) {
  const SimulationPlan plan = plan_simulation(cfg);
  const std::size_t trials = cfg.simulation.trials;
  Eigen::VectorXd y(static_cast<Eigen::Index>(trials));
  parallel_for(trials, cfg.simulation.threads, [&](std::size_t t) {
    Engine rng = substream(cfg.simulation.seed, t, kTrialTag);
    y(static_cast<Eigen::Index>(t)) = interference_sample(cfg, plan, rng);
  });
  return y;
}

EmpiricalDistribution simulate_aggregate(const ScenarioConfig& cfg) {
  EmpiricalDistribution out;
  out.samples = simulate_samples(cfg);
  out.hist = histogram(out.samples);
  out.cumulants = sample_cumulants(out.samples, out.samples.size() >= 4 ? 4 : 1);
  out.trials = cfg.simulation.trials;
  out.seed = cfg.simulation.seed;
  return out;
}

EmpiricalDistribution simulate_hidden(const ScenarioConfig& cfg) {
  if (!cfg.geometry.hidden) throw ConfigError("simulate_hidden needs geometry.hidden = true");
  return simulate_aggregate(cfg);
}

CoverageResult coverage_experiment(const ScenarioConfig& cfg, const CoverageOptions& options) {
  cfg.validate();
  const double beta = cfg.channel.pathloss_exponent;
  const SchemeParams& sp = cfg.control;
  const double edge = edge_power_check(Scheme::power, sp, beta);
  if (edge_power_check(Scheme::contention, sp, beta) != edge ||
      edge_power_check(Scheme::hybrid, sp, beta) != edge)
    throw ConfigError("coverage comparison needs equal cell-edge power across schemes");
  if (options.realizations < 2) throw ConfigError("coverage needs at least two realizations");
  if (!(options.window > 0.0)) throw ConfigError("coverage window must be positive");
  const double buffer = std::max({sp.power.range, sp.contention.min_distance,
                                  sp.hybrid.range + sp.hybrid.min_distance});
  const double w2 = options.window * options.window;
  const AnnulusRegion region{0.0, options.window + buffer};
  const std::size_t n = options.realizations;
  Eigen::MatrixXd area(3, static_cast<Eigen::Index>(n));

  parallel_for(n, options.threads, [&](std::size_t t) {
    Engine rng = substream(options.seed, t, kCoverageTag);
    const PointSet parents = sample_poisson_annulus(cfg.density, region, rng, true);
    std::array<Eigen::Matrix2Xd, 3> centers;
    std::array<Eigen::VectorXd, 3> radii;

    const Eigen::VectorXd nn_all = nearest_neighbor_distances_capped(parents.positions, sp.power.range);
    centers[0] = parents.positions;
    radii[0] = nn_all.cwiseMin(sp.power.range) / 2;

    centers[1] = parents.select(matern_retained(parents, sp.contention.min_distance)).positions;
    radii[1] = Eigen::VectorXd::Constant(centers[1].cols(), sp.contention.min_distance / 2);

    centers[2] = parents.select(matern_retained(parents, sp.hybrid.min_distance)).positions;
    radii[2] = nearest_neighbor_distances_capped(centers[2], sp.hybrid.range).cwiseMin(sp.hybrid.range) / 2;

    if (options.mode == CoverageMode::sum) {
      for (int s = 0; s < 3; ++s) {
        double a = 0.0;
        for (Eigen::Index i = 0; i < centers[s].cols(); ++i)
          if (centers[s].col(i).squaredNorm() <= w2) a += M_PI * radii[s](i) * radii[s](i);
        area(s, static_cast<Eigen::Index>(t)) = a;
      }
      return;
    }
    // Union: fraction of uniform probes in the window covered by a disk.
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Eigen::Matrix2Xd probes(2, static_cast<Eigen::Index>(options.probes));
    for (Eigen::Index k = 0; k < probes.cols(); ++k) {
      const double r = options.window * std::sqrt(unit(rng));
      const double th = 2.0 * M_PI * unit(rng);
      probes.col(k) << r * std::cos(th), r * std::sin(th);
    }
    for (int s = 0; s < 3; ++s) {
      if (centers[s].cols() == 0) {
        area(s, static_cast<Eigen::Index>(t)) = 0.0;
        continue;
      }
      const double rmax = radii[s].maxCoeff();
      const NeighborGrid grid(centers[s], std::max(rmax, 1e-9));
      std::size_t covered = 0;
      for (Eigen::Index k = 0; k < probes.cols(); ++k) {
        bool hit = false;
        grid.for_each_within(probes.col(k), rmax, [&](Eigen::Index j, double d2) {
          if (d2 <= radii[s](j) * radii[s](j)) hit = true;
        });
        covered += hit;
      }
      area(s, static_cast<Eigen::Index>(t)) =
          M_PI * w2 * static_cast<double>(covered) / static_cast<double>(probes.cols());
    }
  });

  CoverageResult out;
  out.realizations = n;
  for (int s = 0; s < 3; ++s) {
    const Eigen::ArrayXd row = area.row(s).transpose().array();
    out.mean_area[s] = row.mean();
    const double var = (row - row.mean()).square().sum() / static_cast<double>(n - 1);
    out.stderr_area[s] = std::sqrt(var / static_cast<double>(n));
  }
  if (!(out.mean_area[1] > 0.0)) throw NumericError("contention coverage is zero; cannot normalize");
  for (int s = 0; s < 3; ++s) out.ratio[s] = out.mean_area[s] / out.mean_area[1];
  return out;
}

}  // namespace aggint

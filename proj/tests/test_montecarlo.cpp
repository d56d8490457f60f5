#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

#include "aggint/analytic.hpp"
#include "aggint/charfn.hpp"
#include "aggint/compare.hpp"
#include "aggint/error.hpp"
#include "aggint/inversion.hpp"
#include "aggint/montecarlo.hpp"
#include "aggint/recipes.hpp"

using namespace aggint;

namespace {

ScenarioConfig sim(ScenarioConfig c, std::size_t trials, std::uint64_t seed,
                   MarkModel model = MarkModel::exact) {
  c.simulation.trials = trials;
  c.simulation.seed = seed;
  c.simulation.mark_model = model;
  return c;
}

ScenarioConfig hidden_cfg(Scheme s, double offset) {
  ScenarioConfig c = base_scenario(s);
  c.geometry.inner_radius = 200.0;
  c.geometry.hidden = true;
  c.geometry.receiver_offset = offset;
  c.analytic.hidden_geometry = HiddenGeometryModel::exact;
  return c;
}

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

double mean(const Eigen::VectorXd& v) { return v.mean(); }

// Analytic density against a histogram of the independent-mark simulator,
// which realizes exactly the assumptions the analytic model is built on.
double pdf_gap(const ScenarioConfig& c, std::size_t trials) {
  const DistributionEstimate inv = invert(CharacteristicFunction(c));
  const EmpiricalDistribution emp = simulate_aggregate(sim(c, trials, 77, MarkModel::independent));
  return compare_distributions(inv, emp.estimate()).sup_norm_of_peak;
}

}  // namespace

TEST_CASE("no transmitters, no interference") {
  for (Scheme s : {Scheme::none, Scheme::power, Scheme::contention, Scheme::hybrid}) {
    ScenarioConfig c = sim(base_scenario(s), 200, 1);
    c.density = 0.0;
    const Eigen::VectorXd y = simulate_samples(c);
    CHECK(y.size() == 200);
    CHECK(y.cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("samples are nonnegative and reproducible across thread counts") {
  for (Scheme s : {Scheme::power, Scheme::contention, Scheme::hybrid}) {
    ScenarioConfig c = sim(with_shadowing(base_scenario(s), 2.0, 4.0), 3000, 42);
    c.simulation.threads = 1;
    const Eigen::VectorXd a = simulate_samples(c);
    c.simulation.threads = 4;
    const Eigen::VectorXd b = simulate_samples(c);
    CHECK(a == b);
    CHECK(a.minCoeff() >= 0.0);
    c.simulation.seed = 43;
    CHECK(simulate_samples(c) != a);
  }
}

TEST_CASE("exact fields respect the hard core") {
  for (Scheme s : {Scheme::contention, Scheme::hybrid}) {
    const ScenarioConfig c = base_scenario(s);
    const SimulationPlan plan = plan_simulation(c);
    const double d = s == Scheme::contention ? c.control.contention.min_distance : c.control.hybrid.min_distance;
    for (int i = 0; i < 50; ++i) {
      Engine rng = substream(9, i);
      const FieldRealization f = realize_field(c, plan, rng);
      REQUIRE(f.positions.cols() > 1);
      CHECK(min_pairwise_distance(f.positions) >= d);
      CHECK(f.powers.minCoeff() > 0.0);
    }
  }
}

TEST_CASE("sample mean matches the closed-form mean") {
  // Physical model: thinning and neighbour distances taken from the field.
  for (Scheme s : {Scheme::power, Scheme::contention}) {
    const ScenarioConfig c = base_scenario(s);
    const Eigen::VectorXd y = simulate_samples(sim(c, 100000, 5));
    CHECK(mean(y) == doctest::Approx(cumulant(1, c)).epsilon(0.02));
  }
}

TEST_CASE("independent marks: sample cumulants converge to the closed forms") {
  for (ScenarioConfig c : {base_scenario(Scheme::power), base_scenario(Scheme::contention),
                           with_shadowing(base_scenario(Scheme::contention))}) {
    const std::size_t n = 200000;
    const Eigen::VectorXd y = simulate_samples(sim(c, n, 6, MarkModel::independent));
    const CumulantSet k = sample_cumulants(y, 2);
    const double k1 = cumulant(1, c), k2 = cumulant(2, c), k4 = cumulant(4, c);
    const double z1 = (k.order(1) - k1) / std::sqrt(k2 / n);
    const double z2 = (k.order(2) - k2) / std::sqrt((k4 + 2 * k2 * k2) / n);
    CAPTURE(z1);
    CAPTURE(z2);
    CHECK(std::abs(z1) < 3.0);
    CHECK(std::abs(z2) < 3.0);
  }
}

TEST_CASE("truncation radius: doubling it leaves the mean unchanged") {
  const ScenarioConfig c = sim(base_scenario(Scheme::none), 100000, 8);
  const SimulationPlan plan = plan_simulation(c);
  SimulationPlan wide = plan;
  wide.outer_radius *= 2;
  wide.tail_gain = 2 * M_PI * std::pow(wide.outer_radius, -2.0) / 2.0;
  double a = 0, b = 0;
  for (std::size_t t = 0; t < c.simulation.trials; ++t) {
    Engine r1 = substream(1, t), r2 = substream(2, t);
    a += interference_sample(c, plan, r1);
    b += interference_sample(c, wide, r2);
  }
  CHECK(a == doctest::Approx(b).epsilon(0.005));
  CHECK(a / c.simulation.trials == doctest::Approx(cumulant(1, c)).epsilon(0.005));
}

TEST_CASE("empirical densities against inverted densities") {
  // Power and contention schemes at the default deployment, pathloss only.
  CHECK(pdf_gap(base_scenario(Scheme::power), 1000000) < 0.05);
  CHECK(pdf_gap(base_scenario(Scheme::contention), 1000000) < 0.05);
}

TEST_CASE("hidden receiver simulation") {
  SUBCASE("r_p = 0 matches the known-receiver simulator") {
    for (Scheme s : {Scheme::power, Scheme::contention}) {
      ScenarioConfig known = sim(base_scenario(s), 20000, 3);
      known.geometry.inner_radius = 200.0;
      const Eigen::VectorXd a = simulate_samples(known);
      const EmpiricalDistribution b = simulate_hidden(sim(hidden_cfg(s, 0.0), 20000, 4));
      CHECK(oracle::ks_two_sample(to_vector(a), to_vector(b.samples)) <
            oracle::ks_two_sample_critical_01(20000, 20000));
    }
    CHECK_THROWS_AS(simulate_hidden(base_scenario(Scheme::power)), ConfigError);
  }
  SUBCASE("hidden mean and tail exceed the known-receiver run") {
    for (Scheme s : {Scheme::power, Scheme::contention, Scheme::hybrid}) {
      ScenarioConfig known = sim(base_scenario(s), 20000, 3);
      known.geometry.inner_radius = 200.0;
      const Eigen::VectorXd a = simulate_samples(known);
      const Eigen::VectorXd b = simulate_hidden(sim(hidden_cfg(s, 100.0), 20000, 4)).samples;
      CHECK(mean(b) > mean(a));
      CHECK(sample_quantile(b, 0.99) > sample_quantile(a, 0.99));
    }
  }
  SUBCASE("hidden mean against the exact-geometry closed form") {
    for (Scheme s : {Scheme::power, Scheme::contention}) {
      const ScenarioConfig c = hidden_cfg(s, 100.0);
      const Eigen::VectorXd y = simulate_samples(sim(c, 50000, 12));
      CHECK(mean(y) == doctest::Approx(cumulant(1, c)).epsilon(0.02));
    }
  }
  SUBCASE("hidden density, contention, R = 200, r_p = 100") {
    CHECK(pdf_gap(hidden_cfg(Scheme::contention, 100.0), 1000000) < 0.05);
  }
}

TEST_CASE("coverage ratios") {
  ScenarioConfig c = base_scenario(Scheme::power);
  CoverageOptions opt;
  opt.realizations = 2000;
  const CoverageResult r = coverage_experiment(c, opt);
  CHECK(r.ratio[1] == 1.0);
  CHECK(r.ratio[0] == doctest::Approx(1.0093).epsilon(0.02));
  CHECK(r.ratio[2] == doctest::Approx(2.0229).epsilon(0.02));

  c.control.hybrid.range = c.control.hybrid.min_distance;
  const CoverageResult same = coverage_experiment(c, opt);
  CHECK(std::abs(same.ratio[2] - 1.0) < 3 * same.stderr_area[2] / same.mean_area[1] + 1e-12);

  ScenarioConfig bad = base_scenario(Scheme::power);
  bad.control.contention.power = 2.0;
  CHECK_THROWS_AS(coverage_experiment(bad, opt), ConfigError);
}

TEST_CASE("histogram and sample statistics") {
  const ScenarioConfig c = sim(base_scenario(Scheme::contention), 20000, 2);
  const EmpiricalDistribution e = simulate_aggregate(c);
  CHECK(e.trials == 20000);
  CHECK(e.samples.size() == 20000);
  CHECK(e.estimate().integral() == doctest::Approx(1.0).epsilon(1e-9));

  Eigen::VectorXd with_zeros(6);
  with_zeros << 0.0, 0.0, 1.0, 2.0, 2.5, 4.0;
  const Histogram h = histogram(with_zeros);
  CHECK(h.edges(0) == 0.0);
  double total = 0;
  for (Eigen::Index i = 0; i < h.density.size(); ++i) total += h.density(i) * (h.edges(i + 1) - h.edges(i));
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));

  // k-statistics against their textbook formulas.
  Eigen::VectorXd x(7);
  x << 1.0, 2.0, 3.0, 4.0, 10.0, 0.5, 7.0;
  const double n = 7, m = x.mean();
  double m2 = 0, m3 = 0, m4 = 0;
  for (double v : x) {
    m2 += std::pow(v - m, 2) / n;
    m3 += std::pow(v - m, 3) / n;
    m4 += std::pow(v - m, 4) / n;
  }
  const CumulantSet k = sample_cumulants(x, 4);
  CHECK(k.source == CumulantSource::monte_carlo);
  CHECK(k.order(1) == doctest::Approx(m));
  CHECK(k.order(2) == doctest::Approx(n / (n - 1) * m2));
  CHECK(k.order(3) == doctest::Approx(n * n / ((n - 1) * (n - 2)) * m3));
  CHECK(k.order(4) == doctest::Approx(n * n * ((n + 1) * m4 - 3 * (n - 1) * m2 * m2) / ((n - 1) * (n - 2) * (n - 3))));

  Eigen::VectorXd q = Eigen::VectorXd::LinSpaced(101, 0.0, 100.0);
  CHECK(sample_quantile(q, 0.5) == doctest::Approx(50.0));
  CHECK(sample_quantile(q, 0.0) == 0.0);
  CHECK(sample_quantile(q, 1.0) == 100.0);
}

TEST_CASE("comparison metrics") {
  const DistributionEstimate a =
      tabulate([](double y) { return lognormal_pdf(y, 0.0, 0.5); }, 8.0, 2048, DistributionKind::closed_form);
  const ComparisonMetrics same = compare_distributions(a, a);
  CHECK(same.sup_norm_of_peak == 0.0);
  CHECK(same.ks_statistic == 0.0);
  CHECK(same.mean_gap == 0.0);
  CHECK(same.variance_gap == 0.0);

  const DistributionEstimate b =
      tabulate([](double y) { return lognormal_pdf(y, 0.1, 0.5); }, 8.0, 2048, DistributionKind::closed_form);
  const ComparisonMetrics shifted = compare_distributions(a, b);
  CHECK(shifted.ks_statistic > 0.05);
  CHECK(shifted.sup_norm_of_peak > 0.0);

  DistributionEstimate far = a;
  far.y.array() += 100.0;
  CHECK_THROWS_AS(compare_distributions(a, far), ValidationError);
}

#include "aggint/compare.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "aggint/error.hpp"

namespace aggint {

namespace {

struct Support {
  double lo, hi;
};

Support support(const DistributionEstimate& d) {
  if (d.y.size() == 0) throw ValidationError("cannot compare an empty distribution");
  if (d.binned()) return {d.edges(0), d.edges(d.edges.size() - 1)};
  return {d.y(0), d.y(d.y.size() - 1)};
}

// Mass below v; exact for binned densities, trapezoid otherwise.
class Cdf {
 public:
  explicit Cdf(const DistributionEstimate& d) : d_(d) {
    const Eigen::Index n = d.binned() ? d.edges.size() : d.y.size();
    knots_ = d.binned() ? d.edges : d.y;
    mass_.resize(n);
    mass_(0) = 0.0;
    for (Eigen::Index i = 1; i < n; ++i) {
      const double w = knots_(i) - knots_(i - 1);
      mass_(i) = mass_(i - 1) +
                 (d.binned() ? d.density(i - 1) * w : 0.5 * (d.density(i) + d.density(i - 1)) * w);
    }
    total_ = mass_(n - 1);
  }

  double operator()(double v) const {
    const Eigen::Index n = knots_.size();
    if (v <= knots_(0)) return 0.0;
    if (v >= knots_(n - 1)) return 1.0;
    const Eigen::Index i = std::upper_bound(knots_.data(), knots_.data() + n, v) - knots_.data();
    const double t = (v - knots_(i - 1)) / (knots_(i) - knots_(i - 1));
    double m;
    if (d_.binned()) {
      m = mass_(i - 1) + t * (mass_(i) - mass_(i - 1));
    } else {
      // Trapezoid with the linearly interpolated end value.
      const double fv = d_.density(i - 1) + t * (d_.density(i) - d_.density(i - 1));
      m = mass_(i - 1) + 0.5 * (d_.density(i - 1) + fv) * (v - knots_(i - 1));
    }
    return total_ > 0.0 ? m / total_ : 0.0;
  }

  const Eigen::VectorXd& knots() const { return knots_; }

 private:
  const DistributionEstimate& d_;
  Eigen::VectorXd knots_;
  Eigen::VectorXd mass_;
  double total_ = 0.0;
};

double bin_average(const DistributionEstimate& d, double a, double b) {
  constexpr int kSub = 16;
  double s = 0.0;
  const double h = (b - a) / kSub;
  for (int k = 0; k <= kSub; ++k) s += (k == 0 || k == kSub ? 0.5 : 1.0) * d.at(a + h * k);
  return s / kSub;
}

double relative_gap(double x, double y) {
  const double scale = std::max(std::abs(x), std::abs(y));
  return scale > 0.0 ? std::abs(x - y) / scale : 0.0;
}

}  // namespace

ComparisonMetrics compare_distributions(const DistributionEstimate& a, const DistributionEstimate& b) {
  const Support sa = support(a), sb = support(b);
  if (!(std::max(sa.lo, sb.lo) < std::min(sa.hi, sb.hi)))
    throw ValidationError("distributions have disjoint supports; nothing to compare");
  ComparisonMetrics out;

  if (a.binned() != b.binned()) {
    const DistributionEstimate& bins = a.binned() ? a : b;
    const DistributionEstimate& cont = a.binned() ? b : a;
    double peak = 0.0, sup = 0.0;
    for (Eigen::Index i = 0; i < bins.density.size(); ++i) {
      const double avg = bin_average(cont, bins.edges(i), bins.edges(i + 1));
      peak = std::max({peak, avg, bins.density(i)});
      sup = std::max(sup, std::abs(avg - bins.density(i)));
    }
    out.sup_norm_of_peak = peak > 0.0 ? sup / peak : 0.0;
  } else if (a.binned() && a.edges.size() == b.edges.size() && a.edges == b.edges) {
    const double peak = std::max(a.peak(), b.peak());
    out.sup_norm_of_peak = peak > 0.0 ? (a.density - b.density).cwiseAbs().maxCoeff() / peak : 0.0;
  } else {
    const Eigen::VectorXd grid =
        Eigen::VectorXd::LinSpaced(8192, std::min(sa.lo, sb.lo), std::max(sa.hi, sb.hi));
    double peak = 0.0, sup = 0.0;
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
      const double fa = a.at(grid(i)), fb = b.at(grid(i));
      peak = std::max({peak, fa, fb});
      sup = std::max(sup, std::abs(fa - fb));
    }
    out.sup_norm_of_peak = peak > 0.0 ? sup / peak : 0.0;
  }

  const Cdf ca(a), cb(b);
  std::vector<double> points(ca.knots().data(), ca.knots().data() + ca.knots().size());
  points.insert(points.end(), cb.knots().data(), cb.knots().data() + cb.knots().size());
  double ks = 0.0;
  for (double v : points) ks = std::max(ks, std::abs(ca(v) - cb(v)));
  out.ks_statistic = ks;
  out.mean_gap = relative_gap(a.mean(), b.mean());
  out.variance_gap = relative_gap(a.variance(), b.variance());
  return out;
}

}  // namespace aggint

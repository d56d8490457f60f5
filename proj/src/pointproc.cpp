#include "aggint/pointproc.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "aggint/error.hpp"

namespace aggint {

double AnnulusRegion::area() const {
  return M_PI * (outer_radius * outer_radius - inner_radius * inner_radius);
}

void AnnulusRegion::validate() const {
  if (!(inner_radius >= 0.0) || !std::isfinite(outer_radius) ||
      !(outer_radius > inner_radius))
    throw ConfigError("annulus requires 0 <= inner radius < outer radius < inf (got R=" +
                      std::to_string(inner_radius) + ", l=" +
                      std::to_string(outer_radius) + ")");
}

PointSet PointSet::select(const std::vector<bool>& keep) const {
  Eigen::Index n = 0;
  for (bool k : keep) n += k ? 1 : 0;
  PointSet out;
  out.positions.resize(2, n);
  if (marks.size() == size()) out.marks.resize(n);
  if (powers.size() == size()) out.powers.resize(n);
  Eigen::Index o = 0;
  for (Eigen::Index i = 0; i < size(); ++i) {
    if (!keep[static_cast<std::size_t>(i)]) continue;
    out.positions.col(o) = positions.col(i);
    if (out.marks.size()) out.marks(o) = marks(i);
    if (out.powers.size()) out.powers(o) = powers(i);
    ++o;
  }
  return out;
}

NeighborGrid::NeighborGrid(const Eigen::Matrix2Xd& positions, double cell_size)
    : positions_(&positions), count_(positions.cols()), cell_(cell_size) {
  if (count_ == 0) return;
  if (!(cell_ > 0.0)) throw DomainError("grid cell size must be positive");
  min_ = positions.rowwise().minCoeff();
  const Eigen::Vector2d max = positions.rowwise().maxCoeff();
  // Larger cells only cost speed, never correctness; keep the cell count
  // O(n) for tiny query radii.
  cell_ = std::max(cell_, (max - min_).maxCoeff() /
                              (2.0 * std::sqrt(static_cast<double>(count_)) + 1.0));
  nx_ = std::max(1L, cell_coord(max.x(), min_.x()) + 1);
  ny_ = std::max(1L, cell_coord(max.y(), min_.y()) + 1);
  const std::size_t cells = static_cast<std::size_t>(nx_ * ny_);
  std::vector<std::size_t> cell_of(static_cast<std::size_t>(count_));
  start_.assign(cells + 1, 0);
  for (Eigen::Index i = 0; i < count_; ++i) {
    const long cx = std::min(nx_ - 1, cell_coord(positions(0, i), min_.x()));
    const long cy = std::min(ny_ - 1, cell_coord(positions(1, i), min_.y()));
    cell_of[static_cast<std::size_t>(i)] = static_cast<std::size_t>(cy * nx_ + cx);
    ++start_[cell_of[static_cast<std::size_t>(i)] + 1];
  }
  for (std::size_t c = 0; c < cells; ++c) start_[c + 1] += start_[c];
  order_.resize(static_cast<std::size_t>(count_));
  std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
  for (Eigen::Index i = 0; i < count_; ++i)
    order_[fill[cell_of[static_cast<std::size_t>(i)]]++] = i;
}

double NeighborGrid::nearest_other(Eigen::Index i, double cap) const {
  const Eigen::Vector2d center = positions_->col(i);
  const double extent =
      std::hypot(static_cast<double>(nx_), static_cast<double>(ny_)) * cell_;
  double radius = std::min(cap, cell_);
  for (;;) {
    double best2 = std::numeric_limits<double>::infinity();
    for_each_within(center, radius, [&](Eigen::Index j, double d2) {
      if (j != i && d2 < best2) best2 = d2;
    });
    if (std::isfinite(best2)) return std::sqrt(best2);
    if (radius >= cap || radius > extent) break;
    radius = std::min(cap, radius * 2);
  }
  return std::numeric_limits<double>::infinity();
}

PointSet sample_poisson_annulus(double density, const AnnulusRegion& region,
                                Engine& rng, bool with_marks) {
  region.validate();
  if (!(density >= 0.0)) throw ConfigError("density must be >= 0");
  PointSet out;
  const double mean = density * region.area();
  const long n = mean > 0 ? std::poisson_distribution<long>(mean)(rng) : 0;
  out.positions.resize(2, n);
  const double r2lo = region.inner_radius * region.inner_radius;
  const double r2hi = region.outer_radius * region.outer_radius;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (long i = 0; i < n; ++i) {
    // Radial CDF (r^2 - R^2) / (l^2 - R^2) inverted.
    const double r = std::sqrt(r2lo + (r2hi - r2lo) * unit(rng));
    const double theta = 2.0 * M_PI * unit(rng);
    out.positions(0, i) = r * std::cos(theta);
    out.positions(1, i) = r * std::sin(theta);
  }
  if (with_marks) {
    out.marks.resize(n);
    for (long i = 0; i < n; ++i) {
      double m;
      do m = unit(rng); while (m <= 0.0);
      out.marks(i) = m;
    }
  }
  return out;
}

PointSet sample_poisson_annulus(double density, const AnnulusRegion& region,
                                std::uint64_t seed, bool with_marks) {
  Engine rng = substream(seed, 0, 0x706f6973);
  return sample_poisson_annulus(density, region, rng, with_marks);
}

std::vector<bool> matern_retained(const PointSet& points, double d_min) {
  if (!(d_min >= 0.0)) throw DomainError("d_min must be >= 0");
  const Eigen::Index n = points.size();
  std::vector<bool> keep(static_cast<std::size_t>(n), true);
  if (n < 2 || d_min == 0.0) return keep;
  if (!points.has_marks()) throw ConfigError("Matérn thinning needs marks");
  const NeighborGrid grid(points.positions, d_min);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mi = points.marks(i);
    bool survives = true;
    grid.for_each_within(points.positions.col(i), d_min, [&](Eigen::Index j, double) {
      if (j == i || !survives) return;
      const double mj = points.marks(j);
      if (mj < mi || (mj == mi && j < i)) survives = false;
    });
    keep[static_cast<std::size_t>(i)] = survives;
  }
  return keep;
}

PointSet matern_hardcore_thin(const PointSet& points, double d_min,
                              std::uint64_t seed) {
  if (points.has_marks() || points.empty()) return points.select(matern_retained(points, d_min));
  PointSet marked = points;
  Engine rng = substream(seed, 0, 0x6d61726b);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  marked.marks.resize(points.size());
  for (Eigen::Index i = 0; i < points.size(); ++i) {
    double m;
    do m = unit(rng); while (m <= 0.0);
    marked.marks(i) = m;
  }
  return marked.select(matern_retained(marked, d_min));
}

Eigen::VectorXd nearest_neighbor_distances_capped(const Eigen::Matrix2Xd& positions,
                                                  double cap) {
  const Eigen::Index n = positions.cols();
  Eigen::VectorXd out =
      Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
  if (n < 2) return out;
  double cell = cap;
  if (!std::isfinite(cell)) {
    const Eigen::Vector2d span =
        positions.rowwise().maxCoeff() - positions.rowwise().minCoeff();
    // Roughly one point per cell, bounded so degenerate (collinear) layouts
    // cannot blow up the cell count.
    const double sq = static_cast<double>(n);
    cell = std::max(std::sqrt(span.prod() / sq), span.maxCoeff() / (2.0 * std::sqrt(sq) + 1.0));
    if (!(cell > 0.0)) cell = 1.0;
  }
  const NeighborGrid grid(positions, cell);
  for (Eigen::Index i = 0; i < n; ++i) out(i) = grid.nearest_other(i, cap);
  return out;
}

Eigen::VectorXd nearest_neighbor_distances(const PointSet& points) {
  if (points.size() < 2)
    throw InsufficientDataError("nearest-neighbour distances need at least two points");
  return nearest_neighbor_distances_capped(points.positions,
                                           std::numeric_limits<double>::infinity());
}

double retaining_probability(double density, double d_min) {
  if (!(density >= 0.0) || !(d_min >= 0.0))
    throw DomainError("retaining probability needs density >= 0 and d_min >= 0");
  const double x = density * M_PI * d_min * d_min;
  if (x == 0.0) return 1.0;
  return -std::expm1(-x) / x;
}

double min_pairwise_distance(const Eigen::Matrix2Xd& positions) {
  const Eigen::VectorXd nn = nearest_neighbor_distances_capped(
      positions, std::numeric_limits<double>::infinity());
  return nn.size() ? nn.minCoeff() : std::numeric_limits<double>::infinity();
}

}  // namespace aggint

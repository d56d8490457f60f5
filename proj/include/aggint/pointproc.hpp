#ifndef AGGINT_POINTPROC_HPP_
#define AGGINT_POINTPROC_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "aggint/rng.hpp"

namespace aggint {

// Annulus centered at the origin. outer_radius must be finite here; an
// "auto" outer radius is resolved by the simulator before sampling.
struct AnnulusRegion {
  double inner_radius = 0.0;
  double outer_radius = 1.0;

  double area() const;
  // Throws ConfigError unless 0 <= inner < outer < inf.
  void validate() const;
};

// Planar transmitter positions (one column per point), optional marks in
// (0, 1) and optional per-point transmit powers. Empty `marks` / `powers`
// mean "not assigned".
struct PointSet {
  Eigen::Matrix2Xd positions;
  Eigen::VectorXd marks;
  Eigen::VectorXd powers;

  Eigen::Index size() const { return positions.cols(); }
  bool empty() const { return positions.cols() == 0; }
  bool has_marks() const { return marks.size() == positions.cols() && !empty(); }

  // Sub-set of the points selected by `keep` (marks/powers follow along).
  PointSet select(const std::vector<bool>& keep) const;
};

// Uniform-grid bucket index for fixed-radius and nearest-neighbour queries.
class NeighborGrid {
 public:
  NeighborGrid(const Eigen::Matrix2Xd& positions, double cell_size);

  // Calls visit(j, squared_distance) for every point j with
  // |x_j - center| <= radius.
  template <typename Visit>
  void for_each_within(const Eigen::Vector2d& center, double radius,
                       Visit&& visit) const {
    if (count_ == 0) return;
    const double r2 = radius * radius;
    const long cx0 = cell_coord(center.x() - radius, min_.x());
    const long cx1 = cell_coord(center.x() + radius, min_.x());
    const long cy0 = cell_coord(center.y() - radius, min_.y());
    const long cy1 = cell_coord(center.y() + radius, min_.y());
    for (long cy = std::max(0L, cy0); cy <= std::min(ny_ - 1, cy1); ++cy) {
      for (long cx = std::max(0L, cx0); cx <= std::min(nx_ - 1, cx1); ++cx) {
        const std::size_t c = static_cast<std::size_t>(cy * nx_ + cx);
        for (std::size_t k = start_[c]; k < start_[c + 1]; ++k) {
          const Eigen::Index j = order_[k];
          const double d2 = (positions_->col(j) - center).squaredNorm();
          if (d2 <= r2) visit(j, d2);
        }
      }
    }
  }

  // Distance from point i to its closest other point, or +inf when no other
  // point exists within `cap` (pass +inf for an unbounded search).
  double nearest_other(Eigen::Index i, double cap) const;

 private:
  long cell_coord(double v, double lo) const {
    return static_cast<long>(std::floor((v - lo) / cell_));
  }

  const Eigen::Matrix2Xd* positions_;
  Eigen::Index count_;
  double cell_;
  Eigen::Vector2d min_;
  long nx_ = 0;
  long ny_ = 0;
  std::vector<std::size_t> start_;
  std::vector<Eigen::Index> order_;
};

// Homogeneous Poisson field of intensity `density` restricted to `region`.
// Marks are drawn i.i.d. uniform(0, 1) when with_marks is set.
PointSet sample_poisson_annulus(double density, const AnnulusRegion& region,
                                Engine& rng, bool with_marks = true);
PointSet sample_poisson_annulus(double density, const AnnulusRegion& region,
                                std::uint64_t seed, bool with_marks = true);

// Matérn type II retention flags: point i survives iff its mark is strictly
// smaller than every other parent mark within distance d_min. Equal marks
// are resolved in favour of the lower index. Competition runs against all
// parents, retained or not, and only against points present in `points`.
std::vector<bool> matern_retained(const PointSet& points, double d_min);

// Thinned copy of `points`. Marks are drawn from `seed` when absent.
PointSet matern_hardcore_thin(const PointSet& points, double d_min,
                              std::uint64_t seed);

// Nearest-neighbour distance of each point. Throws InsufficientDataError for
// fewer than two points.
Eigen::VectorXd nearest_neighbor_distances(const PointSet& points);

// Same, but distances larger than `cap` are reported as +inf. Works for any
// number of points (a lone point gets +inf).
Eigen::VectorXd nearest_neighbor_distances_capped(const Eigen::Matrix2Xd& positions,
                                                  double cap);

// Expected surviving fraction of Matérn II thinning,
// (1 - exp(-lambda pi d^2)) / (lambda pi d^2), with the limit 1 at zero.
double retaining_probability(double density, double d_min);

// Smallest pairwise distance (+inf for fewer than two points).
double min_pairwise_distance(const Eigen::Matrix2Xd& positions);

}  // namespace aggint

#endif  // AGGINT_POINTPROC_HPP_

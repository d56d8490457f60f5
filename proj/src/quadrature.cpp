#include "aggint/quadrature.hpp"

#include <map>
#include <mutex>

namespace aggint {

namespace {

template <typename Builder>
const QuadratureRule<double>& cached(std::map<std::size_t, QuadratureRule<double>>& cache,
                                     std::mutex& mutex, std::size_t n,
                                     Builder build) {
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, build(static_cast<Eigen::Index>(n))).first;
  // std::map nodes are stable, so the reference outlives the lock.
  return it->second;
}

}  // namespace

const QuadratureRule<double>& legendre_rule(std::size_t n) {
  static std::map<std::size_t, QuadratureRule<double>> cache;
  static std::mutex mutex;
  return cached(cache, mutex, n, gauss_legendre<double>);
}

const QuadratureRule<double>& hermite_rule(std::size_t n) {
  static std::map<std::size_t, QuadratureRule<double>> cache;
  static std::mutex mutex;
  return cached(cache, mutex, n, gauss_hermite<double>);
}

const QuadratureRule<double>& laguerre_rule(std::size_t n) {
  static std::map<std::size_t, QuadratureRule<double>> cache;
  static std::mutex mutex;
  return cached(cache, mutex, n, gauss_laguerre<double>);
}

QuadratureRule<double> composite_legendre(double a, double b,
                                          std::size_t panels,
                                          std::size_t order) {
  const auto& base = legendre_rule(order);
  const Eigen::Index m = base.size();
  QuadratureRule<double> rule;
  rule.nodes.resize(m * static_cast<Eigen::Index>(panels));
  rule.weights.resize(rule.nodes.size());
  const double width = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = a + width * (static_cast<double>(p) + 0.5);
    const Eigen::Index off = static_cast<Eigen::Index>(p) * m;
    rule.nodes.segment(off, m) = (mid + width / 2 * base.nodes.array()).matrix();
    rule.weights.segment(off, m) = base.weights * (width / 2);
  }
  return rule;
}

}  // namespace aggint

#ifndef AGGINT_QUADRATURE_HPP_
#define AGGINT_QUADRATURE_HPP_

#include <cmath>
#include <cstddef>

#include <Eigen/Dense>

namespace aggint {

// A quadrature rule: nodes and weights stored as dense column vectors.
template <typename Scalar>
struct QuadratureRule {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  Vector nodes;
  Vector weights;

  Eigen::Index size() const { return nodes.size(); }
};

// Golub-Welsch: nodes are the eigenvalues of the symmetric Jacobi matrix of
// the three-term recurrence, weights are mu0 times the squared first
// components of the normalized eigenvectors.
template <typename Scalar>
QuadratureRule<Scalar> golub_welsch(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& diagonal,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& off_diagonal,
    Scalar mu0) {
  const Eigen::Index n = diagonal.size();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> jacobi =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  jacobi.diagonal() = diagonal;
  if (n > 1) {
    jacobi.template diagonal<1>() = off_diagonal;
    jacobi.template diagonal<-1>() = off_diagonal;
  }
  Eigen::SelfAdjointEigenSolver<
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>>
      solver(jacobi);
  QuadratureRule<Scalar> rule;
  rule.nodes = solver.eigenvalues();
  rule.weights = mu0 * solver.eigenvectors().row(0).transpose().array().square();
  return rule;
}

// Gauss-Legendre on [-1, 1].
template <typename Scalar>
QuadratureRule<Scalar> gauss_legendre(Eigen::Index n) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  Vector diag = Vector::Zero(n);
  Vector off(n > 1 ? n - 1 : 0);
  for (Eigen::Index k = 1; k < n; ++k) {
    const Scalar kk = static_cast<Scalar>(k);
    off(k - 1) = kk / std::sqrt(Scalar(4) * kk * kk - Scalar(1));
  }
  QuadratureRule<Scalar> rule = golub_welsch<Scalar>(diag, off, Scalar(2));
  // Symmetrize to remove eigensolver round-off.
  for (Eigen::Index i = 0; i < n / 2; ++i) {
    const Eigen::Index j = n - 1 - i;
    const Scalar x = (rule.nodes(j) - rule.nodes(i)) / 2;
    const Scalar w = (rule.weights(i) + rule.weights(j)) / 2;
    rule.nodes(i) = -x;
    rule.nodes(j) = x;
    rule.weights(i) = w;
    rule.weights(j) = w;
  }
  if (n % 2 == 1) rule.nodes(n / 2) = Scalar(0);
  return rule;
}

// Gauss-Hermite for the weight exp(-x^2) on the real line.
template <typename Scalar>
QuadratureRule<Scalar> gauss_hermite(Eigen::Index n) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  Vector diag = Vector::Zero(n);
  Vector off(n > 1 ? n - 1 : 0);
  for (Eigen::Index k = 1; k < n; ++k) off(k - 1) = std::sqrt(Scalar(k) / 2);
  return golub_welsch<Scalar>(diag, off, std::sqrt(Scalar(M_PI)));
}

// Gauss-Laguerre for the weight exp(-x) on [0, inf).
template <typename Scalar>
QuadratureRule<Scalar> gauss_laguerre(Eigen::Index n) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  Vector diag(n);
  Vector off(n > 1 ? n - 1 : 0);
  for (Eigen::Index k = 0; k < n; ++k) diag(k) = Scalar(2 * k + 1);
  for (Eigen::Index k = 1; k < n; ++k) off(k - 1) = Scalar(k);
  return golub_welsch<Scalar>(diag, off, Scalar(1));
}

// Cached double-precision rules, built once per size.
const QuadratureRule<double>& legendre_rule(std::size_t n);
const QuadratureRule<double>& hermite_rule(std::size_t n);
const QuadratureRule<double>& laguerre_rule(std::size_t n);

// Composite Gauss-Legendre rule over [a, b] with `panels` equal panels.
QuadratureRule<double> composite_legendre(double a, double b,
                                          std::size_t panels,
                                          std::size_t order = 16);

// Integrate f over [a, b] with a composite Gauss-Legendre rule.
template <typename F>
auto integrate_legendre(F&& f, double a, double b, std::size_t panels,
                        std::size_t order = 16) {
  const auto& rule = legendre_rule(order);
  const double width = (b - a) / static_cast<double>(panels);
  using R = decltype(f(a));
  R sum{};
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + width * static_cast<double>(p);
    const double mid = lo + width / 2;
    R panel{};
    for (Eigen::Index k = 0; k < rule.size(); ++k)
      panel += rule.weights(k) * f(mid + width / 2 * rule.nodes(k));
    sum += panel * (width / 2);
  }
  return sum;
}

}  // namespace aggint

#endif  // AGGINT_QUADRATURE_HPP_

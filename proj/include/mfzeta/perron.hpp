#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>

namespace mfzeta {

struct PowerIterationOptions {
  double tolerance = 1e-14;  // relative residual at which iteration stops
  double accept = 1e-12;     // relative residual still reported as converged
  int max_iterations = 100000;
  int stall_window = 2000;   // iterations without improvement before giving up
};

/// Perron root and positive left/right eigenvectors of an irreducible
/// nonnegative matrix. `left` and `right` are normalized to unit sum here;
/// callers impose their own normalization.
template <typename Scalar>
struct PerronPair {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  Scalar lambda = 0;
  Vector left;
  Vector right;
  Scalar left_residual = 0;
  Scalar right_residual = 0;
  int iterations = 0;
  bool converged = false;
};

namespace detail {

template <typename Scalar>
struct DominantVector {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> vector;
  Scalar lambda = 0;
  Scalar residual = std::numeric_limits<Scalar>::infinity();
  int iterations = 0;
};

// Power iteration on m + shift*I. The shift keeps the iteration convergent for
// periodic irreducible matrices, whose peripheral spectrum otherwise contains
// several eigenvalues of modulus rho.
template <typename Matrix>
DominantVector<typename Matrix::Scalar> dominant_vector(
    const Matrix& m, const PowerIterationOptions& opts) {
  using Scalar = typename Matrix::Scalar;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = m.rows();
  DominantVector<Scalar> best;
  best.vector = Vector::Constant(n, Scalar(1) / Scalar(n));

  if (n == 1) {
    best.lambda = m(0, 0);
    best.residual = 0;
    return best;
  }

  const Scalar shift = Scalar(0.5) * m.rowwise().sum().maxCoeff();
  Vector x = best.vector;
  int since_improvement = 0;
  for (int it = 1; it <= opts.max_iterations; ++it) {
    Vector mx = m * x;
    const Scalar lambda = mx.sum() / x.sum();
    const Scalar residual =
        (mx - lambda * x).template lpNorm<Eigen::Infinity>() /
        x.template lpNorm<Eigen::Infinity>();
    if (residual < best.residual) {
      best.vector = x;
      best.lambda = lambda;
      best.residual = residual;
      best.iterations = it;
      since_improvement = 0;
    } else if (++since_improvement > opts.stall_window) {
      break;
    }
    if (residual <= Scalar(opts.tolerance) * lambda) break;
    x = mx + shift * x;
    x /= x.sum();
  }
  return best;
}

}  // namespace detail

template <typename Derived>
PerronPair<typename Derived::Scalar> perron_pair(
    const Eigen::MatrixBase<Derived>& m, const PowerIterationOptions& opts = {}) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Matrix a = m;
  const Matrix at = a.transpose();
  const auto right = detail::dominant_vector(a, opts);
  const auto left = detail::dominant_vector(at, opts);

  PerronPair<Scalar> out;
  out.lambda = right.lambda;
  out.right = right.vector / right.vector.sum();
  out.left = left.vector / left.vector.sum();
  out.right_residual = right.residual;
  out.left_residual = left.residual;
  out.iterations = std::max(right.iterations, left.iterations);
  const Scalar bound = Scalar(opts.accept) * out.lambda;
  out.converged = out.lambda > 0 && right.residual <= bound &&
                  left.residual <= bound;
  return out;
}

/// Spectral radius of an irreducible nonnegative matrix; NaN when the power
/// iteration fails to reach the acceptance residual.
template <typename Derived>
typename Derived::Scalar spectral_radius(const Eigen::MatrixBase<Derived>& m,
                                         const PowerIterationOptions& opts = {}) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Matrix a = m;
  const auto right = detail::dominant_vector(a, opts);
  if (!(right.residual <= Scalar(opts.accept) * right.lambda)) {
    return std::numeric_limits<Scalar>::quiet_NaN();
  }
  return right.lambda;
}

}  // namespace mfzeta

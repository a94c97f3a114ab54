#pragma once

// Test-only reference computations. Nothing here calls into the solver paths it checks.

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <functional>
#include <limits>
#include <random>

namespace irsvm::oracle {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline Matrix gaussian(Eigen::Index m, Eigen::Index n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Matrix A(m, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < m; ++i) A(i, j) = g(rng);
  return A;
}

inline Matrix random_orthogonal(Eigen::Index n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Matrix> qr(gaussian(n, n, rng));
  return qr.householderQ() * Matrix::Identity(n, n);
}

/// Singular values via one-sided Jacobi (a different algorithm from the library's).
inline Vector jacobi_singular_values(const Matrix& A) {
  Eigen::JacobiSVD<Matrix> svd(A);
  return svd.singularValues();
}

/// <C, X-B> + L/2 ||X-B||^2 + sum s_i sigma_i(X), descending pairing.
inline double prox_objective(const Matrix& X, const Matrix& B, const Matrix& C, double L,
                             const Vector& s) {
  const Matrix D = X - B;
  return (C.array() * D.array()).sum() + 0.5 * L * D.squaredNorm() +
         s.dot(jacobi_singular_values(X));
}

/// sum over mask of (X - M)^2 with a dense 0/1 mask.
inline double masked_sq_error(const Matrix& X, const Matrix& M, const Matrix& mask) {
  return (mask.array() * (X - M).array()).square().sum();
}

/// Central differences of f at X, entrywise.
inline Matrix finite_difference_gradient(const std::function<double(const Matrix&)>& f,
                                         const Matrix& X, double h = 1e-6) {
  Matrix G(X.rows(), X.cols());
  Matrix Y = X;
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
      const double x0 = Y(i, j);
      Y(i, j) = x0 + h;
      const double fp = f(Y);
      Y(i, j) = x0 - h;
      const double fm = f(Y);
      Y(i, j) = x0;
      G(i, j) = (fp - fm) / (2.0 * h);
    }
  }
  return G;
}

/// min over s in (0, u] of p(|t| s - s^q/q) on a uniform grid of `points` nodes, then
/// polished with golden-section search on the bracketing cell.
inline double h_u_grid(double t, double u, double p, double q, int points = 100000) {
  const double a = std::abs(t);
  auto obj = [&](double s) { return p * (a * s - std::pow(s, q) / q); };
  double best = std::numeric_limits<double>::infinity();
  int best_i = points;
  for (int i = 1; i <= points; ++i) {
    const double s = u * static_cast<double>(i) / points;
    const double v = obj(s);
    if (v < best) {
      best = v;
      best_i = i;
    }
  }
  double lo = u * std::max(best_i - 1, 1) / points;
  double hi = u * std::min(best_i + 1, points) / points;
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 200; ++it) {
    const double x1 = hi - phi * (hi - lo);
    const double x2 = lo + phi * (hi - lo);
    if (obj(x1) < obj(x2)) {
      hi = x2;
    } else {
      lo = x1;
    }
  }
  return std::min({best, obj(0.5 * (lo + hi)), obj(u)});
}

/// Root of a continuous function with a sign change on [lo, hi], by plain bisection.
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     int iters = 200) {
  double flo = f(lo);
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Positive root of 2(x - a) + lambda p x^(p-1) = 0 closest to a (a > 0, small lambda).
inline double scalar_stationary_point(double a, double lambda, double p) {
  auto g = [&](double x) { return 2.0 * (x - a) + lambda * p * std::pow(x, p - 1.0); };
  // g(a) > 0; walk left until negative.
  double lo = a;
  while (g(lo) > 0.0 && lo > 1e-300) lo *= 0.5;
  return bisect(g, lo, a);
}

}  // namespace irsvm::oracle

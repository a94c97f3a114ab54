#include "irsvm/spectral.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace irsvm {

namespace {

constexpr double kZeroRelTol = 1e-8;

void check_weights(const Vector& s, Index l, const char* where) {
  if (s.size() != l) {
    throw ShapeMismatch(std::string(where) + ": weight vector has length " +
                        std::to_string(s.size()) + ", expected " + std::to_string(l));
  }
  for (Index i = 0; i < s.size(); ++i) {
    if (std::isnan(s[i]) || s[i] < 0.0) {
      throw NegativeWeight(std::string(where) + ": weight " + std::to_string(i) +
                           " is negative or NaN");
    }
  }
}

void check_step(double L, const char* where) {
  if (!(L > 0.0) || !std::isfinite(L)) {
    throw DomainError(std::string(where) + ": L must be positive and finite");
  }
}

}  // namespace

bool all_finite(const Matrix& A) { return A.allFinite(); }

SvdFactors thin_svd(const Matrix& A) {
  if (A.rows() == 0 || A.cols() == 0) {
    throw ShapeMismatch("thin_svd: empty matrix");
  }
  if (!A.allFinite()) {
    throw DecompositionFailure("thin_svd: matrix has non-finite entries");
  }
  Eigen::BDCSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw DecompositionFailure("thin_svd: decomposition did not converge");
  }
  return SvdFactors{svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

Vector singular_values(const Matrix& A) {
  if (!A.allFinite()) {
    throw DecompositionFailure("singular_values: matrix has non-finite entries");
  }
  Eigen::BDCSVD<Matrix> svd(A);
  if (svd.info() != Eigen::Success) {
    throw DecompositionFailure("singular_values: decomposition did not converge");
  }
  return svd.singularValues();
}

ProxResult weighted_sv_prox(const Matrix& B, const Matrix& C, double L, const Vector& s) {
  require_same_shape(B, C, "weighted_sv_prox");
  check_step(L, "weighted_sv_prox");
  const Index l = std::min(B.rows(), B.cols());
  check_weights(s, l, "weighted_sv_prox");

  ProxResult out;
  out.z_factors = thin_svd(B - C / L);
  out.x = (out.z_factors.sigma - s / L).cwiseMax(0.0);

  // Only columns with a nonzero shrunken value contribute.
  out.X = Matrix::Zero(B.rows(), B.cols());
  for (Index i = 0; i < l; ++i) {
    if (out.x[i] > 0.0) {
      out.X.noalias() +=
          out.x[i] * out.z_factors.U.col(i) * out.z_factors.V.col(i).transpose();
    }
  }
  return out;
}

double prox_objective(const Matrix& X, const Matrix& B, const Matrix& C, double L,
                      const Vector& s) {
  require_same_shape(X, B, "prox_objective");
  require_same_shape(B, C, "prox_objective");
  check_step(L, "prox_objective");
  const Index l = std::min(B.rows(), B.cols());
  check_weights(s, l, "prox_objective");

  const Matrix D = X - B;
  const Vector sigma = singular_values(X);
  return (C.array() * D.array()).sum() + 0.5 * L * D.squaredNorm() + s.dot(sigma);
}

double zero_threshold(const Vector& sigma_desc) {
  const double top = sigma_desc.size() > 0 ? sigma_desc.maxCoeff() : 0.0;
  return kZeroRelTol * std::max(top, 1.0);
}

Index numerical_rank(const Vector& sigma_desc) {
  const double thr = zero_threshold(sigma_desc);
  return (sigma_desc.array() > thr).count();
}

Vector sorted_descending(Vector v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

}  // namespace irsvm

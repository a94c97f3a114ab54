#pragma once

#include "irsvm/types.hpp"

namespace irsvm {

/// Thin SVD A = U Diag(sigma) V^T with l = min(m, n) columns and sigma descending.
struct SvdFactors {
  Matrix U;
  Vector sigma;
  Matrix V;

  Matrix reconstruct() const { return U * sigma.asDiagonal() * V.transpose(); }
};

/// Result of the weighted singular-value proximal step.
///
/// `x` is aligned with the columns of `z_factors` and is not necessarily sorted:
/// with non-monotone weights the i-th entry need not be the i-th singular value of `X`.
struct ProxResult {
  Matrix X;
  SvdFactors z_factors;
  Vector x;
};

SvdFactors thin_svd(const Matrix& A);

/// Singular values only, descending.
Vector singular_values(const Matrix& A);

/// Minimizer of <C, X-B> + (L/2)||X-B||_F^2 + sum_i s_i sigma_i(X), obtained by shrinking
/// the spectrum of B - C/L by s/L.
ProxResult weighted_sv_prox(const Matrix& B, const Matrix& C, double L, const Vector& s);

/// Objective value minimized by weighted_sv_prox, evaluated at X. Weights are paired with
/// the singular values of X in descending order.
double prox_objective(const Matrix& X, const Matrix& B, const Matrix& C, double L,
                      const Vector& s);

/// Singular values at or below this are treated as zero.
double zero_threshold(const Vector& sigma_desc);

/// Count of singular values above zero_threshold.
Index numerical_rank(const Vector& sigma_desc);

/// Copy of v sorted in descending order.
Vector sorted_descending(Vector v);

bool all_finite(const Matrix& A);

}  // namespace irsvm

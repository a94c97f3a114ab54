#pragma once

#include "irsvm/types.hpp"

#include <algorithm>
#include <functional>
#include <utility>
#include <vector>

namespace irsvm {

/// Smooth part f of F(X) = f(X) + lambda ||X||_p^p.
///
/// Implementations must have an L_f-Lipschitz gradient and be bounded below by
/// lower_bound(). Instances are immutable once constructed.
class SmoothObjective {
 public:
  virtual ~SmoothObjective() = default;

  virtual Index rows() const = 0;
  virtual Index cols() const = 0;
  virtual double value(const Matrix& X) const = 0;
  virtual Matrix gradient(const Matrix& X) const = 0;
  virtual double lipschitz_bound() const = 0;
  virtual double lower_bound() const = 0;

  Index min_dim() const { return std::min(rows(), cols()); }

 protected:
  void check_shape(const Matrix& X, const char* where) const;
};

/// One observed entry of the matrix to complete (0-based indices).
struct Observation {
  Index row;
  Index col;
  double value;
};

/// f(X) = ||P_Omega(X - M)||_F^2 with Omega stored as coordinate triplets.
///
/// No 1/2 factor, so the gradient 2 P_Omega(X - M) is 2-Lipschitz and f >= 0.
class CompletionProblem final : public SmoothObjective {
 public:
  /// Throws DomainError on out-of-bounds or duplicate pairs.
  CompletionProblem(Index rows, Index cols, std::vector<Observation> observed);

  Index rows() const override { return rows_; }
  Index cols() const override { return cols_; }
  double value(const Matrix& X) const override;
  Matrix gradient(const Matrix& X) const override;
  double lipschitz_bound() const override { return 2.0; }
  double lower_bound() const override { return 0.0; }

  const std::vector<Observation>& observed() const { return observed_; }
  std::size_t num_observed() const { return observed_.size(); }

  /// P_Omega(M): observed values in place, zeros elsewhere.
  Matrix projected_observations() const;

 private:
  Index rows_;
  Index cols_;
  std::vector<Observation> observed_;
};

/// f(X) = h(diag(X)) on square l x l matrices; used to compare the matrix and vector
/// notions of stationarity.
class DiagonalObjective final : public SmoothObjective {
 public:
  using VectorFn = std::function<double(const Vector&)>;
  using GradientFn = std::function<Vector(const Vector&)>;

  DiagonalObjective(Index dim, VectorFn h, GradientFn grad_h, double lipschitz,
                    double lower);

  /// h(x) = ||x - a||^2, with L_f = 2 and lower bound 0.
  static DiagonalObjective squared_distance(Vector a);

  Index rows() const override { return dim_; }
  Index cols() const override { return dim_; }
  double value(const Matrix& X) const override;
  Matrix gradient(const Matrix& X) const override;
  double lipschitz_bound() const override { return lipschitz_; }
  double lower_bound() const override { return lower_; }

  double inner_value(const Vector& x) const { return h_(x); }
  Vector inner_gradient(const Vector& x) const { return grad_h_(x); }

 private:
  Index dim_;
  VectorFn h_;
  GradientFn grad_h_;
  double lipschitz_;
  double lower_;
};

/// lambda * sum of sigma_i(X)^p over singular values above the zero threshold.
double schatten_term(const Matrix& X, double p, double lambda);

/// Same as schatten_term but from precomputed descending singular values.
double schatten_term_from_sigma(const Vector& sigma_desc, double p, double lambda);

/// F(X) = f(X) + lambda ||X||_p^p.
double total_objective(const SmoothObjective& obj, const Matrix& X, double p, double lambda);

void check_exponent(double p);
void check_lambda(double lambda);

}  // namespace irsvm

#include "irsvm/objective.hpp"

#include "irsvm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace irsvm {

void SmoothObjective::check_shape(const Matrix& X, const char* where) const {
  if (X.rows() != rows() || X.cols() != cols()) {
    throw ShapeMismatch(std::string(where) + ": expected " + std::to_string(rows()) + "x" +
                        std::to_string(cols()) + ", got " + std::to_string(X.rows()) + "x" +
                        std::to_string(X.cols()));
  }
}

CompletionProblem::CompletionProblem(Index rows, Index cols, std::vector<Observation> observed)
    : rows_(rows), cols_(cols), observed_(std::move(observed)) {
  if (rows <= 0 || cols <= 0) {
    throw DomainError("CompletionProblem: dimensions must be positive");
  }
  for (const auto& o : observed_) {
    if (o.row < 0 || o.row >= rows || o.col < 0 || o.col >= cols) {
      throw DomainError("CompletionProblem: index (" + std::to_string(o.row) + ", " +
                        std::to_string(o.col) + ") out of bounds for " +
                        std::to_string(rows) + "x" + std::to_string(cols));
    }
    if (!std::isfinite(o.value)) {
      throw DomainError("CompletionProblem: non-finite observed value");
    }
  }
  // Column-major order matches Eigen's storage.
  std::sort(observed_.begin(), observed_.end(), [](const Observation& a, const Observation& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  const auto dup = std::adjacent_find(
      observed_.begin(), observed_.end(),
      [](const Observation& a, const Observation& b) { return a.row == b.row && a.col == b.col; });
  if (dup != observed_.end()) {
    throw DomainError("CompletionProblem: duplicate index (" + std::to_string(dup->row) + ", " +
                      std::to_string(dup->col) + ")");
  }
}

double CompletionProblem::value(const Matrix& X) const {
  check_shape(X, "CompletionProblem::value");
  double acc = 0.0;
  for (const auto& o : observed_) {
    const double r = X(o.row, o.col) - o.value;
    acc += r * r;
  }
  return acc;
}

Matrix CompletionProblem::gradient(const Matrix& X) const {
  check_shape(X, "CompletionProblem::gradient");
  Matrix G = Matrix::Zero(rows_, cols_);
  for (const auto& o : observed_) {
    G(o.row, o.col) = 2.0 * (X(o.row, o.col) - o.value);
  }
  return G;
}

Matrix CompletionProblem::projected_observations() const {
  Matrix P = Matrix::Zero(rows_, cols_);
  for (const auto& o : observed_) P(o.row, o.col) = o.value;
  return P;
}

DiagonalObjective::DiagonalObjective(Index dim, VectorFn h, GradientFn grad_h, double lipschitz,
                                     double lower)
    : dim_(dim), h_(std::move(h)), grad_h_(std::move(grad_h)), lipschitz_(lipschitz),
      lower_(lower) {
  if (dim <= 0) throw DomainError("DiagonalObjective: dimension must be positive");
  if (!(lipschitz > 0.0)) throw DomainError("DiagonalObjective: Lipschitz bound must be positive");
}

DiagonalObjective DiagonalObjective::squared_distance(Vector a) {
  const Index dim = a.size();
  auto h = [a](const Vector& x) { return (x - a).squaredNorm(); };
  auto g = [a](const Vector& x) -> Vector { return 2.0 * (x - a); };
  return DiagonalObjective(dim, h, g, 2.0, 0.0);
}

double DiagonalObjective::value(const Matrix& X) const {
  check_shape(X, "DiagonalObjective::value");
  return h_(X.diagonal());
}

Matrix DiagonalObjective::gradient(const Matrix& X) const {
  check_shape(X, "DiagonalObjective::gradient");
  Matrix G = Matrix::Zero(dim_, dim_);
  G.diagonal() = grad_h_(X.diagonal());
  return G;
}

void check_exponent(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("exponent p must lie in (0, 1)");
}

void check_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("lambda must be positive and finite");
  }
}

double schatten_term_from_sigma(const Vector& sigma_desc, double p, double lambda) {
  check_exponent(p);
  check_lambda(lambda);
  const double thr = zero_threshold(sigma_desc);
  double acc = 0.0;
  for (const double s : sigma_desc) {
    if (s > thr) acc += std::pow(s, p);
  }
  return lambda * acc;
}

double schatten_term(const Matrix& X, double p, double lambda) {
  check_exponent(p);
  check_lambda(lambda);
  return schatten_term_from_sigma(singular_values(X), p, lambda);
}

double total_objective(const SmoothObjective& obj, const Matrix& X, double p, double lambda) {
  return obj.value(X) + schatten_term(X, p, lambda);
}

}  // namespace irsvm

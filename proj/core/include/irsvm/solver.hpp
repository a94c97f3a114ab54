#pragma once

#include "irsvm/objective.hpp"
#include "irsvm/spectral.hpp"
#include "irsvm/surrogate.hpp"
#include "irsvm/trace.hpp"
#include "irsvm/types.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace irsvm {

enum class Variant { IRSVM1, IRSVM2, Nuclear };

std::string_view to_string(Variant v);
/// Accepts "irsvm1", "irsvm2", "nuclear" (case-insensitive); throws DomainError otherwise.
Variant parse_variant(std::string_view name);

/// Algorithmic constants. Defaults are the desk-scale experiment settings.
struct SolverConfig {
  double L_min = 1e-2;
  double L_max = 1.0;
  double L_init = 1.0;  ///< trial step of the first outer iteration
  double tau = 2.0;
  double c = 1e-4;
  int N = 10;  ///< nonmonotone window holds the last N+1 accepted merit values
  double p = 0.5;
  double lambda = 1e-6;
  double eps_bar = 1e-3;
  long max_outer = 5000;
  int max_inner = 64;  ///< hard stop for backtracking; far above the theoretical bound
  double eps_tol = 1e-6;  ///< bisection tolerance for the second method's eps
  Variant variant = Variant::IRSVM1;

  /// Throws DomainError when a constant is outside its admissible range.
  void validate() const;
};

/// Stalled: backtracking hit max_inner without acceptance (numerical stagnation).
enum class SolveStatus { Converged, MaxIterations, Stalled };

struct SolveResult {
  Matrix X;
  SolveTrace trace;
  SolveStatus status = SolveStatus::MaxIterations;

  bool converged() const { return status == SolveStatus::Converged; }
};

struct ContinuationResult {
  Matrix X;
  std::vector<SolveResult> stages;

  bool converged() const { return !stages.empty() && stages.back().converged(); }
  long total_iterations() const;
};

/// Current outer iterate with its gradient and singular values.
struct IterateState {
  Matrix X;
  Matrix grad;
  Vector sigma;  ///< singular values of X, descending, length min(m, n)
};

/// Clamped Barzilai-Borwein curvature tr(dX dG^T)/||dX||_F^2; L_max when dX = 0.
double bb_init(const Matrix& delta_x, const Matrix& delta_g, double L_min, double L_max);

/// One prox trial: X_next = argmin <grad, X - X^k> + L/2 ||X - X^k||^2 + lambda p sum s_i sigma_i(X).
ProxResult inner_step(const IterateState& state, double L, const Vector& weights,
                      double lambda, double p);

/// Nonmonotone acceptance: value <= max(history) - (c/2) ||dX||^2.
bool accept_test(double value, std::span<const double> history, double c,
                 double step_norm_sq);

/// Max-norm of Diag(sigma^1/2) U^T grad V Diag(sigma^1/2) + lambda p Diag(sigma^p), with
/// U, V the singular vectors of Z^k = X^k - grad/L_k and sigma those of X^k.
double termination_residual(const Matrix& grad, const SvdFactors& z_factors,
                            const Vector& sigma_xk, double lambda, double p);

/// Uniform bound on backtracking trials per outer iteration:
/// max{floor((ln(L_f + c) - ln L_min)/ln tau + 1), 1}.
int inner_iteration_bound(double L_f, double c, double L_min, double tau);

/// Lower bound (lambda p / sqrt(2 L_f (level - f_lower)))^(1/(1-p)) on the nonzero
/// singular values of a stationary point with F <= level.
double singular_value_lower_bound(double lambda, double p, double L_f, double level,
                                  double f_lower);

/// Runs the first or second reweighted method (per config.variant) at config.lambda.
/// Variant::Nuclear dispatches to nuclear_pg_solve.
SolveResult solve(const SmoothObjective& obj, const Matrix& X0, const SolverConfig& config);

/// Proximal gradient with uniform weights lambda on the nuclear norm, with the same
/// nonmonotone backtracking. Stops on relative iterate change <= eps_bar.
SolveResult nuclear_pg_solve(const SmoothObjective& obj, const Matrix& X0,
                             const SolverConfig& config);

/// lambda_0, max(decay lambda_0, floor), ... down to lambda_target.
std::vector<double> continuation_schedule(double lambda0, double lambda_target, double decay,
                                          double floor);

/// Solves along continuation_schedule, warm-starting each stage from the previous one.
ContinuationResult continuation_solve(const SmoothObjective& obj, const Matrix& X0,
                                      const SolverConfig& config, double lambda0,
                                      double lambda_target, double decay, double floor);

}  // namespace irsvm

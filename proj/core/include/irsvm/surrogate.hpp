#pragma once

#include "irsvm/objective.hpp"
#include "irsvm/types.hpp"

namespace irsvm {

/// Geometric smoothing schedule eps^k = ratio^k * base for the first method.
struct EpsilonSchedule {
  Vector base;
  double ratio = 0.5;

  static EpsilonSchedule ones(Index l, double ratio = 0.5) {
    return EpsilonSchedule{Vector::Ones(l), ratio};
  }

  Vector at(long k) const;
};

/// Smoothing parameters of the second method: q = p/(p-1) and u = (eps/(lambda*l))^(1/q).
struct SmoothingParams {
  double eps = 0.0;
  double q = 0.0;
  double u = 0.0;
};

/// Conjugate exponent q < 0 with 1/p + 1/q = 1.
double conjugate_exponent(double p);

SmoothingParams make_smoothing_params(double eps, double p, double lambda, Index l);

/// sum_i (sigma_i + eps_i)^p, sigma descending and paired with eps by index.
double smoothed_power_sum(const Vector& sigma_desc, const Vector& eps, double p);

/// Fbar_eps(X) = f(X) + lambda * sum_i (sigma_i(X) + eps_i)^p.
double fbar_eps(const SmoothObjective& obj, const Matrix& X, const Vector& eps, double p,
                double lambda);

/// h_u(t) = min over 0 <= s <= u of p(|t| s - s^q / q), in closed form:
/// |t|^p when |t| >= u^(q-1), otherwise p(|t| u - u^q / q).
double h_u(double t, double u, double p, double q);

/// sum_i h_u(sigma_i).
double capped_power_sum(const Vector& sigma, const SmoothingParams& params, double p);

/// F_eps(X) = f(X) + lambda * sum_i h_u(sigma_i(X)). Satisfies 0 <= F_eps - F <= eps.
double f_eps(const SmoothObjective& obj, const Matrix& X, const SmoothingParams& params,
             double p, double lambda);

/// g(eps) = l*lambda*[sqrt(2 L_f (F(X0) + eps - f_lower)) / (lambda p)]^q - eps.
/// The admissible smoothing parameters are exactly {eps > 0 : g(eps) > 0}.
double epsilon_gap(double eps, double F_X0, double lambda, double p, double L_f,
                   double f_lower, Index l);

/// Largest admissible eps up to `tol` (relative when the supremum is below one),
/// located by bisection on the strictly decreasing gap function. The returned value
/// is re-verified to lie strictly inside the admissible set.
double epsilon_supremum(double F_X0, double lambda, double p, double L_f, double f_lower,
                        Index l, double tol = 1e-6);

/// s_i = (sigma_i + eps_i)^(p-1).
Vector weights_alg1(const Vector& sigma_desc, const Vector& eps, double p);

/// s_i = min{u, sigma_i^(1/(q-1))}, with 0^(1/(q-1)) = +inf.
Vector weights_alg2(const Vector& sigma_desc, const SmoothingParams& params);

}  // namespace irsvm

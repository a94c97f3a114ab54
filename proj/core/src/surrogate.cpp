#include "irsvm/surrogate.hpp"

#include "irsvm/spectral.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace irsvm {

namespace {

void check_eps_vector(const Vector& eps, Index l, const char* where) {
  if (eps.size() != l) {
    throw ShapeMismatch(std::string(where) + ": eps has length " + std::to_string(eps.size()) +
                        ", expected " + std::to_string(l));
  }
  for (const double e : eps) {
    if (!(e > 0.0)) throw DomainError(std::string(where) + ": eps must be positive");
  }
}

}  // namespace

// Clamped at the smallest normal double so eps stays positive for any k.
Vector EpsilonSchedule::at(long k) const {
  const double scale = std::pow(ratio, static_cast<double>(k));
  return (scale * base).cwiseMax(std::numeric_limits<double>::min());
}

double conjugate_exponent(double p) {
  check_exponent(p);
  return p / (p - 1.0);
}

SmoothingParams make_smoothing_params(double eps, double p, double lambda, Index l) {
  check_lambda(lambda);
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw DomainError("make_smoothing_params: eps must be positive and finite");
  }
  if (l <= 0) throw DomainError("make_smoothing_params: l must be positive");
  SmoothingParams params;
  params.eps = eps;
  params.q = conjugate_exponent(p);
  params.u = std::pow(eps / (lambda * static_cast<double>(l)), 1.0 / params.q);
  if (!(params.u > 0.0) || !std::isfinite(params.u)) {
    throw EmptyEpsilonSet("make_smoothing_params: u is not representable for eps = " +
                          std::to_string(eps));
  }
  return params;
}

double smoothed_power_sum(const Vector& sigma_desc, const Vector& eps, double p) {
  check_eps_vector(eps, sigma_desc.size(), "smoothed_power_sum");
  double acc = 0.0;
  for (Index i = 0; i < sigma_desc.size(); ++i) acc += std::pow(sigma_desc[i] + eps[i], p);
  return acc;
}

double fbar_eps(const SmoothObjective& obj, const Matrix& X, const Vector& eps, double p,
                double lambda) {
  check_exponent(p);
  check_lambda(lambda);
  check_eps_vector(eps, obj.min_dim(), "fbar_eps");
  const double fx = obj.value(X);
  return fx + lambda * smoothed_power_sum(singular_values(X), eps, p);
}

double h_u(double t, double u, double p, double q) {
  if (!(u > 0.0)) throw DomainError("h_u: u must be positive");
  const double a = std::abs(t);
  if (a >= std::pow(u, q - 1.0)) return std::pow(a, p);
  return p * (a * u - std::pow(u, q) / q);
}

double capped_power_sum(const Vector& sigma, const SmoothingParams& params, double p) {
  double acc = 0.0;
  for (const double s : sigma) acc += h_u(s, params.u, p, params.q);
  return acc;
}

double f_eps(const SmoothObjective& obj, const Matrix& X, const SmoothingParams& params,
             double p, double lambda) {
  check_exponent(p);
  check_lambda(lambda);
  const double fx = obj.value(X);
  return fx + lambda * capped_power_sum(singular_values(X), params, p);
}

double epsilon_gap(double eps, double F_X0, double lambda, double p, double L_f,
                   double f_lower, Index l) {
  const double q = conjugate_exponent(p);
  const double grad_bound = std::sqrt(2.0 * L_f * (F_X0 + eps - f_lower));
  return static_cast<double>(l) * lambda * std::pow(grad_bound / (lambda * p), q) - eps;
}

double epsilon_supremum(double F_X0, double lambda, double p, double L_f, double f_lower,
                        Index l, double tol) {
  check_exponent(p);
  check_lambda(lambda);
  if (!(tol > 0.0)) throw DomainError("epsilon_supremum: tol must be positive");
  if (!(L_f > 0.0)) throw DomainError("epsilon_supremum: L_f must be positive");
  if (l <= 0) throw DomainError("epsilon_supremum: l must be positive");
  if (!std::isfinite(F_X0) || !std::isfinite(f_lower) || F_X0 < f_lower) {
    throw DomainError("epsilon_supremum: need finite F(X0) >= f_lower");
  }
  auto g = [&](double e) { return epsilon_gap(e, F_X0, lambda, p, L_f, f_lower, l); };

  // g is strictly decreasing with g(0+) > 0, so the root is unique.
  double lo = 0.0;
  double hi = 1.0;
  while (g(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw EmptyEpsilonSet("epsilon_supremum: no upper bracket");
  }
  constexpr int kMaxIter = 2200;
  for (int it = 0; it < kMaxIter && hi - lo > tol * std::min(1.0, hi); ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (!(lo > 0.0) || !(g(lo) > 0.0)) {
    throw EmptyEpsilonSet(
        "epsilon_supremum: no representable admissible eps (reduce lambda or change X0)");
  }
  return lo;
}

Vector weights_alg1(const Vector& sigma_desc, const Vector& eps, double p) {
  check_exponent(p);
  check_eps_vector(eps, sigma_desc.size(), "weights_alg1");
  Vector s(sigma_desc.size());
  for (Index i = 0; i < s.size(); ++i) s[i] = std::pow(sigma_desc[i] + eps[i], p - 1.0);
  return s;
}

Vector weights_alg2(const Vector& sigma_desc, const SmoothingParams& params) {
  const double expo = 1.0 / (params.q - 1.0);
  Vector s(sigma_desc.size());
  for (Index i = 0; i < s.size(); ++i) {
    const double uncapped = sigma_desc[i] > 0.0 ? std::pow(sigma_desc[i], expo)
                                                : std::numeric_limits<double>::infinity();
    s[i] = std::min(params.u, uncapped);
  }
  return s;
}

}  // namespace irsvm

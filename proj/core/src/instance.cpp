#include "irsvm/instance.hpp"

#include "irsvm/spectral.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <utility>

namespace irsvm::harness {

void InstanceSpec::validate() const {
  if (m <= 0 || n <= 0) throw DomainError("instance: m and n must be positive");
  if (r <= 0 || r > std::min(m, n)) throw DomainError("instance: need 1 <= r <= min(m, n)");
  if (!(sr > 0.0 && sr <= 1.0)) throw DomainError("instance: sampling ratio must lie in (0, 1]");
}

std::size_t InstanceSpec::sample_count() const {
  return static_cast<std::size_t>(std::llround(sr * static_cast<double>(m) * static_cast<double>(n)));
}

Instance gen_instance(const InstanceSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Matrix left(spec.m, spec.r);
  Matrix right(spec.n, spec.r);
  for (Index j = 0; j < spec.r; ++j) {
    for (Index i = 0; i < spec.m; ++i) left(i, j) = gauss(rng);
  }
  for (Index j = 0; j < spec.r; ++j) {
    for (Index i = 0; i < spec.n; ++i) right(i, j) = gauss(rng);
  }
  Matrix truth = left * right.transpose();

  const std::size_t total = static_cast<std::size_t>(spec.m * spec.n);
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);

  const std::size_t count = std::min(spec.sample_count(), total);
  std::vector<Observation> observed;
  observed.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    const auto row = static_cast<Index>(order[t] % static_cast<std::size_t>(spec.m));
    const auto col = static_cast<Index>(order[t] / static_cast<std::size_t>(spec.m));
    observed.push_back({row, col, truth(row, col)});
  }
  return Instance{CompletionProblem(spec.m, spec.n, std::move(observed)), std::move(truth)};
}

double rel_err(const Matrix& X, const Matrix& M) {
  require_same_shape(X, M, "rel_err");
  const double denom = M.norm();
  if (!(denom > 0.0)) throw DomainError("rel_err: ground truth is zero");
  return (X - M).norm() / denom;
}

RunReport run_method(const CompletionProblem& problem, const Matrix& truth, Variant method,
                     const SolverConfig& config, const ContinuationSettings& continuation,
                     ContinuationResult* out) {
  SolverConfig cfg = config;
  cfg.variant = method;
  const Matrix X0 = problem.projected_observations();

  const auto start = std::chrono::steady_clock::now();
  ContinuationResult result =
      continuation.enabled
          ? continuation_solve(problem, X0, cfg, continuation.lambda0, continuation.lambda_target,
                               continuation.decay, continuation.floor)
          : continuation_solve(problem, X0, cfg, continuation.lambda_target,
                               continuation.lambda_target, continuation.decay,
                               std::min(continuation.floor, continuation.lambda_target));
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  RunReport report;
  report.method = std::string(to_string(method));
  report.rel_err = rel_err(result.X, truth);
  report.success = report.rel_err < kSuccessThreshold;
  report.seconds = seconds;
  report.rank = static_cast<long>(numerical_rank(singular_values(result.X)));
  report.iterations = result.total_iterations();
  report.converged = result.converged();
  if (out != nullptr) *out = std::move(result);
  return report;
}

}  // namespace irsvm::harness

#pragma once

#include "irsvm/objective.hpp"
#include "irsvm/solver.hpp"
#include "irsvm/types.hpp"

#include <cstdint>
#include <string>

namespace irsvm::harness {

/// rel_err below this counts as a successful recovery.
inline constexpr double kSuccessThreshold = 1e-3;

/// Random low-rank completion instance: M = M_L M_R^T with standard Gaussian factors
/// and round(sr * m * n) entries sampled uniformly without replacement.
struct InstanceSpec {
  Index m = 0;
  Index n = 0;
  Index r = 0;
  double sr = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
  std::size_t sample_count() const;
};

struct Instance {
  CompletionProblem problem;
  Matrix ground_truth;
};

/// Deterministic in `spec.seed` on a given platform.
Instance gen_instance(const InstanceSpec& spec);

/// ||X - M||_F / ||M||_F. Throws DomainError when M = 0.
double rel_err(const Matrix& X, const Matrix& M);

/// Geometric lambda continuation; disabled means a single stage at lambda_target.
struct ContinuationSettings {
  bool enabled = true;
  double lambda0 = 10.0;
  double lambda_target = 1e-6;
  double decay = 0.1;
  double floor = 1e-6;
};

struct RunReport {
  std::string method;
  double rel_err = 0.0;
  bool success = false;
  double seconds = 0.0;
  long rank = 0;
  long iterations = 0;
  bool converged = false;
};

/// Solves from X0 = P_Omega(M) with continuation and scores against `truth`.
/// The full result is returned through `out` when non-null.
RunReport run_method(const CompletionProblem& problem, const Matrix& truth, Variant method,
                     const SolverConfig& config, const ContinuationSettings& continuation,
                     ContinuationResult* out = nullptr);

}  // namespace irsvm::harness

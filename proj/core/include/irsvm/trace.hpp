#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace irsvm {

/// One accepted outer iteration of a solve.
struct IterationRecord {
  long k = 0;               ///< outer iteration index within the stage
  double objective = 0.0;   ///< F(X^k)
  double penalty = 0.0;     ///< lambda ||X^k||_p^p
  double surrogate = 0.0;   ///< merit value of X^k used in the acceptance window
  double window_max = 0.0;  ///< max of the acceptance window before this step
  double step_size = 0.0;   ///< accepted L_k
  int inner = 0;            ///< prox trials until acceptance
  double residual = 0.0;    ///< termination residual at X^k
  long rank = 0;            ///< numerical rank of X^k
  double step_norm_sq = 0.0;  ///< ||X^{k+1} - X^k||_F^2 of the accepted step
  bool prox_sorted = true;  ///< prox output came out in descending order
  double elapsed = 0.0;     ///< seconds since the solve started
};

/// Per-solve diagnostics. `merit_bound` bounds lambda ||X^k||_p^p + f_lower for every
/// iterate and `lower_bound_level` is the level used in the singular-value lower bound.
struct SolveTrace {
  std::string method;
  double lambda = 0.0;
  double p = 0.0;
  double lipschitz = 0.0;
  double f_lower = 0.0;
  double eps = 0.0;  ///< smoothing parameter of the second method, 0 otherwise
  double merit_bound = 0.0;
  double lower_bound_level = 0.0;
  int inner_bound = 0;
  std::vector<IterationRecord> records;
};

/// Writes records as CSV with a fixed header; `stage` prefixes each row.
void write_trace_csv_header(std::ostream& os);
void write_trace_csv(std::ostream& os, const SolveTrace& trace, int stage);

/// Writes one JSON object per line. `global_k` is advanced for every record so that
/// k stays monotone across stages.
void write_trace_json_lines(std::ostream& os, const SolveTrace& trace, int stage,
                            long& global_k);

}  // namespace irsvm

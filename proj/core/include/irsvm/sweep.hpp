#pragma once

#include "irsvm/instance.hpp"
#include "irsvm/solver.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

namespace irsvm::harness {

struct SweepOptions {
  Index m = 100;
  Index n = 100;
  double sr = 0.5;
  std::vector<Index> ranks;
  int trials = 1;
  std::vector<Variant> methods{Variant::IRSVM1, Variant::IRSVM2};
  SolverConfig config;
  ContinuationSettings continuation;
  std::uint64_t base_seed = 0;
  unsigned threads = 1;  ///< 0 selects std::thread::hardware_concurrency()
};

/// Identifies a single run within a sweep.
struct RunKey {
  Variant method;
  Index rank;
  int trial;
  std::uint64_t seed;
};

struct RunOutcome {
  RunKey key;
  RunReport report;
  bool failed = false;  ///< the solver threw; report.rel_err is +inf
  std::string error;
};

/// One aggregated row per (method, rank).
struct SweepRow {
  std::string method;
  Index m = 0;
  Index n = 0;
  double sr = 0.0;
  Index rank = 0;
  int trials = 0;
  int successes = 0;
  double mean_rel_err = 0.0;
  double mean_seconds = 0.0;
};

/// Instance seed for (base, rank, trial); shared by every method so that all methods
/// see identical instances.
std::uint64_t derive_seed(std::uint64_t base, Index rank, int trial);

/// Invoked once per finished run with the full solver output. Calls are serialized.
using RunObserver = std::function<void(const RunOutcome&, const ContinuationResult&)>;

/// All runs in (method, rank, trial) order regardless of completion order.
std::vector<RunOutcome> recovery_runs(const SweepOptions& options,
                                      const RunObserver& observer = {});

std::vector<SweepRow> summarize(const SweepOptions& options,
                                const std::vector<RunOutcome>& runs);

std::vector<SweepRow> recovery_sweep(const SweepOptions& options,
                                     const RunObserver& observer = {});

/// Fixed header: method,m,n,sr,rank,trials,successes,mean_rel_err,mean_seconds.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace irsvm::harness

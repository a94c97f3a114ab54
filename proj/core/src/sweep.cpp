#include "irsvm/sweep.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

namespace irsvm::harness {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, Index rank, int trial) {
  return splitmix64(splitmix64(base ^ splitmix64(static_cast<std::uint64_t>(rank))) +
                    static_cast<std::uint64_t>(trial));
}

std::vector<RunOutcome> recovery_runs(const SweepOptions& options, const RunObserver& observer) {
  if (options.trials < 1) throw DomainError("sweep: trials must be >= 1");
  if (options.ranks.empty()) throw DomainError("sweep: rank list is empty");
  if (options.methods.empty()) throw DomainError("sweep: method list is empty");
  options.config.validate();
  for (const Index r : options.ranks) {
    InstanceSpec{options.m, options.n, r, options.sr, 0}.validate();
  }

  std::vector<RunKey> keys;
  for (const Variant method : options.methods) {
    for (const Index r : options.ranks) {
      for (int t = 0; t < options.trials; ++t) {
        keys.push_back({method, r, t, derive_seed(options.base_seed, r, t)});
      }
    }
  }

  std::vector<RunOutcome> outcomes(keys.size());
  std::mutex observer_mutex;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t idx = next++; idx < keys.size(); idx = next++) {
      const RunKey& key = keys[idx];
      RunOutcome outcome;
      outcome.key = key;
      ContinuationResult full;
      try {
        const Instance inst = gen_instance({options.m, options.n, key.rank, options.sr, key.seed});
        outcome.report = run_method(inst.problem, inst.ground_truth, key.method, options.config,
                                    options.continuation, &full);
      } catch (const Error& e) {
        outcome.failed = true;
        outcome.error = e.what();
        outcome.report.method = std::string(to_string(key.method));
        outcome.report.rel_err = std::numeric_limits<double>::infinity();
        outcome.report.success = false;
      }
      if (observer) {
        std::lock_guard lock(observer_mutex);
        observer(outcome, full);
      }
      outcomes[idx] = std::move(outcome);
    }
  };

  unsigned threads = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(keys.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  return outcomes;
}

std::vector<SweepRow> summarize(const SweepOptions& options, const std::vector<RunOutcome>& runs) {
  std::vector<SweepRow> rows;
  for (const Variant method : options.methods) {
    for (const Index r : options.ranks) {
      SweepRow row;
      row.method = std::string(to_string(method));
      row.m = options.m;
      row.n = options.n;
      row.sr = options.sr;
      row.rank = r;
      double err_sum = 0.0;
      double time_sum = 0.0;
      for (const auto& run : runs) {
        if (run.key.method != method || run.key.rank != r) continue;
        ++row.trials;
        row.successes += run.report.success ? 1 : 0;
        err_sum += run.report.rel_err;
        time_sum += run.report.seconds;
      }
      if (row.trials > 0) {
        row.mean_rel_err = err_sum / row.trials;
        row.mean_seconds = time_sum / row.trials;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<SweepRow> recovery_sweep(const SweepOptions& options, const RunObserver& observer) {
  return summarize(options, recovery_runs(options, observer));
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "method,m,n,sr,rank,trials,successes,mean_rel_err,mean_seconds\n";
  const auto old = out.precision(10);
  for (const auto& r : rows) {
    out << r.method << ',' << r.m << ',' << r.n << ',' << r.sr << ',' << r.rank << ','
        << r.trials << ',' << r.successes << ',';
    if (std::isinf(r.mean_rel_err)) {
      out << "inf";
    } else {
      out << r.mean_rel_err;
    }
    out << ',' << r.mean_seconds << '\n';
  }
  out.precision(old);
}

}  // namespace irsvm::harness

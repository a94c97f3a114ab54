#include "irsvm/trace.hpp"

#include <nlohmann/json.hpp>

#include <iomanip>
#include <ostream>

namespace irsvm {

void write_trace_csv_header(std::ostream& os) {
  os << "stage,method,lambda,k,objective,penalty,surrogate,window_max,step_size,inner,"
        "residual,rank,step_norm_sq,elapsed\n";
}

void write_trace_csv(std::ostream& os, const SolveTrace& trace, int stage) {
  const auto old_precision = os.precision(17);
  for (const auto& r : trace.records) {
    os << stage << ',' << trace.method << ',' << trace.lambda << ',' << r.k << ','
       << r.objective << ',' << r.penalty << ',' << r.surrogate << ',' << r.window_max << ','
       << r.step_size << ',' << r.inner << ',' << r.residual << ',' << r.rank << ','
       << r.step_norm_sq << ',' << r.elapsed << '\n';
  }
  os.precision(old_precision);
}

void write_trace_json_lines(std::ostream& os, const SolveTrace& trace, int stage,
                            long& global_k) {
  for (const auto& r : trace.records) {
    nlohmann::json line = {
        {"k", global_k++},        {"stage", stage},
        {"iter", r.k},            {"method", trace.method},
        {"lambda", trace.lambda}, {"objective", r.objective},
        {"surrogate", r.surrogate}, {"step_size", r.step_size},
        {"inner", r.inner},       {"residual", r.residual},
        {"rank", r.rank},         {"elapsed", r.elapsed},
    };
    os << line.dump() << '\n';
  }
}

}  // namespace irsvm

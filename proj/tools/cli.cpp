#include "cli.hpp"

#include "irsvm/irsvm.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace irsvm::cli {

namespace {

using harness::ContinuationSettings;

struct SolverFlags {
  SolverConfig config;
  ContinuationSettings continuation;
  bool no_continuation = false;
  std::string method = "irsvm1";
  std::string json_trace;
};

struct InstanceFlags {
  Index m = 100;
  Index n = 100;
  Index rank = 5;
  double sr = 0.5;
  std::uint64_t seed = 0;
};

void add_solver_flags(CLI::App& app, SolverFlags& f) {
  auto& c = f.config;
  app.add_option("--p", c.p, "Schatten exponent in (0, 1)")->capture_default_str();
  app.add_option("--lambda", f.continuation.lambda_target, "Target regularization weight")
      ->capture_default_str();
  app.add_option("--lambda0", f.continuation.lambda0, "First continuation stage")
      ->capture_default_str();
  app.add_option("--decay", f.continuation.decay, "Continuation decay factor")
      ->capture_default_str();
  app.add_option("--lambda-floor", f.continuation.floor, "Smallest continuation stage")
      ->capture_default_str();
  app.add_flag("--no-continuation", f.no_continuation, "Solve directly at --lambda");
  app.add_option("--l-min", c.L_min)->capture_default_str();
  app.add_option("--l-max", c.L_max)->capture_default_str();
  app.add_option("--l-init", c.L_init, "Trial step of the first iteration")->capture_default_str();
  app.add_option("--tau", c.tau, "Backtracking factor")->capture_default_str();
  app.add_option("--c", c.c, "Sufficient decrease constant")->capture_default_str();
  app.add_option("--window", c.N, "Nonmonotone memory N (window holds N+1 values)")
      ->capture_default_str();
  app.add_option("--eps-bar", c.eps_bar, "Termination tolerance")->capture_default_str();
  app.add_option("--max-outer", c.max_outer)->capture_default_str();
  app.add_option("--max-inner", c.max_inner)->capture_default_str();
  app.add_option("--eps-tol", c.eps_tol, "Bisection tolerance for the second method's eps")
      ->capture_default_str();
  app.add_option("--json-trace", f.json_trace, "Write per-iteration JSON lines ('-' for stdout)");
}

void add_instance_flags(CLI::App& app, InstanceFlags& f) {
  app.add_option("--m", f.m, "Rows")->capture_default_str();
  app.add_option("--n", f.n, "Columns")->capture_default_str();
  app.add_option("--rank", f.rank, "Rank of the ground truth")->capture_default_str();
  app.add_option("--sr", f.sr, "Sampling ratio in (0, 1]")->capture_default_str();
  app.add_option("--seed", f.seed, "Instance seed")->capture_default_str();
}

ContinuationSettings continuation_of(const SolverFlags& f) {
  ContinuationSettings s = f.continuation;
  s.enabled = !f.no_continuation;
  if (s.enabled) {
    s.floor = std::min(s.floor, s.lambda_target);
    s.lambda0 = std::max(s.lambda0, s.lambda_target);
  }
  return s;
}

SolverConfig config_of(const SolverFlags& f, Variant v) {
  SolverConfig c = f.config;
  c.variant = v;
  c.lambda = f.continuation.lambda_target;
  c.validate();
  return c;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit_json_trace(const std::string& target, const ContinuationResult& result,
                     std::ostream& out) {
  if (target.empty()) return;
  std::ofstream file;
  std::ostream* os = &out;
  if (target != "-") {
    file.open(target);
    if (!file) throw IoError("cannot open '" + target + "' for writing");
    os = &file;
  }
  long global_k = 0;
  for (std::size_t s = 0; s < result.stages.size(); ++s) {
    write_trace_json_lines(*os, result.stages[s].trace, static_cast<int>(s), global_k);
  }
}

void write_csv_trace(const std::string& path, const ContinuationResult& result) {
  std::ofstream file(path);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  write_trace_csv_header(file);
  for (std::size_t s = 0; s < result.stages.size(); ++s) {
    write_trace_csv(file, result.stages[s].trace, static_cast<int>(s));
  }
}

void print_report(std::ostream& out, const harness::RunReport& r) {
  out << "method=" << r.method << " rel_err=" << format_double(r.rel_err)
      << " success=" << (r.success ? 1 : 0) << " rank=" << r.rank
      << " iterations=" << r.iterations << " seconds=" << r.seconds
      << " converged=" << (r.converged ? 1 : 0) << '\n';
}

int run_synth(const InstanceFlags& inst, const SolverFlags& flags, Variant v, std::ostream& out) {
  const SolverConfig cfg = config_of(flags, v);
  const harness::InstanceSpec spec{inst.m, inst.n, inst.rank, inst.sr, inst.seed};
  const auto instance = harness::gen_instance(spec);
  ContinuationResult result;
  const auto report = harness::run_method(instance.problem, instance.ground_truth, v, cfg,
                                          continuation_of(flags), &result);
  print_report(out, report);
  emit_json_trace(flags.json_trace, result, out);
  return report.converged ? kExitOk : kExitNotConverged;
}

struct FileFlags {
  std::string input;
  std::optional<Index> rows;
  std::optional<Index> cols;
  std::string output;
  std::string trace;
};

int run_file(const FileFlags& files, const SolverFlags& flags, Variant v, std::ostream& out) {
  const SolverConfig cfg = config_of(flags, v);
  const CompletionProblem problem = harness::load_problem(files.input, files.rows, files.cols);
  const Matrix X0 = problem.projected_observations();
  const ContinuationSettings cont = continuation_of(flags);
  const ContinuationResult result =
      cont.enabled ? continuation_solve(problem, X0, cfg, cont.lambda0, cont.lambda_target,
                                        cont.decay, cont.floor)
                   : continuation_solve(problem, X0, cfg, cont.lambda_target, cont.lambda_target,
                                        cont.decay, cont.lambda_target);
  if (!files.output.empty()) harness::save_matrix(result.X, files.output);
  if (!files.trace.empty()) write_csv_trace(files.trace, result);
  const double fit = problem.value(result.X);
  out << "method=" << to_string(v) << " rows=" << problem.rows() << " cols=" << problem.cols()
      << " observed=" << problem.num_observed() << " fit=" << format_double(fit)
      << " rank=" << numerical_rank(singular_values(result.X))
      << " iterations=" << result.total_iterations()
      << " converged=" << (result.converged() ? 1 : 0) << '\n';
  if (files.output.empty()) harness::write_matrix_csv(out, result.X);
  emit_json_trace(flags.json_trace, result, out);
  return result.converged() ? kExitOk : kExitNotConverged;
}

std::vector<Index> parse_ranks(const std::string& spec) {
  std::vector<Index> ranks;
  std::vector<long> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stol(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw DomainError("--ranks: '" + spec + "' is not start:step:end or a single rank");
    }
  }
  if (parts.size() == 1) parts = {parts[0], 1, parts[0]};
  if (parts.size() != 3 || parts[0] < 1 || parts[1] < 1 || parts[2] < parts[0]) {
    throw DomainError("--ranks: '" + spec + "' is not start:step:end with 1 <= start <= end");
  }
  for (long r = parts[0]; r <= parts[2]; r += parts[1]) ranks.push_back(r);
  return ranks;
}

std::vector<Variant> parse_methods(const std::string& list) {
  std::vector<Variant> out;
  std::stringstream ss(list);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(parse_variant(tok));
  }
  if (out.empty()) throw DomainError("--methods: no method given");
  return out;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Schatten-p matrix completion by iteratively reweighted singular value methods"};
  app.require_subcommand(1);

  SolverFlags synth_flags;
  InstanceFlags synth_inst;
  std::string synth_method = "irsvm1";
  auto* synth = app.add_subcommand("synth", "Generate a random instance and solve it");
  add_instance_flags(*synth, synth_inst);
  add_solver_flags(*synth, synth_flags);
  synth->add_option("--method", synth_method, "irsvm1, irsvm2 or nuclear")->capture_default_str();

  SolverFlags sweep_flags;
  InstanceFlags sweep_inst;
  std::string ranks_spec = "2:2:20";
  std::string methods_list = "irsvm1,irsvm2";
  std::string sweep_out;
  int trials = 5;
  unsigned threads = 1;
  auto* sweep = app.add_subcommand("sweep", "Recovery sweep over ranks; writes CSV");
  sweep->add_option("--m", sweep_inst.m)->capture_default_str();
  sweep->add_option("--n", sweep_inst.n)->capture_default_str();
  sweep->add_option("--sr", sweep_inst.sr)->capture_default_str();
  sweep->add_option("--seed", sweep_inst.seed, "Base seed")->capture_default_str();
  sweep->add_option("--ranks", ranks_spec, "start:step:end")->capture_default_str();
  sweep->add_option("--trials", trials)->capture_default_str();
  sweep->add_option("--methods", methods_list, "Comma-separated")->capture_default_str();
  sweep->add_option("--out", sweep_out, "CSV path (default stdout)");
  sweep->add_option("--threads", threads, "Worker threads, 0 for all cores")
      ->capture_default_str();
  add_solver_flags(*sweep, sweep_flags);

  SolverFlags solve_flags;
  FileFlags solve_files;
  std::string solve_method = "irsvm1";
  auto* solve_cmd = app.add_subcommand("solve", "Complete a matrix given as an i j value file");
  solve_cmd->add_option("--input", solve_files.input, "Triplet file")->required();
  solve_cmd->add_option("--rows", solve_files.rows, "Rows (default: max index + 1)");
  solve_cmd->add_option("--cols", solve_files.cols, "Columns (default: max index + 1)");
  solve_cmd->add_option("--output", solve_files.output, "CSV for the recovered matrix");
  solve_cmd->add_option("--trace", solve_files.trace, "CSV for the per-iteration trace");
  solve_cmd->add_option("--method", solve_method, "irsvm1, irsvm2 or nuclear")
      ->capture_default_str();
  add_solver_flags(*solve_cmd, solve_flags);

  SolverFlags base_flags;
  InstanceFlags base_inst;
  FileFlags base_files;
  auto* baseline =
      app.add_subcommand("baseline", "Nuclear-norm proximal gradient on a file or random instance");
  add_instance_flags(*baseline, base_inst);
  baseline->add_option("--input", base_files.input, "Triplet file (default: random instance)");
  baseline->add_option("--rows", base_files.rows);
  baseline->add_option("--cols", base_files.cols);
  baseline->add_option("--output", base_files.output);
  baseline->add_option("--trace", base_files.trace);
  add_solver_flags(*baseline, base_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "irsvm: " << e.what() << '\n';
    return kExitBadInput;
  }

  try {
    if (*synth) return run_synth(synth_inst, synth_flags, parse_variant(synth_method), out);
    if (*solve_cmd) return run_file(solve_files, solve_flags, parse_variant(solve_method), out);
    if (*baseline) {
      if (!base_files.input.empty()) return run_file(base_files, base_flags, Variant::Nuclear, out);
      return run_synth(base_inst, base_flags, Variant::Nuclear, out);
    }
    if (*sweep) {
      harness::SweepOptions opt;
      opt.m = sweep_inst.m;
      opt.n = sweep_inst.n;
      opt.sr = sweep_inst.sr;
      opt.ranks = parse_ranks(ranks_spec);
      opt.trials = trials;
      if (trials < 1) throw DomainError("--trials must be at least 1");
      opt.methods = parse_methods(methods_list);
      opt.config = config_of(sweep_flags, opt.methods.front());
      opt.continuation = continuation_of(sweep_flags);
      opt.base_seed = sweep_inst.seed;
      opt.threads = threads;
      const auto rows = harness::recovery_sweep(opt);
      if (sweep_out.empty()) {
        harness::write_sweep_csv(out, rows);
      } else {
        std::ofstream file(sweep_out);
        if (!file) throw IoError("cannot open '" + sweep_out + "' for writing");
        harness::write_sweep_csv(file, rows);
      }
      return kExitOk;
    }
  } catch (const ParseError& e) {
    err << "irsvm: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const IoError& e) {
    err << "irsvm: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const DomainError& e) {
    err << "irsvm: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const ShapeMismatch& e) {
    err << "irsvm: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const Error& e) {
    err << "irsvm: solver failure: " << e.what() << '\n';
    return kExitNotConverged;
  }
  return kExitBadInput;
}

int cli_main(int argc, const char* const* argv) { return cli_main(argc, argv, std::cout, std::cerr); }

}  // namespace irsvm::cli

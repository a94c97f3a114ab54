#include "irsvm/solver.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

namespace irsvm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Last N+1 accepted merit values.
class MeritWindow {
 public:
  explicit MeritWindow(int N) : capacity_(static_cast<std::size_t>(N) + 1) {}

  void push(double v) {
    values_.push_back(v);
    if (values_.size() > capacity_) values_.erase(values_.begin());
  }
  double max() const { return *std::max_element(values_.begin(), values_.end()); }
  std::span<const double> view() const { return values_; }

 private:
  std::size_t capacity_;
  std::vector<double> values_;
};

bool is_descending(const Vector& x) {
  for (Index i = 1; i < x.size(); ++i) {
    if (x[i] > x[i - 1]) return false;
  }
  return true;
}

void check_start(const SmoothObjective& obj, const Matrix& X0) {
  if (X0.rows() != obj.rows() || X0.cols() != obj.cols()) {
    throw ShapeMismatch("solve: X0 shape does not match the objective");
  }
  if (!X0.allFinite()) throw DomainError("solve: X0 has non-finite entries");
}

SolveResult reweighted_solve(const SmoothObjective& obj, const Matrix& X0,
                             const SolverConfig& cfg) {
  const auto start = Clock::now();
  const bool first = cfg.variant == Variant::IRSVM1;
  const double lambda = cfg.lambda;
  const double p = cfg.p;
  const double L_f = obj.lipschitz_bound();
  const Index l = obj.min_dim();

  IterateState st{X0, obj.gradient(X0), singular_values(X0)};
  double f_cur = obj.value(X0);
  const double F0 = f_cur + schatten_term_from_sigma(st.sigma, p, lambda);

  const EpsilonSchedule schedule = EpsilonSchedule::ones(l);
  SmoothingParams smoothing;

  SolveResult result;
  SolveTrace& trace = result.trace;
  trace.method = std::string(to_string(cfg.variant));
  trace.lambda = lambda;
  trace.p = p;
  trace.lipschitz = L_f;
  trace.f_lower = obj.lower_bound();
  trace.inner_bound = inner_iteration_bound(L_f, cfg.c, cfg.L_min, cfg.tau);

  double merit_cur = 0.0;
  if (first) {
    merit_cur = f_cur + lambda * smoothed_power_sum(st.sigma, schedule.at(0), p);
    trace.lower_bound_level = merit_cur;
  } else {
    const double eps = epsilon_supremum(F0, lambda, p, L_f, obj.lower_bound(), l, cfg.eps_tol);
    smoothing = make_smoothing_params(eps, p, lambda, l);
    merit_cur = f_cur + lambda * capped_power_sum(st.sigma, smoothing, p);
    trace.eps = eps;
    trace.lower_bound_level = F0 + eps;
  }
  trace.merit_bound = merit_cur;

  MeritWindow window(cfg.N);
  window.push(merit_cur);

  Matrix X_prev;
  Matrix G_prev;
  for (long k = 0; k < cfg.max_outer; ++k) {
    const Vector weights =
        first ? weights_alg1(st.sigma, schedule.at(k), p) : weights_alg2(st.sigma, smoothing);
    const Vector eps_next = first ? schedule.at(k + 1) : Vector();

    double L = k == 0 ? cfg.L_init : bb_init(st.X - X_prev, st.grad - G_prev, cfg.L_min, cfg.L_max);
    const double window_max = window.max();

    ProxResult trial;
    Vector sigma_next;
    double f_next = 0.0;
    double merit_next = 0.0;
    double step_sq = 0.0;
    int inner = 0;
    bool accepted = false;
    while (!accepted) {
      ++inner;
      trial = inner_step(st, L, weights, lambda, p);
      sigma_next = sorted_descending(trial.x);
      f_next = obj.value(trial.X);
      merit_next = f_next + lambda * (first ? smoothed_power_sum(sigma_next, eps_next, p)
                                            : capped_power_sum(sigma_next, smoothing, p));
      if (!std::isfinite(merit_next)) {
        throw NonFiniteObjective("solve: non-finite merit value at iteration " +
                                 std::to_string(k));
      }
      step_sq = (trial.X - st.X).squaredNorm();
      accepted = accept_test(merit_next, window.view(), cfg.c, step_sq);
      if (!accepted) {
        if (inner >= cfg.max_inner) break;
        L *= cfg.tau;
      }
    }

    IterationRecord rec;
    rec.k = k;
    rec.penalty = schatten_term_from_sigma(st.sigma, p, lambda);
    rec.objective = f_cur + rec.penalty;
    rec.surrogate = merit_cur;
    rec.window_max = window_max;
    rec.step_size = L;
    rec.inner = inner;
    rec.residual = termination_residual(st.grad, trial.z_factors, st.sigma, lambda, p);
    rec.rank = static_cast<long>(numerical_rank(st.sigma));
    rec.step_norm_sq = step_sq;
    rec.prox_sorted = is_descending(trial.x);
    rec.elapsed = seconds_since(start);
    trace.records.push_back(rec);

    if (rec.residual <= cfg.eps_bar) {
      result.status = SolveStatus::Converged;
      result.X = std::move(st.X);
      return result;
    }
    if (!accepted) {
      result.status = SolveStatus::Stalled;
      result.X = std::move(st.X);
      return result;
    }

    X_prev = std::move(st.X);
    G_prev = std::move(st.grad);
    st.X = std::move(trial.X);
    st.grad = obj.gradient(st.X);
    st.sigma = std::move(sigma_next);
    f_cur = f_next;
    merit_cur = merit_next;
    window.push(merit_next);
  }
  result.status = SolveStatus::MaxIterations;
  result.X = std::move(st.X);
  return result;
}

}  // namespace

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::IRSVM1:
      return "irsvm1";
    case Variant::IRSVM2:
      return "irsvm2";
    case Variant::Nuclear:
      return "nuclear";
  }
  return "unknown";
}

Variant parse_variant(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "irsvm1" || lower == "irsvm-1") return Variant::IRSVM1;
  if (lower == "irsvm2" || lower == "irsvm-2") return Variant::IRSVM2;
  if (lower == "nuclear") return Variant::Nuclear;
  throw DomainError("unknown method '" + std::string(name) + "'");
}

void SolverConfig::validate() const {
  if (!(L_min > 0.0) || !(L_max > L_min)) throw DomainError("need 0 < L_min < L_max");
  if (!(L_init >= L_min && L_init <= L_max)) throw DomainError("need L_init in [L_min, L_max]");
  if (!(tau > 1.0)) throw DomainError("need tau > 1");
  if (!(c > 0.0)) throw DomainError("need c > 0");
  if (N < 0) throw DomainError("need N >= 0");
  check_exponent(p);
  check_lambda(lambda);
  if (!(eps_bar > 0.0)) throw DomainError("need eps_bar > 0");
  if (max_outer <= 0) throw DomainError("need max_outer > 0");
  if (max_inner <= 0) throw DomainError("need max_inner > 0");
  if (!(eps_tol > 0.0)) throw DomainError("need eps_tol > 0");
}

long ContinuationResult::total_iterations() const {
  long total = 0;
  for (const auto& s : stages) total += static_cast<long>(s.trace.records.size());
  return total;
}

double bb_init(const Matrix& delta_x, const Matrix& delta_g, double L_min, double L_max) {
  require_same_shape(delta_x, delta_g, "bb_init");
  const double dx2 = delta_x.squaredNorm();
  if (!(dx2 > 0.0)) return L_max;
  const double ratio = (delta_x.array() * delta_g.array()).sum() / dx2;
  if (std::isnan(ratio)) return L_max;
  return std::max(L_min, std::min(L_max, ratio));
}

ProxResult inner_step(const IterateState& state, double L, const Vector& weights,
                      double lambda, double p) {
  return weighted_sv_prox(state.X, state.grad, L, (lambda * p) * weights);
}

bool accept_test(double value, std::span<const double> history, double c,
                 double step_norm_sq) {
  if (history.empty()) throw DomainError("accept_test: empty history");
  const double ref = *std::max_element(history.begin(), history.end());
  return value <= ref - 0.5 * c * step_norm_sq;
}

double termination_residual(const Matrix& grad, const SvdFactors& z_factors,
                            const Vector& sigma_xk, double lambda, double p) {
  const Index l = sigma_xk.size();
  if (z_factors.U.cols() != l || z_factors.V.cols() != l) {
    throw ShapeMismatch("termination_residual: singular vectors and sigma differ in length");
  }
  if (grad.rows() != z_factors.U.rows() || grad.cols() != z_factors.V.rows()) {
    throw ShapeMismatch("termination_residual: gradient shape does not match factors");
  }
  // Entries paired with sigma_i = 0 vanish, so only the leading support block matters.
  Index r = 0;
  while (r < l && sigma_xk[r] > 0.0) ++r;
  if (r == 0) return 0.0;

  const Vector root = sigma_xk.head(r).cwiseSqrt();
  Matrix block = root.asDiagonal() *
                 (z_factors.U.leftCols(r).transpose() * grad * z_factors.V.leftCols(r)) *
                 root.asDiagonal();
  block.diagonal().array() += lambda * p * sigma_xk.head(r).array().pow(p);
  return block.cwiseAbs().maxCoeff();
}

int inner_iteration_bound(double L_f, double c, double L_min, double tau) {
  const double raw = (std::log(L_f + c) - std::log(L_min)) / std::log(tau) + 1.0;
  return std::max(static_cast<int>(std::floor(raw)), 1);
}

double singular_value_lower_bound(double lambda, double p, double L_f, double level,
                                  double f_lower) {
  const double gap = level - f_lower;
  if (!(gap > 0.0)) return std::numeric_limits<double>::infinity();
  return std::pow(lambda * p / std::sqrt(2.0 * L_f * gap), 1.0 / (1.0 - p));
}

SolveResult solve(const SmoothObjective& obj, const Matrix& X0, const SolverConfig& config) {
  config.validate();
  check_start(obj, X0);
  if (config.variant == Variant::Nuclear) return nuclear_pg_solve(obj, X0, config);
  return reweighted_solve(obj, X0, config);
}

SolveResult nuclear_pg_solve(const SmoothObjective& obj, const Matrix& X0,
                             const SolverConfig& config) {
  config.validate();
  check_start(obj, X0);
  const auto start = Clock::now();
  const double lambda = config.lambda;
  const Index l = obj.min_dim();
  const Vector weights = Vector::Constant(l, lambda);

  IterateState st{X0, obj.gradient(X0), singular_values(X0)};
  double f_cur = obj.value(X0);
  double merit_cur = f_cur + lambda * st.sigma.sum();

  SolveResult result;
  SolveTrace& trace = result.trace;
  trace.method = "nuclear";
  trace.lambda = lambda;
  trace.p = 1.0;
  trace.lipschitz = obj.lipschitz_bound();
  trace.f_lower = obj.lower_bound();
  trace.merit_bound = merit_cur;
  trace.lower_bound_level = merit_cur;
  trace.inner_bound = inner_iteration_bound(trace.lipschitz, config.c, config.L_min, config.tau);

  MeritWindow window(config.N);
  window.push(merit_cur);

  Matrix X_prev;
  Matrix G_prev;
  for (long k = 0; k < config.max_outer; ++k) {
    double L = k == 0 ? config.L_init
                      : bb_init(st.X - X_prev, st.grad - G_prev, config.L_min, config.L_max);
    const double window_max = window.max();

    ProxResult trial;
    Vector sigma_next;
    double f_next = 0.0;
    double merit_next = 0.0;
    double step_sq = 0.0;
    int inner = 0;
    bool accepted = false;
    while (!accepted) {
      ++inner;
      trial = weighted_sv_prox(st.X, st.grad, L, weights);
      sigma_next = sorted_descending(trial.x);
      f_next = obj.value(trial.X);
      merit_next = f_next + lambda * sigma_next.sum();
      if (!std::isfinite(merit_next)) {
        throw NonFiniteObjective("nuclear_pg_solve: non-finite objective at iteration " +
                                 std::to_string(k));
      }
      step_sq = (trial.X - st.X).squaredNorm();
      accepted = accept_test(merit_next, window.view(), config.c, step_sq);
      if (!accepted) {
        if (inner >= config.max_inner) break;
        L *= config.tau;
      }
    }

    IterationRecord rec;
    rec.k = k;
    rec.penalty = lambda * st.sigma.sum();
    rec.objective = f_cur + rec.penalty;
    rec.surrogate = merit_cur;
    rec.window_max = window_max;
    rec.step_size = L;
    rec.inner = inner;
    rec.residual = std::sqrt(step_sq) / std::max(1.0, st.X.norm());
    rec.rank = static_cast<long>(numerical_rank(st.sigma));
    rec.step_norm_sq = step_sq;
    rec.prox_sorted = is_descending(trial.x);
    rec.elapsed = seconds_since(start);
    trace.records.push_back(rec);

    if (!accepted) {
      result.status = SolveStatus::Stalled;
      result.X = std::move(st.X);
      return result;
    }

    X_prev = std::move(st.X);
    G_prev = std::move(st.grad);
    st.X = std::move(trial.X);
    st.grad = obj.gradient(st.X);
    st.sigma = std::move(sigma_next);
    f_cur = f_next;
    merit_cur = merit_next;
    window.push(merit_next);

    if (rec.residual <= config.eps_bar) {
      result.status = SolveStatus::Converged;
      result.X = std::move(st.X);
      return result;
    }
  }
  result.status = SolveStatus::MaxIterations;
  result.X = std::move(st.X);
  return result;
}

std::vector<double> continuation_schedule(double lambda0, double lambda_target, double decay,
                                          double floor) {
  if (!(floor > 0.0)) throw DomainError("continuation: floor must be positive");
  if (!(lambda_target >= floor)) throw DomainError("continuation: need lambda_target >= floor");
  if (!(lambda0 >= lambda_target)) throw DomainError("continuation: need lambda0 >= lambda_target");
  if (!(decay > 0.0 && decay < 1.0)) throw DomainError("continuation: decay must lie in (0, 1)");

  std::vector<double> out{lambda0};
  double lambda = lambda0;
  while (lambda > lambda_target) {
    double next = std::max(decay * lambda, floor);
    // Snap values within rounding of the target onto it.
    if (next <= lambda_target * (1.0 + 1e-9)) next = lambda_target;
    lambda = next;
    out.push_back(lambda);
  }
  return out;
}

ContinuationResult continuation_solve(const SmoothObjective& obj, const Matrix& X0,
                                      const SolverConfig& config, double lambda0,
                                      double lambda_target, double decay, double floor) {
  const std::vector<double> schedule = continuation_schedule(lambda0, lambda_target, decay, floor);
  ContinuationResult out;
  out.X = X0;
  for (const double lambda : schedule) {
    SolverConfig stage = config;
    stage.lambda = lambda;
    SolveResult res = solve(obj, out.X, stage);
    out.X = res.X;
    out.stages.push_back(std::move(res));
  }
  return out;
}

}  // namespace irsvm

#pragma once

#include "minmax/core.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace minmax {

/// How many contraction iterations CEG spends per outer step.
struct KRule {
  enum class Kind { Fixed, AutoBounded, AutoUnbounded };
  Kind kind = Kind::AutoBounded;
  int fixed_k = 0;

  static KRule fixed(int k) { return {Kind::Fixed, k}; }
  static KRule auto_bounded() { return {Kind::AutoBounded, 0}; }
  static KRule auto_unbounded() { return {Kind::AutoUnbounded, 0}; }
  /// AutoBounded on bounded sets, AutoUnbounded otherwise.
  static KRule automatic(const FeasibleSet& set);
};

std::string to_string(const KRule& rule);

struct SolverConfig {
  std::optional<double> gamma;  ///< empty: 1 / (2L)
  int T = 100;
  KRule k_rule = KRule::auto_bounded();
  /// Relative early-exit threshold for the CEG inner loop: stop once
  /// ||w_m - w_{m-1}|| <= inner_early_exit * (1 + ||z_t||). Zero disables.
  double inner_early_exit = 1e-14;
  int record_every = 1;
  std::optional<Vector> initial_point;  ///< empty: problem default
  std::optional<double> pp_tol;         ///< pp_run oracle tolerance
};

/// Step size the run will use; validates gamma * L < 1.
double resolve_gamma(const SaddleProblem& problem, const SolverConfig& config);

struct TraceRecord {
  int t = 0;
  Vector z;
  Vector running_average;  ///< mean of z_1..z_t (z_0 at t = 0)
};

/// Everything a run produced. Per-step scalars are kept for every t; iterates
/// only every `record_every` steps (plus t = 0 and t = T).
class RunTrace {
 public:
  enum class Status { Completed, Aborted };

  RunTrace() = default;
  RunTrace(std::string solver_name, SolverConfig config, Split split);

  void start(const Vector& z0, std::int64_t grad_calls);
  void push(const Vector& z_next, int inner_iters, std::int64_t grad_calls);
  /// Adds <F(z), z> and F(z) for an iterate z = z_t with t >= 1.
  void add_regret_term(const Vector& z, const Vector& Fz);
  void abort(std::string message);

  const std::string& solver_name() const { return solver_name_; }
  const SolverConfig& config() const { return config_; }
  Split split() const { return split_; }
  Status status() const { return status_; }
  const std::string& error() const { return error_; }

  /// Number of completed outer steps.
  int steps() const { return static_cast<int>(inner_iters_.size()) - 1; }
  const std::vector<TraceRecord>& records() const { return records_; }
  /// Indexed by t = 0..steps(); entry 0 is zero.
  const std::vector<int>& inner_iters() const { return inner_iters_; }
  const std::vector<std::int64_t>& grad_calls() const { return grad_calls_; }
  const std::vector<double>& step_norms() const { return step_norms_; }

  const Vector& initial() const { return initial_; }
  const Vector& last() const { return last_; }
  const Vector& iterate_sum() const { return iterate_sum_; }
  /// Every iterate z_0..z_T; only when record_every == 1.
  std::vector<Vector> all_iterates() const;

  double regret_inner_sum() const { return regret_inner_sum_; }
  const Vector& regret_operator_sum() const { return regret_operator_sum_; }
  int regret_terms() const { return regret_terms_; }

  double gamma = 0.0;
  int k = 0;  ///< inner iterations per step (CEG), 0 otherwise
  std::vector<std::string> warnings;

 private:
  bool should_record(int t) const;

  std::string solver_name_;
  SolverConfig config_;
  Split split_;
  Status status_ = Status::Completed;
  std::string error_;
  std::vector<TraceRecord> records_;
  std::vector<int> inner_iters_;
  std::vector<std::int64_t> grad_calls_;
  std::vector<double> step_norms_;
  Vector initial_;
  Vector last_;
  Vector iterate_sum_;
  double regret_inner_sum_ = 0.0;
  Vector regret_operator_sum_;
  int regret_terms_ = 0;
};

/// [z - gamma * Fw]_D, the update shared by every method here.
Vector proximal_step(const FeasibleSet& set, const Vector& z, double gamma,
                     const Vector& Fw);

struct InnerResult {
  Vector w;
  int iters_used = 0;
  Vector first_operator;  ///< F(w_0) = F(z)
};

/// k iterations of w_m = [z - gamma F(w_{m-1})]_D from w_0 = z, stopping
/// early once ||w_m - w_{m-1}|| <= delta_inner.
InnerResult ceg_inner(Evaluator& evaluate, const Vector& z, double gamma, int k,
                      double delta_inner);
InnerResult ceg_inner(const SaddleProblem& problem, const Vector& z,
                      double gamma, int k, double delta_inner);

struct ProxResult {
  Vector point;
  int iters_used = 0;
  Vector first_operator;
};

double default_pp_tol(const Vector& z);

/// Solves p = [z - gamma F(p)]_D to ||w_m - w_{m-1}|| <= tol / 2.
ProxResult pp_oracle_counted(Evaluator& evaluate, const Vector& z,
                             double gamma, double tol);
Vector pp_oracle(const SaddleProblem& problem, const Vector& z, double gamma,
                 std::optional<double> tol = std::nullopt);

int select_k_bounded(double L, double F0_norm, double diam, std::int64_t T);
int select_k_unbounded(double L, double F0_norm, std::int64_t T);

RunTrace ceg_run(const SaddleProblem& problem, const SolverConfig& config);
RunTrace eg_run(const SaddleProblem& problem, const SolverConfig& config);
RunTrace ogda_run(const SaddleProblem& problem, const SolverConfig& config);
RunTrace pp_run(const SaddleProblem& problem, const SolverConfig& config);

/// Dispatch by name: "ceg", "eg", "ogda" or "pp".
RunTrace run_solver(const std::string& solver, const SaddleProblem& problem,
                    const SolverConfig& config);

}  // namespace minmax

#include "minmax/solvers.hpp"

#include <cmath>
#include <sstream>

namespace minmax {

KRule KRule::automatic(const FeasibleSet& set) {
  return set.bounded() ? auto_bounded() : auto_unbounded();
}

std::string to_string(const KRule& rule) {
  switch (rule.kind) {
    case KRule::Kind::Fixed:
      return "fixed(" + std::to_string(rule.fixed_k) + ")";
    case KRule::Kind::AutoBounded:
      return "auto_bounded";
    case KRule::Kind::AutoUnbounded:
      return "auto_unbounded";
  }
  return "unknown";
}

double resolve_gamma(const SaddleProblem& problem, const SolverConfig& config) {
  const double L = problem.lipschitz();
  double gamma = 0.0;
  if (config.gamma) {
    gamma = *config.gamma;
    if (!(gamma > 0.0) || !std::isfinite(gamma))
      throw InputError("gamma must be positive and finite");
  } else {
    if (!(L > 0.0))
      throw InputError("gamma = auto needs a positive smoothness constant");
    gamma = 1.0 / (2.0 * L);
  }
  if (!(gamma * L < 1.0)) {
    std::ostringstream os;
    os << "gamma * L = " << gamma * L << " must be < 1 for a contraction";
    throw InputError(os.str());
  }
  return gamma;
}

RunTrace::RunTrace(std::string solver_name, SolverConfig config, Split split)
    : solver_name_(std::move(solver_name)),
      config_(std::move(config)),
      split_(split) {
  if (config_.T < 1) throw InputError("T must be >= 1");
  if (config_.record_every < 1) throw InputError("record_every must be >= 1");
  iterate_sum_ = Vector::Zero(split.dim());
  regret_operator_sum_ = Vector::Zero(split.dim());
}

bool RunTrace::should_record(int t) const {
  return t % config_.record_every == 0 || t == config_.T;
}

void RunTrace::start(const Vector& z0, std::int64_t grad_calls) {
  initial_ = z0;
  last_ = z0;
  inner_iters_ = {0};
  grad_calls_ = {grad_calls};
  step_norms_ = {0.0};
  records_.push_back({0, z0, z0});
}

void RunTrace::push(const Vector& z_next, int inner_iters,
                    std::int64_t grad_calls) {
  const int t = steps() + 1;
  step_norms_.push_back((z_next - last_).norm());
  inner_iters_.push_back(inner_iters);
  grad_calls_.push_back(grad_calls);
  iterate_sum_ += z_next;
  last_ = z_next;
  if (should_record(t))
    records_.push_back({t, z_next, iterate_sum_ / static_cast<double>(t)});
}

void RunTrace::add_regret_term(const Vector& z, const Vector& Fz) {
  regret_inner_sum_ += Fz.dot(z);
  regret_operator_sum_ += Fz;
  ++regret_terms_;
}

void RunTrace::abort(std::string message) {
  status_ = Status::Aborted;
  error_ = std::move(message);
}

std::vector<Vector> RunTrace::all_iterates() const {
  if (config_.record_every != 1)
    throw UnsupportedError("all_iterates needs record_every = 1");
  std::vector<Vector> out;
  out.reserve(records_.size());
  for (const auto& r : records_) out.push_back(r.z);
  return out;
}

Vector proximal_step(const FeasibleSet& set, const Vector& z, double gamma,
                     const Vector& Fw) {
  const Vector moved = z - gamma * Fw;
  return project(set, moved);
}

namespace {

void check_finite_iterate(const Vector& w, int m, const char* where) {
  if (!w.allFinite()) {
    std::ostringstream os;
    os << where << ": non-finite iterate at inner iteration m = " << m;
    throw NumericError(os.str());
  }
}

}  // namespace

InnerResult ceg_inner(Evaluator& evaluate, const Vector& z, double gamma, int k,
                      double delta_inner) {
  if (k < 1) throw InputError("ceg_inner: k must be >= 1");
  const FeasibleSet& set = evaluate.problem().set();
  InnerResult out;
  Vector w = z;
  for (int m = 1; m <= k; ++m) {
    const Vector Fw = evaluate(w);
    if (m == 1) out.first_operator = Fw;
    Vector next = proximal_step(set, z, gamma, Fw);
    check_finite_iterate(next, m, "ceg_inner");
    const double moved = (next - w).norm();
    w = std::move(next);
    out.iters_used = m;
    if (delta_inner > 0.0 && moved <= delta_inner) break;
  }
  out.w = std::move(w);
  return out;
}

InnerResult ceg_inner(const SaddleProblem& problem, const Vector& z,
                      double gamma, int k, double delta_inner) {
  Evaluator evaluate(problem);
  return ceg_inner(evaluate, z, gamma, k, delta_inner);
}

double default_pp_tol(const Vector& z) { return 1e-13 * (1.0 + z.norm()); }

ProxResult pp_oracle_counted(Evaluator& evaluate, const Vector& z,
                             double gamma, double tol) {
  constexpr int kCap = 200;
  if (!(tol > 0.0)) throw InputError("pp_oracle: tol must be positive");
  const FeasibleSet& set = evaluate.problem().set();
  ProxResult out;
  Vector w = z;
  for (int m = 1; m <= kCap; ++m) {
    const Vector Fw = evaluate(w);
    if (m == 1) out.first_operator = Fw;
    Vector next = proximal_step(set, z, gamma, Fw);
    check_finite_iterate(next, m, "pp_oracle");
    const double moved = (next - w).norm();
    w = std::move(next);
    if (moved <= 0.5 * tol) {
      out.point = std::move(w);
      out.iters_used = m;
      return out;
    }
  }
  std::ostringstream os;
  os << "pp_oracle: no fixed point to tol " << tol << " within " << kCap
     << " iterations";
  throw NumericError(os.str());
}

Vector pp_oracle(const SaddleProblem& problem, const Vector& z, double gamma,
                 std::optional<double> tol) {
  if (!(gamma * problem.lipschitz() < 1.0))
    throw InputError("pp_oracle: gamma * L must be < 1");
  Evaluator evaluate(problem);
  return pp_oracle_counted(evaluate, z, gamma, tol ? *tol : default_pp_tol(z))
      .point;
}

int select_k_bounded(double L, double F0_norm, double diam, std::int64_t T) {
  if (!std::isfinite(diam))
    throw InputError(
        "select_k_bounded: unbounded set, use select_k_unbounded instead");
  if (!(diam > 0.0)) throw InputError("select_k_bounded: diameter must be > 0");
  if (T < 1) throw InputError("select_k_bounded: T must be >= 1");
  const double arg = 5.0 * std::max(L, 1.0) * std::max(F0_norm, 1.0) * diam *
                     diam * static_cast<double>(T);
  return std::max(1, static_cast<int>(std::ceil(std::log2(arg))));
}

int select_k_unbounded(double L, double F0_norm, std::int64_t T) {
  if (T < 1) throw InputError("select_k_unbounded: T must be >= 1");
  const double t = static_cast<double>(std::max<std::int64_t>(T, 2));
  const double exponent = 4.0 * std::log2(t) + std::log2(std::max(L, 1.0)) +
                          std::log2(std::max(F0_norm, 1.0));
  return static_cast<int>(std::ceil(exponent)) + 1;
}

namespace {

struct RunSetup {
  RunTrace trace;
  Evaluator evaluate;
  Vector z;
};

RunSetup begin_run(const std::string& name, const SaddleProblem& problem,
                   const SolverConfig& config) {
  RunTrace trace(name, config, problem.split());
  trace.gamma = resolve_gamma(problem, config);
  if (trace.gamma * problem.lipschitz() > 0.5 + 1e-12) {
    std::ostringstream os;
    os << "gamma * L = " << trace.gamma * problem.lipschitz()
       << " exceeds 1/2; contraction is slower than halving";
    trace.warnings.push_back(os.str());
  }
  Vector z0 = config.initial_point ? *config.initial_point
                                   : problem.initial_point();
  if (z0.size() != problem.dim())
    throw InputError("initial point has wrong dimension");
  z0 = project(problem.set(), z0);
  return {std::move(trace), Evaluator(problem), std::move(z0)};
}

// Measurement-only evaluation of F at the last iterate; not counted.
void close_regret(RunTrace& trace, const SaddleProblem& problem) {
  if (trace.steps() >= 1)
    trace.add_regret_term(trace.last(), problem.joint_operator(trace.last()));
}

template <class Body>
RunTrace guarded(RunSetup& setup, const SaddleProblem& problem, Body body) {
  try {
    body();
    close_regret(setup.trace, problem);
  } catch (const NumericError& e) {
    setup.trace.abort(e.what());
  }
  return std::move(setup.trace);
}

}  // namespace

RunTrace ceg_run(const SaddleProblem& problem, const SolverConfig& config) {
  RunSetup s = begin_run("ceg", problem, config);
  RunTrace& trace = s.trace;
  const double L = problem.lipschitz();

  switch (config.k_rule.kind) {
    case KRule::Kind::Fixed:
      if (config.k_rule.fixed_k < 1) throw InputError("fixed k must be >= 1");
      trace.k = config.k_rule.fixed_k;
      break;
    case KRule::Kind::AutoBounded: {
      const double diam = diameter(problem.set());
      if (!std::isfinite(diam))
        throw InputError("k = auto_bounded on an unbounded set");
      const double f0 = s.evaluate(s.z).norm();
      trace.k = select_k_bounded(L, f0, diam, config.T);
      break;
    }
    case KRule::Kind::AutoUnbounded: {
      const double f0 = s.evaluate(s.z).norm();
      trace.k = select_k_unbounded(L, f0, config.T);
      break;
    }
  }
  trace.start(s.z, s.evaluate.calls());

  return guarded(s, problem, [&] {
    Vector z = s.z;
    for (int t = 0; t < config.T; ++t) {
      const double delta = config.inner_early_exit * (1.0 + z.norm());
      InnerResult step = ceg_inner(s.evaluate, z, trace.gamma, trace.k, delta);
      if (t > 0) trace.add_regret_term(z, step.first_operator);
      trace.push(step.w, step.iters_used, s.evaluate.calls());
      z = std::move(step.w);
    }
  });
}

RunTrace eg_run(const SaddleProblem& problem, const SolverConfig& config) {
  RunSetup s = begin_run("eg", problem, config);
  RunTrace& trace = s.trace;
  trace.start(s.z, s.evaluate.calls());
  const FeasibleSet& set = problem.set();

  return guarded(s, problem, [&] {
    Vector z = s.z;
    for (int t = 0; t < config.T; ++t) {
      const Vector Fz = s.evaluate(z);
      if (t > 0) trace.add_regret_term(z, Fz);
      const Vector half = proximal_step(set, z, trace.gamma, Fz);
      check_finite_iterate(half, 1, "eg_run");
      Vector next = proximal_step(set, z, trace.gamma, s.evaluate(half));
      check_finite_iterate(next, 2, "eg_run");
      trace.push(next, 2, s.evaluate.calls());
      z = std::move(next);
    }
  });
}

RunTrace ogda_run(const SaddleProblem& problem, const SolverConfig& config) {
  RunSetup s = begin_run("ogda", problem, config);
  RunTrace& trace = s.trace;
  const FeasibleSet& set = problem.set();
  Vector current = s.evaluate(s.z);
  Vector previous = current;
  trace.start(s.z, s.evaluate.calls());

  try {
    Vector z = s.z;
    for (int t = 0; t < config.T; ++t) {
      const Vector direction = 2.0 * current - previous;
      Vector next = proximal_step(set, z, trace.gamma, direction);
      check_finite_iterate(next, 1, "ogda_run");
      previous = std::move(current);
      current = s.evaluate(next);
      trace.add_regret_term(next, current);
      trace.push(next, 1, s.evaluate.calls());
      z = std::move(next);
    }
  } catch (const NumericError& e) {
    trace.abort(e.what());
  }
  return std::move(trace);
}

RunTrace pp_run(const SaddleProblem& problem, const SolverConfig& config) {
  RunSetup s = begin_run("pp", problem, config);
  RunTrace& trace = s.trace;
  trace.start(s.z, s.evaluate.calls());

  return guarded(s, problem, [&] {
    Vector z = s.z;
    for (int t = 0; t < config.T; ++t) {
      const double tol = config.pp_tol ? *config.pp_tol : default_pp_tol(z);
      ProxResult step;
      try {
        step = pp_oracle_counted(s.evaluate, z, trace.gamma, tol);
      } catch (const NumericError& e) {
        throw NumericError("pp_run at t = " + std::to_string(t) + ": " +
                           e.what());
      }
      if (t > 0) trace.add_regret_term(z, step.first_operator);
      trace.push(step.point, step.iters_used, s.evaluate.calls());
      z = std::move(step.point);
    }
  });
}

RunTrace run_solver(const std::string& solver, const SaddleProblem& problem,
                    const SolverConfig& config) {
  if (solver == "ceg") return ceg_run(problem, config);
  if (solver == "eg") return eg_run(problem, config);
  if (solver == "ogda") return ogda_run(problem, config);
  if (solver == "pp") return pp_run(problem, config);
  throw InputError("unknown solver '" + solver + "'");
}

}  // namespace minmax

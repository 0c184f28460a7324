#include "minmax/harness.hpp"

#include "minmax/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

namespace minmax {

namespace {

constexpr int kRegretComparators = 50;

BoundCheckResult make_check(const std::string& name, const RunTrace& trace,
                            const SaddleProblem& problem) {
  BoundCheckResult r;
  r.bound_name = name;
  r.problem = problem.name();
  r.solver = trace.solver_name();
  return r;
}

BoundCheckResult evaluated(BoundCheckResult r, double lhs, double rhs,
                           double slack) {
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = slack;
  r.skipped = false;
  r.passed = std::isfinite(lhs) && lhs <= rhs * (1.0 + slack);
  return r;
}

BoundCheckResult skipped(BoundCheckResult r, std::string reason) {
  r.skipped = true;
  r.passed = true;
  r.reason = std::move(reason);
  r.lhs = r.rhs = std::numeric_limits<double>::quiet_NaN();
  return r;
}

/// Exact PP points p_{t+1} = PP(z_t) for t = 0..T-1 and their tolerances.
struct ProxPath {
  std::vector<Vector> iterates;  // z_0..z_T
  std::vector<Vector> prox;      // p_1..p_T, prox[t] = PP(z_t)
  std::vector<double> tol;       // oracle tolerance used at z_t
};

ProxPath prox_path(const RunTrace& trace, const SaddleProblem& problem) {
  ProxPath path;
  path.iterates = trace.all_iterates();
  const int T = trace.steps();
  path.prox.reserve(static_cast<std::size_t>(T));
  for (int t = 0; t < T; ++t) {
    const Vector& z = path.iterates[static_cast<std::size_t>(t)];
    const double tol = default_pp_tol(z);
    path.prox.push_back(pp_oracle(problem, z, trace.gamma, tol));
    path.tol.push_back(tol);
  }
  return path;
}

bool uses_auto_k(const RunTrace& trace) {
  return trace.config().k_rule.kind != KRule::Kind::Fixed;
}

bool default_contraction(const RunTrace& trace, const SaddleProblem& problem) {
  return trace.gamma * problem.lipschitz() <= 0.5 * (1.0 + 1e-12);
}

void ceg_checks(const RunTrace& trace, const SaddleProblem& problem,
                std::uint64_t seed, std::vector<BoundCheckResult>& out) {
  const int T = trace.steps();
  const double L = problem.lipschitz();
  const double gamma = trace.gamma;
  const double diam = diameter(problem.set());
  const bool bounded = std::isfinite(diam);
  const bool unconstrained = problem.set().is_unconstrained();
  const auto& saddle = problem.saddle();
  const Vector& z0 = trace.initial();
  const double d0 = saddle ? (z0 - *saddle).norm() : 0.0;
  const bool full_record = trace.config().record_every == 1;
  const bool theory_k = uses_auto_k(trace) && default_contraction(trace, problem);
  const char* theory_k_reason =
      "bound assumes the automatic k rule with gamma * L <= 1/2";

  // Time-average gap on bounded sets.
  {
    auto r = make_check("thm4.1-gap", trace, problem);
    if (!bounded) {
      out.push_back(skipped(r, "set is unbounded"));
    } else if (!theory_k) {
      out.push_back(skipped(r, theory_k_reason));
    } else {
      const double gap = duality_gap(problem, time_average(trace), seed).gap;
      const double rhs = (diam * diam / (2.0 * gamma) + 1.0) / T;
      out.push_back(evaluated(r, gap, rhs, 1e-6));
    }
  }

  // Telescoping regret against seeded random comparators.
  {
    auto r = make_check("lemma4.2-regret", trace, problem);
    if (!bounded) {
      out.push_back(skipped(r, "set is unbounded"));
    } else if (!theory_k) {
      out.push_back(skipped(r, theory_k_reason));
    } else {
      Rng rng(seed ^ 0xc0ffeeULL);
      double worst_excess = -std::numeric_limits<double>::infinity();
      double worst_lhs = 0.0;
      double worst_rhs = 0.0;
      for (int i = 0; i < kRegretComparators; ++i) {
        const Vector z = sample_feasible(problem.set(), rng);
        const double lhs = regret_sum(trace, problem, z);
        const double rhs = (z0 - z).squaredNorm() / (2.0 * gamma) + 1.0;
        if (lhs - rhs > worst_excess) {
          worst_excess = lhs - rhs;
          worst_lhs = lhs;
          worst_rhs = rhs;
        }
      }
      r.reason = "worst of " + std::to_string(kRegretComparators) +
                 " comparators";
      out.push_back(evaluated(r, worst_lhs, worst_rhs + 1e-6, 0.0));
    }
  }

  std::optional<ProxPath> path;
  auto need_path = [&]() -> const ProxPath& {
    if (!path) path = prox_path(trace, problem);
    return *path;
  };

  // Inner-loop accuracy against the exact PP point. The contraction gives
  // ||w_k - p|| <= (gamma L)^k ||z_t - p||; on bounded sets ||z_t - p|| <= |D|.
  {
    auto r = make_check(bounded ? "lemma3.4-contraction" : "lemma3.4-drift",
                        trace, problem);
    if (!full_record) {
      out.push_back(skipped(r, "needs record_every = 1"));
    } else {
      const ProxPath& p = need_path();
      const double factor = std::pow(gamma * L, trace.k);
      const double delta_rel = trace.config().inner_early_exit;
      double worst_ratio = -1.0;
      double worst_lhs = 0.0;
      double worst_rhs = 0.0;
      for (int t = 0; t < T; ++t) {
        const Vector& z = p.iterates[static_cast<std::size_t>(t)];
        const Vector& z_next = p.iterates[static_cast<std::size_t>(t) + 1];
        const Vector& prox = p.prox[static_cast<std::size_t>(t)];
        const double lhs = (z_next - prox).norm();
        const double reach = bounded ? diam : (prox - z).norm();
        const double floor = delta_rel * (1.0 + z.norm()) + p.tol[t];
        const double rhs = factor * reach + floor;
        const double ratio = lhs / rhs;
        if (ratio > worst_ratio) {
          worst_ratio = ratio;
          worst_lhs = lhs;
          worst_rhs = rhs;
        }
      }
      out.push_back(evaluated(r, worst_lhs, worst_rhs, 1e-6));
    }
  }

  // Fixed-point residual of each outer step on bounded sets.
  {
    auto r = make_check("eq5-drift", trace, problem);
    if (!bounded) {
      out.push_back(skipped(r, "set is unbounded"));
    } else if (!full_record) {
      out.push_back(skipped(r, "needs record_every = 1"));
    } else if (!default_contraction(trace, problem)) {
      out.push_back(skipped(r, "bound assumes gamma * L <= 1/2"));
    } else {
      const auto iterates = trace.all_iterates();
      const double bound = diam / std::ldexp(1.0, trace.k);
      double worst_ratio = -1.0;
      double worst_lhs = 0.0;
      double worst_rhs = 0.0;
      for (int t = 0; t < T; ++t) {
        const Vector& z = iterates[static_cast<std::size_t>(t)];
        const Vector& z_next = iterates[static_cast<std::size_t>(t) + 1];
        const Vector fixed =
            proximal_step(problem.set(), z, gamma, problem.joint_operator(z_next));
        const double lhs = (z_next - fixed).norm();
        const double rhs =
            bound + 2.0 * trace.config().inner_early_exit * (1.0 + z.norm());
        if (lhs / rhs > worst_ratio) {
          worst_ratio = lhs / rhs;
          worst_lhs = lhs;
          worst_rhs = rhs;
        }
      }
      out.push_back(evaluated(r, worst_lhs, worst_rhs, 1e-6));
    }
  }

  // Restricted-gap bound over the comparator-radius ladder.
  for (int mult : {1, 2, 4, 8}) {
    auto r = make_check("thm5.2-gap-rho" + std::to_string(mult), trace, problem);
    if (bounded) {
      out.push_back(skipped(r, "set is bounded"));
    } else if (!saddle) {
      out.push_back(skipped(r, "saddle unknown"));
    } else if (!(d0 > 0.0)) {
      out.push_back(skipped(r, "z0 is the saddle"));
    } else if (!theory_k) {
      out.push_back(skipped(r, theory_k_reason));
    } else {
      const double rho = mult * d0;
      const double gap =
          restricted_gap(problem, time_average(trace), z0, rho, seed).gap;
      const double R = std::max(d0, rho);
      out.push_back(evaluated(r, T * gap, 8.0 * L * R * R, 0.1));
    }
  }

  // Last-iterate residual, unconstrained only.
  {
    auto r = make_check("thm6.2-residual", trace, problem);
    if (!unconstrained) {
      out.push_back(skipped(r, "set is constrained"));
    } else if (!saddle) {
      out.push_back(skipped(r, "saddle unknown"));
    } else if (!theory_k) {
      out.push_back(skipped(r, theory_k_reason));
    } else {
      const double lhs = operator_residual(problem, trace.last());
      const double rhs = 8.0 * L * d0 * d0 / std::sqrt(static_cast<double>(T));
      out.push_back(evaluated(r, lhs, rhs, 0.1));
    }
  }

  // Summability of the exact PP steps along the CEG path.
  {
    auto r = make_check("eq11-step-sum", trace, problem);
    if (!unconstrained) {
      out.push_back(skipped(r, "set is constrained"));
    } else if (!saddle) {
      out.push_back(skipped(r, "saddle unknown"));
    } else if (!full_record) {
      out.push_back(skipped(r, "needs record_every = 1"));
    } else if (!theory_k) {
      out.push_back(skipped(r, theory_k_reason));
    } else {
      const ProxPath& p = need_path();
      double sum = 0.0;
      for (int t = 0; t < T; ++t)
        sum += (p.prox[static_cast<std::size_t>(t)] -
                p.iterates[static_cast<std::size_t>(t)])
                   .squaredNorm();
      out.push_back(evaluated(r, sum, 8.0 * d0 * d0, 1e-3));
    }
  }

  // The last PP step is almost the shortest one.
  {
    auto r = make_check("lemma6.3-last-step", trace, problem);
    if (!unconstrained) {
      out.push_back(skipped(r, "set is constrained"));
    } else if (!saddle) {
      out.push_back(skipped(r, "saddle unknown"));
    } else if (!full_record) {
      out.push_back(skipped(r, "needs record_every = 1"));
    } else if (!theory_k) {
      out.push_back(skipped(r, theory_k_reason));
    } else {
      const ProxPath& p = need_path();
      double min_sq = std::numeric_limits<double>::infinity();
      for (int t = 0; t < T; ++t)
        min_sq = std::min(min_sq, (p.prox[static_cast<std::size_t>(t)] -
                                   p.iterates[static_cast<std::size_t>(t)])
                                      .squaredNorm());
      const std::size_t last = static_cast<std::size_t>(T) - 1;
      const double lhs = (p.prox[last] - p.iterates[last]).squaredNorm();
      const double rhs =
          min_sq + 144.0 * T * d0 * d0 / std::ldexp(1.0, trace.k);
      out.push_back(evaluated(r, lhs, rhs, 1e-6));
    }
  }

  // Gradient accounting.
  {
    auto r = make_check("grad-calls", trace, problem);
    const double calls = static_cast<double>(trace.grad_calls().back());
    const double rhs = static_cast<double>(T) * trace.k + 1.0;
    out.push_back(evaluated(r, calls, rhs, 0.0));
  }
}

void pp_checks(const RunTrace& trace, const SaddleProblem& problem,
               std::vector<BoundCheckResult>& out) {
  const int T = trace.steps();
  const double gamma = trace.gamma;
  const double diam = diameter(problem.set());
  const auto& saddle = problem.saddle();

  {
    auto r = make_check("thm3.1-gap", trace, problem);
    if (!std::isfinite(diam)) {
      out.push_back(skipped(r, "set is unbounded"));
    } else {
      const double gap = duality_gap(problem, time_average(trace)).gap;
      out.push_back(evaluated(r, gap, diam * diam / (2.0 * gamma * T), 1e-6));
    }
  }
  {
    auto r = make_check("thm3.2-residual", trace, problem);
    if (!problem.set().is_unconstrained()) {
      out.push_back(skipped(r, "set is constrained"));
    } else if (!saddle) {
      out.push_back(skipped(r, "saddle unknown"));
    } else {
      const double res = operator_residual(problem, trace.last());
      const double lhs = gamma * gamma * T * res * res;
      out.push_back(
          evaluated(r, lhs, (trace.initial() - *saddle).squaredNorm(), 1e-9));
    }
  }
  {
    auto r = make_check("lemmaA.1-step-decrease", trace, problem);
    const auto& steps = trace.step_norms();
    if (T < 2) {
      out.push_back(skipped(r, "needs T >= 2"));
    } else {
      double worst = -std::numeric_limits<double>::infinity();
      double lhs = 0.0;
      double rhs = 0.0;
      for (std::size_t t = 2; t < steps.size(); ++t) {
        if (steps[t] - steps[t - 1] > worst) {
          worst = steps[t] - steps[t - 1];
          lhs = steps[t];
          rhs = steps[t - 1] + 1e-10;
        }
      }
      out.push_back(evaluated(r, lhs, rhs, 0.0));
    }
  }
}

}  // namespace

std::vector<BoundCheckResult> verify_bounds(const RunTrace& trace,
                                            const SaddleProblem& problem,
                                            std::uint64_t seed) {
  std::vector<BoundCheckResult> out;
  if (trace.status() == RunTrace::Status::Aborted) {
    auto r = make_check("run-completed", trace, problem);
    r.lhs = static_cast<double>(trace.steps());
    r.rhs = static_cast<double>(trace.config().T);
    r.passed = false;
    r.reason = trace.error();
    out.push_back(r);
    return out;
  }
  const std::string& solver = trace.solver_name();
  if (solver == "ceg") {
    ceg_checks(trace, problem, seed, out);
  } else if (solver == "pp") {
    pp_checks(trace, problem, out);
  } else if (solver == "eg") {
    auto r = make_check("grad-calls", trace, problem);
    const double calls = static_cast<double>(trace.grad_calls().back());
    out.push_back(evaluated(r, calls, 2.0 * trace.steps(), 0.0));
  } else {
    out.push_back(skipped(make_check("none", trace, problem),
                          "no bound is verified for " + solver));
  }
  return out;
}

double reporting_radius(const SaddleProblem& problem, const Vector& z0) {
  if (problem.saddle()) {
    const double d0 = (z0 - *problem.saddle()).norm();
    if (d0 > 0.0) return d0;
  }
  return 1.0;
}

GapReport reporting_gap(const SaddleProblem& problem, const Vector& z_hat,
                        const Vector& z0, std::uint64_t seed) {
  if (problem.has_gap_oracle() || problem.set().bounded())
    return duality_gap(problem, z_hat, seed);
  return restricted_gap(problem, z_hat, z0, reporting_radius(problem, z0),
                        seed);
}

std::vector<CellRow> trace_rows(const RunTrace& trace,
                                const SaddleProblem& problem,
                                std::uint64_t seed) {
  std::vector<CellRow> rows;
  rows.reserve(trace.records().size());
  for (const TraceRecord& rec : trace.records()) {
    CellRow row;
    row.t = rec.t;
    row.gap = reporting_gap(problem, rec.running_average, trace.initial(), seed)
                  .gap;
    row.grad_norm_residual = operator_residual(problem, rec.z);
    const auto t = static_cast<std::size_t>(rec.t);
    row.step_norm = trace.step_norms()[t];
    row.inner_iters = trace.inner_iters()[t];
    row.grad_calls_cumulative = trace.grad_calls()[t];
    rows.push_back(row);
  }
  return rows;
}

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string rows_to_csv(const std::vector<CellRow>& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const CellRow& r : rows) {
    out += std::to_string(r.t) + "," + format_real(r.gap) + "," +
           format_real(r.grad_norm_residual) + "," + format_real(r.step_norm) +
           "," + std::to_string(r.inner_iters) + "," +
           std::to_string(r.grad_calls_cumulative) + "\n";
  }
  return out;
}

namespace {

nlohmann::json real_json(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return nullptr;
  return v > 0 ? "inf" : "-inf";
}

std::string rows_to_json(const CellResult& cell) {
  nlohmann::json rows = nlohmann::json::array();
  for (const CellRow& r : cell.rows) {
    nlohmann::json row = nlohmann::json::object();
    row["t"] = r.t;
    row["gap"] = real_json(r.gap);
    row["grad_norm_residual"] = real_json(r.grad_norm_residual);
    row["step_norm"] = real_json(r.step_norm);
    row["inner_iters"] = r.inner_iters;
    row["grad_calls_cumulative"] = r.grad_calls_cumulative;
    rows.push_back(std::move(row));
  }
  nlohmann::json doc = nlohmann::json::object();
  doc["problem"] = cell.problem;
  doc["solver"] = cell.solver;
  doc["gamma"] = real_json(cell.trace.gamma);
  doc["k"] = cell.trace.k;
  doc["rows"] = std::move(rows);
  return doc.dump(1) + "\n";
}

nlohmann::json check_json(const BoundCheckResult& c) {
  nlohmann::json j = nlohmann::json::object();
  j["bound_name"] = c.bound_name;
  j["problem"] = c.problem;
  j["solver"] = c.solver;
  j["lhs"] = real_json(c.lhs);
  j["rhs"] = real_json(c.rhs);
  j["slack"] = real_json(c.slack);
  j["passed"] = c.passed;
  j["skipped"] = c.skipped;
  j["reason"] = c.reason;
  return j;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw InputError("write failed for '" + path.string() + "'");
}

std::string file_stem(const std::string& name) {
  std::string out;
  for (char c : name)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_')
               ? c
               : '_';
  return out;
}

void run_cell(const ExperimentConfig& config, const SaddleProblem& problem,
              CellResult& cell) {
  const SolverConfig sc = solver_config_for(config, problem);
  cell.trace = run_solver(cell.solver, problem, sc);
  cell.rows = trace_rows(cell.trace, problem, config.seed);
  if (config.verify) cell.checks = verify_bounds(cell.trace, problem, config.seed);

  const std::string prefix = cell.problem + "/" + cell.solver + "/";
  for (const std::string& metric : config.metrics) {
    MetricSeries s(prefix + metric);
    for (const CellRow& r : cell.rows) {
      double v = 0.0;
      if (metric == "gap") v = r.gap;
      else if (metric == "grad_norm_residual") v = r.grad_norm_residual;
      else if (metric == "step_norm") v = r.step_norm;
      else if (metric == "inner_iters") v = r.inner_iters;
      else v = static_cast<double>(r.grad_calls_cumulative);
      if (!std::isfinite(v)) continue;
      s.add(r.t, v);
    }
    const int t_min = std::max(1, config.T / 10);
    try {
      const RateFit fit = rate_fit(s, t_min);
      cell.fits.push_back({s.name(), fit.slope, fit.r2});
    } catch (const Error&) {
      // Too few points or a nonpositive value: no fit for this series.
    }
    cell.series.push_back(std::move(s));
  }
}

}  // namespace

std::vector<BoundCheckResult> ExperimentResult::checks() const {
  std::vector<BoundCheckResult> out;
  for (const CellResult& c : cells) {
    out.insert(out.end(), c.checks.begin(), c.checks.end());
    if (!c.error.empty()) {
      BoundCheckResult r;
      r.bound_name = "run-completed";
      r.problem = c.problem;
      r.solver = c.solver;
      r.passed = false;
      r.reason = c.error;
      out.push_back(r);
    }
  }
  return out;
}

bool ExperimentResult::all_checks_passed() const {
  for (const auto& c : checks())
    if (!c.passed) return false;
  return true;
}

bool ExperimentResult::any_cell_failed() const {
  for (const CellResult& c : cells)
    if (!c.error.empty() || c.trace.status() == RunTrace::Status::Aborted)
      return true;
  return false;
}

int worker_count(std::size_t cells) {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MINMAX_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) n = v;
  }
  n = std::max(n, 1);
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(n),
                                                std::max<std::size_t>(cells, 1)));
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate(config);
  namespace fs = std::filesystem;
  const fs::path out_dir(config.output);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec)
    throw InputError("cannot create output directory '" + config.output +
                     "': " + ec.message());

  std::vector<SaddleProblem> problems;
  problems.reserve(config.problems.size());
  for (const ProblemSpec& spec : config.problems)
    problems.push_back(build_problem(spec, kPowerIterationSeed + config.seed));

  ExperimentResult result;
  std::vector<std::size_t> problem_of;
  for (std::size_t p = 0; p < problems.size(); ++p) {
    for (const std::string& solver : config.solvers) {
      CellResult cell;
      cell.problem = problems[p].name();
      cell.solver = solver;
      const std::string ext = config.format == OutputFormat::Csv ? ".csv" : ".json";
      cell.output_file =
          (out_dir / (file_stem(cell.problem) + "__" + solver + ext)).string();
      result.cells.push_back(std::move(cell));
      problem_of.push_back(p);
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < result.cells.size(); i = next++) {
      CellResult& cell = result.cells[i];
      try {
        run_cell(config, problems[problem_of[i]], cell);
        write_file(cell.output_file, config.format == OutputFormat::Csv
                                         ? rows_to_csv(cell.rows)
                                         : rows_to_json(cell));
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
    }
  };
  const int workers = worker_count(result.cells.size());
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<MetricSeries> all_series;
  nlohmann::json summary = nlohmann::json::array();
  for (const CellResult& cell : result.cells) {
    if (cell.error.empty()) result.files.push_back(cell.output_file);
    for (const MetricSeries& s : cell.series)
      if (!s.empty()) all_series.push_back(s);
  }
  for (const BoundCheckResult& c : result.checks()) summary.push_back(check_json(c));
  for (const CellResult& cell : result.cells) {
    for (const RateFitEntry& f : cell.fits) {
      nlohmann::json j = nlohmann::json::object();
      j["series"] = f.series;
      j["slope"] = real_json(f.slope);
      j["r2"] = real_json(f.r2);
      summary.push_back(std::move(j));
    }
  }
  if (!all_series.empty()) {
    const std::string series_path = (out_dir / "series.csv").string();
    emit_plot_data(all_series, series_path);
    result.files.push_back(series_path);
  }
  const std::string summary_path = (out_dir / "summary.json").string();
  write_file(summary_path, summary.dump(1) + "\n");
  result.files.push_back(summary_path);
  return result;
}

void emit_plot_data(const std::vector<MetricSeries>& series,
                    const std::string& path) {
  if (series.empty()) throw InputError("emit_plot_data: no series");
  struct Row {
    const std::string* name;
    int t;
    double value;
  };
  std::vector<Row> rows;
  for (const MetricSeries& s : series)
    for (const auto& [t, v] : s.points()) rows.push_back({&s.name(), t, v});
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (*a.name != *b.name) return *a.name < *b.name;
    return a.t < b.t;
  });
  std::string text = "series_name,t,value\n";
  for (const Row& r : rows)
    text += *r.name + "," + std::to_string(r.t) + "," + format_real(r.value) + "\n";
  write_file(path, text);
}

std::string summary_table(const std::vector<BoundCheckResult>& checks) {
  std::ostringstream os;
  os << std::left << std::setw(12) << "problem" << std::setw(7) << "solver"
     << std::setw(24) << "bound" << std::setw(8) << "status" << std::right
     << std::setw(14) << "lhs" << std::setw(14) << "rhs" << "  note\n";
  for (const BoundCheckResult& c : checks) {
    const char* status = c.skipped ? "skip" : (c.passed ? "pass" : "FAIL");
    os << std::left << std::setw(12) << c.problem << std::setw(7) << c.solver
       << std::setw(24) << c.bound_name << std::setw(8) << status << std::right
       << std::setprecision(6) << std::setw(14) << c.lhs << std::setw(14)
       << c.rhs << "  " << c.reason << "\n";
  }
  return os.str();
}

}  // namespace minmax

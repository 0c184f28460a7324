#include "minmax/metrics.hpp"

#include "minmax/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace minmax {

void MetricSeries::add(int t, double value) {
  if (!points_.empty() && t <= points_.back().first) {
    std::ostringstream os;
    os << "series '" << name_ << "': t = " << t << " after t = "
       << points_.back().first;
    throw InputError(os.str());
  }
  if (!std::isfinite(value))
    throw NumericError("series '" + name_ + "': non-finite value at t = " +
                       std::to_string(t));
  points_.emplace_back(t, value);
}

Vector time_average(const RunTrace& trace) {
  if (trace.steps() < 1) throw InputError("time_average: empty trace");
  return trace.iterate_sum() / static_cast<double>(trace.steps());
}

namespace {

double sampled_gap(const SaddleProblem& problem, const Vector& z_hat,
                   std::uint64_t seed) {
  const Split s = problem.split();
  const auto blocks = split_at(problem.set(), s.n);
  if (!blocks)
    throw UnsupportedError("duality_gap: set of '" + problem.name() +
                           "' does not factor into x and y blocks");
  Rng rng(seed);
  Vector probe = z_hat;
  const double centre_value = problem.value(z_hat);
  double best_y = centre_value;
  double best_x = centre_value;
  for (int i = 0; i < kGapSamples; ++i) {
    probe.head(s.n) = z_hat.head(s.n);
    probe.tail(s.m) = sample_feasible(blocks->second, rng);
    best_y = std::max(best_y, problem.value(probe));
    probe.head(s.n) = sample_feasible(blocks->first, rng);
    probe.tail(s.m) = z_hat.tail(s.m);
    best_x = std::min(best_x, problem.value(probe));
  }
  return best_y - best_x;
}

}  // namespace

GapReport duality_gap(const SaddleProblem& problem, const Vector& z_hat,
                      std::uint64_t seed) {
  if (problem.has_gap_oracle()) {
    return {problem.gap(z_hat), std::numeric_limits<double>::infinity(),
            problem.gap_method()};
  }
  if (problem.set().bounded() && problem.has_value_oracle()) {
    return {sampled_gap(problem, z_hat, seed), diameter(problem.set()),
            GapMethod::GridRestricted};
  }
  throw UnsupportedError("duality_gap: '" + problem.name() +
                         "' is unbounded and has no gap oracle");
}

GapReport restricted_gap(const SaddleProblem& problem, const Vector& z_hat,
                         const Vector& center, double radius,
                         std::uint64_t seed) {
  if (!(radius >= 0.0)) throw InputError("restricted_gap: radius must be >= 0");
  if (problem.has_restricted_gap_oracle()) {
    return {problem.restricted_gap(z_hat, center, radius), radius,
            problem.gap_method()};
  }
  if (!problem.has_value_oracle())
    throw UnsupportedError("restricted_gap: '" + problem.name() +
                           "' has neither a restricted gap nor a value oracle");
  const Split s = problem.split();
  Rng rng(seed);
  auto phi = [&](const Vector& z) {
    Vector a = z_hat;
    a.tail(s.m) = z.tail(s.m);
    Vector b = z;
    b.tail(s.m) = z_hat.tail(s.m);
    return problem.value(a) - problem.value(b);
  };
  double best = -std::numeric_limits<double>::infinity();
  if ((z_hat - center).norm() <= radius) best = 0.0;
  for (int i = 0; i < kGapSamples; ++i) {
    const Vector z = project(problem.set(), rng.in_ball(center, radius));
    if ((z - center).norm() > radius * (1.0 + 1e-12)) continue;
    best = std::max(best, phi(z));
  }
  if (!std::isfinite(best))
    throw NumericError("restricted_gap: no feasible comparator in the ball");
  return {best, radius, GapMethod::GridRestricted};
}

double operator_residual(const SaddleProblem& problem, const Vector& z) {
  return problem.joint_operator(z).norm();
}

double regret_sum(const RunTrace& trace, const SaddleProblem& problem,
                  const Vector& comparator, RegretMode mode) {
  if (comparator.size() != problem.dim())
    throw InputError("regret_sum: comparator has wrong dimension");
  const double residual = feasibility_residual(problem.set(), comparator);
  if (residual > 1e-9) {
    std::ostringstream os;
    os << "regret_sum: comparator is infeasible (distance " << residual << ")";
    throw InputError(os.str());
  }
  if (mode == RegretMode::Online) {
    return trace.regret_inner_sum() -
           trace.regret_operator_sum().dot(comparator);
  }
  double total = 0.0;
  const auto iterates = trace.all_iterates();
  for (std::size_t t = 1; t < iterates.size(); ++t) {
    const Vector& z = iterates[t];
    total += problem.joint_operator(z).dot(z - comparator);
  }
  return total;
}

RateFit rate_fit(const MetricSeries& series, int t_min) {
  std::vector<double> lx;
  std::vector<double> ly;
  for (const auto& [t, v] : series.points()) {
    if (t < std::max(t_min, 1)) continue;
    if (!(v > 0.0)) {
      std::ostringstream os;
      os << "rate_fit: series '" << series.name() << "' has value " << v
         << " at t = " << t;
      throw UnsupportedError(os.str());
    }
    lx.push_back(std::log(static_cast<double>(t)));
    ly.push_back(std::log(v));
  }
  if (lx.size() < 10)
    throw InputError("rate_fit: series '" + series.name() +
                     "' has fewer than 10 points past t_min");
  const double count = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  fit.points = static_cast<int>(lx.size());
  return fit;
}

}  // namespace minmax

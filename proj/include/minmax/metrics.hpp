#pragma once

#include "minmax/core.hpp"
#include "minmax/solvers.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace minmax {

/// Named (t, value) series with strictly increasing t and finite values.
class MetricSeries {
 public:
  explicit MetricSeries(std::string name) : name_(std::move(name)) {}

  void add(int t, double value);

  const std::string& name() const { return name_; }
  const std::vector<std::pair<int, double>>& points() const { return points_; }
  bool empty() const { return points_.empty(); }

 private:
  std::string name_;
  std::vector<std::pair<int, double>> points_;
};

struct GapReport {
  double gap = 0.0;
  /// Comparator radius: the ball radius for restricted gaps, |D| for sampled
  /// gaps on bounded sets, +infinity for exact global gaps.
  double comparator_radius = 0.0;
  GapMethod method = GapMethod::ExactSupport;
};

inline constexpr int kGapSamples = 10000;

/// Mean of z_1..z_T.
Vector time_average(const RunTrace& trace);

/// max_y f(x_hat, y) - min_x f(x, y_hat) over D.
GapReport duality_gap(const SaddleProblem& problem, const Vector& z_hat,
                      std::uint64_t seed = 0);

/// Same gap with comparators restricted to D intersected with the ball
/// B(center, radius).
GapReport restricted_gap(const SaddleProblem& problem, const Vector& z_hat,
                         const Vector& center, double radius,
                         std::uint64_t seed = 0);

/// ||F(z)||.
double operator_residual(const SaddleProblem& problem, const Vector& z);

enum class RegretMode { Online, Recompute };

/// sum_{t=1..T} <F(z_t), z_t - comparator>. Online mode reuses the operator
/// values the run already computed; Recompute evaluates F from the stored
/// iterates (record_every = 1 only).
double regret_sum(const RunTrace& trace, const SaddleProblem& problem,
                  const Vector& comparator,
                  RegretMode mode = RegretMode::Online);

struct RateFit {
  double slope = 0.0;
  double r2 = 0.0;
  int points = 0;
};

/// Least-squares slope of log(value) against log(t) over points with
/// t >= max(t_min, 1). Needs at least 10 such points, all positive.
RateFit rate_fit(const MetricSeries& series, int t_min);

}  // namespace minmax

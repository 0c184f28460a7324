#pragma once

#include "minmax/errors.hpp"
#include "minmax/sets.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace minmax {

/// Dimensions of the minimizing (x) and maximizing (y) blocks.
struct Split {
  Index n = 0;
  Index m = 0;
  Index dim() const { return n + m; }
  bool operator==(const Split&) const = default;
};

/// Joint decision variable z = (x, y). Always finite, always matches its split.
class Point {
 public:
  Point(Vector coords, Split split);

  const Vector& coords() const { return coords_; }
  Split split() const { return split_; }
  auto x() const { return coords_.head(split_.n); }
  auto y() const { return coords_.tail(split_.m); }

 private:
  Vector coords_;
  Split split_;
};

using GradientOracle = std::function<Vector(const Vector& z)>;
using ScalarOracle = std::function<double(const Vector& z)>;
/// (z_hat, center, radius) -> max over comparators z in D with
/// ||z - center|| <= radius of f(x_hat, y) - f(x, y_hat).
using RestrictedGapOracle =
    std::function<double(const Vector& z_hat, const Vector& center,
                         double radius)>;

enum class GapMethod { ExactSupport, ClosedForm, GridRestricted };

std::string to_string(GapMethod method);

/// Everything needed to build a SaddleProblem. Optional oracles stay empty
/// when unknown.
struct SaddleProblemParts {
  std::string name;
  Split split;
  GradientOracle grad_x;  ///< z -> grad_x f(x, y), length n
  GradientOracle grad_y;  ///< z -> grad_y f(x, y), length m
  double lipschitz = 0.0;
  std::optional<FeasibleSet> set;  ///< defaults to unconstrained
  std::optional<Vector> saddle;
  std::optional<Vector> initial_point;
  ScalarOracle value;       ///< f itself; test and gap use only
  ScalarOracle gap_oracle;  ///< full duality gap at z_hat
  GapMethod gap_method = GapMethod::ExactSupport;
  RestrictedGapOracle restricted_gap_oracle;
};

/// Smooth convex-concave min-max problem min_x max_y f(x, y) over a convex
/// set D. Immutable and safe to share across threads.
class SaddleProblem {
 public:
  explicit SaddleProblem(SaddleProblemParts parts);

  const std::string& name() const { return parts_.name; }
  Split split() const { return parts_.split; }
  Index dim() const { return parts_.split.dim(); }
  double lipschitz() const { return parts_.lipschitz; }
  const FeasibleSet& set() const { return *parts_.set; }
  const std::optional<Vector>& saddle() const { return parts_.saddle; }
  /// Default starting point (projected onto D).
  const Vector& initial_point() const { return *parts_.initial_point; }

  bool has_value_oracle() const { return static_cast<bool>(parts_.value); }
  bool has_gap_oracle() const { return static_cast<bool>(parts_.gap_oracle); }
  bool has_restricted_gap_oracle() const {
    return static_cast<bool>(parts_.restricted_gap_oracle);
  }
  GapMethod gap_method() const { return parts_.gap_method; }

  Vector grad_x(const Vector& z) const;
  Vector grad_y(const Vector& z) const;
  double value(const Vector& z) const;
  double gap(const Vector& z_hat) const;
  double restricted_gap(const Vector& z_hat, const Vector& center,
                        double radius) const;

  /// F(z) = (grad_x f, -grad_y f). Not counted; solvers use Evaluator.
  Vector joint_operator(const Vector& z) const;

  const SaddleProblemParts& parts() const { return parts_; }

 private:
  void check_dim(const Vector& z, const char* what) const;

  SaddleProblemParts parts_;
};

/// Result of one counted evaluation of F.
struct OperatorEval {
  Vector value;
  std::int64_t grad_calls_consumed = 1;
};

/// Counts evaluations of F for one run. Not shared between runs.
class Evaluator {
 public:
  explicit Evaluator(const SaddleProblem& problem) : problem_(&problem) {}

  Vector operator()(const Vector& z) {
    ++calls_;
    return problem_->joint_operator(z);
  }

  std::int64_t calls() const { return calls_; }
  const SaddleProblem& problem() const { return *problem_; }

 private:
  const SaddleProblem* problem_;
  std::int64_t calls_ = 0;
};

OperatorEval operator_eval(const SaddleProblem& problem, const Point& z);

/// <F(z) - F(z2), z - z2>; nonnegative for convex-concave f.
double monotonicity_gap(const SaddleProblem& problem, const Point& z,
                        const Point& z2);

/// Tolerance below which a negative monotonicity_gap counts as rounding.
double monotonicity_tolerance(const Vector& z, const Vector& z2);

/// Max relative error (|fd - g| / max(1, |g|)) between central differences of
/// f with step h and the gradient oracles at z.
double gradient_check(const SaddleProblem& problem, const Point& z, double h);

/// Default finite-difference step 1e-6 * (1 + ||z||).
double default_fd_step(const Vector& z);

}  // namespace minmax

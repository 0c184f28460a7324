#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace minmax {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

class FeasibleSet;

namespace set_kind {
struct Unconstrained {
  Index dim;
};
struct Ball {
  Vector center;
  double radius;
};
struct Box {
  Vector lower;
  Vector upper;
};
/// Probability simplex {z >= 0, sum z = 1}.
struct Simplex {
  Index dim;
};
struct Product {
  std::vector<FeasibleSet> blocks;
};
}  // namespace set_kind

/// Closed convex set with exact Euclidean projection. Immutable.
class FeasibleSet {
 public:
  using Kind = std::variant<set_kind::Unconstrained, set_kind::Ball,
                            set_kind::Box, set_kind::Simplex,
                            set_kind::Product>;

  static FeasibleSet unconstrained(Index dim);
  static FeasibleSet ball(Vector center, double radius);
  static FeasibleSet box(Vector lower, Vector upper);
  static FeasibleSet simplex(Index dim);
  static FeasibleSet product(std::vector<FeasibleSet> blocks);

  const Kind& kind() const { return kind_; }
  Index dim() const { return dim_; }
  bool bounded() const;
  bool is_unconstrained() const;

  /// Human-readable description in the config grammar, e.g.
  /// "product(simplex(2), simplex(2))".
  std::string describe() const;

 private:
  explicit FeasibleSet(Kind kind);

  Kind kind_;
  Index dim_ = 0;
};

/// Euclidean projection onto the set.
Vector project(const FeasibleSet& set, const Vector& z);

/// max ||z - z'|| over the set; +infinity when unbounded.
double diameter(const FeasibleSet& set);

/// Support function max_{z in set} <c, z>. Throws UnsupportedError when the
/// set is unbounded.
double linear_max(const FeasibleSet& set, const Vector& c);

/// min_{z in set} <c, z>.
inline double linear_min(const FeasibleSet& set, const Vector& c) {
  return -linear_max(set, -c);
}

/// Distance from z to the set.
double feasibility_residual(const FeasibleSet& set, const Vector& z);

/// Splits a joint set D into D1 (first `n` coordinates) x D2. Returns nullopt
/// when the set does not factor at coordinate n.
std::optional<std::pair<FeasibleSet, FeasibleSet>> split_at(
    const FeasibleSet& set, Index n);

}  // namespace minmax

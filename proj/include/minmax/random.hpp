#pragma once

#include "minmax/sets.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace minmax {

// Distribution code lives here rather than in <random> so that seeded streams
// are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  Vector normal_vector(Index dim) {
    Vector v(dim);
    for (Index i = 0; i < dim; ++i) v[i] = normal();
    return v;
  }

  /// Uniform sample from the ball of the given radius around center.
  Vector in_ball(const Vector& center, double radius) {
    Vector direction = normal_vector(center.size());
    const double norm = direction.norm();
    if (norm == 0.0) return center;
    const double r =
        radius * std::pow(uniform(), 1.0 / static_cast<double>(center.size()));
    return center + (r / norm) * direction;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Random point of the set: uniform on balls and boxes, flat Dirichlet on
/// simplices, standard normal scaled by `unbounded_scale` when unconstrained.
Vector sample_feasible(const FeasibleSet& set, Rng& rng,
                       double unbounded_scale = 1.0);

}  // namespace minmax

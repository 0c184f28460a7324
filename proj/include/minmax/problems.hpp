#pragma once

#include "minmax/core.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace minmax {

struct ProblemSpec;

namespace family {
/// f(x, y) = x^T A y.
struct Bilinear {
  Matrix A;
};
/// f(x, y) = 1/2 x^T P x + x^T A y - 1/2 y^T Q y with P, Q PSD.
struct QuadraticSaddle {
  Matrix P;
  Matrix A;
  Matrix Q;
};
/// f~(z) = f(z - shift) for an unconstrained base problem.
struct Translated {
  std::shared_ptr<const ProblemSpec> base;
  Vector shift;
};
}  // namespace family

/// Declarative description of a test problem: what goes into the harness
/// config and what the zoo stores.
struct ProblemSpec {
  std::string name;
  std::variant<family::Bilinear, family::QuadraticSaddle, family::Translated>
      family;
  std::optional<FeasibleSet> set;  ///< unconstrained when empty
  std::optional<Vector> initial_point;
  std::optional<Vector> saddle;  ///< overrides automatic detection

  Split split() const;
};

inline constexpr std::uint64_t kPowerIterationSeed = 0x5eedULL;

/// Constant Jacobian of F for the linear families.
Matrix operator_jacobian(const ProblemSpec& spec);

/// Spectral norm of the Jacobian of F by power iteration on J^T J.
/// Relative tolerance 1e-8, at most 1e4 iterations.
double smoothness_constant(const ProblemSpec& spec,
                           std::uint64_t seed = kPowerIterationSeed);

/// Largest singular value of J by power iteration (exposed for tests).
double spectral_norm_power_iteration(const Matrix& J, double rel_tol,
                                     int max_iters, std::uint64_t seed);

/// Validates the spec and attaches gradients, L, saddle and gap oracles.
SaddleProblem build_problem(const ProblemSpec& spec,
                            std::uint64_t seed = kPowerIterationSeed);

SaddleProblem make_bilinear(const Matrix& A, const FeasibleSet& set,
                            std::string name = "bilinear");
SaddleProblem make_quadratic_saddle(const Matrix& P, const Matrix& A,
                                    const Matrix& Q, const FeasibleSet& set,
                                    std::string name = "quadratic");

/// Spec for f(z - shift). Throws UnsupportedError on constrained bases.
ProblemSpec translated_spec(const ProblemSpec& base, const Vector& shift,
                            std::string name = {});
SaddleProblem translate(const ProblemSpec& base, const Vector& shift);

/// Named instances: BILIN1, BILIN-BALL, MP, QUAD1, BILIN-SHIFT.
const std::vector<std::string>& zoo_names();
ProblemSpec zoo_spec(const std::string& name);
SaddleProblem zoo_problem(const std::string& name);

}  // namespace minmax

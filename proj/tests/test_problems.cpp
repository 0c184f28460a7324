#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minmax/metrics.hpp"
#include "minmax/problems.hpp"
#include "minmax/random.hpp"

#include <Eigen/SVD>

#include <cmath>

using namespace minmax;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix M(static_cast<Index>(rows.size()),
           static_cast<Index>(rows.begin()->size()));
  Index r = 0;
  for (const auto& row : rows) {
    Index c = 0;
    for (double x : row) M(r, c++) = x;
    ++r;
  }
  return M;
}

double svd_norm(const Matrix& J) {
  return Eigen::JacobiSVD<Matrix>(J).singularValues()[0];
}

}  // namespace

TEST_CASE("scalar bilinear problem") {
  const SaddleProblem p = make_bilinear(mat({{1.0}}), FeasibleSet::unconstrained(2));
  CHECK(p.lipschitz() == doctest::Approx(1.0).epsilon(1e-8));
  REQUIRE(p.saddle());
  CHECK(p.saddle()->norm() == 0.0);
}

TEST_CASE("matching pennies on simplices") {
  const Matrix A = mat({{1.0, -1.0}, {-1.0, 1.0}});
  const SaddleProblem p = make_bilinear(
      A, FeasibleSet::product({FeasibleSet::simplex(2), FeasibleSet::simplex(2)}));
  REQUIRE(p.saddle());
  CHECK((*p.saddle() - Vector::Constant(4, 0.5)).norm() <= 1e-15);
  CHECK(p.value(*p.saddle()) == doctest::Approx(0.0));
  CHECK(p.gap(*p.saddle()) <= 1e-12);
  // A^T A has eigenvalues {4, 0}.
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(A.transpose() * A);
  CHECK(eig.eigenvalues().maxCoeff() == doctest::Approx(4.0));
  CHECK(p.lipschitz() == doctest::Approx(std::sqrt(eig.eigenvalues().maxCoeff()))
                             .epsilon(1e-8));
}

TEST_CASE("quadratic saddle examples") {
  const auto U2 = FeasibleSet::unconstrained(2);
  const SaddleProblem decoupled =
      make_quadratic_saddle(mat({{1.0}}), mat({{0.0}}), mat({{1.0}}), U2);
  CHECK(decoupled.lipschitz() == doctest::Approx(1.0).epsilon(1e-8));
  REQUIRE(decoupled.saddle());
  CHECK(decoupled.saddle()->norm() == 0.0);

  const SaddleProblem coupled =
      make_quadratic_saddle(mat({{1.0}}), mat({{1.0}}), mat({{1.0}}), U2);
  // J = [[1, 1], [-1, 1]], J^T J = 2 I, so sigma_max = sqrt 2.
  CHECK(coupled.lipschitz() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
  CHECK(coupled.saddle()->norm() == 0.0);

  const SaddleProblem degenerate =
      make_quadratic_saddle(mat({{0.0}}), mat({{1.0}}), mat({{0.0}}), U2);
  CHECK(degenerate.lipschitz() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("quadratic saddle rejects indefinite or asymmetric blocks") {
  const auto U2 = FeasibleSet::unconstrained(2);
  CHECK_THROWS_AS(
      make_quadratic_saddle(mat({{-1.0}}), mat({{1.0}}), mat({{1.0}}), U2),
      ValidationError);
  CHECK_THROWS_AS(make_quadratic_saddle(mat({{1.0, 2.0}, {0.0, 1.0}}),
                                        mat({{1.0}, {1.0}}), mat({{1.0}}),
                                        FeasibleSet::unconstrained(3)),
                  ValidationError);
}

TEST_CASE("dimension mismatches are input errors") {
  CHECK_THROWS_AS(make_bilinear(mat({{1.0, 2.0}}), FeasibleSet::unconstrained(2)),
                  InputError);
  CHECK_THROWS_AS(make_quadratic_saddle(mat({{1.0}}), mat({{1.0, 0.0}}),
                                        mat({{1.0}}), FeasibleSet::unconstrained(3)),
                  InputError);
}

TEST_CASE("smoothness constant examples") {
  ProblemSpec s;
  s.name = "a";
  s.family = family::Bilinear{mat({{1.0}})};
  CHECK(smoothness_constant(s) == doctest::Approx(1.0).epsilon(1e-8));
  s.family = family::Bilinear{2.0 * Matrix::Identity(3, 3)};
  CHECK(smoothness_constant(s) == doctest::Approx(2.0).epsilon(1e-8));
  s.family = family::Bilinear{mat({{1.0, -1.0}, {-1.0, 1.0}})};
  CHECK(smoothness_constant(s) == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("power iteration matches the SVD on random matrices") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 1 + trial % 4;
    const Index m = 1 + (trial * 7) % 3;
    Matrix A(n, m);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < m; ++j) A(i, j) = rng.normal();
    ProblemSpec s;
    s.name = "random";
    s.family = family::Bilinear{A};
    CHECK(smoothness_constant(s) ==
          doctest::Approx(svd_norm(operator_jacobian(s))).epsilon(1e-7));
    CHECK(svd_norm(operator_jacobian(s)) == doctest::Approx(svd_norm(A)));
  }
}

TEST_CASE("power iteration reports non-convergence") {
  // A single iteration can never confirm convergence.
  Matrix J = Matrix::Identity(2, 2);
  J(1, 1) = 0.999;
  J(0, 1) = 0.5;
  CHECK_THROWS_AS(spectral_norm_power_iteration(J, 1e-30, 1, 1), NumericError);
}

TEST_CASE("translation") {
  const ProblemSpec base = zoo_spec("BILIN1");
  const SaddleProblem same = translate(base, Vector::Zero(2));
  const SaddleProblem orig = build_problem(base);
  Rng rng(9);
  for (int i = 0; i < 10; ++i) {
    const Vector z = rng.normal_vector(2);
    CHECK((same.joint_operator(z) - orig.joint_operator(z)).norm() == 0.0);
  }
  const SaddleProblem moved = translate(base, vec({1.0, 1.0}));
  REQUIRE(moved.saddle());
  CHECK((*moved.saddle() - vec({1.0, 1.0})).norm() == 0.0);
  CHECK(moved.lipschitz() == doctest::Approx(orig.lipschitz()));
  for (int i = 0; i < 20; ++i) {
    const Vector z = rng.normal_vector(2) * 3.0;
    CHECK(gradient_check(moved, Point(z, moved.split()), default_fd_step(z)) <=
          1e-5);
  }
  CHECK_THROWS_AS(translate(zoo_spec("MP"), Vector::Zero(4)), UnsupportedError);
}

TEST_CASE("zoo catalogue") {
  CHECK(zoo_names().size() == 5);
  CHECK_THROWS_AS(zoo_spec("NOPE"), InputError);
  CHECK(zoo_problem("BILIN-SHIFT").saddle()->isApprox(vec({10.0, 10.0})));
  CHECK((zoo_problem("BILIN-SHIFT").initial_point() - *zoo_problem("BILIN-SHIFT").saddle())
            .norm() == doctest::Approx(std::sqrt(200.0)));
  CHECK(zoo_problem("MP").lipschitz() == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(zoo_problem("QUAD1").lipschitz() ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
}

TEST_CASE("known saddles satisfy the variational inequality") {
  Rng rng(17);
  for (const std::string& name : zoo_names()) {
    CAPTURE(name);
    const SaddleProblem p = zoo_problem(name);
    REQUIRE(p.saddle());
    const Vector& zs = *p.saddle();
    const Vector Fs = p.joint_operator(zs);
    if (p.set().bounded()) {
      for (int i = 0; i < 1000; ++i) {
        const Vector z = sample_feasible(p.set(), rng);
        CHECK(Fs.dot(zs - z) <= 1e-9);
      }
    } else {
      CHECK(Fs.norm() <= 1e-10);
    }
    if (p.has_gap_oracle() || p.set().bounded())
      CHECK(duality_gap(p, zs).gap <= 1e-9);
    else
      CHECK(restricted_gap(p, zs, p.initial_point(), 5.0).gap <= 1e-9);
  }
}

TEST_CASE("smoothness constant is a Lipschitz bound on random pairs") {
  Rng rng(23);
  for (const std::string& name : zoo_names()) {
    const SaddleProblem p = zoo_problem(name);
    for (int i = 0; i < 1000; ++i) {
      const Vector z = rng.normal_vector(p.dim()) * 5.0;
      const Vector w = rng.normal_vector(p.dim()) * 5.0;
      CHECK((p.joint_operator(z) - p.joint_operator(w)).norm() <=
            p.lipschitz() * (z - w).norm() * (1.0 + 1e-6));
    }
  }
}

TEST_CASE("bilinear gap via support functions matches vertex brute force") {
  const SaddleProblem p = zoo_problem("MP");
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector z = sample_feasible(p.set(), rng);
    // Linear in the opponent block, so extremes sit at simplex vertices.
    double best_y = -1e300, best_x = 1e300;
    for (int v = 0; v < 2; ++v) {
      Vector a = z;
      a.tail(2) = Vector::Unit(2, v);
      best_y = std::max(best_y, p.value(a));
      Vector b = z;
      b.head(2) = Vector::Unit(2, v);
      best_x = std::min(best_x, p.value(b));
    }
    CHECK(p.gap(z) == doctest::Approx(best_y - best_x).epsilon(1e-12));
  }
}

TEST_CASE("quadratic closed-form gap matches a direct best-response solve") {
  const SaddleProblem p = zoo_problem("QUAD1");
  // f = x^2/2 + xy - y^2/2: max_y gives y = x_hat, min_x gives x = -y_hat.
  Rng rng(37);
  for (int i = 0; i < 20; ++i) {
    const Vector z = rng.normal_vector(2);
    const double xh = z[0], yh = z[1];
    const double up = 0.5 * xh * xh + xh * xh - 0.5 * xh * xh;
    const double down = 0.5 * yh * yh - yh * yh - 0.5 * yh * yh;
    CHECK(p.gap(z) == doctest::Approx(up - down).epsilon(1e-12));
  }
}

TEST_CASE("restricted gap of the unconstrained bilinear problem") {
  const SaddleProblem p = zoo_problem("BILIN1");
  // phi(z_hat; z) = x_hat*y - x*y_hat, linear in z with gradient c.
  const Vector zh = vec({0.3, -0.4});
  const Vector center = vec({1.0, 0.0});
  const Vector c = vec({-zh[1], zh[0]});
  const double expect = c.dot(center) + 2.0 * c.norm();
  CHECK(p.restricted_gap(zh, center, 2.0) == doctest::Approx(expect));
  // Sampling never beats the closed form.
  Rng rng(41);
  for (int i = 0; i < 500; ++i) {
    const Vector z = rng.in_ball(center, 2.0);
    CHECK(zh[0] * z[1] - z[0] * zh[1] <= expect + 1e-12);
  }
}

TEST_CASE("inline specs build and validate") {
  ProblemSpec s;
  s.name = "box-game";
  s.family = family::Bilinear{mat({{2.0, 0.0}, {0.0, 1.0}})};
  s.set = FeasibleSet::product(
      {FeasibleSet::box(vec({-1.0, -1.0}), vec({1.0, 1.0})),
       FeasibleSet::ball(vec({0.0, 0.0}), 1.0)});
  const SaddleProblem p = build_problem(s);
  CHECK(p.lipschitz() == doctest::Approx(2.0).epsilon(1e-8));
  REQUIRE(p.saddle());
  CHECK(p.saddle()->norm() == 0.0);
  s.set = FeasibleSet::simplex(3);
  CHECK_THROWS_AS(build_problem(s), InputError);
}

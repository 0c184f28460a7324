#include "minmax/problems.hpp"

#include "minmax/random.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace minmax {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_finite(const Matrix& M, const std::string& what) {
  if (!M.allFinite()) throw ValidationError(what + " has non-finite entries");
}

void check_psd(const Matrix& M, const std::string& what) {
  check_finite(M, what);
  if (M.rows() != M.cols()) throw ValidationError(what + " must be square");
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw ValidationError(what + " must be symmetric");
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(M, Eigen::EigenvaluesOnly);
  const double smallest = eig.eigenvalues().minCoeff();
  if (smallest < -1e-10) {
    std::ostringstream os;
    os << what << " is not positive semidefinite (min eigenvalue " << smallest
       << ")";
    throw ValidationError(os.str());
  }
}

double min_eigenvalue(const Matrix& M) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(M, Eigen::EigenvaluesOnly)
      .eigenvalues()
      .minCoeff();
}

// max over ||z - center|| <= radius of  c0 + g^T z - 1/2 z^T B z  for PSD B.
double concave_quadratic_ball_max(double c0, const Vector& g, const Matrix& B,
                                  const Vector& center, double radius) {
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(B);
  const Vector lambda = eig.eigenvalues().cwiseMax(0.0);
  const Matrix& V = eig.eigenvectors();
  const double base = c0 + g.dot(center) - 0.5 * center.dot(B * center);
  const Vector b = V.transpose() * (g - B * center);

  auto step = [&](double mu) {
    Vector e(b.size());
    for (Index i = 0; i < b.size(); ++i) {
      const double denom = lambda[i] + mu;
      e[i] = denom > 0.0 ? b[i] / denom : 0.0;
    }
    return e;
  };
  auto objective = [&](const Vector& e) {
    return base + b.dot(e) - 0.5 * e.dot(lambda.cwiseProduct(e));
  };

  bool interior = true;
  for (Index i = 0; i < b.size(); ++i)
    if (lambda[i] <= 1e-14 && std::abs(b[i]) > 0.0) interior = false;
  if (interior) {
    const Vector e = step(0.0);
    if (e.norm() <= radius) return objective(e);
  }
  if (radius == 0.0) return base;
  double lo = 0.0;
  double hi = b.norm() / radius + lambda.maxCoeff() + 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (step(mid).norm() > radius)
      lo = mid;
    else
      hi = mid;
  }
  return objective(step(hi));
}

struct LinearParts {
  Matrix P;  // n x n (zero for bilinear)
  Matrix A;  // n x m
  Matrix Q;  // m x m (zero for bilinear)
};

void fill_linear_family(SaddleProblemParts& parts, const LinearParts& lin,
                        bool bilinear, const FeasibleSet& set,
                        std::optional<Vector> explicit_saddle) {
  const Index n = lin.A.rows();
  const Index m = lin.A.cols();
  parts.grad_x = [lin, n, m](const Vector& z) -> Vector {
    return lin.P * z.head(n) + lin.A * z.tail(m);
  };
  parts.grad_y = [lin, n, m](const Vector& z) -> Vector {
    return lin.A.transpose() * z.head(n) - lin.Q * z.tail(m);
  };
  parts.value = [lin, n, m](const Vector& z) {
    const auto x = z.head(n);
    const auto y = z.tail(m);
    return 0.5 * x.dot(lin.P * x) + x.dot(lin.A * y) - 0.5 * y.dot(lin.Q * y);
  };

  const auto blocks = split_at(set, n);
  const bool bounded_blocks =
      blocks && blocks->first.bounded() && blocks->second.bounded();

  if (bilinear && bounded_blocks) {
    const FeasibleSet d1 = blocks->first;
    const FeasibleSet d2 = blocks->second;
    parts.gap_oracle = [lin, d1, d2, n, m](const Vector& z_hat) {
      const Vector x_hat = z_hat.head(n);
      const Vector y_hat = z_hat.tail(m);
      return linear_max(d2, lin.A.transpose() * x_hat) -
             linear_min(d1, lin.A * y_hat);
    };
    parts.gap_method = GapMethod::ExactSupport;
  }

  if (set.is_unconstrained()) {
    if (bilinear) {
      parts.restricted_gap_oracle = [lin, n, m](const Vector& z_hat,
                                                const Vector& center,
                                                double radius) {
        Vector c(n + m);
        c.head(n) = -lin.A * z_hat.tail(m);
        c.tail(m) = lin.A.transpose() * z_hat.head(n);
        return c.dot(center) + radius * c.norm();
      };
      parts.gap_method = GapMethod::ExactSupport;
    } else {
      Matrix B = Matrix::Zero(n + m, n + m);
      B.topLeftCorner(n, n) = lin.P;
      B.bottomRightCorner(m, m) = lin.Q;
      parts.restricted_gap_oracle = [lin, B, n, m](const Vector& z_hat,
                                                   const Vector& center,
                                                   double radius) {
        const Vector x_hat = z_hat.head(n);
        const Vector y_hat = z_hat.tail(m);
        Vector g(n + m);
        g.head(n) = -lin.A * y_hat;
        g.tail(m) = lin.A.transpose() * x_hat;
        const double c0 =
            0.5 * x_hat.dot(lin.P * x_hat) + 0.5 * y_hat.dot(lin.Q * y_hat);
        return concave_quadratic_ball_max(c0, g, B, center, radius);
      };
      parts.gap_method = GapMethod::ClosedForm;
      if (min_eigenvalue(lin.P) > 1e-10 && min_eigenvalue(lin.Q) > 1e-10) {
        const Eigen::LDLT<Matrix> p_solve(lin.P);
        const Eigen::LDLT<Matrix> q_solve(lin.Q);
        parts.gap_oracle = [lin, p_solve, q_solve, n, m](const Vector& z_hat) {
          const Vector x_hat = z_hat.head(n);
          const Vector y_hat = z_hat.tail(m);
          const Vector ax = lin.A.transpose() * x_hat;
          const Vector ay = lin.A * y_hat;
          const double best_y =
              0.5 * x_hat.dot(lin.P * x_hat) + 0.5 * ax.dot(q_solve.solve(ax));
          const double best_x =
              -0.5 * ay.dot(p_solve.solve(ay)) - 0.5 * y_hat.dot(lin.Q * y_hat);
          return best_y - best_x;
        };
      }
    }
  }

  if (explicit_saddle) {
    parts.saddle = std::move(explicit_saddle);
    return;
  }
  // F is linear, so F(0) = 0 and the origin solves the VI whenever feasible.
  const Vector origin = Vector::Zero(n + m);
  if (feasibility_residual(set, origin) <= 1e-12) {
    parts.saddle = origin;
    return;
  }
  // Otherwise try the barycentre of the blocks, certified by an exact gap.
  if (parts.gap_oracle && blocks) {
    auto centre = [](const FeasibleSet& s) -> std::optional<Vector> {
      const auto& k = s.kind();
      if (const auto* sx = std::get_if<set_kind::Simplex>(&k))
        return Vector::Constant(sx->dim, 1.0 / static_cast<double>(sx->dim));
      if (const auto* b = std::get_if<set_kind::Ball>(&k)) return b->center;
      if (const auto* b = std::get_if<set_kind::Box>(&k))
        return Vector(0.5 * (b->lower + b->upper));
      return std::nullopt;
    };
    const auto cx = centre(blocks->first);
    const auto cy = centre(blocks->second);
    if (cx && cy) {
      Vector candidate(n + m);
      candidate << *cx, *cy;
      if (std::abs(parts.gap_oracle(candidate)) <= 1e-12)
        parts.saddle = candidate;
    }
  }
}

}  // namespace

Split ProblemSpec::split() const {
  return std::visit(
      Overloaded{
          [](const family::Bilinear& b) { return Split{b.A.rows(), b.A.cols()}; },
          [](const family::QuadraticSaddle& q) {
            return Split{q.A.rows(), q.A.cols()};
          },
          [](const family::Translated& t) { return t.base->split(); },
      },
      family);
}

Matrix operator_jacobian(const ProblemSpec& spec) {
  return std::visit(
      Overloaded{
          [](const family::Bilinear& b) -> Matrix {
            const Index n = b.A.rows();
            const Index m = b.A.cols();
            Matrix J = Matrix::Zero(n + m, n + m);
            J.topRightCorner(n, m) = b.A;
            J.bottomLeftCorner(m, n) = -b.A.transpose();
            return J;
          },
          [](const family::QuadraticSaddle& q) -> Matrix {
            const Index n = q.A.rows();
            const Index m = q.A.cols();
            Matrix J(n + m, n + m);
            J.topLeftCorner(n, n) = q.P;
            J.topRightCorner(n, m) = q.A;
            J.bottomLeftCorner(m, n) = -q.A.transpose();
            J.bottomRightCorner(m, m) = q.Q;
            return J;
          },
          [](const family::Translated& t) -> Matrix {
            return operator_jacobian(*t.base);
          },
      },
      spec.family);
}

double spectral_norm_power_iteration(const Matrix& J, double rel_tol,
                                     int max_iters, std::uint64_t seed) {
  if (J.size() == 0) return 0.0;
  Rng rng(seed);
  Vector v = rng.normal_vector(J.cols());
  v.normalize();
  double sigma = 0.0;
  for (int it = 1; it <= max_iters; ++it) {
    const Vector jv = J * v;
    const double next = jv.norm();
    if (next == 0.0) {
      // v in the null space; J = 0 is the only case a generic start hits.
      if (J.cwiseAbs().maxCoeff() == 0.0) return 0.0;
      v = rng.normal_vector(J.cols()).normalized();
      continue;
    }
    Vector w = J.transpose() * jv;
    w.normalize();
    if (std::abs(next - sigma) <= rel_tol * next) {
      // One more product from the refined vector sharpens the estimate.
      return std::max(next, (J * w).norm());
    }
    sigma = next;
    v = w;
  }
  std::ostringstream os;
  os << "power iteration did not converge after " << max_iters
     << " iterations (last estimate " << sigma << ")";
  throw NumericError(os.str());
}

double smoothness_constant(const ProblemSpec& spec, std::uint64_t seed) {
  return spectral_norm_power_iteration(operator_jacobian(spec), 1e-8, 10000,
                                       seed);
}

SaddleProblem build_problem(const ProblemSpec& spec, std::uint64_t seed) {
  const Split s = spec.split();
  if (s.n < 1 || s.m < 1)
    throw InputError("problem '" + spec.name + "': empty x or y block");
  const FeasibleSet set =
      spec.set ? *spec.set : FeasibleSet::unconstrained(s.dim());
  if (set.dim() != s.dim()) {
    std::ostringstream os;
    os << "problem '" << spec.name << "': set dimension " << set.dim()
       << " != rows(A) + cols(A) = " << s.dim();
    throw InputError(os.str());
  }

  SaddleProblemParts parts;
  parts.name = spec.name;
  parts.split = s;
  parts.set = set;
  parts.initial_point = spec.initial_point;

  std::visit(
      Overloaded{
          [&](const family::Bilinear& b) {
            check_finite(b.A, "A");
            fill_linear_family(parts,
                               {Matrix::Zero(s.n, s.n), b.A,
                                Matrix::Zero(s.m, s.m)},
                               true, set, spec.saddle);
          },
          [&](const family::QuadraticSaddle& q) {
            check_finite(q.A, "A");
            check_psd(q.P, "P");
            check_psd(q.Q, "Q");
            if (q.P.rows() != s.n || q.Q.rows() != s.m)
              throw InputError("problem '" + spec.name +
                               "': P must be n x n and Q m x m");
            fill_linear_family(parts, {q.P, q.A, q.Q}, false, set, spec.saddle);
          },
          [&](const family::Translated& t) {
            if (t.base->set && !t.base->set->is_unconstrained())
              throw UnsupportedError("translate: base problem '" +
                                     t.base->name + "' is constrained");
            if (t.shift.size() != s.dim())
              throw InputError("translate: shift has wrong dimension");
            if (!t.shift.allFinite())
              throw InputError("translate: shift must be finite");
            const SaddleProblem base = build_problem(*t.base, seed);
            const Vector shift = t.shift;
            parts.grad_x = [base, shift](const Vector& z) -> Vector {
              return base.grad_x(z - shift);
            };
            parts.grad_y = [base, shift](const Vector& z) -> Vector {
              return base.grad_y(z - shift);
            };
            if (base.has_value_oracle())
              parts.value = [base, shift](const Vector& z) {
                return base.value(z - shift);
              };
            if (base.has_gap_oracle())
              parts.gap_oracle = [base, shift](const Vector& z_hat) {
                return base.gap(z_hat - shift);
              };
            if (base.has_restricted_gap_oracle())
              parts.restricted_gap_oracle = [base, shift](const Vector& z_hat,
                                                          const Vector& center,
                                                          double radius) {
                return base.restricted_gap(z_hat - shift, center - shift,
                                           radius);
              };
            parts.gap_method = base.gap_method();
            if (spec.saddle)
              parts.saddle = spec.saddle;
            else if (base.saddle())
              parts.saddle = Vector(*base.saddle() + shift);
            if (!parts.initial_point) parts.initial_point = base.initial_point();
          },
      },
      spec.family);

  parts.lipschitz = smoothness_constant(spec, seed);
  return SaddleProblem(std::move(parts));
}

SaddleProblem make_bilinear(const Matrix& A, const FeasibleSet& set,
                            std::string name) {
  ProblemSpec spec{std::move(name), family::Bilinear{A}, set, {}, {}};
  return build_problem(spec);
}

SaddleProblem make_quadratic_saddle(const Matrix& P, const Matrix& A,
                                    const Matrix& Q, const FeasibleSet& set,
                                    std::string name) {
  ProblemSpec spec{std::move(name), family::QuadraticSaddle{P, A, Q}, set, {},
                   {}};
  return build_problem(spec);
}

ProblemSpec translated_spec(const ProblemSpec& base, const Vector& shift,
                            std::string name) {
  if (base.set && !base.set->is_unconstrained())
    throw UnsupportedError("translate: base problem '" + base.name +
                           "' is constrained");
  ProblemSpec out;
  out.name = name.empty() ? base.name + "-shifted" : std::move(name);
  out.family =
      family::Translated{std::make_shared<const ProblemSpec>(base), shift};
  out.set = base.set;
  return out;
}

SaddleProblem translate(const ProblemSpec& base, const Vector& shift) {
  return build_problem(translated_spec(base, shift));
}

const std::vector<std::string>& zoo_names() {
  static const std::vector<std::string> names = {"BILIN1", "BILIN-BALL", "MP",
                                                 "QUAD1", "BILIN-SHIFT"};
  return names;
}

ProblemSpec zoo_spec(const std::string& name) {
  const Matrix one = Matrix::Identity(1, 1);
  if (name == "BILIN1") {
    return {name, family::Bilinear{one}, FeasibleSet::unconstrained(2),
            Vector((Vector(2) << 1.0, 0.0).finished()), {}};
  }
  if (name == "BILIN-BALL") {
    const Vector zero = Vector::Zero(1);
    return {name, family::Bilinear{one},
            FeasibleSet::product(
                {FeasibleSet::ball(zero, 1.0), FeasibleSet::ball(zero, 1.0)}),
            Vector((Vector(2) << 1.0, 0.0).finished()), {}};
  }
  if (name == "MP") {
    Matrix A(2, 2);
    A << 1.0, -1.0, -1.0, 1.0;
    return {name, family::Bilinear{A},
            FeasibleSet::product(
                {FeasibleSet::simplex(2), FeasibleSet::simplex(2)}),
            Vector((Vector(4) << 1.0, 0.0, 0.0, 1.0).finished()), {}};
  }
  if (name == "QUAD1") {
    return {name, family::QuadraticSaddle{one, one, one},
            FeasibleSet::unconstrained(2),
            Vector((Vector(2) << 1.0, 1.0).finished()), {}};
  }
  if (name == "BILIN-SHIFT") {
    ProblemSpec spec = translated_spec(
        zoo_spec("BILIN1"), Vector((Vector(2) << 10.0, 10.0).finished()), name);
    spec.initial_point = Vector::Zero(2);
    return spec;
  }
  throw InputError("unknown zoo problem '" + name + "'");
}

SaddleProblem zoo_problem(const std::string& name) {
  return build_problem(zoo_spec(name));
}

}  // namespace minmax

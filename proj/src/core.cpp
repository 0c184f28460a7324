#include "minmax/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace minmax {

Point::Point(Vector coords, Split split)
    : coords_(std::move(coords)), split_(split) {
  if (split_.n < 1 || split_.m < 1)
    throw InputError("Point: split dimensions must be positive");
  if (coords_.size() != split_.dim()) {
    std::ostringstream os;
    os << "Point: " << coords_.size() << " coordinates for split (" << split_.n
       << ", " << split_.m << ")";
    throw InputError(os.str());
  }
  for (Index i = 0; i < coords_.size(); ++i) {
    if (!std::isfinite(coords_[i])) {
      std::ostringstream os;
      os << "Point: coordinate " << i << " is not finite";
      throw InputError(os.str());
    }
  }
}

std::string to_string(GapMethod method) {
  switch (method) {
    case GapMethod::ExactSupport:
      return "exact_support";
    case GapMethod::ClosedForm:
      return "closed_form";
    case GapMethod::GridRestricted:
      return "grid_restricted";
  }
  return "unknown";
}

SaddleProblem::SaddleProblem(SaddleProblemParts parts)
    : parts_(std::move(parts)) {
  const Split s = parts_.split;
  if (s.n < 1 || s.m < 1)
    throw InputError("SaddleProblem '" + parts_.name +
                     "': split dimensions must be positive");
  if (!parts_.grad_x || !parts_.grad_y)
    throw InputError("SaddleProblem '" + parts_.name +
                     "': gradient oracles are required");
  if (!(parts_.lipschitz >= 0.0) || !std::isfinite(parts_.lipschitz))
    throw InputError("SaddleProblem '" + parts_.name +
                     "': smoothness constant must be finite and >= 0");
  if (!parts_.set) parts_.set = FeasibleSet::unconstrained(s.dim());
  if (parts_.set->dim() != s.dim()) {
    std::ostringstream os;
    os << "SaddleProblem '" << parts_.name << "': set dimension "
       << parts_.set->dim() << " != n + m = " << s.dim();
    throw InputError(os.str());
  }
  if (!parts_.initial_point) parts_.initial_point = Vector::Zero(s.dim());
  check_dim(*parts_.initial_point, "initial point");
  parts_.initial_point = project(*parts_.set, *parts_.initial_point);

  if (parts_.saddle) {
    check_dim(*parts_.saddle, "saddle point");
    if (parts_.set->is_unconstrained()) {
      const double residual = joint_operator(*parts_.saddle).norm();
      const double scale =
          std::max(1.0, joint_operator(*parts_.initial_point).norm());
      if (residual > 1e-9 * scale) {
        std::ostringstream os;
        os << "SaddleProblem '" << parts_.name
           << "': declared saddle has ||F(z*)|| = " << residual;
        throw ValidationError(os.str());
      }
    }
  }
}

void SaddleProblem::check_dim(const Vector& z, const char* what) const {
  if (z.size() != dim()) {
    std::ostringstream os;
    os << "problem '" << parts_.name << "': " << what << " has dimension "
       << z.size() << ", expected " << dim();
    throw InputError(os.str());
  }
}

Vector SaddleProblem::grad_x(const Vector& z) const {
  check_dim(z, "point");
  return parts_.grad_x(z);
}

Vector SaddleProblem::grad_y(const Vector& z) const {
  check_dim(z, "point");
  return parts_.grad_y(z);
}

double SaddleProblem::value(const Vector& z) const {
  if (!parts_.value)
    throw UnsupportedError("problem '" + parts_.name +
                           "' has no function-value oracle");
  check_dim(z, "point");
  return parts_.value(z);
}

double SaddleProblem::gap(const Vector& z_hat) const {
  if (!parts_.gap_oracle)
    throw UnsupportedError("problem '" + parts_.name + "' has no gap oracle");
  check_dim(z_hat, "point");
  return parts_.gap_oracle(z_hat);
}

double SaddleProblem::restricted_gap(const Vector& z_hat, const Vector& center,
                                     double radius) const {
  if (!parts_.restricted_gap_oracle)
    throw UnsupportedError("problem '" + parts_.name +
                           "' has no restricted gap oracle");
  check_dim(z_hat, "point");
  check_dim(center, "center");
  return parts_.restricted_gap_oracle(z_hat, center, radius);
}

Vector SaddleProblem::joint_operator(const Vector& z) const {
  check_dim(z, "point");
  const Split s = parts_.split;
  Vector out(s.dim());
  const Vector gx = parts_.grad_x(z);
  const Vector gy = parts_.grad_y(z);
  if (gx.size() != s.n || gy.size() != s.m)
    throw InputError("problem '" + parts_.name +
                     "': gradient oracle returned wrong dimension");
  out.head(s.n) = gx;
  out.tail(s.m) = -gy;
  for (Index i = 0; i < out.size(); ++i) {
    if (!std::isfinite(out[i])) {
      std::ostringstream os;
      os << "problem '" << parts_.name << "': operator coordinate " << i
         << " is not finite";
      throw NumericError(os.str());
    }
  }
  return out;
}

OperatorEval operator_eval(const SaddleProblem& problem, const Point& z) {
  if (z.split() != problem.split())
    throw InputError("operator_eval: point split does not match problem");
  return OperatorEval{problem.joint_operator(z.coords()), 1};
}

double monotonicity_gap(const SaddleProblem& problem, const Point& z,
                        const Point& z2) {
  const Vector fz = operator_eval(problem, z).value;
  const Vector fz2 = operator_eval(problem, z2).value;
  return (fz - fz2).dot(z.coords() - z2.coords());
}

double monotonicity_tolerance(const Vector& z, const Vector& z2) {
  return 1e-9 * (1.0 + z.norm()) * (1.0 + z2.norm());
}

double default_fd_step(const Vector& z) { return 1e-6 * (1.0 + z.norm()); }

double gradient_check(const SaddleProblem& problem, const Point& z, double h) {
  if (!(h > 0.0)) throw InputError("gradient_check: h must be positive");
  if (!problem.has_value_oracle())
    throw UnsupportedError("gradient_check: problem '" + problem.name() +
                           "' has no function-value oracle");
  if (z.split() != problem.split())
    throw InputError("gradient_check: point split does not match problem");
  const Split s = problem.split();
  const Vector& base = z.coords();
  Vector analytic(s.dim());
  analytic.head(s.n) = problem.grad_x(base);
  analytic.tail(s.m) = problem.grad_y(base);

  double worst = 0.0;
  Vector probe = base;
  for (Index i = 0; i < s.dim(); ++i) {
    probe[i] = base[i] + h;
    const double up = problem.value(probe);
    probe[i] = base[i] - h;
    const double down = problem.value(probe);
    probe[i] = base[i];
    const double fd = (up - down) / (2.0 * h);
    const double err =
        std::abs(fd - analytic[i]) / std::max(1.0, std::abs(analytic[i]));
    worst = std::max(worst, err);
  }
  return worst;
}

}  // namespace minmax

#include "minmax/sets.hpp"

#include "minmax/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

namespace minmax {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_dim(const FeasibleSet& set, const Vector& z, const char* what) {
  if (z.size() != set.dim()) {
    std::ostringstream os;
    os << what << ": vector has dimension " << z.size() << ", set "
       << set.describe() << " has dimension " << set.dim();
    throw InputError(os.str());
  }
}

// Sort-and-threshold projection onto the probability simplex.
Vector project_simplex(const Vector& z) {
  const Index d = z.size();
  std::vector<double> u(z.data(), z.data() + d);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (Index j = 0; j < d; ++j) {
    cumulative += u[static_cast<std::size_t>(j)];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u[static_cast<std::size_t>(j)] - candidate > 0.0) theta = candidate;
  }
  return (z.array() - theta).max(0.0).matrix();
}

Vector project_impl(const FeasibleSet& set, const Vector& z) {
  return std::visit(
      Overloaded{
          [&](const set_kind::Unconstrained&) -> Vector { return z; },
          [&](const set_kind::Ball& b) -> Vector {
            const Vector offset = z - b.center;
            const double norm = offset.norm();
            if (norm <= b.radius) return z;
            return b.center + (b.radius / norm) * offset;
          },
          [&](const set_kind::Box& b) -> Vector {
            return z.cwiseMax(b.lower).cwiseMin(b.upper);
          },
          [&](const set_kind::Simplex&) -> Vector { return project_simplex(z); },
          [&](const set_kind::Product& p) -> Vector {
            Vector out(z.size());
            Index offset = 0;
            for (const auto& block : p.blocks) {
              out.segment(offset, block.dim()) =
                  project_impl(block, z.segment(offset, block.dim()));
              offset += block.dim();
            }
            return out;
          },
      },
      set.kind());
}

}  // namespace

FeasibleSet::FeasibleSet(Kind kind) : kind_(std::move(kind)) {
  dim_ = std::visit(
      Overloaded{
          [](const set_kind::Unconstrained& u) { return u.dim; },
          [](const set_kind::Ball& b) { return b.center.size(); },
          [](const set_kind::Box& b) { return b.lower.size(); },
          [](const set_kind::Simplex& s) { return s.dim; },
          [](const set_kind::Product& p) {
            Index total = 0;
            for (const auto& block : p.blocks) total += block.dim();
            return total;
          },
      },
      kind_);
}

FeasibleSet FeasibleSet::unconstrained(Index dim) {
  if (dim < 1) throw InputError("unconstrained set needs dim >= 1");
  return FeasibleSet(set_kind::Unconstrained{dim});
}

FeasibleSet FeasibleSet::ball(Vector center, double radius) {
  if (center.size() < 1) throw InputError("ball needs dim >= 1");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw InputError("ball radius must be positive and finite");
  if (!center.allFinite()) throw InputError("ball center must be finite");
  return FeasibleSet(set_kind::Ball{std::move(center), radius});
}

FeasibleSet FeasibleSet::box(Vector lower, Vector upper) {
  if (lower.size() != upper.size() || lower.size() < 1)
    throw InputError("box bounds must have equal, positive dimension");
  if (!lower.allFinite() || !upper.allFinite())
    throw InputError("box bounds must be finite");
  for (Index i = 0; i < lower.size(); ++i) {
    if (lower[i] > upper[i]) {
      std::ostringstream os;
      os << "box: lower[" << i << "] = " << lower[i] << " > upper[" << i
         << "] = " << upper[i];
      throw InputError(os.str());
    }
  }
  return FeasibleSet(set_kind::Box{std::move(lower), std::move(upper)});
}

FeasibleSet FeasibleSet::simplex(Index dim) {
  if (dim < 1) throw InputError("simplex needs dim >= 1");
  return FeasibleSet(set_kind::Simplex{dim});
}

FeasibleSet FeasibleSet::product(std::vector<FeasibleSet> blocks) {
  if (blocks.empty()) throw InputError("product set needs at least one block");
  return FeasibleSet(set_kind::Product{std::move(blocks)});
}

bool FeasibleSet::bounded() const { return std::isfinite(diameter(*this)); }

bool FeasibleSet::is_unconstrained() const {
  return std::visit(
      Overloaded{
          [](const set_kind::Unconstrained&) { return true; },
          [](const set_kind::Product& p) {
            return std::all_of(p.blocks.begin(), p.blocks.end(),
                               [](const FeasibleSet& b) {
                                 return b.is_unconstrained();
                               });
          },
          [](const auto&) { return false; },
      },
      kind_);
}

std::string FeasibleSet::describe() const {
  auto vec = [](const Vector& v) {
    std::ostringstream os;
    os.precision(17);
    os << '[';
    for (Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << ']';
    return os.str();
  };
  return std::visit(
      Overloaded{
          [](const set_kind::Unconstrained& u) {
            return "unconstrained(" + std::to_string(u.dim) + ")";
          },
          [&](const set_kind::Ball& b) {
            std::ostringstream os;
            os.precision(17);
            os << "ball(" << vec(b.center) << ", " << b.radius << ")";
            return os.str();
          },
          [&](const set_kind::Box& b) {
            return "box(" + vec(b.lower) + ", " + vec(b.upper) + ")";
          },
          [](const set_kind::Simplex& s) {
            return "simplex(" + std::to_string(s.dim) + ")";
          },
          [](const set_kind::Product& p) {
            std::string out = "product(";
            for (std::size_t i = 0; i < p.blocks.size(); ++i)
              out += (i ? ", " : "") + p.blocks[i].describe();
            return out + ")";
          },
      },
      kind_);
}

Vector project(const FeasibleSet& set, const Vector& z) {
  check_dim(set, z, "project");
  return project_impl(set, z);
}

double diameter(const FeasibleSet& set) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return std::visit(
      Overloaded{
          [&](const set_kind::Unconstrained&) { return inf; },
          [](const set_kind::Ball& b) { return 2.0 * b.radius; },
          [](const set_kind::Box& b) { return (b.upper - b.lower).norm(); },
          [](const set_kind::Simplex& s) {
            return s.dim == 1 ? 0.0 : std::sqrt(2.0);
          },
          [&](const set_kind::Product& p) {
            double sq = 0.0;
            for (const auto& block : p.blocks) {
              const double d = diameter(block);
              if (!std::isfinite(d)) return inf;
              sq += d * d;
            }
            return std::sqrt(sq);
          },
      },
      set.kind());
}

double linear_max(const FeasibleSet& set, const Vector& c) {
  check_dim(set, c, "linear_max");
  return std::visit(
      Overloaded{
          [](const set_kind::Unconstrained&) -> double {
            throw UnsupportedError("linear_max: set is unbounded");
          },
          [&](const set_kind::Ball& b) {
            return c.dot(b.center) + b.radius * c.norm();
          },
          [&](const set_kind::Box& b) {
            double total = 0.0;
            for (Index i = 0; i < c.size(); ++i)
              total += c[i] >= 0.0 ? c[i] * b.upper[i] : c[i] * b.lower[i];
            return total;
          },
          [&](const set_kind::Simplex&) { return c.maxCoeff(); },
          [&](const set_kind::Product& p) {
            double total = 0.0;
            Index offset = 0;
            for (const auto& block : p.blocks) {
              total += linear_max(block, c.segment(offset, block.dim()));
              offset += block.dim();
            }
            return total;
          },
      },
      set.kind());
}

double feasibility_residual(const FeasibleSet& set, const Vector& z) {
  return (z - project(set, z)).norm();
}

std::optional<std::pair<FeasibleSet, FeasibleSet>> split_at(
    const FeasibleSet& set, Index n) {
  if (n <= 0 || n >= set.dim()) return std::nullopt;
  const Index m = set.dim() - n;
  return std::visit(
      Overloaded{
          [&](const set_kind::Unconstrained&)
              -> std::optional<std::pair<FeasibleSet, FeasibleSet>> {
            return std::pair{FeasibleSet::unconstrained(n),
                             FeasibleSet::unconstrained(m)};
          },
          [&](const set_kind::Box& b)
              -> std::optional<std::pair<FeasibleSet, FeasibleSet>> {
            return std::pair{
                FeasibleSet::box(b.lower.head(n), b.upper.head(n)),
                FeasibleSet::box(b.lower.tail(m), b.upper.tail(m))};
          },
          [&](const set_kind::Product& p)
              -> std::optional<std::pair<FeasibleSet, FeasibleSet>> {
            std::vector<FeasibleSet> first;
            std::vector<FeasibleSet> second;
            Index offset = 0;
            for (const auto& block : p.blocks) {
              if (offset < n && offset + block.dim() > n) {
                auto inner = split_at(block, n - offset);
                if (!inner) return std::nullopt;
                first.push_back(inner->first);
                second.push_back(inner->second);
              } else if (offset < n) {
                first.push_back(block);
              } else {
                second.push_back(block);
              }
              offset += block.dim();
            }
            auto collapse = [](std::vector<FeasibleSet> blocks) {
              return blocks.size() == 1 ? blocks.front()
                                        : FeasibleSet::product(std::move(blocks));
            };
            return std::pair{collapse(std::move(first)),
                             collapse(std::move(second))};
          },
          [](const auto&) -> std::optional<std::pair<FeasibleSet, FeasibleSet>> {
            return std::nullopt;
          },
      },
      set.kind());
}

}  // namespace minmax

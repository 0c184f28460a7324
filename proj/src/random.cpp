#include "minmax/random.hpp"

#include <variant>

namespace minmax {

Vector sample_feasible(const FeasibleSet& set, Rng& rng,
                       double unbounded_scale) {
  const auto& kind = set.kind();
  if (const auto* b = std::get_if<set_kind::Ball>(&kind)) {
    return rng.in_ball(b->center, b->radius);
  }
  if (const auto* b = std::get_if<set_kind::Box>(&kind)) {
    Vector out(b->lower.size());
    for (Index i = 0; i < out.size(); ++i)
      out[i] = rng.uniform(b->lower[i], b->upper[i]);
    return out;
  }
  if (const auto* s = std::get_if<set_kind::Simplex>(&kind)) {
    Vector out(s->dim);
    for (Index i = 0; i < s->dim; ++i) {
      double u = rng.uniform();
      while (u <= 0.0) u = rng.uniform();
      out[i] = -std::log(u);
    }
    return out / out.sum();
  }
  if (const auto* p = std::get_if<set_kind::Product>(&kind)) {
    Vector out(set.dim());
    Index offset = 0;
    for (const auto& block : p->blocks) {
      out.segment(offset, block.dim()) =
          sample_feasible(block, rng, unbounded_scale);
      offset += block.dim();
    }
    return out;
  }
  return unbounded_scale * rng.normal_vector(set.dim());
}

}  // namespace minmax

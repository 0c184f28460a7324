#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minmax/metrics.hpp"
#include "minmax/problems.hpp"
#include "minmax/random.hpp"

#include <cmath>
#include <limits>

using namespace minmax;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

RunTrace manual_trace(const std::vector<Vector>& zs) {
  SolverConfig c;
  c.T = static_cast<int>(zs.size()) - 1;
  RunTrace t("manual", c, Split{1, 1});
  t.start(zs[0], 0);
  for (std::size_t i = 1; i < zs.size(); ++i) t.push(zs[i], 1, static_cast<int>(i));
  return t;
}

}  // namespace

TEST_CASE("time average excludes z0") {
  const RunTrace t = manual_trace({vec({9.0, 9.0}), vec({1.0, 0.0}), vec({0.0, 1.0})});
  const Vector avg = time_average(t);
  CHECK(avg[0] == 0.5);
  CHECK(avg[1] == 0.5);

  const RunTrace still = manual_trace({vec({0.0, 0.0}), vec({0.0, 0.0})});
  CHECK(time_average(still).norm() == 0.0);

  SolverConfig c;
  RunTrace empty("manual", c, Split{1, 1});
  empty.start(vec({0.0, 0.0}), 0);
  CHECK_THROWS_AS(time_average(empty), InputError);
}

TEST_CASE("time average of a constrained run stays feasible") {
  const SaddleProblem p = zoo_problem("MP");
  SolverConfig c;
  c.T = 200;
  const RunTrace r = ceg_run(p, c);
  CHECK(feasibility_residual(p.set(), time_average(r)) <= 1e-12);
}

TEST_CASE("duality gap examples on matching pennies") {
  const SaddleProblem p = zoo_problem("MP");
  const GapReport centre = duality_gap(p, Vector::Constant(4, 0.5));
  CHECK(std::abs(centre.gap) <= 1e-15);
  CHECK(centre.method == GapMethod::ExactSupport);
  // Vertex brute force: max_y x^T A y over e1, e2 and min over x.
  CHECK(duality_gap(p, vec({1.0, 0.0, 1.0, 0.0})).gap == doctest::Approx(2.0));
}

TEST_CASE("closed-form gap of QUAD1 at the saddle") {
  const SaddleProblem p = zoo_problem("QUAD1");
  const GapReport g = duality_gap(p, *p.saddle());
  CHECK(std::abs(g.gap) <= 1e-10);
  CHECK(g.method == GapMethod::ClosedForm);
  CHECK(std::isinf(g.comparator_radius));
}

TEST_CASE("unbounded problems without a gap oracle are unsupported") {
  CHECK_THROWS_AS(duality_gap(zoo_problem("BILIN1"), vec({1.0, 1.0})),
                  UnsupportedError);
}

TEST_CASE("sampled gap on a set without a closed form") {
  // Strip the oracle so the sampled fallback runs.
  const SaddleProblem exact = zoo_problem("MP");
  SaddleProblemParts parts = exact.parts();
  parts.gap_oracle = nullptr;
  const SaddleProblem sampled(parts);
  Rng rng(4);
  for (int i = 0; i < 5; ++i) {
    const Vector z = sample_feasible(exact.set(), rng);
    const GapReport g = duality_gap(sampled, z, 1);
    CHECK(g.method == GapMethod::GridRestricted);
    CHECK(g.comparator_radius == doctest::Approx(2.0));
    CHECK(g.gap <= exact.gap(z) + 1e-12);
    CHECK(g.gap >= exact.gap(z) - 0.05);
  }
  // Same seed, same answer.
  CHECK(duality_gap(sampled, vec({1, 0, 0, 1}), 3).gap ==
        duality_gap(sampled, vec({1, 0, 0, 1}), 3).gap);
}

TEST_CASE("gap is never negative and vanishes at the saddles") {
  Rng rng(8);
  for (const std::string& name : {"MP", "BILIN-BALL", "QUAD1"}) {
    const SaddleProblem p = zoo_problem(name);
    for (int i = 0; i < 100; ++i)
      CHECK(duality_gap(p, sample_feasible(p.set(), rng)).gap >= -1e-10);
    CHECK(duality_gap(p, *p.saddle()).gap <= 1e-9);
  }
}

TEST_CASE("restricted gap") {
  const SaddleProblem p = zoo_problem("BILIN1");
  const GapReport r = restricted_gap(p, vec({0.5, 0.5}), vec({0.0, 0.0}), 2.0);
  CHECK(r.comparator_radius == 2.0);
  // c = (-y_hat, x_hat), centre 0: rho * ||c||.
  CHECK(r.gap == doctest::Approx(2.0 * std::sqrt(0.5)));
  CHECK_THROWS_AS(restricted_gap(p, vec({0.5, 0.5}), vec({0.0, 0.0}), -1.0),
                  InputError);

  // Trust-region oracle against dense sampling for the quadratic problem.
  const SaddleProblem q = zoo_problem("QUAD1");
  Rng rng(12);
  const Vector zh = vec({0.7, -0.2});
  const Vector centre = vec({1.0, 1.0});
  const double oracle = q.restricted_gap(zh, centre, 1.5);
  double best = -1e300;
  for (int i = 0; i < 20000; ++i) {
    const Vector z = rng.in_ball(centre, 1.5);
    Vector a = zh, b = z;
    a[1] = z[1];
    b[1] = zh[1];
    best = std::max(best, q.value(a) - q.value(b));
  }
  CHECK(oracle >= best - 1e-12);
  CHECK(oracle <= best + 1e-2);
}

TEST_CASE("operator residual examples") {
  const SaddleProblem p = zoo_problem("BILIN1");
  CHECK(operator_residual(p, Vector::Zero(2)) <= 1e-10);
  CHECK(operator_residual(p, vec({1.0, 2.0})) == doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("PP last-iterate residual bound on BILIN1") {
  const SaddleProblem p = zoo_problem("BILIN1");
  SolverConfig c;
  c.T = 200;
  const RunTrace r = pp_run(p, c);
  const double d0 = (r.initial() - *p.saddle()).norm();
  for (int T : {1, 10, 200}) {
    SolverConfig cT = c;
    cT.T = T;
    const RunTrace rt = pp_run(p, cT);
    CHECK(operator_residual(p, rt.last()) <=
          d0 / (rt.gamma * std::sqrt(static_cast<double>(T))) + 1e-12);
  }
}

TEST_CASE("regret sums") {
  const SaddleProblem p = zoo_problem("BILIN1");
  SolverConfig c;
  c.T = 1;
  c.k_rule = KRule::auto_unbounded();
  RunTrace single = ceg_run(p, c);
  CHECK(regret_sum(single, p, Vector::Zero(2)) ==
        doctest::Approx(regret_sum(single, p, Vector::Zero(2), RegretMode::Recompute)));

  // Constant trace at the saddle.
  c.T = 40;
  c.initial_point = Vector::Zero(2);
  const RunTrace still = ceg_run(p, c);
  Rng rng(2);
  for (int i = 0; i < 10; ++i)
    CHECK(regret_sum(still, p, rng.normal_vector(2)) <= 0.0);

  const SaddleProblem mp = zoo_problem("MP");
  SolverConfig m;
  m.T = 300;
  const RunTrace run = ceg_run(mp, m);
  for (int i = 0; i < 20; ++i) {
    const Vector z = sample_feasible(mp.set(), rng);
    CHECK(regret_sum(run, mp, z) ==
          doctest::Approx(regret_sum(run, mp, z, RegretMode::Recompute))
              .epsilon(1e-9));
  }
  CHECK_THROWS_AS(regret_sum(run, mp, vec({2.0, 0.0, 0.0, 1.0})), InputError);
  CHECK_THROWS_AS(regret_sum(run, mp, vec({1.0, 0.0})), InputError);
}

TEST_CASE("regret of the empty sum is zero") {
  const SaddleProblem p = zoo_problem("BILIN1");
  SolverConfig c;
  RunTrace t("manual", c, p.split());
  t.start(vec({1.0, 0.0}), 0);
  CHECK(regret_sum(t, p, vec({0.3, 0.1})) == 0.0);
}

TEST_CASE("time-average gap is bounded by the worst regret") {
  const SaddleProblem p = zoo_problem("MP");
  SolverConfig c;
  c.T = 500;
  const RunTrace r = ceg_run(p, c);
  const double gap = duality_gap(p, time_average(r)).gap;
  // The best responses at the average are simplex vertex pairs.
  double worst = -1e300;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Vector z = Vector::Zero(4);
      z[a] = 1.0;
      z[2 + b] = 1.0;
      worst = std::max(worst, regret_sum(r, p, z));
    }
  CHECK(c.T * gap <= worst + 1e-6 * c.T);
}

TEST_CASE("gap reduction inequality on MP pairs") {
  const SaddleProblem p = zoo_problem("MP");
  Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    const Vector zh = sample_feasible(p.set(), rng);
    const Vector z = sample_feasible(p.set(), rng);
    Vector a = zh, b = z;
    a.tail(2) = z.tail(2);
    b.tail(2) = zh.tail(2);
    CHECK(p.value(a) - p.value(b) <= p.joint_operator(zh).dot(zh - z) + 1e-9);
  }
}

TEST_CASE("MetricSeries invariants") {
  MetricSeries s("gap");
  s.add(1, 0.5);
  s.add(3, 0.25);
  CHECK_THROWS_AS(s.add(3, 0.1), InputError);
  CHECK_THROWS_AS(s.add(4, std::numeric_limits<double>::quiet_NaN()), NumericError);
  CHECK(s.points().size() == 2);
}

TEST_CASE("rate fit on exact power laws") {
  MetricSeries inv("inv"), root("root");
  for (int t = 1; t <= 100; ++t) {
    inv.add(t, 1.0 / t);
    root.add(t, 1.0 / std::sqrt(static_cast<double>(t)));
  }
  const RateFit a = rate_fit(inv, 10);
  CHECK(a.slope == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(a.r2 == doctest::Approx(1.0));
  CHECK(a.points == 91);
  CHECK(rate_fit(root, 10).slope == doctest::Approx(-0.5).epsilon(1e-6));

  MetricSeries short_series("short");
  for (int t = 1; t <= 9; ++t) short_series.add(t, 1.0);
  CHECK_THROWS_AS(rate_fit(short_series, 1), InputError);

  MetricSeries zero("zero");
  for (int t = 1; t <= 20; ++t) zero.add(t, t == 15 ? 0.0 : 1.0);
  CHECK_THROWS_AS(rate_fit(zero, 1), UnsupportedError);
}

TEST_CASE("MP gap under CEG decays at least like 1/t") {
  const SaddleProblem p = zoo_problem("MP");
  SolverConfig c;
  c.T = 10000;
  c.record_every = 100;
  const RunTrace r = ceg_run(p, c);
  MetricSeries s("MP/ceg/gap");
  for (const TraceRecord& rec : r.records())
    if (rec.t >= 100) s.add(rec.t, duality_gap(p, rec.running_average).gap);
  CHECK(rate_fit(s, 100).slope <= -0.9);
}

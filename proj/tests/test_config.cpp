#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minmax/config.hpp"

#include <string>

using namespace minmax;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("zoo config with defaults") {
  const ExperimentConfig c = parse_config(
      "# matching pennies\n"
      "problem = MP\n"
      "solvers = ceg, eg\n"
      "T = 1000\n"
      "gamma = auto\n"
      "k = auto\n");
  REQUIRE(c.problems.size() == 1);
  CHECK(c.problems[0].name == "MP");
  CHECK(c.solvers == std::vector<std::string>{"ceg", "eg"});
  CHECK(c.T == 1000);
  CHECK_FALSE(c.gamma);
  CHECK_FALSE(c.k);
  CHECK(c.format == OutputFormat::Csv);
  CHECK(c.seed == 0);
}

TEST_CASE("every scalar key") {
  const ExperimentConfig c = parse_config(
      "problem = BILIN1, QUAD1\n"
      "solvers = pp\n"
      "T = 7\n"
      "gamma = 0.125\n"
      "k = 9\n"
      "seed = 42\n"
      "metrics = gap, step_norm\n"
      "output = runs/a-1\n"
      "format = json\n"
      "record_every = 2\n"
      "inner_early_exit = 0\n"
      "verify = true\n");
  CHECK(c.problems.size() == 2);
  CHECK(*c.gamma == 0.125);
  CHECK(*c.k == 9);
  CHECK(c.seed == 42);
  CHECK(c.metrics == std::vector<std::string>{"gap", "step_norm"});
  CHECK(c.output == "runs/a-1");
  CHECK(c.format == OutputFormat::Json);
  CHECK(c.record_every == 2);
  CHECK(c.inner_early_exit == 0.0);
  CHECK(c.verify);
}

TEST_CASE("inline problems with matrix literals over several lines") {
  const ExperimentConfig c = parse_config(
      "problem = inline\n"
      "problem.name = game\n"
      "problem.family = bilinear\n"
      "problem.A = [[1, -1],\n"
      "             [-1, 1]]\n"
      "problem.set = product(simplex(2), simplex(2))\n"
      "problem.z0 = [1, 0, 0, 1]\n"
      "solvers = ceg\n");
  REQUIRE(c.problems.size() == 1);
  const ProblemSpec& s = c.problems[0];
  CHECK(s.name == "game");
  const auto& A = std::get<family::Bilinear>(s.family).A;
  CHECK(A(0, 1) == -1.0);
  CHECK(A(1, 1) == 1.0);
  CHECK(s.set->describe() == "product(simplex(2), simplex(2))");
  CHECK((*s.initial_point)[3] == 1.0);
}

TEST_CASE("inline quadratic with a shift") {
  const ExperimentConfig c = parse_config(
      "problem = inline\n"
      "problem.family = quadratic\n"
      "problem.P = [[1]]\n"
      "problem.A = [[1]]\n"
      "problem.Q = [[2]]\n"
      "problem.shift = [3, -1]\n"
      "solvers = pp\n");
  const SaddleProblem p = build_problem(c.problems[0]);
  CHECK((*p.saddle() - (Vector(2) << 3.0, -1.0).finished()).norm() <= 1e-12);
}

TEST_CASE("set grammar") {
  CHECK(parse_set("unconstrained(3)").dim() == 3);
  CHECK(parse_set("ball([1, 2], 0.5)").describe() == "ball([1, 2], 0.5)");
  CHECK(parse_set("ball(3, 2)").dim() == 3);
  CHECK(diameter(parse_set("box([0, 0], [3, 4])")) == doctest::Approx(5.0));
  CHECK(parse_set("product(simplex(2), ball(1, 1), box([0], [1]))").dim() == 4);
  CHECK_THROWS_AS(parse_set("simplex(0)"), ValidationError);
  CHECK_THROWS_AS(parse_set("sphere(2)"), ValidationError);
  CHECK_THROWS_AS(parse_set("ball(2)"), ValidationError);
  CHECK_THROWS_AS(parse_set("box([1], [0])"), ValidationError);
  CHECK_THROWS_AS(parse_set("simplex(2"), ValidationError);
  CHECK_THROWS_AS(parse_set("42"), ValidationError);
}

TEST_CASE("every set round-trips through describe") {
  for (const char* text :
       {"unconstrained(2)", "simplex(4)", "ball([0.5, -1], 2)",
        "box([-1, 0], [1, 0.5])", "product(simplex(2), ball([0], 1))"}) {
    const FeasibleSet s = parse_set(text);
    CHECK(parse_set(s.describe()).describe() == s.describe());
  }
}

TEST_CASE("validation errors name the field") {
  CHECK(error_of("problem = MP\nsolvers = ceg, eg, ceg\n").find("solvers[2]") !=
        std::string::npos);
  CHECK(error_of("problem = MP\nsolvers = ceg, eg, ceg\n").find("duplicate") !=
        std::string::npos);
  CHECK(error_of("problem = MP\nsolvers = ceg\nT = 0\n").find("T") == 0);
  CHECK(error_of("problem = NOPE\nsolvers = ceg\n").find("unknown problem") !=
        std::string::npos);
  CHECK(error_of("problem = MP\n").find("solvers") != std::string::npos);
  CHECK(error_of("solvers = ceg\n").find("problem") != std::string::npos);
  CHECK(error_of("problem = MP\nsolvers = sgd\n").find("solvers[0]") !=
        std::string::npos);
  CHECK(error_of("problem = MP\nsolvers = ceg\nformat = xml\n").find("format") !=
        std::string::npos);
  CHECK(error_of("problem = MP\nsolvers = ceg\nbogus = 1\n").find("bogus") !=
        std::string::npos);
  CHECK(error_of("problem = MP\nsolvers = ceg\nT = 2.5\n").find("integer") !=
        std::string::npos);
  CHECK(error_of("problem = MP\nproblem = MP\n").find("twice") !=
        std::string::npos);
  CHECK(error_of("problem = MP\nsolvers = ceg\nmetrics = gap, nope\n")
            .find("metrics[1]") != std::string::npos);
  CHECK(error_of("problem = inline\nproblem.family = bilinear\nsolvers = ceg\n")
            .find("problem.A") != std::string::npos);
  CHECK(error_of("problem = inline\nproblem.family = bilinear\n"
                 "problem.A = [[1, 2], [3]]\nsolvers = ceg\n")
            .find("problem.A[1]") != std::string::npos);
  CHECK(error_of("problem = inline\nproblem.family = bilinear\n"
                 "problem.A = [[1]]\nproblem.set = simplex(3)\nsolvers = ceg\n")
            .find("problem.set") != std::string::npos);
  CHECK(error_of("problem = MP\nsolvers = ceg\ngamma = -1\n").find("gamma") !=
        std::string::npos);
  CHECK(error_of("problem = MP\nsolvers = ceg\nk = 0\n").find("k") == 0);
  CHECK(error_of("problem = MP\nsolvers [ceg\n").find("line 2") !=
        std::string::npos);
}

TEST_CASE("overrides replace config values") {
  ExperimentConfig c = parse_config("problem = MP\nsolvers = ceg\nT = 10\n");
  apply_override(c, "T", "500");
  apply_override(c, "solvers", "eg,pp");
  apply_override(c, "problem", "QUAD1");
  apply_override(c, "gamma", "0.1");
  apply_override(c, "k", "auto");
  CHECK(c.T == 500);
  CHECK(c.solvers.size() == 2);
  CHECK(c.problems[0].name == "QUAD1");
  CHECK(*c.gamma == 0.1);
  CHECK_FALSE(c.k);
  CHECK_THROWS_AS(apply_override(c, "T", "many"), ValidationError);
  CHECK_THROWS_AS(apply_override(c, "nope", "1"), ValidationError);
}

TEST_CASE("solver config derives the k rule from the set") {
  ExperimentConfig c = parse_config("problem = MP, BILIN1\nsolvers = ceg\n");
  const SolverConfig bounded = solver_config_for(c, build_problem(c.problems[0]));
  CHECK(bounded.k_rule.kind == KRule::Kind::AutoBounded);
  const SolverConfig open = solver_config_for(c, build_problem(c.problems[1]));
  CHECK(open.k_rule.kind == KRule::Kind::AutoUnbounded);
  c.k = 4;
  CHECK(solver_config_for(c, build_problem(c.problems[1])).k_rule.fixed_k == 4);
}

TEST_CASE("load_config reports missing files") {
  CHECK_THROWS_AS(load_config("/nonexistent/config.txt"), InputError);
}

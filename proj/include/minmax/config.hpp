#pragma once

#include "minmax/problems.hpp"
#include "minmax/solvers.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace minmax {

/// Parsed right-hand side of a config line: number, bare word, array literal
/// or call such as simplex(2).
struct ConfigValue {
  enum class Kind { Number, Word, Array, Call };
  Kind kind = Kind::Word;
  double number = 0.0;
  std::string text;  ///< word, or callee name for calls
  std::vector<ConfigValue> items;

  std::string describe() const;
};

/// Flat key-value file: one `key = value` per line, `#` comments, values may
/// continue over lines while brackets are open. A top-level value may be a
/// comma-separated list.
std::map<std::string, std::vector<ConfigValue>> parse_key_values(
    std::string_view text);

ConfigValue parse_value(std::string_view text);

/// Builds a set from the grammar used in configs: unconstrained(d),
/// ball([c...], r) or ball(d, r), box([lo...], [hi...]), simplex(d),
/// product(s1, s2, ...).
FeasibleSet parse_set(const ConfigValue& value, const std::string& field);
FeasibleSet parse_set(std::string_view text);

Matrix parse_matrix(const ConfigValue& value, const std::string& field);
Vector parse_vector(const ConfigValue& value, const std::string& field);

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
  std::vector<ProblemSpec> problems;
  std::vector<std::string> solvers;
  int T = 100;
  std::optional<double> gamma;  ///< empty: auto
  std::optional<int> k;         ///< empty: auto
  std::uint64_t seed = 0;
  std::vector<std::string> metrics = {"gap", "grad_norm_residual",
                                      "step_norm"};
  std::string output = "minmax_out";
  OutputFormat format = OutputFormat::Csv;
  int record_every = 1;
  double inner_early_exit = 1e-14;
  bool verify = false;
};

/// Interprets parsed key-values. Throws ValidationError naming the field.
ExperimentConfig config_from_values(
    const std::map<std::string, std::vector<ConfigValue>>& values);
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

/// Checks the invariants the runner relies on; throws ValidationError with a
/// field path such as "solvers[1]".
void validate(const ExperimentConfig& config);

/// Applies a single `key = value` override (used by the CLI flags).
void apply_override(ExperimentConfig& config, const std::string& key,
                    const std::string& value);

SolverConfig solver_config_for(const ExperimentConfig& config,
                               const SaddleProblem& problem);

}  // namespace minmax

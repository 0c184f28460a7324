#include "minmax/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace minmax {

std::string ConfigValue::describe() const {
  switch (kind) {
    case Kind::Number: {
      std::ostringstream os;
      os.precision(17);
      os << number;
      return os.str();
    }
    case Kind::Word:
      return text;
    case Kind::Array:
    case Kind::Call: {
      std::string out = kind == Kind::Call ? text + "(" : "[";
      for (std::size_t i = 0; i < items.size(); ++i)
        out += (i ? ", " : "") + items[i].describe();
      return out + (kind == Kind::Call ? ")" : "]");
    }
  }
  return {};
}

namespace {

bool is_word_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '/' ||
         c == '~' || c == '.';
}

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         c == '.' || c == '/' || c == '~' || c == '+';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::vector<ConfigValue> parse_list() {
    std::vector<ConfigValue> out;
    skip_space();
    if (at_end()) throw ValidationError("empty value");
    out.push_back(parse_one());
    skip_space();
    while (!at_end() && peek() == ',') {
      ++pos_;
      out.push_back(parse_one());
      skip_space();
    }
    if (!at_end()) fail("unexpected character");
    return out;
  }

  ConfigValue parse_one() {
    skip_space();
    if (at_end()) fail("unexpected end of value");
    const char c = peek();
    if (c == '[') {
      ++pos_;
      ConfigValue v;
      v.kind = ConfigValue::Kind::Array;
      v.items = parse_items(']');
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' ||
        (c == '.' && pos_ + 1 < text_.size() &&
         std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      return parse_number();
    }
    if (is_word_start(c)) {
      const std::size_t start = pos_;
      while (!at_end() && is_word_char(peek())) ++pos_;
      ConfigValue v;
      v.text = std::string(text_.substr(start, pos_ - start));
      skip_space();
      if (!at_end() && peek() == '(') {
        ++pos_;
        v.kind = ConfigValue::Kind::Call;
        v.items = parse_items(')');
      } else {
        v.kind = ConfigValue::Kind::Word;
      }
      return v;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

 private:
  std::vector<ConfigValue> parse_items(char close) {
    std::vector<ConfigValue> items;
    skip_space();
    if (!at_end() && peek() == close) {
      ++pos_;
      return items;
    }
    while (true) {
      items.push_back(parse_one());
      skip_space();
      if (at_end()) fail(std::string("missing '") + close + "'");
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      if (peek() == close) {
        ++pos_;
        return items;
      }
      fail("expected ',' or closing bracket");
    }
  }

  ConfigValue parse_number() {
    const std::string rest(text_.substr(pos_));
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(rest, &used);
    } catch (const std::exception&) {
      fail("malformed number");
    }
    pos_ += used;
    ConfigValue v;
    v.kind = ConfigValue::Kind::Number;
    v.number = value;
    return v;
  }

  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << what << " at column " << pos_ + 1 << " in '" << text_ << "'";
    throw ValidationError(os.str());
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

int bracket_depth(std::string_view s) {
  int depth = 0;
  for (char c : s) {
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
  }
  return depth;
}

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw ValidationError(field + ": " + what);
}

double as_number(const ConfigValue& v, const std::string& field) {
  if (v.kind != ConfigValue::Kind::Number)
    field_error(field, "expected a number, got '" + v.describe() + "'");
  return v.number;
}

int as_int(const ConfigValue& v, const std::string& field) {
  const double x = as_number(v, field);
  if (x != std::floor(x) || std::abs(x) > 2e9)
    field_error(field, "expected an integer, got '" + v.describe() + "'");
  return static_cast<int>(x);
}

std::string as_word(const ConfigValue& v, const std::string& field) {
  if (v.kind != ConfigValue::Kind::Word)
    field_error(field, "expected a name, got '" + v.describe() + "'");
  return v.text;
}

const ConfigValue& single(const std::vector<ConfigValue>& values,
                          const std::string& field) {
  if (values.size() != 1) field_error(field, "expected exactly one value");
  return values.front();
}

Index as_dim(const ConfigValue& v, const std::string& field) {
  const int d = as_int(v, field);
  if (d < 1) field_error(field, "dimension must be >= 1");
  return d;
}

ProblemSpec inline_problem(
    const std::map<std::string, std::vector<ConfigValue>>& values) {
  auto get = [&](const std::string& key) -> const ConfigValue* {
    const auto it = values.find(key);
    return it == values.end() ? nullptr : &single(it->second, key);
  };
  auto require = [&](const std::string& key) -> const ConfigValue& {
    const ConfigValue* v = get(key);
    if (!v) field_error(key, "required for an inline problem");
    return *v;
  };

  ProblemSpec spec;
  spec.name = get("problem.name") ? as_word(*get("problem.name"), "problem.name")
                                  : std::string("inline");
  const std::string fam = as_word(require("problem.family"), "problem.family");
  const Matrix A = parse_matrix(require("problem.A"), "problem.A");
  if (fam == "bilinear") {
    spec.family = family::Bilinear{A};
  } else if (fam == "quadratic") {
    const Matrix P = parse_matrix(require("problem.P"), "problem.P");
    const Matrix Q = parse_matrix(require("problem.Q"), "problem.Q");
    if (P.rows() != A.rows() || P.cols() != A.rows())
      field_error("problem.P", "must be rows(A) x rows(A)");
    if (Q.rows() != A.cols() || Q.cols() != A.cols())
      field_error("problem.Q", "must be cols(A) x cols(A)");
    spec.family = family::QuadraticSaddle{P, A, Q};
  } else {
    field_error("problem.family", "expected bilinear or quadratic, got '" +
                                      fam + "'");
  }
  if (const ConfigValue* s = get("problem.set")) {
    spec.set = parse_set(*s, "problem.set");
    if (spec.set->dim() != A.rows() + A.cols())
      field_error("problem.set", "dimension " + std::to_string(spec.set->dim()) +
                                     " != rows(A) + cols(A) = " +
                                     std::to_string(A.rows() + A.cols()));
  }
  if (const ConfigValue* z0 = get("problem.z0")) {
    spec.initial_point = parse_vector(*z0, "problem.z0");
    if (spec.initial_point->size() != A.rows() + A.cols())
      field_error("problem.z0", "wrong dimension");
  }
  if (const ConfigValue* shift = get("problem.shift")) {
    const Vector s = parse_vector(*shift, "problem.shift");
    if (s.size() != A.rows() + A.cols())
      field_error("problem.shift", "wrong dimension");
    if (spec.set && !spec.set->is_unconstrained())
      field_error("problem.shift", "translation needs an unconstrained set");
    const auto z0 = spec.initial_point;
    spec.initial_point.reset();
    ProblemSpec shifted = translated_spec(spec, s, spec.name);
    shifted.initial_point = z0;
    return shifted;
  }
  return spec;
}

void apply_key(ExperimentConfig& config, const std::string& key,
               const std::vector<ConfigValue>& values) {
  if (key == "problem") {
    config.problems.clear();
    for (std::size_t i = 0; i < values.size(); ++i) {
      const std::string field = "problem[" + std::to_string(i) + "]";
      const std::string name = as_word(values[i], field);
      try {
        config.problems.push_back(zoo_spec(name));
      } catch (const InputError&) {
        field_error(values.size() == 1 ? "problem" : field,
                    "unknown problem '" + name + "'");
      }
    }
  } else if (key == "solvers" || key == "solver") {
    config.solvers.clear();
    for (std::size_t i = 0; i < values.size(); ++i)
      config.solvers.push_back(
          as_word(values[i], "solvers[" + std::to_string(i) + "]"));
  } else if (key == "T") {
    config.T = as_int(single(values, key), key);
  } else if (key == "gamma") {
    const ConfigValue& v = single(values, key);
    if (v.kind == ConfigValue::Kind::Word && v.text == "auto")
      config.gamma.reset();
    else
      config.gamma = as_number(v, key);
  } else if (key == "k") {
    const ConfigValue& v = single(values, key);
    if (v.kind == ConfigValue::Kind::Word && v.text == "auto")
      config.k.reset();
    else
      config.k = as_int(v, key);
  } else if (key == "seed") {
    const int s = as_int(single(values, key), key);
    if (s < 0) field_error(key, "must be >= 0");
    config.seed = static_cast<std::uint64_t>(s);
  } else if (key == "metrics") {
    config.metrics.clear();
    for (std::size_t i = 0; i < values.size(); ++i)
      config.metrics.push_back(
          as_word(values[i], "metrics[" + std::to_string(i) + "]"));
  } else if (key == "output" || key == "out") {
    config.output = as_word(single(values, key), key);
  } else if (key == "format") {
    const std::string f = as_word(single(values, key), key);
    if (f == "csv")
      config.format = OutputFormat::Csv;
    else if (f == "json")
      config.format = OutputFormat::Json;
    else
      field_error(key, "expected csv or json, got '" + f + "'");
  } else if (key == "record_every") {
    config.record_every = as_int(single(values, key), key);
  } else if (key == "inner_early_exit") {
    config.inner_early_exit = as_number(single(values, key), key);
  } else if (key == "verify") {
    const std::string v = as_word(single(values, key), key);
    if (v != "true" && v != "false") field_error(key, "expected true or false");
    config.verify = v == "true";
  } else {
    throw ValidationError("unknown key '" + key + "'");
  }
}

}  // namespace

std::map<std::string, std::vector<ConfigValue>> parse_key_values(
    std::string_view text) {
  std::map<std::string, std::vector<ConfigValue>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  std::string pending_key;
  std::string pending_value;
  int pending_line = 0;

  auto flush = [&] {
    if (pending_key.empty()) return;
    try {
      out[pending_key] = Parser(pending_value).parse_list();
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(pending_line) + ", " +
                            pending_key + ": " + e.what());
    }
    pending_key.clear();
    pending_value.clear();
  };

  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (!pending_key.empty()) {
      pending_value += " " + stripped;
      if (bracket_depth(pending_value) <= 0) flush();
      continue;
    }
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ValidationError("line " + std::to_string(line_no) +
                            ": expected 'key = value'");
    const std::string key = trim(std::string_view(stripped).substr(0, eq));
    if (key.empty())
      throw ValidationError("line " + std::to_string(line_no) + ": empty key");
    if (out.count(key))
      throw ValidationError("line " + std::to_string(line_no) + ": key '" +
                            key + "' given twice");
    pending_key = key;
    pending_value = trim(std::string_view(stripped).substr(eq + 1));
    pending_line = line_no;
    if (bracket_depth(pending_value) <= 0) flush();
  }
  if (!pending_key.empty()) {
    throw ValidationError("line " + std::to_string(pending_line) + ", " +
                          pending_key + ": unbalanced brackets");
  }
  return out;
}

ConfigValue parse_value(std::string_view text) {
  const auto items = Parser(text).parse_list();
  if (items.size() != 1) throw ValidationError("expected a single value");
  return items.front();
}

Vector parse_vector(const ConfigValue& value, const std::string& field) {
  if (value.kind == ConfigValue::Kind::Number)
    return Vector::Constant(1, value.number);
  if (value.kind != ConfigValue::Kind::Array || value.items.empty())
    field_error(field, "expected a non-empty array of numbers");
  Vector out(static_cast<Index>(value.items.size()));
  for (std::size_t i = 0; i < value.items.size(); ++i)
    out[static_cast<Index>(i)] =
        as_number(value.items[i], field + "[" + std::to_string(i) + "]");
  return out;
}

Matrix parse_matrix(const ConfigValue& value, const std::string& field) {
  if (value.kind == ConfigValue::Kind::Number)
    return Matrix::Constant(1, 1, value.number);
  if (value.kind != ConfigValue::Kind::Array || value.items.empty())
    field_error(field, "expected a nested array");
  const std::size_t rows = value.items.size();
  std::size_t cols = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    const ConfigValue& row = value.items[r];
    const std::string rf = field + "[" + std::to_string(r) + "]";
    if (row.kind != ConfigValue::Kind::Array || row.items.empty())
      field_error(rf, "expected a non-empty row array");
    if (r == 0) cols = row.items.size();
    if (row.items.size() != cols)
      field_error(rf, "has " + std::to_string(row.items.size()) +
                          " entries, expected " + std::to_string(cols));
  }
  Matrix M(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      M(static_cast<Index>(r), static_cast<Index>(c)) = as_number(
          value.items[r].items[c],
          field + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  return M;
}

FeasibleSet parse_set(const ConfigValue& value, const std::string& field) {
  if (value.kind != ConfigValue::Kind::Call)
    field_error(field, "expected a set such as simplex(2), got '" +
                           value.describe() + "'");
  const std::string& name = value.text;
  const auto& args = value.items;
  auto arity = [&](std::size_t n) {
    if (args.size() != n)
      field_error(field, name + " takes " + std::to_string(n) + " argument(s)");
  };
  try {
    if (name == "unconstrained") {
      arity(1);
      return FeasibleSet::unconstrained(as_dim(args[0], field));
    }
    if (name == "simplex") {
      arity(1);
      return FeasibleSet::simplex(as_dim(args[0], field));
    }
    if (name == "ball") {
      arity(2);
      const double radius = as_number(args[1], field + ".radius");
      if (args[0].kind == ConfigValue::Kind::Array)
        return FeasibleSet::ball(parse_vector(args[0], field + ".center"),
                                 radius);
      return FeasibleSet::ball(Vector::Zero(as_dim(args[0], field)), radius);
    }
    if (name == "box") {
      arity(2);
      return FeasibleSet::box(parse_vector(args[0], field + ".lower"),
                              parse_vector(args[1], field + ".upper"));
    }
    if (name == "product") {
      std::vector<FeasibleSet> blocks;
      for (std::size_t i = 0; i < args.size(); ++i)
        blocks.push_back(
            parse_set(args[i], field + "[" + std::to_string(i) + "]"));
      return FeasibleSet::product(std::move(blocks));
    }
  } catch (const InputError& e) {
    field_error(field, e.what());
  }
  field_error(field, "unknown set kind '" + name + "'");
}

FeasibleSet parse_set(std::string_view text) {
  return parse_set(parse_value(text), "set");
}

ExperimentConfig config_from_values(
    const std::map<std::string, std::vector<ConfigValue>>& values) {
  ExperimentConfig config;
  bool inline_spec = false;
  for (const auto& [key, v] : values) {
    if (key.rfind("problem.", 0) == 0) continue;
    if (key == "problem" && v.size() == 1 &&
        v.front().kind == ConfigValue::Kind::Word && v.front().text == "inline") {
      inline_spec = true;
      continue;
    }
    apply_key(config, key, v);
  }
  const bool has_inline_keys =
      std::any_of(values.begin(), values.end(), [](const auto& kv) {
        return kv.first.rfind("problem.", 0) == 0;
      });
  if (inline_spec) {
    config.problems = {inline_problem(values)};
  } else if (has_inline_keys) {
    throw ValidationError("problem: inline keys given but problem != inline");
  }
  return config;
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig config = config_from_values(parse_key_values(text));
  validate(config);
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

void validate(const ExperimentConfig& config) {
  if (config.problems.empty()) throw ValidationError("problem: missing");
  if (config.solvers.empty())
    throw ValidationError("solvers: at least one solver is required");
  static const std::set<std::string> known_solvers = {"ceg", "eg", "ogda", "pp"};
  std::set<std::string> seen;
  for (std::size_t i = 0; i < config.solvers.size(); ++i) {
    const std::string field = "solvers[" + std::to_string(i) + "]";
    const std::string& s = config.solvers[i];
    if (!known_solvers.count(s))
      field_error(field, "unknown solver '" + s + "' (ceg, eg, ogda, pp)");
    if (!seen.insert(s).second) field_error(field, "duplicate solver '" + s + "'");
  }
  std::set<std::string> seen_problems;
  for (std::size_t i = 0; i < config.problems.size(); ++i) {
    if (!seen_problems.insert(config.problems[i].name).second)
      field_error("problem[" + std::to_string(i) + "]",
                  "duplicate problem '" + config.problems[i].name + "'");
  }
  if (config.T < 1) field_error("T", "must be >= 1");
  if (config.gamma && !(*config.gamma > 0.0))
    field_error("gamma", "must be positive or auto");
  if (config.k && *config.k < 1) field_error("k", "must be >= 1 or auto");
  if (config.record_every < 1) field_error("record_every", "must be >= 1");
  if (config.inner_early_exit < 0.0)
    field_error("inner_early_exit", "must be >= 0");
  if (config.output.empty()) field_error("output", "must not be empty");
  static const std::set<std::string> known_metrics = {
      "gap", "grad_norm_residual", "step_norm", "inner_iters",
      "grad_calls_cumulative"};
  std::set<std::string> seen_metrics;
  for (std::size_t i = 0; i < config.metrics.size(); ++i) {
    const std::string field = "metrics[" + std::to_string(i) + "]";
    if (!known_metrics.count(config.metrics[i]))
      field_error(field, "unknown metric '" + config.metrics[i] + "'");
    if (!seen_metrics.insert(config.metrics[i]).second)
      field_error(field, "duplicate metric '" + config.metrics[i] + "'");
  }
}

void apply_override(ExperimentConfig& config, const std::string& key,
                    const std::string& value) {
  std::vector<ConfigValue> parsed;
  try {
    parsed = Parser(value).parse_list();
  } catch (const ValidationError& e) {
    throw ValidationError(key + ": " + e.what());
  }
  apply_key(config, key, parsed);
}

SolverConfig solver_config_for(const ExperimentConfig& config,
                               const SaddleProblem& problem) {
  SolverConfig sc;
  sc.gamma = config.gamma;
  sc.T = config.T;
  sc.k_rule = config.k ? KRule::fixed(*config.k) : KRule::automatic(problem.set());
  sc.inner_early_exit = config.inner_early_exit;
  sc.record_every = config.record_every;
  return sc;
}

}  // namespace minmax

#include "combandit/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "combandit/dart.hpp"
#include "combandit/error.hpp"

namespace combandit {

std::string_view to_string(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::Dart: return "dart";
    case AlgorithmKind::DartAnytime: return "dart_anytime";
    case AlgorithmKind::CombUcb: return "comb_ucb";
    case AlgorithmKind::EpsilonGreedy: return "epsilon_greedy";
    case AlgorithmKind::Oracle: return "oracle";
  }
  return "?";
}

std::optional<AlgorithmKind> parse_algorithm(std::string_view name) {
  for (auto k : {AlgorithmKind::Dart, AlgorithmKind::DartAnytime, AlgorithmKind::CombUcb, AlgorithmKind::EpsilonGreedy,
                 AlgorithmKind::Oracle}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

bool operator==(const AlgorithmSpec& a, const AlgorithmSpec& b) {
  return a.kind == b.kind && a.epoch_constant == b.epoch_constant && a.lambda == b.lambda &&
         a.lipschitz == b.lipschitz && a.epsilon_greedy.schedule.kind == b.epsilon_greedy.schedule.kind &&
         a.epsilon_greedy.schedule.value == b.epsilon_greedy.schedule.value &&
         a.epsilon_greedy.warm_start == b.epsilon_greedy.warm_start;
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  return a.name == b.name && a.num_arms == b.num_arms && a.subset_size == b.subset_size && a.horizon == b.horizon &&
         a.environment == b.environment && a.algorithms == b.algorithms && a.replications == b.replications &&
         a.master_seed == b.master_seed && a.checkpoints == b.checkpoints;
}

std::int64_t ExperimentConfig::checkpoint_stride() const {
  return std::max<std::int64_t>(1, horizon / std::max(1, checkpoints));
}

namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& message) {
  throw BanditError(ErrorCode::Config, field + ": " + message);
}

}  // namespace

void ExperimentConfig::validate() const {
  if (name.empty() || name.find_first_of("/\\ \t") != std::string::npos) {
    invalid("experiment.name", "must be non-empty without spaces or slashes");
  }
  if (num_arms < 2) invalid("experiment.arms", "need at least 2 arms");
  if (subset_size < 1 || subset_size >= num_arms) invalid("experiment.subset_size", "need 1 <= K < N");
  if (horizon < 1) invalid("experiment.horizon", "must be >= 1");
  if (replications < 1) invalid("experiment.replications", "must be >= 1");
  if (checkpoints < 1) invalid("experiment.checkpoints", "must be >= 1");
  if (algorithms.empty()) invalid("experiment.algorithms", "list is empty");

  std::set<AlgorithmKind> seen;
  for (const auto& a : algorithms) {
    if (!seen.insert(a.kind).second) invalid("experiment.algorithms", "duplicate entry " + a.name());
    if ((a.kind == AlgorithmKind::Dart || a.kind == AlgorithmKind::DartAnytime) && !(a.epoch_constant > 0.0)) {
      invalid(a.name() + ".epoch_constant", "must be > 0");
    }
    if (a.lambda && !(*a.lambda > 0.0)) invalid(a.name() + ".lambda", "must be > 0");
    if (a.lipschitz && !(*a.lipschitz > 0.0)) invalid(a.name() + ".lipschitz", "must be > 0");
    if (a.kind == AlgorithmKind::CombUcb || a.kind == AlgorithmKind::EpsilonGreedy) {
      if (binomial(num_arms, subset_size, baselines::kMaxEnumeratedActions) > baselines::kMaxEnumeratedActions) {
        invalid("experiment.algorithms", a.name() + " needs C(N, K) <= 1000000");
      }
    }
    if (a.kind == AlgorithmKind::EpsilonGreedy && !(a.epsilon_greedy.schedule.value >= 0.0)) {
      invalid("epsilon_greedy.c", "must be >= 0");
    }
  }

  const auto& env = environment;
  if (env.kind == EnvironmentKind::IndependentBernoulli) {
    if (env.uniform_means) {
      if (!(env.min_boundary_gap >= 0.0 && env.min_boundary_gap < 0.5)) {
        invalid("environment.min_boundary_gap", "must lie in [0, 0.5)");
      }
    } else {
      if (static_cast<int>(env.means.size()) != num_arms) {
        invalid("environment.means", "expected " + std::to_string(num_arms) + " values, got " +
                                         std::to_string(env.means.size()));
      }
      for (double m : env.means) {
        if (!(m >= 0.0 && m <= 1.0)) invalid("environment.means", "Bernoulli means must lie in [0, 1]");
      }
    }
  } else {
    if (env.reward != JointReward::Sum) invalid("environment.reward", "correlated_gaussian requires sum");
    if (!(env.sigma > 0.0)) invalid("environment.sigma", "must be > 0");
    if (env.epsilon && !(*env.epsilon >= 0.0)) invalid("environment.epsilon", "must be >= 0");
    if (!env.optimal_set.empty() && static_cast<int>(env.optimal_set.size()) != subset_size) {
      invalid("environment.optimal", "must list exactly K arms");
    }
    for (const auto& a : algorithms) {
      if (a.kind == AlgorithmKind::CombUcb) invalid("experiment.algorithms", "comb_ucb requires rewards in [0, 1]");
    }
  }
}

double lower_bound_epsilon(int num_arms, int subset_size, std::int64_t horizon, double sigma) {
  return sigma / 2.0 *
         std::sqrt(static_cast<double>(num_arms) * subset_size / (2.0 * static_cast<double>(horizon)));
}

Environment build_environment(const ExperimentConfig& config) {
  const auto& spec = config.environment;
  const int n = config.num_arms;
  const int k = config.subset_size;
  if (spec.kind == EnvironmentKind::CorrelatedGaussian) {
    std::vector<Arm> star = spec.optimal_set;
    if (star.empty()) {
      for (Arm a = 0; a < k; ++a) star.push_back(a);
    }
    const double eps = spec.epsilon.value_or(lower_bound_epsilon(n, k, config.horizon, spec.sigma));
    return Environment::correlated_gaussian(n, eps, spec.sigma, star, spec.reward);
  }
  if (!spec.uniform_means) return Environment::bernoulli(spec.means, k, spec.reward);

  RandomSource rng = RandomSource(spec.means_seed.value_or(config.master_seed)).split("arm_means");
  std::vector<double> means(n);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    for (double& m : means) m = rng.uniform();
    std::vector<double> sorted = means;
    std::sort(sorted.rbegin(), sorted.rend());
    const double gap = sorted[k - 1] - sorted[k];
    if (gap > 0.0 && gap >= spec.min_boundary_gap) return Environment::bernoulli(means, k, spec.reward);
  }
  throw BanditError(ErrorCode::Config, "environment.min_boundary_gap: no uniform draw reached the requested gap");
}

double resolve_lambda(const AlgorithmSpec& spec, int num_arms, int subset_size, std::int64_t horizon) {
  if (spec.lambda) return *spec.lambda;
  return spec.lipschitz.value_or(1.0) * dart::default_lambda(num_arms, subset_size, horizon, spec.epoch_constant);
}

// ---------------------------------------------------------------------------
// Text format

ConfigError::ConfigError(std::string source, int line, const std::string& message)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + message),
      line_(line) {}

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

namespace {

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

using Section = std::map<std::string, Entry>;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  while (true) {
    const auto comma = s.find(',');
    const auto item = trim(s.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

const std::set<std::string> kKnownSections = {"experiment", "environment",    "dart",   "dart_anytime",
                                              "comb_ucb",   "epsilon_greedy", "oracle", "manifest"};

class Reader {
 public:
  Reader(std::string_view text, std::string source) : source_(std::move(source)) {
    std::string current;
    int line_no = 0;
    std::istringstream in{std::string(text)};
    for (std::string raw; std::getline(in, raw);) {
      ++line_no;
      std::string_view line = raw;
      if (auto hash = line.find_first_of("#;"); hash != std::string_view::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') fail(line_no, "unterminated section header");
        current = std::string(trim(line.substr(1, line.size() - 2)));
        if (!kKnownSections.count(current)) fail(line_no, "unknown section [" + current + "]");
        if (sections_.count(current)) fail(line_no, "duplicate section [" + current + "]");
        sections_[current];
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
      if (current.empty()) fail(line_no, "key outside of any section");
      const std::string key(trim(line.substr(0, eq)));
      if (key.empty()) fail(line_no, "empty key");
      auto& section = sections_[current];
      if (section.count(key)) fail(line_no, "duplicate key " + current + "." + key);
      section[key] = Entry{std::string(trim(line.substr(eq + 1))), line_no};
    }
  }

  [[noreturn]] void fail(int line, const std::string& message) const { throw ConfigError(source_, line, message); }

  bool has_section(const std::string& s) const { return sections_.count(s) > 0; }

  const Entry* find(const std::string& section, const std::string& key) {
    auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    auto e = s->second.find(key);
    if (e == s->second.end()) return nullptr;
    e->second.used = true;
    return &e->second;
  }

  const Entry& require(const std::string& section, const std::string& key) {
    const Entry* e = find(section, key);
    if (!e) fail(0, "missing required key " + section + "." + key);
    return *e;
  }

  template <class Int>
  Int to_int(const Entry& e, const std::string& field) const {
    Int value{};
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc() && ptr == last) return value;
    // Accept integral scientific notation such as 1e6.
    const double d = to_double(e, field);
    if (d == std::floor(d) && std::fabs(d) < 9.0e15) return static_cast<Int>(d);
    fail(e.line, field + ": expected an integer, got '" + e.value + "'");
  }

  double to_double(const Entry& e, const std::string& field) const {
    double value = 0.0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) fail(e.line, field + ": expected a number, got '" + e.value + "'");
    return value;
  }

  bool to_bool(const Entry& e, const std::string& field) const {
    if (e.value == "true") return true;
    if (e.value == "false") return false;
    fail(e.line, field + ": expected true or false, got '" + e.value + "'");
  }

  void reject_unused() const {
    for (const auto& [name, section] : sections_) {
      if (name == "manifest") continue;
      for (const auto& [key, entry] : section) {
        if (!entry.used) fail(entry.line, "unknown key " + name + "." + key);
      }
    }
  }

 private:
  std::string source_;
  std::map<std::string, Section> sections_;
};

}  // namespace

ExperimentConfig parse_config(std::string_view text, const std::string& source) {
  Reader r(text, source);
  ExperimentConfig c;

  auto int_field = [&](const std::string& section, const std::string& key, auto& out) {
    if (const Entry* e = r.find(section, key)) {
      out = r.to_int<std::remove_reference_t<decltype(out)>>(*e, section + "." + key);
    }
  };
  auto double_field = [&](const std::string& section, const std::string& key, auto& out) {
    if (const Entry* e = r.find(section, key)) out = r.to_double(*e, section + "." + key);
  };

  if (const Entry* e = r.find("experiment", "name")) c.name = e->value;
  c.num_arms = r.to_int<int>(r.require("experiment", "arms"), "experiment.arms");
  c.subset_size = r.to_int<int>(r.require("experiment", "subset_size"), "experiment.subset_size");
  c.horizon = r.to_int<std::int64_t>(r.require("experiment", "horizon"), "experiment.horizon");
  int_field("experiment", "replications", c.replications);
  int_field("experiment", "seed", c.master_seed);
  int_field("experiment", "checkpoints", c.checkpoints);

  const Entry& algos = r.require("experiment", "algorithms");
  for (const std::string& name : split_list(algos.value)) {
    auto kind = parse_algorithm(name);
    if (!kind) r.fail(algos.line, "experiment.algorithms: unknown algorithm '" + name + "'");
    AlgorithmSpec spec;
    spec.kind = *kind;
    c.algorithms.push_back(spec);
  }

  auto& env = c.environment;
  const Entry& kind = r.require("environment", "kind");
  if (kind.value == "bernoulli") {
    env.kind = EnvironmentKind::IndependentBernoulli;
  } else if (kind.value == "correlated_gaussian") {
    env.kind = EnvironmentKind::CorrelatedGaussian;
  } else {
    r.fail(kind.line, "environment.kind: expected bernoulli or correlated_gaussian, got '" + kind.value + "'");
  }
  const Entry& reward = r.require("environment", "reward");
  auto parsed_reward = parse_joint_reward(reward.value);
  if (!parsed_reward) r.fail(reward.line, "environment.reward: unknown reward '" + reward.value + "'");
  env.reward = *parsed_reward;

  if (env.kind == EnvironmentKind::IndependentBernoulli) {
    const Entry& means = r.require("environment", "means");
    if (means.value == "uniform") {
      env.uniform_means = true;
    } else {
      for (const std::string& item : split_list(means.value)) {
        env.means.push_back(r.to_double(Entry{item, means.line}, "environment.means"));
      }
    }
    if (const Entry* e = r.find("environment", "means_seed")) {
      env.means_seed = r.to_int<std::uint64_t>(*e, "environment.means_seed");
    }
    double_field("environment", "min_boundary_gap", env.min_boundary_gap);
  } else {
    if (const Entry* e = r.find("environment", "epsilon"); e && e->value != "auto") {
      env.epsilon = r.to_double(*e, "environment.epsilon");
    }
    double_field("environment", "sigma", env.sigma);
    if (const Entry* e = r.find("environment", "optimal")) {
      for (const std::string& item : split_list(e->value)) {
        env.optimal_set.push_back(r.to_int<int>(Entry{item, e->line}, "environment.optimal"));
      }
    }
  }

  for (auto& spec : c.algorithms) {
    const std::string section = spec.name();
    switch (spec.kind) {
      case AlgorithmKind::Dart:
      case AlgorithmKind::DartAnytime:
        double_field(section, "epoch_constant", spec.epoch_constant);
        if (spec.kind == AlgorithmKind::Dart) {
          if (const Entry* e = r.find(section, "lambda"); e && e->value != "auto") {
            spec.lambda = r.to_double(*e, section + ".lambda");
          }
          if (const Entry* e = r.find(section, "lipschitz")) spec.lipschitz = r.to_double(*e, section + ".lipschitz");
        }
        break;
      case AlgorithmKind::EpsilonGreedy: {
        auto& opts = spec.epsilon_greedy;
        if (const Entry* e = r.find(section, "schedule")) {
          if (e->value == "inverse_time") {
            opts.schedule.kind = baselines::EpsilonSchedule::Kind::InverseTime;
          } else if (e->value == "constant") {
            opts.schedule.kind = baselines::EpsilonSchedule::Kind::Constant;
          } else {
            r.fail(e->line, "epsilon_greedy.schedule: expected inverse_time or constant");
          }
        }
        double_field(section, "c", opts.schedule.value);
        if (const Entry* e = r.find(section, "warm_start")) opts.warm_start = r.to_bool(*e, section + ".warm_start");
        break;
      }
      case AlgorithmKind::CombUcb:
      case AlgorithmKind::Oracle: break;
    }
  }

  // Sections of algorithms that are not listed are still checked for typos.
  const std::map<std::string, std::vector<std::string>> section_keys = {
      {"dart", {"epoch_constant", "lambda", "lipschitz"}},
      {"dart_anytime", {"epoch_constant"}},
      {"epsilon_greedy", {"schedule", "c", "warm_start"}},
  };
  for (const auto& [section, keys] : section_keys) {
    for (const auto& key : keys) r.find(section, key);
  }

  r.reject_unused();
  try {
    c.validate();
  } catch (const BanditError& e) {
    throw ConfigError(source, 0, e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, 0, "cannot open config file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

std::string to_config_text(const ExperimentConfig& c) {
  std::ostringstream out;
  auto join = [](const auto& items, auto fmt) {
    std::string s;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) s += ", ";
      s += fmt(items[i]);
    }
    return s;
  };
  out << "[experiment]\n";
  out << "name = " << c.name << "\n";
  out << "arms = " << c.num_arms << "\n";
  out << "subset_size = " << c.subset_size << "\n";
  out << "horizon = " << c.horizon << "\n";
  out << "replications = " << c.replications << "\n";
  out << "seed = " << c.master_seed << "\n";
  out << "checkpoints = " << c.checkpoints << "\n";
  out << "algorithms = " << join(c.algorithms, [](const AlgorithmSpec& a) { return a.name(); }) << "\n";

  const auto& env = c.environment;
  out << "\n[environment]\n";
  out << "kind = " << to_string(env.kind) << "\n";
  out << "reward = " << to_string(env.reward) << "\n";
  if (env.kind == EnvironmentKind::IndependentBernoulli) {
    if (env.uniform_means) {
      out << "means = uniform\n";
    } else {
      out << "means = " << join(env.means, format_double) << "\n";
    }
    if (env.means_seed) out << "means_seed = " << *env.means_seed << "\n";
    if (env.min_boundary_gap != 0.0) out << "min_boundary_gap = " << format_double(env.min_boundary_gap) << "\n";
  } else {
    out << "epsilon = " << (env.epsilon ? format_double(*env.epsilon) : std::string("auto")) << "\n";
    out << "sigma = " << format_double(env.sigma) << "\n";
    if (!env.optimal_set.empty()) {
      out << "optimal = " << join(env.optimal_set, [](Arm a) { return std::to_string(a); }) << "\n";
    }
  }

  for (const auto& a : c.algorithms) {
    switch (a.kind) {
      case AlgorithmKind::Dart:
        out << "\n[dart]\n";
        out << "epoch_constant = " << format_double(a.epoch_constant) << "\n";
        out << "lambda = " << (a.lambda ? format_double(*a.lambda) : std::string("auto")) << "\n";
        if (a.lipschitz) out << "lipschitz = " << format_double(*a.lipschitz) << "\n";
        break;
      case AlgorithmKind::DartAnytime:
        out << "\n[dart_anytime]\n";
        out << "epoch_constant = " << format_double(a.epoch_constant) << "\n";
        break;
      case AlgorithmKind::EpsilonGreedy:
        out << "\n[epsilon_greedy]\n";
        out << "schedule = "
            << (a.epsilon_greedy.schedule.kind == baselines::EpsilonSchedule::Kind::Constant ? "constant"
                                                                                              : "inverse_time")
            << "\n";
        out << "c = " << format_double(a.epsilon_greedy.schedule.value) << "\n";
        out << "warm_start = " << (a.epsilon_greedy.warm_start ? "true" : "false") << "\n";
        break;
      case AlgorithmKind::CombUcb:
      case AlgorithmKind::Oracle: break;
    }
  }
  return out.str();
}

}  // namespace combandit

#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "banditlab/bounds.hpp"
#include "banditlab/core.hpp"
#include "banditlab/csv.hpp"
#include "banditlab/policies.hpp"
#include "banditlab/simulator.hpp"

namespace banditlab::io {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepSpec {
  std::vector<double> deltas;
  std::optional<double> mu_star;
  std::vector<std::uint64_t> horizons;
  std::vector<PolicyKind> policies;
  std::vector<DelayModel> delays;

  bool has_axes() const {
    return !deltas.empty() || !horizons.empty() || !policies.empty() || !delays.empty();
  }
};

struct BoundsRequest {
  std::vector<bounds::BoundKind> kinds;
  std::vector<double> horizons;
  double remark1_c = 1.0;
};

// Parsed experiment description. Sections map to module concerns:
// [experiment] run shape, [delay] feedback timing, [arms] the instance,
// [sweep] grid axes, [bounds] curve requests. Parsing is strict: unknown
// sections or keys, duplicate keys, and malformed values are errors with the
// offending line in the message.
struct ExperimentConfig {
  std::string id;
  PolicyKind policy = PolicyKind::thompson;
  std::uint64_t horizon = 0;
  std::uint64_t runs = 1;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> checkpoints;  // empty means {horizon}
  bool diagnostics = false;
  std::string out;
  DelayModel delay{};
  std::vector<ArmModel> arms;
  bool unique_optimum = false;
  std::optional<SweepSpec> sweep;
  std::optional<BoundsRequest> bounds_request;

  BanditInstance instance() const {
    if (arms.size() < 2) {
      throw ConfigError("config: [arms] must list at least two arms");
    }
    return BanditInstance(arms, unique_optimum);
  }

  RunConfig run_config() const {
    RunConfig rc;
    rc.horizon = horizon;
    rc.seed = seed;
    rc.policy = policy;
    rc.delay = delay;
    rc.checkpoints = checkpoints.empty() ? std::vector<std::uint64_t>{horizon} : checkpoints;
    rc.diagnostics = diagnostics;
    return rc;
  }

  std::string serialize() const;

  static ExperimentConfig parse_string(const std::string& text, const std::string& origin);
  static ExperimentConfig parse_file(const std::string& path);
};

namespace detail {

struct Line {
  std::string section;
  std::string key;
  std::string value;
  int number = 0;
};

[[noreturn]] inline void fail(const std::string& origin, int line, const std::string& msg) {
  throw ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::uint64_t parse_u64(const std::string& token, const std::string& origin, int line,
                               const std::string& what) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    fail(origin, line, what + " expects a non-negative integer, got '" + token + "'");
  }
  return v;
}

inline double parse_double(const std::string& token, const std::string& origin, int line,
                           const std::string& what) {
  double v = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    fail(origin, line, what + " expects a number, got '" + token + "'");
  }
  return v;
}

inline bool parse_bool(const std::string& token, const std::string& origin, int line,
                       const std::string& what) {
  if (token == "on" || token == "true") return true;
  if (token == "off" || token == "false") return false;
  fail(origin, line, what + " expects on/off, got '" + token + "'");
}

inline DelayModel parse_delay_token(const std::string& token, const std::string& origin,
                                    int line) {
  if (token == "none") return DelayModel::none();
  const auto colon = token.find(':');
  if (colon != std::string::npos) {
    const std::string head = token.substr(0, colon);
    const std::string tail = token.substr(colon + 1);
    if (head == "fixed") return DelayModel::fixed(parse_u64(tail, origin, line, "fixed delay"));
    if (head == "batch") {
      const std::uint64_t period = parse_u64(tail, origin, line, "batch period");
      if (period == 0) fail(origin, line, "batch period must be >= 1");
      return DelayModel::batch(period);
    }
  }
  fail(origin, line, "delay expects none, fixed:<steps> or batch:<size>, got '" + token + "'");
}

inline std::string delay_token(const DelayModel& delay) {
  switch (delay.kind) {
    case DelayModel::Kind::none: return "none";
    case DelayModel::Kind::fixed: return "fixed:" + format_u64(delay.param);
    case DelayModel::Kind::batch: return "batch:" + format_u64(delay.param);
  }
  throw std::logic_error("delay_token: bad kind");
}

inline ArmModel parse_arm(const std::string& value, const std::string& origin, int line) {
  const auto tokens = split_ws(value);
  if (tokens.empty()) fail(origin, line, "arm expects a law name");
  try {
    const std::string& law = tokens[0];
    if (law == "bernoulli") {
      if (tokens.size() != 2) fail(origin, line, "bernoulli expects one parameter");
      return ArmModel::bernoulli(parse_double(tokens[1], origin, line, "bernoulli mean"));
    }
    if (law == "scaled_beta") {
      if (tokens.size() != 3) fail(origin, line, "scaled_beta expects two parameters");
      return ArmModel::scaled_beta(parse_double(tokens[1], origin, line, "scaled_beta a"),
                                   parse_double(tokens[2], origin, line, "scaled_beta b"));
    }
    if (law == "uniform") {
      if (tokens.size() != 3) fail(origin, line, "uniform expects two parameters");
      return ArmModel::uniform(parse_double(tokens[1], origin, line, "uniform lo"),
                               parse_double(tokens[2], origin, line, "uniform hi"));
    }
    if (law == "constant") {
      if (tokens.size() != 2) fail(origin, line, "constant expects one parameter");
      return ArmModel::constant(parse_double(tokens[1], origin, line, "constant value"));
    }
    if (law == "discrete") {
      if (tokens.size() < 2) fail(origin, line, "discrete expects value:prob pairs");
      std::vector<double> values, probs;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        const auto colon = tokens[i].find(':');
        if (colon == std::string::npos) {
          fail(origin, line, "discrete entries look like value:prob, got '" + tokens[i] + "'");
        }
        values.push_back(
            parse_double(tokens[i].substr(0, colon), origin, line, "discrete value"));
        probs.push_back(
            parse_double(tokens[i].substr(colon + 1), origin, line, "discrete prob"));
      }
      return ArmModel::discrete(std::move(values), std::move(probs));
    }
    fail(origin, line, "unknown arm law '" + law + "'");
  } catch (const std::invalid_argument& e) {
    fail(origin, line, e.what());
  }
}

inline std::string arm_token(const ArmModel& arm) {
  return std::visit(
      [](const auto& l) -> std::string {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, BernoulliLaw>) {
          return "bernoulli " + format_double(l.mu);
        } else if constexpr (std::is_same_v<L, ScaledBetaLaw>) {
          return "scaled_beta " + format_double(l.a) + " " + format_double(l.b);
        } else if constexpr (std::is_same_v<L, UniformLaw>) {
          return "uniform " + format_double(l.lo) + " " + format_double(l.hi);
        } else if constexpr (std::is_same_v<L, ConstantLaw>) {
          return "constant " + format_double(l.c);
        } else {
          std::string out = "discrete";
          for (std::size_t i = 0; i < l.values.size(); ++i) {
            out += " " + format_double(l.values[i]) + ":" + format_double(l.probs[i]);
          }
          return out;
        }
      },
      arm.law());
}

inline bool valid_id(const std::string& id) {
  if (id.empty()) return false;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '.' || c == '-';
    if (!ok) return false;
  }
  return true;
}

}  // namespace detail

inline ExperimentConfig ExperimentConfig::parse_string(const std::string& text,
                                                       const std::string& origin) {
  using detail::fail;
  std::vector<detail::Line> lines;
  {
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    std::string section;
    while (std::getline(in, raw)) {
      ++number;
      const std::string_view t = detail::trim(raw);
      if (t.empty() || t.front() == '#' || t.front() == ';') continue;
      if (t.front() == '[') {
        if (t.back() != ']') fail(origin, number, "unterminated section header");
        section = std::string(t.substr(1, t.size() - 2));
        if (section != "experiment" && section != "delay" && section != "arms" &&
            section != "sweep" && section != "bounds") {
          fail(origin, number, "unknown section [" + section + "]");
        }
        continue;
      }
      const auto eq = t.find('=');
      if (eq == std::string_view::npos) fail(origin, number, "expected key = value");
      if (section.empty()) fail(origin, number, "key outside any section");
      detail::Line line;
      line.section = section;
      line.key = std::string(detail::trim(t.substr(0, eq)));
      line.value = std::string(detail::trim(t.substr(eq + 1)));
      line.number = number;
      if (line.key.empty()) fail(origin, number, "empty key");
      lines.push_back(std::move(line));
    }
  }

  ExperimentConfig cfg;
  bool saw_id = false, saw_policy = false, saw_horizon = false, saw_runs = false, saw_seed = false;
  bool saw_delay_kind = false;
  std::optional<std::uint64_t> delay_steps, delay_size;
  int delay_kind_line = 0;
  std::string delay_kind_token;
  std::vector<std::string> seen;

  const auto mark_seen = [&](const detail::Line& line) {
    const std::string tag = line.section + "." + line.key;
    for (const auto& s : seen) {
      if (s == tag) fail(origin, line.number, "duplicate key '" + line.key + "'");
    }
    seen.push_back(tag);
  };

  for (const auto& line : lines) {
    if (line.section == "experiment") {
      mark_seen(line);
      if (line.key == "id") {
        if (!detail::valid_id(line.value)) {
          fail(origin, line.number, "id must match [A-Za-z0-9_.-]+");
        }
        cfg.id = line.value;
        saw_id = true;
      } else if (line.key == "policy") {
        try {
          cfg.policy = policy_from_name(line.value);
        } catch (const std::invalid_argument& e) {
          fail(origin, line.number, e.what());
        }
        saw_policy = true;
      } else if (line.key == "horizon") {
        cfg.horizon = detail::parse_u64(line.value, origin, line.number, "horizon");
        if (cfg.horizon < 1) fail(origin, line.number, "horizon must be >= 1");
        saw_horizon = true;
      } else if (line.key == "runs") {
        cfg.runs = detail::parse_u64(line.value, origin, line.number, "runs");
        if (cfg.runs < 1) fail(origin, line.number, "runs must be >= 1");
        saw_runs = true;
      } else if (line.key == "seed") {
        cfg.seed = detail::parse_u64(line.value, origin, line.number, "seed");
        saw_seed = true;
      } else if (line.key == "checkpoints") {
        for (const auto& tok : detail::split_ws(line.value)) {
          cfg.checkpoints.push_back(detail::parse_u64(tok, origin, line.number, "checkpoint"));
        }
        if (cfg.checkpoints.empty()) fail(origin, line.number, "checkpoints list is empty");
        for (std::size_t i = 1; i < cfg.checkpoints.size(); ++i) {
          if (cfg.checkpoints[i] <= cfg.checkpoints[i - 1]) {
            fail(origin, line.number, "checkpoints must be strictly increasing");
          }
        }
      } else if (line.key == "diagnostics") {
        cfg.diagnostics = detail::parse_bool(line.value, origin, line.number, "diagnostics");
      } else if (line.key == "out") {
        cfg.out = line.value;
      } else {
        fail(origin, line.number, "unknown key '" + line.key + "' in [experiment]");
      }
    } else if (line.section == "delay") {
      mark_seen(line);
      if (line.key == "kind") {
        delay_kind_token = line.value;
        delay_kind_line = line.number;
        saw_delay_kind = true;
      } else if (line.key == "steps") {
        delay_steps = detail::parse_u64(line.value, origin, line.number, "delay steps");
      } else if (line.key == "size") {
        delay_size = detail::parse_u64(line.value, origin, line.number, "batch size");
      } else {
        fail(origin, line.number, "unknown key '" + line.key + "' in [delay]");
      }
    } else if (line.section == "arms") {
      if (line.key == "arm") {
        cfg.arms.push_back(detail::parse_arm(line.value, origin, line.number));
      } else if (line.key == "unique_optimum") {
        mark_seen(line);
        cfg.unique_optimum = detail::parse_bool(line.value, origin, line.number, "unique_optimum");
      } else {
        fail(origin, line.number, "unknown key '" + line.key + "' in [arms]");
      }
    } else if (line.section == "sweep") {
      mark_seen(line);
      if (!cfg.sweep) cfg.sweep.emplace();
      if (line.key == "delta") {
        for (const auto& tok : detail::split_ws(line.value)) {
          const double d = detail::parse_double(tok, origin, line.number, "delta");
          if (!(d > 0.0 && d < 1.0)) fail(origin, line.number, "delta must lie in (0,1)");
          cfg.sweep->deltas.push_back(d);
        }
      } else if (line.key == "mu_star") {
        cfg.sweep->mu_star = detail::parse_double(line.value, origin, line.number, "mu_star");
      } else if (line.key == "horizon") {
        for (const auto& tok : detail::split_ws(line.value)) {
          const std::uint64_t h = detail::parse_u64(tok, origin, line.number, "sweep horizon");
          if (h < 1) fail(origin, line.number, "sweep horizon must be >= 1");
          cfg.sweep->horizons.push_back(h);
        }
      } else if (line.key == "policy") {
        for (const auto& tok : detail::split_ws(line.value)) {
          try {
            cfg.sweep->policies.push_back(policy_from_name(tok));
          } catch (const std::invalid_argument& e) {
            fail(origin, line.number, e.what());
          }
        }
      } else if (line.key == "delay") {
        for (const auto& tok : detail::split_ws(line.value)) {
          cfg.sweep->delays.push_back(detail::parse_delay_token(tok, origin, line.number));
        }
      } else {
        fail(origin, line.number, "unknown key '" + line.key + "' in [sweep]");
      }
    } else {  // bounds
      mark_seen(line);
      if (!cfg.bounds_request) cfg.bounds_request.emplace();
      if (line.key == "kinds") {
        for (const auto& tok : detail::split_ws(line.value)) {
          try {
            cfg.bounds_request->kinds.push_back(bounds::bound_from_name(tok));
          } catch (const std::invalid_argument& e) {
            fail(origin, line.number, e.what());
          }
        }
      } else if (line.key == "horizons") {
        for (const auto& tok : detail::split_ws(line.value)) {
          const double t = detail::parse_double(tok, origin, line.number, "bounds horizon");
          if (!(t >= 1.0)) fail(origin, line.number, "bounds horizons must be >= 1");
          cfg.bounds_request->horizons.push_back(t);
        }
      } else if (line.key == "remark1_c") {
        cfg.bounds_request->remark1_c =
            detail::parse_double(line.value, origin, line.number, "remark1_c");
        if (!(cfg.bounds_request->remark1_c > 0.0)) {
          fail(origin, line.number, "remark1_c must be positive");
        }
      } else {
        fail(origin, line.number, "unknown key '" + line.key + "' in [bounds]");
      }
    }
  }

  if (!saw_id) throw ConfigError(origin + ": missing required key 'id' in [experiment]");
  if (!saw_policy) throw ConfigError(origin + ": missing required key 'policy' in [experiment]");
  if (!saw_horizon) throw ConfigError(origin + ": missing required key 'horizon' in [experiment]");
  if (!saw_runs) throw ConfigError(origin + ": missing required key 'runs' in [experiment]");
  if (!saw_seed) throw ConfigError(origin + ": missing required key 'seed' in [experiment]");

  if (saw_delay_kind) {
    if (delay_kind_token == "none") {
      if (delay_steps || delay_size) {
        fail(origin, delay_kind_line, "delay kind none takes no parameters");
      }
      cfg.delay = DelayModel::none();
    } else if (delay_kind_token == "fixed") {
      if (!delay_steps) fail(origin, delay_kind_line, "delay kind fixed needs 'steps'");
      if (delay_size) fail(origin, delay_kind_line, "delay kind fixed takes no 'size'");
      cfg.delay = DelayModel::fixed(*delay_steps);
    } else if (delay_kind_token == "batch") {
      if (!delay_size) fail(origin, delay_kind_line, "delay kind batch needs 'size'");
      if (delay_steps) fail(origin, delay_kind_line, "delay kind batch takes no 'steps'");
      if (*delay_size == 0) fail(origin, delay_kind_line, "batch size must be >= 1");
      cfg.delay = DelayModel::batch(*delay_size);
    } else {
      fail(origin, delay_kind_line, "delay kind expects none/fixed/batch");
    }
  } else if (delay_steps || delay_size) {
    throw ConfigError(origin + ": [delay] parameters given without 'kind'");
  }

  for (std::uint64_t c : cfg.checkpoints) {
    if (c > cfg.horizon) {
      throw ConfigError(origin + ": checkpoints must not exceed the horizon");
    }
  }

  if (cfg.sweep && !cfg.sweep->deltas.empty()) {
    if (!cfg.sweep->mu_star) {
      throw ConfigError(origin + ": sweep over delta needs mu_star");
    }
    if (!cfg.arms.empty()) {
      throw ConfigError(origin + ": sweep over delta conflicts with an [arms] section");
    }
    const double ms = *cfg.sweep->mu_star;
    for (double d : cfg.sweep->deltas) {
      if (!(ms > 0.0 && ms <= 1.0) || ms - d < 0.0) {
        throw ConfigError(origin + ": mu_star and delta must keep both means in [0,1]");
      }
    }
  }
  if (cfg.sweep && cfg.sweep->mu_star && cfg.sweep->deltas.empty()) {
    throw ConfigError(origin + ": mu_star is only meaningful with a delta axis");
  }

  // instance-level validation (duplicate optimum, unit-range means)
  if (!cfg.arms.empty()) {
    if (cfg.arms.size() < 2) throw ConfigError(origin + ": [arms] must list at least two arms");
    try {
      (void)cfg.instance();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(origin + ": " + e.what());
    }
  }

  if (cfg.diagnostics && cfg.policy != PolicyKind::thompson &&
      (!cfg.sweep || cfg.sweep->policies.empty())) {
    throw ConfigError(origin + ": diagnostics need the thompson policy");
  }

  return cfg;
}

inline ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_string(buffer.str(), path);
}

inline std::string ExperimentConfig::serialize() const {
  std::ostringstream os;
  os << "[experiment]\n";
  os << "id = " << id << '\n';
  os << "policy = " << policy_name(policy) << '\n';
  os << "horizon = " << format_u64(horizon) << '\n';
  os << "runs = " << format_u64(runs) << '\n';
  os << "seed = " << format_u64(seed) << '\n';
  if (!checkpoints.empty()) {
    os << "checkpoints =";
    for (std::uint64_t c : checkpoints) os << ' ' << format_u64(c);
    os << '\n';
  }
  os << "diagnostics = " << (diagnostics ? "on" : "off") << '\n';
  if (!out.empty()) os << "out = " << out << '\n';

  os << "\n[delay]\n";
  os << "kind = ";
  switch (delay.kind) {
    case DelayModel::Kind::none:
      os << "none\n";
      break;
    case DelayModel::Kind::fixed:
      os << "fixed\nsteps = " << format_u64(delay.param) << '\n';
      break;
    case DelayModel::Kind::batch:
      os << "batch\nsize = " << format_u64(delay.param) << '\n';
      break;
  }

  if (!arms.empty()) {
    os << "\n[arms]\n";
    if (unique_optimum) os << "unique_optimum = on\n";
    for (const ArmModel& arm : arms) os << "arm = " << detail::arm_token(arm) << '\n';
  }

  if (sweep) {
    os << "\n[sweep]\n";
    if (!sweep->deltas.empty()) {
      os << "delta =";
      for (double d : sweep->deltas) os << ' ' << format_double(d);
      os << '\n';
      os << "mu_star = " << format_double(*sweep->mu_star) << '\n';
    }
    if (!sweep->horizons.empty()) {
      os << "horizon =";
      for (std::uint64_t h : sweep->horizons) os << ' ' << format_u64(h);
      os << '\n';
    }
    if (!sweep->policies.empty()) {
      os << "policy =";
      for (PolicyKind p : sweep->policies) os << ' ' << policy_name(p);
      os << '\n';
    }
    if (!sweep->delays.empty()) {
      os << "delay =";
      for (const DelayModel& d : sweep->delays) os << ' ' << detail::delay_token(d);
      os << '\n';
    }
  }

  if (bounds_request) {
    os << "\n[bounds]\n";
    os << "kinds =";
    for (bounds::BoundKind k : bounds_request->kinds) os << ' ' << bounds::bound_name(k);
    os << '\n';
    os << "horizons =";
    for (double t : bounds_request->horizons) os << ' ' << format_double(t);
    os << '\n';
    os << "remark1_c = " << format_double(bounds_request->remark1_c) << '\n';
  }

  return os.str();
}

struct SweepCell {
  std::uint64_t index = 0;
  std::string experiment_id;
  PolicyKind policy = PolicyKind::thompson;
  std::uint64_t horizon = 0;
  DelayModel delay{};
  std::uint64_t seed = 0;  // derived from base seed and cell index
  BanditInstance instance;
};

inline constexpr std::uint64_t kMaxSweepCells = 10000;

// Expands the sweep grid in a fixed nesting order (delta, then horizon, then
// policy, then delay). Every cell is built and validated before any caller
// runs anything, so a bad cell rejects the whole sweep up front.
inline std::vector<SweepCell> expand_sweep(const ExperimentConfig& cfg) {
  if (!cfg.sweep) throw ConfigError("sweep command needs a [sweep] section");
  const SweepSpec& spec = *cfg.sweep;

  const std::vector<double> deltas = spec.deltas.empty() ? std::vector<double>{-1.0} : spec.deltas;
  const std::vector<std::uint64_t> horizons =
      spec.horizons.empty() ? std::vector<std::uint64_t>{cfg.horizon} : spec.horizons;
  const std::vector<PolicyKind> policies =
      spec.policies.empty() ? std::vector<PolicyKind>{cfg.policy} : spec.policies;
  const std::vector<DelayModel> delays =
      spec.delays.empty() ? std::vector<DelayModel>{cfg.delay} : spec.delays;

  const std::uint64_t total = static_cast<std::uint64_t>(deltas.size()) * horizons.size() *
                              policies.size() * delays.size();
  if (total > kMaxSweepCells) {
    throw ConfigError("sweep grid has " + std::to_string(total) + " cells; the limit is " +
                      std::to_string(kMaxSweepCells));
  }

  std::vector<SweepCell> cells;
  cells.reserve(total);
  std::uint64_t index = 0;
  for (double delta : deltas) {
    for (std::uint64_t horizon : horizons) {
      for (PolicyKind policy : policies) {
        for (const DelayModel& delay : delays) {
          std::string tag;
          if (!spec.deltas.empty()) tag += "delta=" + format_double(delta);
          if (!spec.horizons.empty()) {
            tag += (tag.empty() ? "" : "|") + std::string("T=") + format_u64(horizon);
          }
          if (!spec.policies.empty()) {
            tag += (tag.empty() ? "" : "|") + std::string("policy=") + policy_name(policy);
          }
          if (!spec.delays.empty()) {
            tag += (tag.empty() ? "" : "|") + std::string("delay=") + detail::delay_token(delay);
          }
          BanditInstance instance =
              spec.deltas.empty()
                  ? cfg.instance()
                  : BanditInstance({ArmModel::bernoulli(*spec.mu_star),
                                    ArmModel::bernoulli(*spec.mu_star - delta)});
          cells.push_back({index, tag.empty() ? cfg.id : cfg.id + "[" + tag + "]", policy, horizon,
                           delay, derive_stream_seed(cfg.seed, index), std::move(instance)});
          ++index;
        }
      }
    }
  }
  return cells;
}

}  // namespace banditlab::io

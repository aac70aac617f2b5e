#pragma once

// JSON run description -> SimConfig. Unknown keys are rejected.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "aoisim/engine.hpp"
#include "json.hpp"

namespace aoisim::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::uint64_t kDefaultSeed = 1;
inline constexpr const char* kSeedEnv = "AOISIM_SEED";

struct Tolerances {
  double aoi_fifo = 0.01;         // relative
  double aoi_replacement = 0.02;  // relative
  double occupancy = 0.005;       // absolute, per state
  double system_time = 0.01;      // relative
  double moments = 0.02;          // relative, conditional inter-reception moments
  double estimator = 0.005;       // relative, sample-path estimators vs per-slot age
};

struct RunConfig {
  SimConfig sim;
  Tolerances tolerances;
};

inline const char* name(PolicyKind k) {
  switch (k) {
    case PolicyKind::RoundRobin: return "round_robin";
    case PolicyKind::WorkConserving: return "work_conserving";
    case PolicyKind::RandomAccess: return "random_access";
  }
  return "?";
}

inline const char* name(Discipline d) { return d == Discipline::Fifo ? "fifo" : "replacement"; }

inline const char* name(ChannelKind k) {
  switch (k) {
    case ChannelKind::Perfect: return "perfect";
    case ChannelKind::Erasure: return "erasure";
    case ChannelKind::Collision: return "collision";
  }
  return "?";
}

// Seed used when the config has none: AOISIM_SEED if set, else 1.
inline std::uint64_t default_seed() {
  if (const char* env = std::getenv(kSeedEnv); env && *env) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(kSeedEnv, "not an unsigned integer");
  }
  return kDefaultSeed;
}

namespace detail {

using nlohmann::json;

inline double number(const json& v, const std::string& field) {
  if (!v.is_number()) throw ConfigError(field, "expected a number");
  return v.get<double>();
}

inline std::int64_t integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ConfigError(field, "expected an integer");
  return v.get<std::int64_t>();
}

// Scalar broadcast to n sources, or an array of exactly n numbers.
inline std::vector<double> per_source(const json& v, std::size_t n, const std::string& field) {
  if (v.is_number()) return std::vector<double>(n, v.get<double>());
  if (!v.is_array()) throw ConfigError(field, "expected a number or an array of numbers");
  if (v.size() != n) {
    throw ConfigError(field, "expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

inline void check_rates(const std::vector<double>& v, const std::string& field, bool allow_zero) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = v[i];
    const bool ok = std::isfinite(x) && (allow_zero ? x >= 0.0 : x > 0.0) && x <= 1.0;
    if (!ok) {
      std::ostringstream os;
      os << "value " << x << " outside " << (allow_zero ? "[0,1]" : "(0,1]");
      throw ConfigError(v.size() == 1 ? field : field + "[" + std::to_string(i) + "]", os.str());
    }
  }
}

inline std::string string(const json& v, const std::string& field) {
  if (!v.is_string()) throw ConfigError(field, "expected a string");
  return v.get<std::string>();
}

}  // namespace detail

inline RunConfig parse_config(const nlohmann::json& doc) {
  using detail::json;
  if (!doc.is_object()) throw ConfigError("", "config must be a JSON object");

  static const std::set<std::string> known = {
      "schema_version", "n_sources", "lambda", "mu",      "p",          "q",       "policy",   "channel",
      "collision_thinning", "discipline", "network_k", "measure_at", "horizon", "seed", "warmup", "tolerances"};
  for (const auto& [key, _] : doc.items()) {
    if (!known.count(key)) throw ConfigError(key, "unknown field");
  }
  auto require = [&](const char* key) -> const json& {
    if (!doc.contains(key)) throw ConfigError(key, "missing required field");
    return doc.at(key);
  };

  if (detail::integer(require("schema_version"), "schema_version") != kSchemaVersion) {
    throw ConfigError("schema_version", "unsupported version (expected " + std::to_string(kSchemaVersion) + ")");
  }

  RunConfig rc;
  SimConfig& c = rc.sim;
  const std::int64_t n = detail::integer(require("n_sources"), "n_sources");
  if (n < 1) throw ConfigError("n_sources", "need at least one source");
  c.n_sources = static_cast<std::size_t>(n);

  c.lambdas = detail::per_source(require("lambda"), c.n_sources, "lambda");
  detail::check_rates(c.lambdas, "lambda", true);

  const std::string discipline = detail::string(require("discipline"), "discipline");
  if (discipline == "fifo") {
    c.discipline = Discipline::Fifo;
  } else if (discipline == "replacement") {
    c.discipline = Discipline::Replacement;
  } else {
    throw ConfigError("discipline", "expected \"fifo\" or \"replacement\"");
  }

  const std::string policy = doc.contains("policy") ? detail::string(doc.at("policy"), "policy") : "round_robin";
  if (policy == "round_robin") {
    c.policy.kind = PolicyKind::RoundRobin;
  } else if (policy == "work_conserving") {
    c.policy.kind = PolicyKind::WorkConserving;
  } else if (policy == "random_access") {
    c.policy.kind = PolicyKind::RandomAccess;
  } else {
    throw ConfigError("policy", "expected round_robin, work_conserving or random_access");
  }

  if (doc.contains("q")) {
    if (c.policy.kind != PolicyKind::RandomAccess) throw ConfigError("q", "only valid with policy random_access");
    c.policy.access_probs = detail::per_source(doc.at("q"), c.n_sources, "q");
    detail::check_rates(c.policy.access_probs, "q", false);
  } else if (c.policy.kind == PolicyKind::RandomAccess) {
    throw ConfigError("q", "random_access needs access probabilities");
  }

  std::string channel;
  if (doc.contains("channel")) {
    channel = detail::string(doc.at("channel"), "channel");
  } else {
    channel = c.policy.kind == PolicyKind::RandomAccess ? "collision" : (doc.contains("p") ? "erasure" : "perfect");
  }
  if (channel == "perfect") {
    c.channel.kind = ChannelKind::Perfect;
  } else if (channel == "erasure") {
    c.channel.kind = ChannelKind::Erasure;
  } else if (channel == "collision") {
    c.channel.kind = ChannelKind::Collision;
  } else {
    throw ConfigError("channel", "expected perfect, erasure or collision");
  }
  if (doc.contains("collision_thinning")) {
    if (!doc.at("collision_thinning").is_boolean()) throw ConfigError("collision_thinning", "expected a boolean");
    c.channel.collision_thinning = doc.at("collision_thinning").get<bool>();
  }

  if (doc.contains("mu")) {
    c.channel.service_probs = detail::per_source(doc.at("mu"), c.n_sources, "mu");
    detail::check_rates(c.channel.service_probs, "mu", false);
  }
  if (doc.contains("p")) {
    if (c.channel.kind == ChannelKind::Perfect) throw ConfigError("p", "perfect channel takes no success probability");
    c.channel.success_probs = detail::per_source(doc.at("p"), c.n_sources, "p");
    detail::check_rates(c.channel.success_probs, "p", false);
  }

  if (doc.contains("network_k") && !doc.at("network_k").is_null()) {
    c.network_k = detail::number(doc.at("network_k"), "network_k");
  }
  if (doc.contains("measure_at")) {
    const std::string where = detail::string(doc.at("measure_at"), "measure_at");
    if (where == "ap") {
      c.measure_at = MeasurePoint::AccessPoint;
    } else if (where == "destination") {
      c.measure_at = MeasurePoint::Destination;
    } else {
      throw ConfigError("measure_at", "expected \"ap\" or \"destination\"");
    }
  } else {
    c.measure_at = c.network_k ? MeasurePoint::Destination : MeasurePoint::AccessPoint;
  }

  if (doc.contains("horizon")) c.horizon = detail::integer(doc.at("horizon"), "horizon");
  if (doc.contains("warmup")) c.warmup = detail::integer(doc.at("warmup"), "warmup");
  if (doc.contains("seed")) {
    const json& s = doc.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
      throw ConfigError("seed", "expected a non-negative integer");
    }
    c.seed = s.get<std::uint64_t>();
  } else {
    c.seed = default_seed();
  }

  if (doc.contains("tolerances")) {
    const json& t = doc.at("tolerances");
    if (!t.is_object()) throw ConfigError("tolerances", "expected an object");
    Tolerances& tol = rc.tolerances;
    for (const auto& [key, v] : t.items()) {
      const std::string field = "tolerances." + key;
      const double x = detail::number(v, field);
      if (!(std::isfinite(x) && x > 0.0)) throw ConfigError(field, "must be positive");
      if (key == "aoi_fifo") {
        tol.aoi_fifo = x;
      } else if (key == "aoi_replacement") {
        tol.aoi_replacement = x;
      } else if (key == "occupancy") {
        tol.occupancy = x;
      } else if (key == "system_time") {
        tol.system_time = x;
      } else if (key == "moments") {
        tol.moments = x;
      } else if (key == "estimator") {
        tol.estimator = x;
      } else {
        throw ConfigError(field, "unknown field");
      }
    }
  }

  validate(c);
  return rc;
}

inline RunConfig parse_config_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace aoisim::cli

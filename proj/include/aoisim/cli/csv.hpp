#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include "aoisim/cli/config.hpp"
#include "aoisim/engine.hpp"

namespace aoisim::cli {

// Shortest round-trip decimal form; independent of the C locale.
inline std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string fmt(std::uint64_t v) { return std::to_string(v); }

inline const std::vector<std::string>& result_columns() {
  static const std::vector<std::string> cols = {
      "source_id", "lambda",  "mu",      "p",         "q",         "policy",         "discipline",    "network_k",
      "horizon",   "seed",    "avg_aoi", "drop_prob", "effective_rate", "obsolete_frac", "stability_warning"};
  return cols;
}

inline std::string join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  return out;
}

// Per-source result fields in result_columns() order.
inline std::vector<std::string> result_fields(const SimConfig& c, const SourceMetrics& m) {
  const SourceId i = m.source_id;
  const auto pick = [i](const std::vector<double>& v) { return i < v.size() ? v[i] : 1.0; };
  std::vector<std::string> f;
  f.push_back(fmt(static_cast<std::uint64_t>(i)));
  f.push_back(fmt(c.lambdas[i]));
  f.push_back(fmt(pick(c.channel.service_probs)));
  f.push_back(c.channel.kind == ChannelKind::Perfect ? std::string() : fmt(pick(c.channel.success_probs)));
  f.push_back(c.policy.kind == PolicyKind::RandomAccess ? fmt(c.policy.access_probs[i]) : std::string());
  f.push_back(name(c.policy.kind));
  f.push_back(name(c.discipline));
  f.push_back(c.network_k ? fmt(*c.network_k) : std::string());
  f.push_back(fmt(static_cast<std::uint64_t>(c.horizon)));
  f.push_back(fmt(c.seed));
  f.push_back(fmt(m.avg_aoi));
  f.push_back(fmt(m.empirical_drop_prob));
  f.push_back(fmt(m.empirical_effective_rate));
  f.push_back(fmt(m.obsolete_frac));
  f.push_back(m.stability_warning ? "1" : "0");
  return f;
}

inline void write_simulate_csv(std::ostream& os, const MetricsReport& report) {
  os << join(result_columns()) << '\n';
  for (const auto& m : report.sources) os << join(result_fields(report.config, m)) << '\n';
}

}  // namespace aoisim::cli

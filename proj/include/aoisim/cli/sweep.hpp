#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "aoisim/cli/config.hpp"
#include "aoisim/cli/csv.hpp"
#include "aoisim/engine.hpp"

namespace aoisim::cli {

enum class SweepAxis { Lambda, Q, N, P, K };

inline SweepAxis parse_axis(const std::string& s) {
  if (s == "lambda") return SweepAxis::Lambda;
  if (s == "q") return SweepAxis::Q;
  if (s == "N") return SweepAxis::N;
  if (s == "p") return SweepAxis::P;
  if (s == "k") return SweepAxis::K;
  throw ConfigError("axis", "expected one of lambda, q, N, p, k");
}

inline const char* name(SweepAxis a) {
  switch (a) {
    case SweepAxis::Lambda: return "lambda";
    case SweepAxis::Q: return "q";
    case SweepAxis::N: return "N";
    case SweepAxis::P: return "p";
    case SweepAxis::K: return "k";
  }
  return "?";
}

struct SweepSpec {
  SweepAxis axis = SweepAxis::Lambda;
  double from = 0.0;
  double to = 0.0;
  int steps = 2;
  std::vector<std::uint64_t> seeds;
  unsigned workers = 0;  // 0: hardware concurrency
};

// "3" -> {base, base+1, base+2}; "4,9,11" -> those seeds.
inline std::vector<std::uint64_t> parse_seeds(const std::string& text, std::uint64_t base) {
  std::vector<std::uint64_t> out;
  try {
    if (text.find(',') == std::string::npos) {
      std::size_t used = 0;
      const long long count = std::stoll(text, &used);
      if (used != text.size() || count < 1) throw ConfigError("seeds", "expected a positive count or a list");
      for (long long i = 0; i < count; ++i) out.push_back(base + static_cast<std::uint64_t>(i));
      return out;
    }
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t next = std::min(text.find(',', pos), text.size());
      const std::string item = text.substr(pos, next - pos);
      std::size_t used = 0;
      const unsigned long long v = std::stoull(item, &used);
      if (used != item.size()) throw ConfigError("seeds", "bad entry '" + item + "'");
      out.push_back(v);
      pos = next + 1;
    }
  } catch (const std::logic_error&) {
    throw ConfigError("seeds", "expected a positive count or a comma-separated list of seeds");
  }
  return out;
}

inline std::vector<double> axis_values(const SweepSpec& s) {
  if (s.steps < 2) throw ConfigError("steps", "need at least 2 steps");
  if (!(std::isfinite(s.from) && std::isfinite(s.to))) throw ConfigError("from", "bounds must be finite");
  std::vector<double> v;
  for (int i = 0; i < s.steps; ++i) {
    v.push_back(s.from + (s.to - s.from) * static_cast<double>(i) / static_cast<double>(s.steps - 1));
  }
  return v;
}

namespace detail {

inline std::vector<double> resize_symmetric(const std::vector<double>& v, std::size_t n, const char* field) {
  if (v.empty()) return v;
  for (double x : v) {
    if (x != v.front()) throw ConfigError(field, "sweeping N needs identical per-source values");
  }
  return std::vector<double>(n, v.front());
}

}  // namespace detail

// Base config with the swept parameter set to `value` for every source.
inline SimConfig apply_axis(SimConfig c, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::Lambda:
      c.lambdas.assign(c.n_sources, value);
      break;
    case SweepAxis::Q:
      if (c.policy.kind != PolicyKind::RandomAccess) throw ConfigError("axis", "q sweep needs policy random_access");
      c.policy.access_probs.assign(c.n_sources, value);
      break;
    case SweepAxis::N: {
      const double r = std::round(value);
      if (r < 1.0) throw ConfigError("from", "N must be at least 1");
      const auto n = static_cast<std::size_t>(r);
      c.lambdas = detail::resize_symmetric(c.lambdas, n, "lambda");
      c.policy.access_probs = detail::resize_symmetric(c.policy.access_probs, n, "q");
      c.channel.success_probs = detail::resize_symmetric(c.channel.success_probs, n, "p");
      c.channel.service_probs = detail::resize_symmetric(c.channel.service_probs, n, "mu");
      c.n_sources = n;
      break;
    }
    case SweepAxis::P:
      if (c.channel.kind == ChannelKind::Perfect) throw ConfigError("axis", "p sweep needs an erasure or collision channel");
      c.channel.success_probs.assign(c.n_sources, value);
      break;
    case SweepAxis::K:
      c.network_k = value;
      break;
  }
  validate(c);
  return c;
}

struct SweepPoint {
  double value = 0.0;
  std::vector<MetricsReport> runs;  // one per seed, seed order
};

// Runs every (point, seed) pair on a bounded pool of workers. The result
// order depends only on the spec.
inline std::vector<SweepPoint> run_sweep(const SimConfig& base, const SweepSpec& spec) {
  const std::vector<double> values = axis_values(spec);
  if (spec.seeds.empty()) throw ConfigError("seeds", "need at least one seed");

  std::vector<SimConfig> jobs;
  for (double v : values) {
    SimConfig c = apply_axis(base, spec.axis, v);
    for (std::uint64_t seed : spec.seeds) {
      c.seed = seed;
      jobs.push_back(c);
    }
  }

  std::vector<MetricsReport> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      try {
        results[j] = run(jobs[j]);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    }
  };
  unsigned n_workers = spec.workers ? spec.workers : std::max(1u, std::thread::hardware_concurrency());
  n_workers = static_cast<unsigned>(std::min<std::size_t>(n_workers, jobs.size()));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < n_workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<SweepPoint> out;
  std::size_t j = 0;
  for (double v : values) {
    SweepPoint p;
    p.value = v;
    for (std::size_t s = 0; s < spec.seeds.size(); ++s) p.runs.push_back(std::move(results[j++]));
    out.push_back(std::move(p));
  }
  return out;
}

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;  // NaN with a single seed
};

inline MeanStderr mean_stderr(const std::vector<double>& xs) {
  MeanStderr r;
  if (xs.empty()) return r;
  double sum = 0.0;
  for (double x : xs) sum += x;
  r.mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) {
    r.stderr_ = std::nan("");
    return r;
  }
  double ss = 0.0;
  for (double x : xs) ss += (x - r.mean) * (x - r.mean);
  r.stderr_ = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  return r;
}

// Rows ordered by (point, seed, source); per-(point, source) mean and
// standard error of avg_aoi across seeds appended to each row.
inline void write_sweep_csv(std::ostream& os, SweepAxis axis, const std::vector<SweepPoint>& points) {
  std::vector<std::string> header = {"point", "axis", "value"};
  for (const auto& c : result_columns()) header.push_back(c);
  header.push_back("mean_avg_aoi");
  header.push_back("stderr_avg_aoi");
  os << join(header) << '\n';

  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    const SweepPoint& p = points[pi];
    const std::size_t n = p.runs.front().sources.size();
    std::vector<MeanStderr> stats(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> xs;
      for (const auto& r : p.runs) xs.push_back(r.sources[i].avg_aoi);
      stats[i] = mean_stderr(xs);
    }
    for (const auto& r : p.runs) {
      for (const auto& m : r.sources) {
        std::vector<std::string> row = {fmt(static_cast<std::uint64_t>(pi)), name(axis), fmt(p.value)};
        for (auto& f : result_fields(r.config, m)) row.push_back(std::move(f));
        row.push_back(fmt(stats[m.source_id].mean));
        row.push_back(std::isnan(stats[m.source_id].stderr_) ? std::string() : fmt(stats[m.source_id].stderr_));
        os << join(row) << '\n';
      }
    }
  }
}

}  // namespace aoisim::cli

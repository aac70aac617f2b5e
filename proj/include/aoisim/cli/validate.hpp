#pragma once

// Pairs dedicated-channel simulation statistics with their closed forms.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "aoisim/analytic.hpp"
#include "aoisim/cli/config.hpp"
#include "aoisim/engine.hpp"

namespace aoisim::cli {

enum class CheckKind { Relative, Absolute, Informational };

struct CheckRow {
  std::string quantity;
  double simulated = 0.0;
  double closed_form = 0.0;
  CheckKind kind = CheckKind::Informational;
  double tolerance = 0.0;

  double error() const {
    const double diff = std::abs(simulated - closed_form);
    if (kind == CheckKind::Absolute) return diff;
    return closed_form != 0.0 ? diff / std::abs(closed_form) : diff;
  }
  bool pass() const { return kind == CheckKind::Informational || error() <= tolerance; }
};

struct ValidationReport {
  QueueParams params;
  Discipline discipline = Discipline::Fifo;
  std::vector<CheckRow> rows;

  bool passed() const {
    for (const auto& r : rows) {
      if (!r.pass()) return false;
    }
    return true;
  }
};

// The run must be a single source owning the channel; mu is the per-attempt
// success probability (mu times p on an erasure channel).
inline QueueParams dedicated_params(const SimConfig& c) {
  if (c.n_sources != 1) throw ConfigError("n_sources", "validate needs a dedicated channel (n_sources = 1)");
  if (c.policy.kind == PolicyKind::RandomAccess) throw ConfigError("policy", "validate needs a scheduled channel");
  if (c.network_k) throw ConfigError("network_k", "validate measures at the access point");
  QueueParams p{c.lambdas.front(), attempt_success(c.channel, 0)};
  try {
    validate(p);
  } catch (const InvalidParams& e) {
    throw ConfigError("lambda", e.what());
  }
  return p;
}

inline ValidationReport validate_dedicated(const RunConfig& rc) {
  const SimConfig& c = rc.sim;
  const Tolerances& tol = rc.tolerances;
  ValidationReport rep;
  rep.params = dedicated_params(c);
  rep.discipline = c.discipline;
  const QueueParams& p = rep.params;
  if (c.discipline == Discipline::Fifo && !p.stable_fifo()) {
    throw ConfigError("lambda", "FIFO closed forms need lambda < mu");
  }
  if (c.discipline == Discipline::Replacement && p.lambda == p.mu) {
    throw ConfigError("lambda", "replacement closed forms need lambda != mu");
  }

  const MetricsReport report = run(c);
  const SourceMetrics& m = report.sources.front();
  const auto occ = [&](std::size_t k) { return k < m.occupancy_hist.size() ? m.occupancy_hist[k] : 0.0; };
  auto add = [&](std::string q, double sim, double cf, CheckKind kind, double t) {
    rep.rows.push_back({std::move(q), sim, cf, kind, t});
  };

  if (c.discipline == Discipline::Fifo) {
    const double delta = analytic::aoi_geo_geo_1(p);
    add("Delta", m.avg_aoi, delta, CheckKind::Relative, tol.aoi_fifo);
    add("Delta (Y/T estimator)", m.estimator_yt, m.avg_aoi, CheckKind::Relative, tol.estimator);
    add("Delta (Z/T estimator)", m.estimator_zt, m.avg_aoi, CheckKind::Relative, tol.estimator);
    const auto st = analytic::stationary_geo(p);
    for (std::size_t k = 0; k < 4; ++k) {
      add("pi" + std::to_string(k), occ(k), st.pi(k), CheckKind::Absolute, tol.occupancy);
    }
    add("E[T]", m.ap.mean_system_time, analytic::mean_system_time_geo(p), CheckKind::Relative, tol.system_time);
    add("E[Y]", m.ap.mean_interarrival, 1.0 / p.lambda, CheckKind::Informational, 0.0);
    add("E[Y^2]", m.ap.mean_interarrival_sq, (2.0 - p.lambda) / (p.lambda * p.lambda), CheckKind::Informational, 0.0);
    add("E[Z]", m.ap.ez, 1.0 / p.lambda, CheckKind::Informational, 0.0);
    add("p_D", m.empirical_drop_prob, 0.0, CheckKind::Informational, 0.0);
    add("lambda_e", m.empirical_effective_rate, p.lambda, CheckKind::Informational, 0.0);
  } else {
    const auto mom = analytic::replacement_moments(p);
    add("Delta", m.avg_aoi, analytic::aoi_replacement(p), CheckKind::Relative, tol.aoi_replacement);
    add("Delta (Y/T estimator)", m.estimator_yt, m.avg_aoi, CheckKind::Relative, tol.estimator);
    add("Delta (Z/T estimator)", m.estimator_zt, m.avg_aoi, CheckKind::Relative, tol.estimator);
    const auto st = analytic::stationary_replacement(p);
    add("pi0", occ(0), st.pi0, CheckKind::Absolute, tol.occupancy);
    add("pi1", occ(1), st.pi1, CheckKind::Absolute, tol.occupancy);
    add("pi2", occ(2), st.pi2, CheckKind::Absolute, tol.occupancy);
    add("E[Z|psi]", m.ap.ez_psi, mom.ez_psi, CheckKind::Relative, tol.moments);
    add("E[Z|psi_bar]", m.ap.ez_bar, mom.ez_bar, CheckKind::Relative, tol.moments);
    add("E[Z^2|psi]", m.ap.ez2_psi, mom.ez2_psi, CheckKind::Relative, tol.moments);
    add("E[Z^2|psi_bar]", m.ap.ez2_bar, mom.ez2_bar, CheckKind::Relative, tol.moments);
    add("P(psi)", m.ap.p_psi, mom.p_psi, CheckKind::Informational, 0.0);
    add("E[Z]", m.ap.ez, mom.ez, CheckKind::Informational, 0.0);
    add("E[Z^2]", m.ap.ez2, mom.ez2, CheckKind::Informational, 0.0);
    add("E[T|psi]", m.ap.et_psi, mom.et_psi, CheckKind::Informational, 0.0);
    add("E[T|psi_bar]", m.ap.et_bar, mom.et_bar, CheckKind::Informational, 0.0);
    add("E[TZ]", m.ap.etz, mom.etz, CheckKind::Informational, 0.0);
    add("p_D", m.empirical_drop_prob, mom.p_drop, CheckKind::Informational, 0.0);
    add("lambda_e", m.empirical_effective_rate, mom.lambda_e, CheckKind::Informational, 0.0);
  }
  return rep;
}

inline void write_validation(std::ostream& os, const ValidationReport& rep) {
  char line[256];
  std::snprintf(line, sizeof line, "# dedicated channel, %s, lambda=%.6g mu=%.6g\n", name(rep.discipline),
                rep.params.lambda, rep.params.mu);
  os << line;
  std::snprintf(line, sizeof line, "%-22s %14s %14s %12s %10s  %s\n", "quantity", "simulated", "closed_form", "error",
                "tolerance", "status");
  os << line;
  for (const auto& r : rep.rows) {
    const char* status = r.kind == CheckKind::Informational ? "info" : (r.pass() ? "pass" : "FAIL");
    const char* unit = r.kind == CheckKind::Absolute ? "abs" : "rel";
    char tol[32];
    if (r.kind == CheckKind::Informational) {
      std::snprintf(tol, sizeof tol, "-");
    } else {
      std::snprintf(tol, sizeof tol, "%.3g %s", r.tolerance, unit);
    }
    std::snprintf(line, sizeof line, "%-22s %14.6g %14.6g %12.4g %10s  %s\n", r.quantity.c_str(), r.simulated,
                  r.closed_form, r.error(), tol, status);
    os << line;
  }
  os << (rep.passed() ? "result: pass\n" : "result: FAIL\n");
}

}  // namespace aoisim::cli

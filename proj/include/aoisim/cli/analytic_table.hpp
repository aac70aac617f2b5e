#pragma once

#include <cstdio>
#include <ostream>
#include <string>

#include "aoisim/analytic.hpp"
#include "aoisim/cli/config.hpp"

namespace aoisim::cli {

enum class AnalyticModel { Geo, Replacement, All };

inline AnalyticModel parse_model(const std::string& s) {
  if (s == "geo") return AnalyticModel::Geo;
  if (s == "replacement") return AnalyticModel::Replacement;
  if (s == "all") return AnalyticModel::All;
  throw ConfigError("model", "expected geo, replacement or all");
}

namespace detail {

// Six significant digits, trailing zeros kept.
inline void row(std::ostream& os, const char* model, const char* quantity, double v) {
  char line[128];
  std::snprintf(line, sizeof line, "%-12s %-14s %#.6g\n", model, quantity, v);
  os << line;
}

}  // namespace detail

inline void write_geo_table(std::ostream& os, const QueueParams& p) {
  const auto st = analytic::stationary_geo(p);
  detail::row(os, "geo", "rho", st.rho);
  detail::row(os, "geo", "pi0", st.pi0);
  detail::row(os, "geo", "pi1", st.pi1);
  detail::row(os, "geo", "pi2", st.pi(2));
  detail::row(os, "geo", "E[Y]", 1.0 / p.lambda);
  detail::row(os, "geo", "E[Y^2]", (2.0 - p.lambda) / (p.lambda * p.lambda));
  detail::row(os, "geo", "E[WY]", analytic::geo_wait_cross_moment(p));
  detail::row(os, "geo", "f_T(1)", analytic::system_time_pmf_geo(p, 1));
  detail::row(os, "geo", "E[T]", analytic::mean_system_time_geo(p));
  detail::row(os, "geo", "lambda*", analytic::optimal_arrival_rate(p.mu));
  detail::row(os, "geo", "Delta", analytic::aoi_geo_geo_1(p));
}

inline void write_replacement_table(std::ostream& os, const QueueParams& p) {
  const auto st = analytic::stationary_replacement(p);
  const auto m = analytic::replacement_moments(p);
  const char* r = "replacement";
  detail::row(os, r, "pi0", st.pi0);
  detail::row(os, r, "pi1", st.pi1);
  detail::row(os, r, "pi2", st.pi2);
  detail::row(os, r, "P(psi)", m.p_psi);
  detail::row(os, r, "P(psi_bar)", m.p_psi_bar);
  detail::row(os, r, "E[Z|psi]", m.ez_psi);
  detail::row(os, r, "E[Z^2|psi]", m.ez2_psi);
  detail::row(os, r, "E[Z|psi_bar]", m.ez_bar);
  detail::row(os, r, "E[Z^2|psi_bar]", m.ez2_bar);
  detail::row(os, r, "E[Z]", m.ez);
  detail::row(os, r, "E[Z^2]", m.ez2);
  detail::row(os, r, "E[S|psi]", m.es_psi);
  detail::row(os, r, "E[S|psi_bar]", m.es_bar);
  detail::row(os, r, "P(tx|busy)", m.p_tx_busy);
  detail::row(os, r, "P(busy,tx)", m.p_busy_tx);
  detail::row(os, r, "E[W|tx]", m.ew_tx);
  detail::row(os, r, "E[T|psi]", m.et_psi);
  detail::row(os, r, "E[T|psi_bar]", m.et_bar);
  detail::row(os, r, "E[TZ]", m.etz);
  detail::row(os, r, "p_D", m.p_drop);
  detail::row(os, r, "lambda_e", m.lambda_e);
  detail::row(os, r, "Delta", analytic::aoi_replacement(p));
}

// Throws on domain errors before anything is written for the failing model.
inline void write_analytic(std::ostream& os, const QueueParams& p, AnalyticModel model) {
  validate(p);
  if (model != AnalyticModel::Replacement) write_geo_table(os, p);
  if (model != AnalyticModel::Geo) write_replacement_table(os, p);
}

}  // namespace aoisim::cli

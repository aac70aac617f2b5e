#pragma once

// Closed-form age-of-information quantities for a single slotted queue with
// Bernoulli(lambda) arrivals and per-slot success probability mu.
//
// Every geometric variable (interarrival, service, system time) has support
// {1, 2, ...} and mean 1/p.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "aoisim/error.hpp"

namespace aoisim {

struct QueueParams {
  double lambda = 0.0;  // arrival probability per slot
  double mu = 1.0;      // success probability per slot

  bool stable_fifo() const noexcept { return lambda < mu; }
};

inline void validate(const QueueParams& p) {
  if (!(std::isfinite(p.lambda) && p.lambda > 0.0 && p.lambda < 1.0)) {
    std::ostringstream os;
    os << "lambda must lie in (0,1), got " << p.lambda;
    throw InvalidParams(os.str());
  }
  if (!(std::isfinite(p.mu) && p.mu > 0.0 && p.mu <= 1.0)) {
    std::ostringstream os;
    os << "mu must lie in (0,1], got " << p.mu;
    throw InvalidParams(os.str());
  }
}

namespace analytic {

namespace detail {

inline void require_stable(const QueueParams& p) {
  validate(p);
  if (!p.stable_fifo()) {
    std::ostringstream os;
    os << "FIFO queue unstable for lambda=" << p.lambda << " >= mu=" << p.mu;
    throw Unstable(os.str());
  }
}

inline void require_distinct(const QueueParams& p) {
  if (p.lambda == p.mu) {
    throw DegenerateParams("lambda == mu: inter-reception pmf after an idle departure is singular");
  }
}

// lambda + mu - lambda*mu: probability that a slot sees an arrival or a success.
inline double either(const QueueParams& p) { return p.lambda + p.mu - p.lambda * p.mu; }

// lambda^2 (mu-1)^2 + lambda (1-2mu) mu + mu^2, recurring denominator of the
// waiting-time terms.
inline double wait_denominator(const QueueParams& p) {
  const double l = p.lambda, m = p.mu;
  return l * l * (m - 1.0) * (m - 1.0) + l * (1.0 - 2.0 * m) * m + m * m;
}

// lambda^2 (1-mu) + lambda (1-mu) mu + mu^2.
inline double reception_denominator(const QueueParams& p) {
  const double l = p.lambda, m = p.mu;
  return l * l * (1.0 - m) + l * (1.0 - m) * m + m * m;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Geo/Geo/1 (infinite FIFO buffer)
// ---------------------------------------------------------------------------

struct GeoStationary {
  double rho = 0.0;
  double pi0 = 0.0;
  double pi1 = 0.0;

  // Probability of n packets in the system.
  double pi(std::uint64_t n) const {
    if (n == 0) return pi0;
    return std::pow(rho, static_cast<double>(n - 1)) * pi1;
  }
};

inline double utilization(const QueueParams& p) {
  return p.lambda * (1.0 - p.mu) / (p.mu * (1.0 - p.lambda));
}

inline GeoStationary stationary_geo(const QueueParams& p) {
  detail::require_stable(p);
  GeoStationary s;
  s.rho = utilization(p);
  s.pi1 = p.lambda * (1.0 - s.rho) / p.mu;
  s.pi0 = p.mu * (1.0 - p.lambda) / p.lambda * s.pi1;
  return s;
}

inline double aoi_geo_geo_1(const QueueParams& p) {
  detail::require_stable(p);
  const double l = p.lambda, m = p.mu;
  return 1.0 / l + (1.0 - l) / (m - l) - l / (m * m) + l / m;
}

// E[W_j Y_j]: cross moment of the waiting time and the interarrival time.
inline double geo_wait_cross_moment(const QueueParams& p) {
  detail::require_stable(p);
  const double l = p.lambda, m = p.mu;
  return l * (1.0 - m) / ((m - l) * m * m);
}

// System time is geometric with parameter mu (1 - rho).
inline double system_time_pmf_geo(const QueueParams& p, std::int64_t t) {
  detail::require_stable(p);
  if (t < 1) throw DomainError("system time support starts at 1");
  const double rho = utilization(p);
  const double head = p.mu * (1.0 - rho);
  return head * std::pow(1.0 - p.mu + p.mu * rho, static_cast<double>(t - 1));
}

inline double mean_system_time_geo(const QueueParams& p) {
  detail::require_stable(p);
  return 1.0 / (p.mu * (1.0 - utilization(p)));
}

// d/dlambda of aoi_geo_geo_1 for fixed mu.
inline double aoi_geo_derivative(double lambda, double mu) {
  const double gap = mu - lambda;
  return -1.0 / (lambda * lambda) + (1.0 - mu) / (gap * gap) - 1.0 / (mu * mu) + 1.0 / mu;
}

// Quartic whose root in (0, mu) is the age-optimal arrival rate.
inline double optimal_rate_quartic(double lambda, double mu) {
  const double l2 = lambda * lambda;
  return l2 * l2 * (mu - 1.0) - 2.0 * l2 * lambda * (mu - 1.0) * mu - l2 * mu * mu +
         2.0 * lambda * mu * mu * mu - mu * mu * mu * mu;
}

// Arrival rate minimising the Geo/Geo/1 age for a given mu. Bisection on the
// derivative over [1e-6, mu - 1e-6]; at mu = 1 the age is monotone and the
// upper end of the bracket is returned.
inline double optimal_arrival_rate(double mu) {
  constexpr double kEdge = 1e-6;
  if (!(std::isfinite(mu) && mu > 0.0 && mu <= 1.0)) {
    throw DomainError("mu must lie in (0,1]");
  }
  double lo = kEdge;
  double hi = mu - kEdge;
  if (!(hi > lo)) throw DomainError("mu too small to bracket the optimal arrival rate");

  // still falling at the stability edge: only at mu = 1, where the minimum
  // is the limit lambda -> 1
  if (aoi_geo_derivative(hi, mu) <= 0.0) return mu;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (aoi_geo_derivative(mid, mu) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Replacement discipline (one packet in service, one replaceable waiting slot)
// ---------------------------------------------------------------------------

struct ReplacementStationary {
  double pi0 = 0.0;
  double pi1 = 0.0;
  double pi2 = 0.0;
};

inline ReplacementStationary stationary_replacement(const QueueParams& p) {
  validate(p);
  const double l = p.lambda, m = p.mu;
  const double ratio1 = l / (m * (1.0 - l));
  const double ratio2 = l * l * (1.0 - m) / (m * m * (1.0 - l) * (1.0 - l));
  ReplacementStationary s;
  if (l != m) {
    const double rho = utilization(p);
    s.pi0 = (l - m) / (l * rho * rho - m);
  } else {
    // rho == 1 makes the closed form 0/0; the normalisation sum is regular.
    s.pi0 = 1.0 / (1.0 + ratio1 + ratio2);
  }
  s.pi1 = ratio1 * s.pi0;
  s.pi2 = ratio2 * s.pi0;
  return s;
}

// psi: the departing packet leaves the system empty. psi_bar: it leaves one
// packet waiting. Z: inter-reception time, S: service time, T: system time,
// W: waiting time of a transmitted packet.
struct ReplacementMoments {
  double p_psi = 0.0;
  double p_psi_bar = 0.0;
  double ez_psi = 0.0;
  double ez2_psi = 0.0;
  double ez_bar = 0.0;
  double ez2_bar = 0.0;
  double ez = 0.0;
  double ez2 = 0.0;
  double es_psi = 0.0;
  double es_bar = 0.0;
  double p_tx_busy = 0.0;  // P(tx | busy)
  double p_busy_tx = 0.0;  // P(busy, tx)
  double ew_tx = 0.0;
  double et_psi = 0.0;
  double et_bar = 0.0;
  double etz = 0.0;  // E[T_{j-1} Z_j]
  double p_drop = 0.0;
  double lambda_e = 0.0;
};

inline ReplacementMoments replacement_moments(const QueueParams& p) {
  validate(p);
  detail::require_distinct(p);
  const double l = p.lambda, m = p.mu;
  const double a = detail::either(p);
  const double q = detail::wait_denominator(p);
  const double d = detail::reception_denominator(p);

  ReplacementMoments r;
  r.p_psi = (m - l * m) / a;
  r.p_psi_bar = l / a;

  r.ez_psi = (l + m) / (l * m);
  r.ez2_psi = (2.0 * l * l + 2.0 * l * m - l * l * m + 2.0 * m * m - l * m * m) / (l * l * m * m);
  r.ez_bar = 1.0 / m;
  r.ez2_bar = (2.0 - m) / (m * m);
  r.ez = d / (l * m * a);
  r.ez2 = r.ez2_psi * r.p_psi + r.ez2_bar * r.p_psi_bar;

  r.es_psi = 1.0 / a;
  r.es_bar = 1.0 / a + 1.0 / m - 1.0;

  const double pi0 = stationary_replacement(p).pi0;
  r.p_tx_busy = (m - l * m) / a;
  r.p_busy_tx = (1.0 - pi0) * r.p_tx_busy;

  const double wait_num = (1.0 - l) * l * (1.0 - m) * (m + l - 2.0 * l * m);
  r.ew_tx = wait_num / q / a;
  r.et_psi = (1.0 + wait_num / q) / a;
  r.et_bar = wait_num / (a * q) + 1.0 / a + 1.0 / m - 1.0;

  r.etz = 1.0 / (m * m) + (1.0 - l) / (l * m) - (1.0 + l) / (a * a) + (1.0 + 2.0 * l) / a +
          l * (1.0 - 2.0 * m + l * (3.0 * m - 2.0)) / q;

  const double odds2 = l * l * (1.0 - m) / (m * m * (1.0 - l));
  r.p_drop = odds2 / (1.0 + l / (m * (1.0 - l)) + odds2);
  r.lambda_e = l - l * (l * l * (1.0 - m)) / d;
  return r;
}

// E[T_{j-1} Z_j] assembled from the conditional means (independence of
// T_{j-1} and Z_j given psi_{j-1}).
inline double etz_from_conditionals(const ReplacementMoments& r) {
  return r.p_psi * r.ez_psi * r.et_psi + r.p_psi_bar * r.ez_bar * r.et_bar;
}

enum class PmfKind { ZGivenPsi, ZGivenPsiBar, SGivenPsi, SGivenPsiBar, WGivenTx };

// Conditional pmfs of the replacement discipline. All supports start at 1.
inline double conditional_pmf(const QueueParams& p, PmfKind kind, std::int64_t n) {
  validate(p);
  if (n < 1) throw DomainError("pmf support starts at 1");
  const double l = p.lambda, m = p.mu;
  const double a = detail::either(p);
  const double k = static_cast<double>(n - 1);
  switch (kind) {
    case PmfKind::ZGivenPsi:
      detail::require_distinct(p);
      return l * m / (m - l) * (std::pow(1.0 - l, k) - std::pow(1.0 - m, k));
    case PmfKind::ZGivenPsiBar:
      return m * std::pow(1.0 - m, k);
    case PmfKind::SGivenPsi:
      return std::pow((1.0 - l) * (1.0 - m), k) * a;
    case PmfKind::SGivenPsiBar:
      return (1.0 - std::pow(1.0 - l, k + 1.0)) * m * std::pow(1.0 - m, k) * a / l;
    case PmfKind::WGivenTx:
      return std::pow(1.0 - a, k) * a;
  }
  throw DomainError("unknown pmf kind");
}

// Single-expression average age of the replacement discipline.
inline double aoi_replacement_closed_form(const QueueParams& p) {
  validate(p);
  detail::require_distinct(p);
  const double l = p.lambda, m = p.mu;
  const double a = detail::either(p);
  const double q = detail::wait_denominator(p);
  const double d = detail::reception_denominator(p);
  const double inner =
      d / (2.0 * l * m * a) + l * (l * (3.0 * m - 2.0) - 2.0 * m + 1.0) / q +
      (l * l * l * (m - 2.0) * (m - 1.0) + l * l * (m - 2.0) * (m - 1.0) * m +
       l * m * m * (2.0 - 3.0 * m) + 2.0 * m * m * m) /
          (2.0 * l * l * m * m * a) +
      (1.0 - l) / (l * m) + (2.0 * l + 1.0) / a - (l + 1.0) / (a * a) + 1.0 / (m * m);
  return l * m * a * inner / d;
}

// Average age assembled as lambda_e (E[TZ] + E[Z^2]/2 + E[Z]/2).
inline double aoi_replacement_assembled(const QueueParams& p) {
  const ReplacementMoments r = replacement_moments(p);
  return r.lambda_e * (r.etz + r.ez2 / 2.0 + r.ez / 2.0);
}

// Evaluates both forms and refuses to answer if they disagree.
inline double aoi_replacement(const QueueParams& p) {
  const double closed = aoi_replacement_closed_form(p);
  const double assembled = aoi_replacement_assembled(p);
  if (std::abs(closed - assembled) > 1e-9 * std::max(1.0, std::abs(closed))) {
    std::ostringstream os;
    os.precision(17);
    os << "replacement age forms disagree: " << closed << " vs " << assembled;
    throw std::logic_error(os.str());
  }
  return closed;
}

}  // namespace analytic
}  // namespace aoisim

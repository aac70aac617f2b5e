#pragma once

// Slot-loop simulator. Within slot t the order is fixed:
//   1. the policy grants the slot using queue states at slot start,
//   2. granted sources attempt, the channel resolves the attempts,
//   3. successes leave their queues for the delay stage (or the destination
//      directly); delay-stage packets due at t are classified,
//   4. Bernoulli arrivals join the queues,
//   5. every age tracker samples t - newest_gen + 1.
// A packet generated in slot t is therefore attempted at t + 1 at the
// earliest, and the minimum sampled age after a delivery is 2.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aoisim/access.hpp"
#include "aoisim/analytic.hpp"
#include "aoisim/error.hpp"
#include "aoisim/netdelay.hpp"
#include "aoisim/queue.hpp"
#include "aoisim/rng.hpp"

namespace aoisim {

enum class MeasurePoint { AccessPoint, Destination };

struct SimConfig {
  std::size_t n_sources = 1;
  std::vector<double> lambdas;
  Discipline discipline = Discipline::Fifo;
  PolicyConfig policy;
  ChannelConfig channel;
  std::optional<double> network_k;
  Slot horizon = 1'000'000;
  std::uint64_t seed = 1;
  MeasurePoint measure_at = MeasurePoint::AccessPoint;
  Slot warmup = 0;  // slots excluded from every average
};

namespace detail {

inline void check_probs(const std::vector<double>& v, std::size_t n, const char* field, bool allow_empty) {
  if (v.empty() && allow_empty) return;
  if (v.size() != n) {
    throw ConfigError(field, "expected " + std::to_string(n) + " values, got " + std::to_string(v.size()));
  }
  for (double x : v) {
    if (!(std::isfinite(x) && x > 0.0 && x <= 1.0)) {
      throw ConfigError(field, "probability " + std::to_string(x) + " outside (0,1]");
    }
  }
}

}  // namespace detail

inline void validate(const SimConfig& c) {
  if (c.n_sources < 1) throw ConfigError("n_sources", "need at least one source");
  if (c.lambdas.size() != c.n_sources) {
    throw ConfigError("lambda", "expected " + std::to_string(c.n_sources) + " arrival rates");
  }
  for (double l : c.lambdas) {
    if (!(std::isfinite(l) && l >= 0.0 && l <= 1.0)) {
      throw ConfigError("lambda", "arrival rate " + std::to_string(l) + " outside [0,1]");
    }
  }
  if (c.policy.kind == PolicyKind::RandomAccess) {
    detail::check_probs(c.policy.access_probs, c.n_sources, "q", false);
  }
  detail::check_probs(c.channel.success_probs, c.n_sources, "p", true);
  detail::check_probs(c.channel.service_probs, c.n_sources, "mu", true);
  if (c.network_k && !(std::isfinite(*c.network_k) && *c.network_k > 0.0 && *c.network_k <= 1.0)) {
    throw ConfigError("network_k", "must lie in (0,1]");
  }
  if (c.horizon < 1) throw ConfigError("horizon", "must be at least 1 slot");
  if (c.warmup < 0 || c.warmup >= c.horizon) throw ConfigError("warmup", "must lie in [0, horizon)");
}

// Running age at one measurement point for one source.
class AoiTracker {
 public:
  // Only a fresher generation slot moves the age down.
  void on_reception(Slot gen_slot) {
    if (!newest_gen_ || gen_slot > *newest_gen_) newest_gen_ = gen_slot;
  }

  // Age at the end of `slot`; before any delivery the last update is taken to
  // be from slot -1.
  static std::int64_t age_at(Slot slot, const std::optional<Slot>& newest) {
    return newest ? slot - *newest + 1 : slot + 1;
  }

  void sample(Slot slot) {
    age_sum_ += static_cast<std::uint64_t>(age_at(slot, newest_gen_));
    ++samples_;
  }

  double average() const { return samples_ ? static_cast<double>(age_sum_) / static_cast<double>(samples_) : 0.0; }

  const std::optional<Slot>& newest_gen() const noexcept { return newest_gen_; }
  std::uint64_t age_sum() const noexcept { return age_sum_; }
  std::uint64_t samples() const noexcept { return samples_; }

 private:
  std::optional<Slot> newest_gen_;
  std::uint64_t age_sum_ = 0;
  std::uint64_t samples_ = 0;
};

// One update as seen at a measurement point.
struct Reception {
  Slot gen_slot = 0;
  Slot recv_slot = 0;
};

struct Estimates {
  double yt = 0.0;  // lambda (E[YT] + E[Y^2]/2 + E[Y]/2)
  double zt = 0.0;  // lambda (E[T_{j-1} Z_j] + E[Z^2]/2 + E[Z]/2)
};

// Streaming sample moments of consecutive receptions: Y (generation gap),
// T (system time) and Z (reception gap).
class CycleAccumulator {
 public:
  void add(const Reception& r) {
    ++receptions_;
    if (prev_) {
      const double y = static_cast<double>(r.gen_slot - prev_->gen_slot);
      const double t = static_cast<double>(r.recv_slot - r.gen_slot);
      const double z = static_cast<double>(r.recv_slot - prev_->recv_slot);
      const double t_prev = static_cast<double>(prev_->recv_slot - prev_->gen_slot);
      ++cycles_;
      sum_yt_ += y * t;
      sum_y2_ += y * y;
      sum_y_ += y;
      sum_tz_ += t_prev * z;
      sum_z2_ += z * z;
      sum_z_ += z;
    }
    prev_ = r;
  }

  std::uint64_t receptions() const noexcept { return receptions_; }

  // Plug-in estimators with lambda replaced by receptions / horizon.
  Estimates estimate(Slot horizon) const {
    if (receptions_ < 2) throw InsufficientData("need at least two receptions");
    const double rate = static_cast<double>(receptions_) / static_cast<double>(horizon);
    const double k = static_cast<double>(cycles_);
    return {rate * (sum_yt_ + sum_y2_ / 2.0 + sum_y_ / 2.0) / k,
            rate * (sum_tz_ + sum_z2_ / 2.0 + sum_z_ / 2.0) / k};
  }

 private:
  std::optional<Reception> prev_;
  std::uint64_t receptions_ = 0;
  std::uint64_t cycles_ = 0;
  double sum_yt_ = 0.0, sum_y2_ = 0.0, sum_y_ = 0.0;
  double sum_tz_ = 0.0, sum_z2_ = 0.0, sum_z_ = 0.0;
};

inline Estimates sample_path_estimators(std::span<const Reception> log, Slot horizon) {
  if (horizon < 1) throw DomainError("horizon must be positive");
  CycleAccumulator acc;
  for (const auto& r : log) acc.add(r);
  return acc.estimate(horizon);
}

// Departure-conditioned statistics at the access point. psi: the delivery
// left the system empty once the slot's arrivals were in.
struct DeliveryStats {
  double mean_system_time = 0.0;
  double mean_interarrival = 0.0;     // generated packets, E[Y]
  double mean_interarrival_sq = 0.0;  // E[Y^2]
  double p_psi = 0.0;
  double ez = 0.0, ez2 = 0.0;
  double ez_psi = 0.0, ez2_psi = 0.0;
  double ez_bar = 0.0, ez2_bar = 0.0;
  double et_psi = 0.0, et_bar = 0.0;
  double etz = 0.0;  // E[T_{j-1} Z_j]
  std::uint64_t cycles_psi = 0, cycles_bar = 0;
};

struct SourceMetrics {
  SourceId source_id = 0;
  double lambda = 0.0;
  double avg_aoi = 0.0;  // at the configured measurement point
  double avg_aoi_ap = 0.0;
  std::optional<double> avg_aoi_destination;
  std::uint64_t generated = 0;
  std::uint64_t delivered = 0;  // at the access point
  std::uint64_t dropped = 0;
  std::uint64_t informative = 0;
  std::uint64_t obsolete = 0;
  double empirical_drop_prob = 0.0;
  double empirical_effective_rate = 0.0;
  double obsolete_frac = 0.0;
  std::vector<double> occupancy_hist;          // end-of-slot occupancy -> fraction
  std::vector<double> arrival_occupancy_hist;  // occupancy seen by arrivals
  double estimator_yt = std::numeric_limits<double>::quiet_NaN();
  double estimator_zt = std::numeric_limits<double>::quiet_NaN();
  bool stability_warning = false;
  DeliveryStats ap;
};

struct MetricsReport {
  SimConfig config;
  std::vector<SourceMetrics> sources;
};

// FIFO sources whose arrival rate reaches the service share the access
// policy can give them.
inline std::vector<bool> stability_warnings(const SimConfig& c) {
  std::vector<bool> out(c.n_sources, false);
  if (c.discipline != Discipline::Fifo) return out;
  const double n = static_cast<double>(c.n_sources);
  double load = 0.0;
  for (SourceId i = 0; i < c.n_sources; ++i) load += c.lambdas[i] / attempt_success(c.channel, i);
  for (SourceId i = 0; i < c.n_sources; ++i) {
    const double s = attempt_success(c.channel, i);
    double capacity = s;
    switch (c.policy.kind) {
      case PolicyKind::RoundRobin:
        capacity = s / n;
        break;
      case PolicyKind::WorkConserving:
        if (load >= 1.0) capacity = 0.0;
        break;
      case PolicyKind::RandomAccess: {
        const double qi = c.policy.access_probs[i];
        if (c.channel.kind == ChannelKind::Collision) {
          double others = 1.0;
          for (SourceId j = 0; j < c.n_sources; ++j) {
            if (j != i) others *= 1.0 - c.policy.access_probs[j];
          }
          capacity = qi * others * (c.channel.collision_thinning ? s : 1.0);
        } else {
          capacity = qi * s;
        }
        break;
      }
    }
    out[i] = c.lambdas[i] >= capacity;
  }
  return out;
}

namespace detail {

struct SourceRun {
  SourceQueue queue;
  AoiTracker ap_age;
  AoiTracker dest_age;
  CycleAccumulator ap_cycles;
  CycleAccumulator dest_cycles;
  std::vector<std::uint64_t> occupancy;
  std::vector<std::uint64_t> arrival_occupancy;
  std::uint64_t arrivals_measured = 0;
  std::uint64_t seq = 0;

  // Generation gaps.
  std::optional<Slot> last_gen;
  double sum_y = 0.0, sum_y2 = 0.0;
  std::uint64_t n_y = 0;

  // Delivery-conditioned moments.
  double sum_t = 0.0;
  std::uint64_t n_t = 0;
  bool delivered_now = false;
  Slot last_delivery = 0;
  Slot last_t = 0;
  bool last_psi = false;
  bool have_last = false;
  double z_psi = 0.0, z2_psi = 0.0, z_bar = 0.0, z2_bar = 0.0, tz = 0.0;
  std::uint64_t n_z_psi = 0, n_z_bar = 0;
  double t_psi = 0.0, t_bar = 0.0;
  std::uint64_t n_t_psi = 0, n_t_bar = 0;
  Slot pending_t = 0;
};

inline void bump(std::vector<std::uint64_t>& hist, std::size_t k) {
  if (hist.size() <= k) hist.resize(k + 1, 0);
  ++hist[k];
}

inline std::vector<double> normalise(const std::vector<std::uint64_t>& hist, std::uint64_t total) {
  std::vector<double> out(hist.size(), 0.0);
  if (total == 0) return out;
  for (std::size_t k = 0; k < hist.size(); ++k) {
    out[k] = static_cast<double>(hist[k]) / static_cast<double>(total);
  }
  return out;
}

inline double safe_div(double num, double den) { return den > 0.0 ? num / den : 0.0; }

}  // namespace detail

inline MetricsReport run(const SimConfig& config) {
  validate(config);
  const std::size_t n = config.n_sources;
  StreamPool rng(config.seed);
  DelayStage stage;
  DestState dest(n);
  const bool networked = config.network_k.has_value();

  std::vector<detail::SourceRun> src(n);
  for (SourceId i = 0; i < n; ++i) src[i].queue = SourceQueue(i, config.discipline);

  std::vector<SourceId> nonempty;
  std::vector<SourceId> transmitters;
  std::vector<std::size_t> slot_start_occupancy(n, 0);
  nonempty.reserve(n);
  transmitters.reserve(n);

  for (Slot t = 0; t < config.horizon; ++t) {
    const bool measured = t >= config.warmup;

    // 1. grant on slot-start state
    nonempty.clear();
    for (SourceId i = 0; i < n; ++i) {
      slot_start_occupancy[i] = src[i].queue.occupancy();
      if (slot_start_occupancy[i] > 0) nonempty.push_back(i);
    }
    const std::vector<SourceId> granted = grant(config.policy, n, t, nonempty, rng);

    // 2. attempts
    transmitters.clear();
    for (SourceId i : granted) {
      if (src[i].queue.begin_attempt()) transmitters.push_back(i);
    }
    const std::vector<TxOutcome> outcomes = resolve(config.channel, transmitters, rng);

    // 3. deliveries
    for (const TxOutcome& o : outcomes) {
      if (o.result != TxResult::Success) continue;
      auto& s = src[o.source];
      const Packet p = s.queue.on_delivery();
      const Reception rec{p.gen_slot, t};
      s.ap_age.on_reception(p.gen_slot);
      if (measured) {
        s.ap_cycles.add(rec);
        s.sum_t += static_cast<double>(t - p.gen_slot);
        ++s.n_t;
        if (s.have_last) {
          const double z = static_cast<double>(t - s.last_delivery);
          if (s.last_psi) {
            s.z_psi += z;
            s.z2_psi += z * z;
            ++s.n_z_psi;
          } else {
            s.z_bar += z;
            s.z2_bar += z * z;
            ++s.n_z_bar;
          }
          s.tz += static_cast<double>(s.last_t) * z;
        }
      }
      s.delivered_now = true;
      s.pending_t = t - p.gen_slot;
      if (networked) {
        stage.inject(p, t, *config.network_k, rng.source(o.source, StreamRole::Delay));
      } else {
        ++dest.informative_count[o.source];
        dest.newest_gen_delivered[o.source] = p.gen_slot;
        s.dest_age.on_reception(p.gen_slot);
        if (measured) s.dest_cycles.add(rec);
      }
    }
    if (networked) {
      for (const Arrival& a : stage.deliver_due(dest, t)) {
        if (a.kind != Classification::Informative) continue;
        auto& s = src[a.packet.source_id];
        s.dest_age.on_reception(a.packet.gen_slot);
        if (measured) s.dest_cycles.add({a.packet.gen_slot, t});
      }
    }

    // 4. arrivals
    for (SourceId i = 0; i < n; ++i) {
      auto& s = src[i];
      if (!rng.source(i, StreamRole::Arrivals).bernoulli(config.lambdas[i])) continue;
      if (measured) {
        detail::bump(s.arrival_occupancy, slot_start_occupancy[i]);
        ++s.arrivals_measured;
        if (s.last_gen) {
          const double y = static_cast<double>(t - *s.last_gen);
          s.sum_y += y;
          s.sum_y2 += y * y;
          ++s.n_y;
        }
      }
      s.last_gen = t;
      s.queue.on_arrival(Packet{i, t, s.seq++});
    }

    // departure events are classified once the arrivals are in
    for (SourceId i = 0; i < n; ++i) {
      auto& s = src[i];
      if (!s.delivered_now) continue;
      s.delivered_now = false;
      const bool psi = s.queue.empty();
      if (measured) {
        if (psi) {
          s.t_psi += static_cast<double>(s.pending_t);
          ++s.n_t_psi;
        } else {
          s.t_bar += static_cast<double>(s.pending_t);
          ++s.n_t_bar;
        }
      }
      s.have_last = true;
      s.last_psi = psi;
      s.last_t = s.pending_t;
      s.last_delivery = t;
    }

    // 5. sampling
    if (measured) {
      for (auto& s : src) {
        detail::bump(s.occupancy, s.queue.occupancy());
        s.ap_age.sample(t);
        s.dest_age.sample(t);
      }
    }
  }

  const Slot measured_slots = config.horizon - config.warmup;
  const std::vector<bool> warn = stability_warnings(config);
  MetricsReport report;
  report.config = config;
  report.sources.resize(n);
  for (SourceId i = 0; i < n; ++i) {
    auto& s = src[i];
    SourceMetrics& m = report.sources[i];
    m.source_id = i;
    m.lambda = config.lambdas[i];
    m.avg_aoi_ap = s.ap_age.average();
    if (networked) m.avg_aoi_destination = s.dest_age.average();
    const bool at_dest = config.measure_at == MeasurePoint::Destination;
    m.avg_aoi = at_dest ? s.dest_age.average() : m.avg_aoi_ap;
    m.generated = s.queue.generated_count();
    m.delivered = s.queue.delivered_count();
    m.dropped = s.queue.dropped_count();
    m.informative = dest.informative_count[i];
    m.obsolete = dest.obsolete_count[i];
    m.empirical_drop_prob = detail::safe_div(static_cast<double>(m.dropped), static_cast<double>(m.generated));
    m.empirical_effective_rate = static_cast<double>(s.ap_cycles.receptions()) / static_cast<double>(measured_slots);
    m.obsolete_frac =
        detail::safe_div(static_cast<double>(m.obsolete), static_cast<double>(m.obsolete + m.informative));
    m.occupancy_hist = detail::normalise(s.occupancy, static_cast<std::uint64_t>(measured_slots));
    m.arrival_occupancy_hist = detail::normalise(s.arrival_occupancy, s.arrivals_measured);
    const CycleAccumulator& cycles = at_dest ? s.dest_cycles : s.ap_cycles;
    if (cycles.receptions() >= 2) {
      const Estimates e = cycles.estimate(measured_slots);
      m.estimator_yt = e.yt;
      m.estimator_zt = e.zt;
    }
    m.stability_warning = warn[i];

    DeliveryStats& d = m.ap;
    d.mean_system_time = detail::safe_div(s.sum_t, static_cast<double>(s.n_t));
    d.mean_interarrival = detail::safe_div(s.sum_y, static_cast<double>(s.n_y));
    d.mean_interarrival_sq = detail::safe_div(s.sum_y2, static_cast<double>(s.n_y));
    const double nz = static_cast<double>(s.n_z_psi + s.n_z_bar);
    d.cycles_psi = s.n_z_psi;
    d.cycles_bar = s.n_z_bar;
    d.p_psi = detail::safe_div(static_cast<double>(s.n_t_psi), static_cast<double>(s.n_t_psi + s.n_t_bar));
    d.ez = detail::safe_div(s.z_psi + s.z_bar, nz);
    d.ez2 = detail::safe_div(s.z2_psi + s.z2_bar, nz);
    d.ez_psi = detail::safe_div(s.z_psi, static_cast<double>(s.n_z_psi));
    d.ez2_psi = detail::safe_div(s.z2_psi, static_cast<double>(s.n_z_psi));
    d.ez_bar = detail::safe_div(s.z_bar, static_cast<double>(s.n_z_bar));
    d.ez2_bar = detail::safe_div(s.z2_bar, static_cast<double>(s.n_z_bar));
    d.et_psi = detail::safe_div(s.t_psi, static_cast<double>(s.n_t_psi));
    d.et_bar = detail::safe_div(s.t_bar, static_cast<double>(s.n_t_bar));
    d.etz = detail::safe_div(s.tz, nz);
  }
  return report;
}

// One source that owns the channel, per-attempt success mu.
inline SimConfig dedicated_channel_config(const QueueParams& params, Discipline discipline, Slot horizon,
                                          std::uint64_t seed) {
  validate(params);
  SimConfig c;
  c.n_sources = 1;
  c.lambdas = {params.lambda};
  c.discipline = discipline;
  c.policy.kind = PolicyKind::RoundRobin;
  c.channel.kind = ChannelKind::Erasure;
  c.channel.service_probs = {params.mu};
  c.channel.success_probs = {1.0};
  c.horizon = horizon;
  c.seed = seed;
  return c;
}

inline MetricsReport dedicated_channel_run(const QueueParams& params, Discipline discipline, Slot horizon,
                                           std::uint64_t seed) {
  return run(dedicated_channel_config(params, discipline, horizon, seed));
}

}  // namespace aoisim

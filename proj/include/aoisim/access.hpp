#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "aoisim/queue.hpp"
#include "aoisim/rng.hpp"

namespace aoisim {

enum class PolicyKind { RoundRobin, WorkConserving, RandomAccess };

struct PolicyConfig {
  PolicyKind kind = PolicyKind::RoundRobin;
  std::vector<double> access_probs;  // q_i, RandomAccess only
};

enum class ChannelKind { Perfect, Erasure, Collision };

struct ChannelConfig {
  ChannelKind kind = ChannelKind::Perfect;
  std::vector<double> success_probs;  // p_i; empty means 1
  std::vector<double> service_probs;  // mu_i; empty means 1
  bool collision_thinning = false;    // also apply mu_i p_i to a lone transmitter
};

enum class TxResult { Success, Failure };

struct TxOutcome {
  SourceId source = 0;
  TxResult result = TxResult::Failure;
};

namespace detail {

inline double prob_or_one(const std::vector<double>& v, SourceId i) {
  return i < v.size() ? v[i] : 1.0;
}

}  // namespace detail

// Per-attempt success probability on a collision-free slot.
inline double attempt_success(const ChannelConfig& channel, SourceId i) {
  return detail::prob_or_one(channel.service_probs, i) * detail::prob_or_one(channel.success_probs, i);
}

// Sources allowed to transmit in `slot`. `nonempty` lists the sources holding
// at least one packet at slot start, in ascending order.
inline std::vector<SourceId> grant(const PolicyConfig& policy, std::size_t n_sources, Slot slot,
                                   std::span<const SourceId> nonempty, StreamPool& rng) {
  std::vector<SourceId> out;
  switch (policy.kind) {
    case PolicyKind::RoundRobin:
      // Fixed ascending cycle; an empty owner wastes the slot.
      out.push_back(static_cast<SourceId>(slot % static_cast<Slot>(n_sources)));
      break;
    case PolicyKind::WorkConserving:
      if (!nonempty.empty()) {
        const auto pick = rng.shared(StreamRole::Scheduler).below(nonempty.size());
        out.push_back(nonempty[pick]);
      }
      break;
    case PolicyKind::RandomAccess:
      for (SourceId i : nonempty) {
        if (rng.source(i, StreamRole::Access).bernoulli(detail::prob_or_one(policy.access_probs, i))) {
          out.push_back(i);
        }
      }
      break;
  }
  return out;
}

inline std::vector<TxOutcome> resolve(const ChannelConfig& channel, std::span<const SourceId> transmitters,
                                      StreamPool& rng) {
  std::vector<TxOutcome> out;
  out.reserve(transmitters.size());
  if (channel.kind == ChannelKind::Collision) {
    if (transmitters.size() == 1) {
      const SourceId i = transmitters.front();
      bool ok = true;
      if (channel.collision_thinning) {
        ok = rng.source(i, StreamRole::Channel).bernoulli(attempt_success(channel, i));
      }
      out.push_back({i, ok ? TxResult::Success : TxResult::Failure});
    } else {
      for (SourceId i : transmitters) out.push_back({i, TxResult::Failure});
    }
    return out;
  }
  for (SourceId i : transmitters) {
    double p = detail::prob_or_one(channel.service_probs, i);
    if (channel.kind == ChannelKind::Erasure) p *= detail::prob_or_one(channel.success_probs, i);
    const bool ok = rng.source(i, StreamRole::Channel).bernoulli(p);
    out.push_back({i, ok ? TxResult::Success : TxResult::Failure});
  }
  return out;
}

}  // namespace aoisim

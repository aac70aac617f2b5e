#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "aoisim/error.hpp"
#include "aoisim/queue.hpp"
#include "aoisim/rng.hpp"

namespace aoisim {

struct InFlight {
  Packet packet;
  Slot arrive_slot = 0;
};

enum class Classification { Informative, Obsolete };

struct Arrival {
  Packet packet;
  Classification kind = Classification::Informative;
};

// What the final destination has seen from each source.
struct DestState {
  explicit DestState(std::size_t n_sources = 0)
      : newest_gen_delivered(n_sources), informative_count(n_sources, 0), obsolete_count(n_sources, 0) {}

  std::vector<std::optional<Slot>> newest_gen_delivered;
  std::vector<std::uint64_t> informative_count;
  std::vector<std::uint64_t> obsolete_count;
};

// Infinite-server stage between the access point and the destination. Each
// packet is delayed independently by a Geometric(k) number of slots (>= 1),
// so packets may overtake each other.
class DelayStage {
 public:
  InFlight inject(const Packet& packet, Slot ap_slot, double k, RandomStream& rng) {
    if (!(std::isfinite(k) && k > 0.0 && k <= 1.0)) throw DomainError("network delay parameter k must lie in (0,1]");
    InFlight f{packet, ap_slot + static_cast<Slot>(rng.geometric(k))};
    pending_[f.arrive_slot].push_back(f.packet);
    ++in_flight_;
    return f;
  }

  // Removes everything due at `slot` and classifies it against `dest`.
  // Several packets of one source due in the same slot are handled newest
  // first, so at most one of them is informative.
  std::vector<Arrival> deliver_due(DestState& dest, Slot slot) {
    std::vector<Arrival> out;
    auto it = pending_.find(slot);
    if (it == pending_.end()) return out;
    std::vector<Packet> due = std::move(it->second);
    pending_.erase(it);
    in_flight_ -= due.size();

    std::stable_sort(due.begin(), due.end(), [](const Packet& a, const Packet& b) {
      if (a.source_id != b.source_id) return a.source_id < b.source_id;
      return a.gen_slot > b.gen_slot;
    });
    out.reserve(due.size());
    for (const Packet& p : due) {
      auto& newest = dest.newest_gen_delivered.at(p.source_id);
      if (!newest || p.gen_slot > *newest) {
        newest = p.gen_slot;
        ++dest.informative_count[p.source_id];
        out.push_back({p, Classification::Informative});
      } else {
        ++dest.obsolete_count[p.source_id];
        out.push_back({p, Classification::Obsolete});
      }
    }
    return out;
  }

  std::size_t in_flight() const noexcept { return in_flight_; }

 private:
  std::map<Slot, std::vector<Packet>> pending_;
  std::size_t in_flight_ = 0;
};

}  // namespace aoisim

#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>

#include "aoisim/error.hpp"

namespace aoisim {

using SourceId = std::size_t;
using Slot = std::int64_t;

// A status update. Its only payload is the slot it was generated in.
struct Packet {
  SourceId source_id = 0;
  Slot gen_slot = 0;
  std::uint64_t seq = 0;

  friend bool operator==(const Packet&, const Packet&) = default;
};

enum class Discipline { Fifo, Replacement };

enum class ArrivalOutcome { Queued, Replaced };

// Per-source transmission queue.
//
// Fifo keeps every packet. Replacement keeps at most one waiting packet and
// overwrites it with each newer arrival. The packet in service is never
// preempted; it leaves only through on_delivery().
class SourceQueue {
 public:
  SourceQueue() = default;
  SourceQueue(SourceId id, Discipline discipline) : id_(id), discipline_(discipline) {}

  ArrivalOutcome on_arrival(const Packet& packet) {
    if (packet.source_id != id_) throw ProtocolError("packet routed to the wrong source queue");
    ++generated_;
    if (discipline_ == Discipline::Replacement && !waiting_.empty()) {
      waiting_.back() = packet;
      ++dropped_;
      return ArrivalOutcome::Replaced;
    }
    waiting_.push_back(packet);
    return ArrivalOutcome::Queued;
  }

  // Packet to transmit in a granted slot: the one in service, or the head of
  // the waiting line promoted into service. Empty when the system is empty.
  std::optional<Packet> begin_attempt() {
    if (!in_service_) promote();
    return in_service_;
  }

  // Removes the packet in service after a successful transmission. The next
  // waiting packet, if any, moves into the server and is no longer
  // replaceable.
  Packet on_delivery() {
    if (!in_service_) throw ProtocolError("on_delivery called with no packet in service");
    Packet done = *in_service_;
    in_service_.reset();
    ++delivered_;
    promote();
    return done;
  }

  std::size_t occupancy() const noexcept { return waiting_.size() + (in_service_ ? 1 : 0); }
  bool empty() const noexcept { return occupancy() == 0; }

  SourceId id() const noexcept { return id_; }
  Discipline discipline() const noexcept { return discipline_; }
  const std::optional<Packet>& in_service() const noexcept { return in_service_; }
  const std::deque<Packet>& waiting() const noexcept { return waiting_; }

  std::uint64_t generated_count() const noexcept { return generated_; }
  std::uint64_t dropped_count() const noexcept { return dropped_; }
  std::uint64_t delivered_count() const noexcept { return delivered_; }

 private:
  void promote() {
    if (waiting_.empty()) return;
    in_service_ = waiting_.front();
    waiting_.pop_front();
  }

  SourceId id_ = 0;
  Discipline discipline_ = Discipline::Fifo;
  std::optional<Packet> in_service_;
  std::deque<Packet> waiting_;
  std::uint64_t generated_ = 0;
  std::uint64_t dropped_ = 0;
  std::uint64_t delivered_ = 0;
};

}  // namespace aoisim

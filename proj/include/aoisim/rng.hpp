#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <utility>

namespace aoisim {

// What a random stream is used for. Part of the stream key, so adding a
// consumer never shifts the draws of another.
enum class StreamRole : std::uint32_t {
  Arrivals = 1,
  Channel = 2,
  Access = 3,
  Delay = 4,
  Scheduler = 5,
};

// One seeded 64-bit stream. Uniforms are built from the raw engine output so
// results do not depend on the standard library's distribution objects.
class RandomStream {
 public:
  RandomStream() = default;

  RandomStream(std::uint64_t seed, std::uint64_t source, StreamRole role) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(source), static_cast<std::uint32_t>(source >> 32),
                      static_cast<std::uint32_t>(role)};
    engine_.seed(seq);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) {
    if (p >= 1.0) return true;
    if (p <= 0.0) return false;
    return uniform() < p;
  }

  // Geometric on {1, 2, ...} with success probability p; mean 1/p.
  std::uint64_t geometric(double p) {
    if (p >= 1.0) return 1;
    const double u = 1.0 - uniform();  // (0, 1]
    return 1 + static_cast<std::uint64_t>(std::floor(std::log(u) / std::log1p(-p)));
  }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Plain rejection sampling keeps the draw platform independent.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

 private:
  std::mt19937_64 engine_;
};

// Lazily created streams keyed by (source, role) under one run seed.
class StreamPool {
 public:
  static constexpr std::uint64_t kShared = ~std::uint64_t{0};

  explicit StreamPool(std::uint64_t seed) : seed_(seed) {}

  RandomStream& source(std::uint64_t id, StreamRole role) {
    auto key = std::make_pair(id, role);
    auto it = streams_.find(key);
    if (it == streams_.end()) {
      it = streams_.emplace(key, RandomStream(seed_, id, role)).first;
    }
    return it->second;
  }

  RandomStream& shared(StreamRole role) { return source(kShared, role); }

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
  std::map<std::pair<std::uint64_t, StreamRole>, RandomStream> streams_;
};

}  // namespace aoisim

// Copyright 2026 The dppipa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>

namespace dppipa {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
/// as easy as 1, 2, 3"). Pure function of (counter, key).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based random source keyed on (seed, stream). Draw i of a stream is
/// a pure function of (seed, stream, i), so results never depend on the
/// order in which draws are evaluated or on how work is split across threads.
struct CounterRng {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  std::uint64_t bits(std::uint64_t index) const;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform(std::uint64_t index) const {
    return static_cast<double>(bits(index) >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound). Multiply-shift; bias is below 2^-64 * bound.
  std::uint64_t below(std::uint64_t index, std::uint64_t bound) const {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(bits(index)) * bound) >> 64);
  }

  /// Independent child stream, e.g. one per realization or per iteration.
  CounterRng fork(std::uint64_t id) const;
};

/// Sequential cursor over a CounterRng stream.
class RngStream {
 public:
  RngStream() = default;
  explicit RngStream(CounterRng rng) : rng_(rng) {}
  RngStream(std::uint64_t seed, std::uint64_t stream) : rng_{seed, stream} {}

  std::uint64_t next_bits() { return rng_.bits(position_++); }
  double uniform() { return rng_.uniform(position_++); }
  std::uint64_t below(std::uint64_t bound) { return rng_.below(position_++, bound); }

  /// Number of draws consumed so far.
  std::uint64_t position() const { return position_; }
  const CounterRng& source() const { return rng_; }

 private:
  CounterRng rng_;
  std::uint64_t position_ = 0;
};

}  // namespace dppipa

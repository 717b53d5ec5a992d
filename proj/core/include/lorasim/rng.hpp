// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lorasim Authors

#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace lorasim {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
/// as easy as 1, 2, 3").
PhiloxCounter philox4x32(PhiloxCounter counter, PhiloxKey key);

/// Independent sub-streams of one trial.
enum class StreamLane : std::uint32_t {
  geometry = 0,
  fading = 1,
};

/*!
 * Counter-based random stream addressed by (seed, bin, trial, lane).
 *
 * The seed is the Philox key; bin, trial and lane occupy three counter words
 * and the fourth word counts blocks within the stream. Every stream is a pure
 * function of its coordinates, so results do not depend on which thread runs
 * which trial.
 *
 * Satisfies UniformRandomBitGenerator with 64-bit outputs.
 */
class CounterStream {
 public:
  using result_type = std::uint64_t;

  CounterStream(std::uint64_t seed, std::uint32_t bin, std::uint64_t trial, StreamLane lane);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  void refill();

  PhiloxKey key_;
  PhiloxCounter counter_;
  PhiloxCounter block_{};
  unsigned used_ = 4;
};

}  // namespace lorasim

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lorasim Authors

#include "lorasim/rng.hpp"

#include "lorasim/errors.hpp"

namespace lorasim {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

}  // namespace

PhiloxCounter philox4x32(PhiloxCounter ctr, PhiloxKey key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

CounterStream::CounterStream(std::uint64_t seed, std::uint32_t bin, std::uint64_t trial,
                             StreamLane lane)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      counter_{0u, static_cast<std::uint32_t>(lane), static_cast<std::uint32_t>(trial), bin} {
  if (trial > 0xFFFFFFFFull) throw InvalidArgument("trial index exceeds 32 bits");
}

void CounterStream::refill() {
  block_ = philox4x32(counter_, key_);
  if (++counter_[0] == 0) throw InvalidArgument("counter stream exhausted");
  used_ = 0;
}

CounterStream::result_type CounterStream::operator()() {
  if (used_ >= 4) refill();
  const std::uint64_t hi = block_[used_];
  const std::uint64_t lo = block_[used_ + 1];
  used_ += 2;
  return (hi << 32) | lo;
}

}  // namespace lorasim

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lorasim Authors

#pragma once

#include <array>
#include <cstddef>

// LoRa protocol constants for a 25-byte uplink at 125 kHz, and the mapping
// from link distance to spreading factor.

namespace lorasim {

inline constexpr int kMinSf = 7;
inline constexpr int kMaxSf = 12;
inline constexpr std::size_t kNumSf = 6;
inline constexpr int kPayloadBytes = 25;

struct SfRow {
  int sf;
  double bitrate_kbps;
  double airtime_ms;
  double tx_per_hour;
  double sensitivity_dbm;
  double snr_threshold_db;  // q_SF
};

/// Rows for SF7..SF12, in SF order.
const std::array<SfRow, kNumSf>& sf_table();

/// Row for `sf`; throws InvalidArgument outside 7..12.
const SfRow& sf_row(int sf);

/// Position of `sf` in the tables (SF7 -> 0). Throws outside 7..12.
std::size_t sf_index(int sf);

/// Co-SF and inter-SF capture thresholds in dB. Row is the tagged SF,
/// column the interferer SF.
using SirMatrix = std::array<std::array<double, kNumSf>, kNumSf>;
const SirMatrix& sir_matrix_db();

double snr_threshold_db(int sf);
double snr_threshold_linear(int sf);

/// Linear SIR threshold for a tagged SF against an interferer SF.
double sir_threshold(int sf_tagged, int sf_interferer);

/// Co-SF capture threshold (1 dB) as a linear ratio.
double co_sf_threshold();

/// Fraction of time an ALOHA end device is on air: Tx/h x airtime / 3600 s.
double duty_cycle(int sf);

/// Largest duty cycle over all SFs; bounds the activity thinning ratio.
double max_duty_cycle();

/// Ring radii d0..d6 in km. SF 7+k serves [d_k, d_{k+1}); SF12 also covers
/// everything beyond d6.
class SfBoundaries {
 public:
  /// Validates d0 == 0 and strictly increasing finite radii.
  explicit SfBoundaries(const std::array<double, kNumSf + 1>& radii_km);

  /// Builds from the six outer edges d1..d6 (d0 = 0 implied).
  static SfBoundaries from_outer_edges(const std::array<double, kNumSf>& edges_km);

  double operator[](std::size_t k) const { return radii_[k]; }
  const std::array<double, kNumSf + 1>& radii() const { return radii_; }

  friend bool operator==(const SfBoundaries&, const SfBoundaries&) = default;

 private:
  std::array<double, kNumSf + 1> radii_;
};

/// Solves tx * path_gain(d) = q_SF * noise for each SF, i.e. the distance at
/// which the mean SNR (unit fading) sits exactly on the SF threshold.
SfBoundaries compute_sf_boundaries(double tx_power_dbm, double noise_dbm, double wavelength_km,
                                   double eta);

int sf_for_distance(double d_km, const SfBoundaries& boundaries);

}  // namespace lorasim

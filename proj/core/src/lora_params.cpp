// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lorasim Authors

#include "lorasim/lora_params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lorasim/channel.hpp"
#include "lorasim/errors.hpp"

namespace lorasim {

namespace {

constexpr std::array<SfRow, kNumSf> kSfTable{{
    {7, 5.47, 36.6, 98, -123.0, -6.0},
    {8, 3.13, 64.0, 56, -126.0, -9.0},
    {9, 1.76, 113.0, 31, -129.0, -12.0},
    {10, 0.98, 204.0, 17, -132.0, -15.0},
    {11, 0.54, 372.0, 9, -134.5, -17.5},
    {12, 0.29, 682.0, 5, -137.0, -20.0},
}};

constexpr SirMatrix kSirMatrixDb{{
    {1, -8, -9, -9, -9, -9},
    {-11, 1, -11, -12, -13, -13},
    {-15, -13, 1, -13, -14, -15},
    {-19, -18, -17, 1, -17, -18},
    {-22, -22, -21, -20, 1, -20},
    {-25, -25, -25, -24, -23, 1},
}};

}  // namespace

const std::array<SfRow, kNumSf>& sf_table() { return kSfTable; }

std::size_t sf_index(int sf) {
  if (sf < kMinSf || sf > kMaxSf) {
    throw InvalidArgument("spreading factor " + std::to_string(sf) + " outside 7..12");
  }
  return static_cast<std::size_t>(sf - kMinSf);
}

const SfRow& sf_row(int sf) { return kSfTable[sf_index(sf)]; }

const SirMatrix& sir_matrix_db() { return kSirMatrixDb; }

double snr_threshold_db(int sf) { return sf_row(sf).snr_threshold_db; }

double snr_threshold_linear(int sf) { return db_to_linear(snr_threshold_db(sf)); }

double sir_threshold(int sf_tagged, int sf_interferer) {
  return db_to_linear(kSirMatrixDb[sf_index(sf_tagged)][sf_index(sf_interferer)]);
}

double co_sf_threshold() { return db_to_linear(kSirMatrixDb[0][0]); }

double duty_cycle(int sf) {
  const SfRow& row = sf_row(sf);
  return row.tx_per_hour * (row.airtime_ms / 1000.0) / 3600.0;
}

double max_duty_cycle() {
  double best = 0.0;
  for (const SfRow& row : kSfTable) best = std::max(best, duty_cycle(row.sf));
  return best;
}

SfBoundaries::SfBoundaries(const std::array<double, kNumSf + 1>& radii_km) : radii_(radii_km) {
  if (radii_[0] != 0.0) throw InvalidArgument("SF boundary d0 must be 0");
  for (std::size_t k = 1; k < radii_.size(); ++k) {
    if (!std::isfinite(radii_[k]) || !(radii_[k] > radii_[k - 1])) {
      throw InvalidArgument("SF boundaries must be finite and strictly increasing");
    }
  }
}

SfBoundaries SfBoundaries::from_outer_edges(const std::array<double, kNumSf>& edges_km) {
  std::array<double, kNumSf + 1> radii{};
  std::copy(edges_km.begin(), edges_km.end(), radii.begin() + 1);
  return SfBoundaries(radii);
}

SfBoundaries compute_sf_boundaries(double tx_power_dbm, double noise_dbm, double wavelength_km,
                                   double eta) {
  if (!std::isfinite(tx_power_dbm) || !std::isfinite(noise_dbm)) {
    throw ConfigError("", 0, "transmit power and noise must be finite");
  }
  if (!(wavelength_km > 0.0) || !(eta >= 2.0)) {
    throw ConfigError("", 0, "boundaries need wavelength > 0 and eta >= 2");
  }
  // (lambda / 4 pi d)^eta = q N / tx  =>  d = lambda / 4 pi * (tx / (q N))^(1/eta)
  std::array<double, kNumSf + 1> radii{};
  const double near_field = wavelength_km / (4.0 * std::numbers::pi);
  for (std::size_t k = 0; k < kNumSf; ++k) {
    const double margin_db = tx_power_dbm - noise_dbm - kSfTable[k].snr_threshold_db;
    radii[k + 1] = near_field * std::pow(10.0, margin_db / (10.0 * eta));
  }
  for (double r : radii) {
    if (!std::isfinite(r)) throw ConfigError("", 0, "SF boundary solution is not finite");
  }
  return SfBoundaries(radii);
}

int sf_for_distance(double d_km, const SfBoundaries& boundaries) {
  if (!(d_km >= 0.0)) throw InvalidArgument("distance must be non-negative");
  for (std::size_t k = 1; k <= kNumSf; ++k) {
    if (d_km < boundaries[k]) return kMinSf + static_cast<int>(k) - 1;
  }
  return kMaxSf;
}

}  // namespace lorasim

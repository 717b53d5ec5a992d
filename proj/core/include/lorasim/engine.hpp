// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lorasim Authors

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lorasim/channel.hpp"
#include "lorasim/geometry.hpp"
#include "lorasim/lora_params.hpp"
#include "lorasim/rng.hpp"

namespace lorasim {

/// Which gateways may decode the tagged uplink.
enum class GatewayMode {
  nearest,      // only the closest gateway
  any_gateway,  // success if any gateway decodes
};

enum class InterferenceMode {
  co_sf,     // same-SF interferers against the 1 dB capture threshold
  inter_sf,  // every SF class against its own capture threshold
};

/// Whether the SNR and SIR tests see the same tagged fading draw.
enum class FadingCoupling {
  shared,
  independent,
};

struct SimConfig {
  double radius_km = 20.0;
  double gw_intensity = 0.005;
  double ed_intensity = 5.0;
  LinkBudget budget;
  FadingModel::Kind fading_kind = FadingModel::Kind::rayleigh;
  double rician_k = kDefaultRicianK;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 42;
  GatewayMode gateway_mode = GatewayMode::nearest;
  InterferenceMode interference_mode = InterferenceMode::co_sf;
  FadingCoupling coupling = FadingCoupling::shared;
  std::vector<double> distance_bins = default_distance_bins();
  std::optional<SfBoundaries> sf_boundaries_override;

  FadingModel fading() const;

  /// Override when present, otherwise derived from the link budget.
  SfBoundaries boundaries() const;

  /// Throws ConfigError naming the offending field.
  void validate() const;

  /// 0.25 km to 15 km in 0.25 km steps.
  static std::vector<double> default_distance_bins();
};

/// A deployment plus the SF every end device uses towards its nearest gateway.
struct NetworkRealization {
  Deployment deployment;
  std::vector<int> ed_sf;
};

std::vector<int> assign_sfs(std::span<const Point> end_devices, std::span<const Point> gateways,
                            const SfBoundaries& boundaries);

struct Interferer {
  Point position;
  int sf;

  friend bool operator==(const Interferer&, const Interferer&) = default;
};

/// Bernoulli(duty_cycle(sf)) activity per end device. In co-SF mode only
/// devices sharing `tagged_sf` are returned.
std::vector<Interferer> draw_active_interferers(const NetworkRealization& realization,
                                                int tagged_sf, InterferenceMode mode,
                                                CounterStream& rng);

/// Received interference in mW, bucketed by interferer SF.
struct SfPowers {
  std::array<double, kNumSf> mw{};

  double& operator[](int sf) { return mw[sf_index(sf)]; }
  double operator[](int sf) const { return mw[sf_index(sf)]; }
  double total() const;
};

/// Sum of tx * |h_kj|^2 * g(d_kj) over interferers k at gateway `gw`, with a
/// fresh fading draw per link taken from `rng` in list order.
SfPowers interference_power(std::span<const Interferer> active, Point gw, const FadingModel& fading,
                            const LinkBudget& budget, CounterStream& rng);

/// Same sum with caller-supplied gains (one per interferer).
SfPowers interference_power(std::span<const Interferer> active, Point gw,
                            std::span<const double> gains, const LinkBudget& budget);

/// Linear SNR tx * |h|^2 * g(d) / N.
double snr_value(double power_gain, double d_km, const LinkBudget& budget);

bool eval_h1(double snr_linear, int sf);

bool eval_h2(double signal_mw, const SfPowers& interference, int tagged_sf, InterferenceMode mode);

struct TrialOutcome {
  bool h1 = false;
  bool h2 = false;
  bool success = false;
  bool no_gateway = false;
  int tagged_sf = kMinSf;
  double snr_linear = 0.0;
  std::optional<double> sir_linear;  // absent without active interference
};

/// Raw draws of one trial, for replay by an independent evaluator.
struct TrialLog {
  std::vector<Point> gateways;          // [0] is the serving gateway
  std::vector<Point> candidates;        // activity-thinned end-device candidates
  std::vector<double> activity_draws;   // one uniform per candidate
  std::vector<Interferer> active;       // interferers handed to the SIR test
  std::vector<double> signal_gains;     // per evaluated gateway
  std::vector<double> sir_signal_gains; // per evaluated gateway
  std::vector<std::vector<double>> interferer_gains;  // [gateway][active]
};

/*!
 * One Monte Carlo trial conditioned on the tagged device's nearest-gateway
 * distance.
 *
 * The tagged device sits at the origin, its serving gateway on the circle of
 * radius `tagged_distance_km`, and the remaining gateways form a PPP on the
 * annulus beyond it. Other end devices are drawn directly as the activity
 * thinned PPP: candidates at intensity ed_intensity * max_duty_cycle(), each
 * kept with probability duty_cycle(sf) / max_duty_cycle(). This is the same
 * process as Bernoulli(duty) thinning of the full deployment.
 *
 * Geometry and activity come from the geometry lane of (seed, bin, trial);
 * fading from the fading lane, so two fading models see identical geometry.
 */
TrialOutcome run_trial(const SimConfig& config, const SfBoundaries& boundaries,
                       double tagged_distance_km, std::uint32_t bin, std::uint64_t trial,
                       TrialLog* log = nullptr);

/// Wald half-width at 3 sigma.
double ci_halfwidth(double p, std::uint64_t trials);

struct BinEstimate {
  double distance_km = 0.0;
  int sf = kMinSf;
  std::uint64_t trials = 0;
  std::uint64_t h1_count = 0;
  std::uint64_t h2_count = 0;
  std::uint64_t success_count = 0;
  std::uint64_t no_gateway_count = 0;

  double p_h1() const;
  double p_h2() const;
  double p_success() const;
};

struct CurveEstimate {
  std::vector<BinEstimate> bins;
};

struct SweepOptions {
  unsigned threads = 0;  // 0: std::thread::hardware_concurrency()
};

/// Runs config.trials trials per distance bin. Output depends only on the
/// config, never on the thread count.
CurveEstimate run_sweep(const SimConfig& config, SweepOptions options = {});

/// Expected delivered payload rate of one device in bit/s:
/// p_success * Tx/h * 25 bytes * 8 / 3600 s.
double throughput(int sf, double p_success);

}  // namespace lorasim

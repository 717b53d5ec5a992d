// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lorasim Authors

#include "lorasim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "lorasim/errors.hpp"

namespace lorasim {

FadingModel SimConfig::fading() const {
  return fading_kind == FadingModel::Kind::rayleigh ? FadingModel::rayleigh()
                                                    : FadingModel::rician(rician_k);
}

SfBoundaries SimConfig::boundaries() const {
  if (sf_boundaries_override) return *sf_boundaries_override;
  return compute_sf_boundaries(budget.tx_power_dbm, budget.noise_dbm(), budget.wavelength_km,
                               budget.path_loss_exponent);
}

std::vector<double> SimConfig::default_distance_bins() {
  std::vector<double> bins;
  for (int i = 1; i <= 60; ++i) bins.push_back(0.25 * i);
  return bins;
}

void SimConfig::validate() const {
  auto require = [](bool ok, const char* key, const char* message) {
    if (!ok) throw ConfigError(key, 0, message);
  };
  require(radius_km > 0.0 && std::isfinite(radius_km), "radius_km", "must be positive");
  require(gw_intensity > 0.0 && std::isfinite(gw_intensity), "gw_intensity", "must be positive");
  require(ed_intensity > 0.0 && std::isfinite(ed_intensity), "ed_intensity", "must be positive");
  require(std::isfinite(budget.tx_power_dbm), "tx_power_dbm", "must be finite");
  require(budget.bandwidth_hz > 0.0 && std::isfinite(budget.bandwidth_hz), "bandwidth_hz",
          "must be positive");
  require(std::isfinite(budget.noise_figure_db), "noise_figure_db", "must be finite");
  require(budget.wavelength_km > 0.0 && std::isfinite(budget.wavelength_km), "wavelength_km",
          "must be positive");
  require(budget.path_loss_exponent >= 2.0 && std::isfinite(budget.path_loss_exponent), "eta",
          "must be >= 2");
  require(rician_k >= 0.0 && std::isfinite(rician_k), "rician_k", "must be >= 0");
  require(trials >= 1, "trials", "must be >= 1");
  require(trials <= 0xFFFFFFFFull, "trials", "must fit in 32 bits");
  require(!distance_bins.empty(), "bins", "must list at least one distance");
  for (std::size_t i = 0; i < distance_bins.size(); ++i) {
    const double d = distance_bins[i];
    require(d >= 0.0 && d < radius_km, "bins", "distances must lie in [0, radius_km)");
    require(i == 0 || d > distance_bins[i - 1], "bins", "distances must be strictly increasing");
  }
  try {
    (void)boundaries();
  } catch (const std::exception& e) {
    throw ConfigError("sf_boundaries", 0, e.what());
  }
}

std::vector<int> assign_sfs(std::span<const Point> end_devices, std::span<const Point> gateways,
                            const SfBoundaries& boundaries) {
  std::vector<int> sfs;
  sfs.reserve(end_devices.size());
  for (const Point& ed : end_devices) {
    sfs.push_back(sf_for_distance(nearest(ed, gateways).distance_km, boundaries));
  }
  return sfs;
}

std::vector<Interferer> draw_active_interferers(const NetworkRealization& realization,
                                                int tagged_sf, InterferenceMode mode,
                                                CounterStream& rng) {
  const auto& eds = realization.deployment.end_devices;
  if (realization.ed_sf.size() != eds.size()) {
    throw InvalidArgument("every end device needs an SF assignment");
  }
  std::vector<Interferer> active;
  for (std::size_t k = 0; k < eds.size(); ++k) {
    const int sf = realization.ed_sf[k];
    const bool on_air = rng.uniform() < duty_cycle(sf);
    if (!on_air) continue;
    if (mode == InterferenceMode::co_sf && sf != tagged_sf) continue;
    active.push_back({eds[k], sf});
  }
  return active;
}

double SfPowers::total() const {
  double sum = 0.0;
  for (double p : mw) sum += p;
  return sum;
}

SfPowers interference_power(std::span<const Interferer> active, Point gw,
                            std::span<const double> gains, const LinkBudget& budget) {
  if (gains.size() != active.size()) throw InvalidArgument("one fading gain per interferer");
  SfPowers powers;
  const double tx = budget.tx_mw();
  for (std::size_t k = 0; k < active.size(); ++k) {
    const double d = std::max(distance(active[k].position, gw), kMinDistanceKm);
    powers[active[k].sf] +=
        tx * gains[k] * path_gain(d, budget.wavelength_km, budget.path_loss_exponent);
  }
  return powers;
}

SfPowers interference_power(std::span<const Interferer> active, Point gw, const FadingModel& fading,
                            const LinkBudget& budget, CounterStream& rng) {
  std::vector<double> gains(active.size());
  for (double& g : gains) g = sample_power_gain(fading, rng);
  return interference_power(active, gw, gains, budget);
}

double snr_value(double power_gain, double d_km, const LinkBudget& budget) {
  return budget.tx_mw() * power_gain *
         path_gain(d_km, budget.wavelength_km, budget.path_loss_exponent) / budget.noise_mw();
}

bool eval_h1(double snr_linear, int sf) { return snr_linear >= snr_threshold_linear(sf); }

bool eval_h2(double signal_mw, const SfPowers& interference, int tagged_sf,
             InterferenceMode mode) {
  if (mode == InterferenceMode::co_sf) {
    const double co = interference[tagged_sf];
    return co == 0.0 || signal_mw / co >= co_sf_threshold();
  }
  for (int sf = kMinSf; sf <= kMaxSf; ++sf) {
    const double power = interference[sf];
    if (power > 0.0 && signal_mw / power < sir_threshold(tagged_sf, sf)) return false;
  }
  return true;
}

TrialOutcome run_trial(const SimConfig& config, const SfBoundaries& boundaries,
                       double tagged_distance_km, std::uint32_t bin, std::uint64_t trial,
                       TrialLog* log) {
  if (!(tagged_distance_km >= 0.0) || !(tagged_distance_km < config.radius_km)) {
    throw InvalidArgument("tagged distance must lie in [0, radius)");
  }
  CounterStream geometry(config.seed, bin, trial, StreamLane::geometry);
  CounterStream fading_rng(config.seed, bin, trial, StreamLane::fading);
  const FadingModel fading = config.fading();
  const LinkBudget& budget = config.budget;
  const Point origin{};

  std::vector<Point> gateways;
  gateways.push_back(sample_on_circle(tagged_distance_km, geometry));
  for (const Point& p : sample_ppp_annulus(config.gw_intensity, tagged_distance_km,
                                           config.radius_km, geometry)) {
    gateways.push_back(p);
  }

  TrialOutcome outcome;
  outcome.tagged_sf = sf_for_distance(tagged_distance_km, boundaries);

  const double max_duty = max_duty_cycle();
  const std::vector<Point> candidates =
      sample_ppp(config.ed_intensity * max_duty, config.radius_km, geometry);
  std::vector<Interferer> active;
  if (log) log->activity_draws.clear();
  for (const Point& candidate : candidates) {
    const int sf = sf_for_distance(nearest(candidate, gateways).distance_km, boundaries);
    const double u = geometry.uniform();
    if (log) log->activity_draws.push_back(u);
    if (!(u < duty_cycle(sf) / max_duty)) continue;
    if (config.interference_mode == InterferenceMode::co_sf && sf != outcome.tagged_sf) continue;
    active.push_back({candidate, sf});
  }

  const std::size_t evaluated = config.gateway_mode == GatewayMode::nearest ? 1 : gateways.size();
  if (log) {
    log->gateways = gateways;
    log->candidates = candidates;
    log->active = active;
    log->signal_gains.clear();
    log->sir_signal_gains.clear();
    log->interferer_gains.clear();
  }

  std::vector<double> gains(active.size());
  for (std::size_t j = 0; j < evaluated; ++j) {
    const double d = std::max(distance(origin, gateways[j]), kMinDistanceKm);
    const double signal_gain = sample_power_gain(fading, fading_rng);
    const double sir_gain = config.coupling == FadingCoupling::shared
                                ? signal_gain
                                : sample_power_gain(fading, fading_rng);
    for (double& g : gains) g = sample_power_gain(fading, fading_rng);

    const double snr = snr_value(signal_gain, d, budget);
    const bool h1 = eval_h1(snr, outcome.tagged_sf);
    const SfPowers interference = interference_power(active, gateways[j], gains, budget);
    const double signal_mw =
        budget.tx_mw() * sir_gain * path_gain(d, budget.wavelength_km, budget.path_loss_exponent);
    const bool h2 =
        eval_h2(signal_mw, interference, outcome.tagged_sf, config.interference_mode);

    if (j == 0) {
      outcome.h1 = h1;
      outcome.h2 = h2;
      outcome.snr_linear = snr;
      const double total = interference.total();
      if (total > 0.0) outcome.sir_linear = signal_mw / total;
    }
    outcome.success = outcome.success || (h1 && h2);

    if (log) {
      log->signal_gains.push_back(signal_gain);
      log->sir_signal_gains.push_back(sir_gain);
      log->interferer_gains.push_back(gains);
    }
  }
  return outcome;
}

double ci_halfwidth(double p, std::uint64_t trials) {
  if (trials == 0) return 0.0;
  return 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

namespace {

double ratio(std::uint64_t count, std::uint64_t trials) {
  return trials == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(trials);
}

}  // namespace

double BinEstimate::p_h1() const { return ratio(h1_count, trials); }
double BinEstimate::p_h2() const { return ratio(h2_count, trials); }
double BinEstimate::p_success() const { return ratio(success_count, trials); }

CurveEstimate run_sweep(const SimConfig& config, SweepOptions options) {
  config.validate();
  const SfBoundaries boundaries = config.boundaries();
  const std::size_t num_bins = config.distance_bins.size();

  CurveEstimate curve;
  curve.bins.resize(num_bins);
  for (std::size_t b = 0; b < num_bins; ++b) {
    curve.bins[b].distance_km = config.distance_bins[b];
    curve.bins[b].sf = sf_for_distance(config.distance_bins[b], boundaries);
  }

  // Work is handed out in fixed chunks of one bin's trials. Each trial's draws
  // depend only on (seed, bin, trial) and the reduction is integer addition,
  // so scheduling cannot change the result.
  constexpr std::uint64_t kChunk = 1024;
  const std::uint64_t chunks_per_bin = (config.trials + kChunk - 1) / kChunk;
  const std::uint64_t total_chunks = chunks_per_bin * num_bins;
  std::atomic<std::uint64_t> next{0};

  unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, threads);
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, total_chunks));

  std::vector<std::vector<BinEstimate>> partials(threads, std::vector<BinEstimate>(num_bins));
  auto worker = [&](unsigned id) {
    auto& local = partials[id];
    for (std::uint64_t chunk = next++; chunk < total_chunks; chunk = next++) {
      const auto bin = static_cast<std::size_t>(chunk / chunks_per_bin);
      const std::uint64_t begin = (chunk % chunks_per_bin) * kChunk;
      const std::uint64_t end = std::min(begin + kChunk, config.trials);
      BinEstimate& acc = local[bin];
      for (std::uint64_t t = begin; t < end; ++t) {
        const TrialOutcome o = run_trial(config, boundaries, config.distance_bins[bin],
                                         static_cast<std::uint32_t>(bin), t);
        ++acc.trials;
        acc.h1_count += o.h1;
        acc.h2_count += o.h2;
        acc.success_count += o.success;
        acc.no_gateway_count += o.no_gateway;
      }
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    {
      std::vector<std::jthread> pool;
      pool.reserve(threads);
      for (unsigned id = 0; id < threads; ++id) {
        pool.emplace_back([&, id] {
          try {
            worker(id);
          } catch (...) {
            errors[id] = std::current_exception();
            next = total_chunks;
          }
        });
      }
    }
    for (const auto& error : errors) {
      if (error) std::rethrow_exception(error);
    }
  }

  for (const auto& local : partials) {
    for (std::size_t b = 0; b < num_bins; ++b) {
      curve.bins[b].trials += local[b].trials;
      curve.bins[b].h1_count += local[b].h1_count;
      curve.bins[b].h2_count += local[b].h2_count;
      curve.bins[b].success_count += local[b].success_count;
      curve.bins[b].no_gateway_count += local[b].no_gateway_count;
    }
  }
  return curve;
}

double throughput(int sf, double p_success) {
  if (!(p_success >= 0.0 && p_success <= 1.0)) {
    throw InvalidArgument("success probability must lie in [0, 1]");
  }
  return p_success * sf_row(sf).tx_per_hour * kPayloadBytes * 8.0 / 3600.0;
}

}  // namespace lorasim

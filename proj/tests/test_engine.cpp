// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lorasim Authors

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lorasim/engine.hpp"
#include "lorasim/errors.hpp"
#include "support/stats.hpp"

using namespace lorasim;

namespace {

LinkBudget free_space_budget() {
  LinkBudget b;
  b.path_loss_exponent = 2.0;
  return b;
}

NetworkRealization uniform_realization(const std::vector<int>& sfs) {
  NetworkRealization r;
  for (std::size_t i = 0; i < sfs.size(); ++i) {
    r.deployment.end_devices.push_back({static_cast<double>(i % 100), static_cast<double>(i / 100)});
  }
  r.ed_sf = sfs;
  return r;
}

}  // namespace

TEST_CASE("snr_value") {
  const LinkBudget b = free_space_budget();
  CHECK(snr_value(1.0, 1.0, b) == doctest::Approx(30220.973434305994).epsilon(1e-9));
  CHECK(linear_to_db(snr_value(1.0, 1.0, b)) == doctest::Approx(44.8).epsilon(1e-3));
  CHECK(snr_value(0.0, 3.0, b) == 0.0);
  CHECK(snr_value(1.4, 3.0, b) == doctest::Approx(2.0 * snr_value(0.7, 3.0, b)).epsilon(1e-15));
  CHECK_THROWS_AS(snr_value(1.0, 0.0, b), InvalidArgument);
}

TEST_CASE("eval_h1 is inclusive at the threshold") {
  for (int sf = kMinSf; sf <= kMaxSf; ++sf) {
    CHECK(eval_h1(snr_threshold_linear(sf), sf));
    CHECK_FALSE(eval_h1(std::nextafter(snr_threshold_linear(sf), 0.0), sf));
    CHECK_FALSE(eval_h1(0.0, sf));
  }
}

TEST_CASE("eval_h1 over fading draws tracks the connection probability") {
  const LinkBudget b;
  const SfBoundaries edges = compute_sf_boundaries(19.0, b.noise_dbm(), b.wavelength_km, 2.75);
  for (int sf = kMinSf; sf <= kMaxSf; ++sf) {
    const double d = 0.5 * (edges[sf_index(sf)] + edges[sf_index(sf) + 1]);
    CounterStream rng(5, 0, static_cast<std::uint64_t>(sf), StreamLane::fading);
    constexpr int n = 100000;
    int hits = 0;
    for (int i = 0; i < n; ++i) {
      hits += eval_h1(snr_value(sample_power_gain(FadingModel::rayleigh(), rng), d, b), sf);
    }
    CAPTURE(sf);
    CHECK(testing::within_binomial(
        static_cast<double>(hits) / n,
        analytic_conn_prob(FadingModel::rayleigh(), d, snr_threshold_linear(sf), b), n));
  }
}

TEST_CASE("draw_active_interferers thins by duty cycle") {
  CounterStream rng(1, 0, 0, StreamLane::geometry);
  CHECK(draw_active_interferers(uniform_realization({}), 7, InterferenceMode::co_sf, rng).empty());

  SUBCASE("co-SF mean active count") {
    const NetworkRealization r = uniform_realization(std::vector<int>(10000, 7));
    constexpr int draws = 1000;
    double total = 0.0;
    for (int i = 0; i < draws; ++i) {
      CounterStream s(9, 0, static_cast<std::uint64_t>(i), StreamLane::geometry);
      total += static_cast<double>(
          draw_active_interferers(r, 7, InterferenceMode::co_sf, s).size());
    }
    const double p = duty_cycle(7);
    const double mean = 10000 * p;  // 9.96
    CHECK(mean == doctest::Approx(9.96).epsilon(1e-3));
    CHECK(std::abs(total / draws - mean) <= 3.0 * std::sqrt(10000 * p * (1 - p) / draws));
  }

  SUBCASE("co-SF mode drops other SFs, inter-SF mode keeps them per class") {
    std::vector<int> sfs;
    for (int i = 0; i < 6000; ++i) sfs.push_back(kMinSf + i % 6);
    const NetworkRealization r = uniform_realization(sfs);
    std::array<double, kNumSf> per_class{};
    constexpr int draws = 2000;
    for (int i = 0; i < draws; ++i) {
      CounterStream s(10, 0, static_cast<std::uint64_t>(i), StreamLane::geometry);
      for (const Interferer& x : draw_active_interferers(r, 9, InterferenceMode::inter_sf, s)) {
        per_class[sf_index(x.sf)] += 1.0;
      }
      CounterStream t(10, 0, static_cast<std::uint64_t>(i), StreamLane::geometry);
      for (const Interferer& x : draw_active_interferers(r, 9, InterferenceMode::co_sf, t)) {
        REQUIRE(x.sf == 9);
      }
    }
    for (int sf = kMinSf; sf <= kMaxSf; ++sf) {
      const double p = duty_cycle(sf);
      const double expected = 1000 * p;
      CAPTURE(sf);
      CHECK(std::abs(per_class[sf_index(sf)] / draws - expected) <=
            3.0 * std::sqrt(1000 * p * (1 - p) / draws));
    }
  }

  SUBCASE("missing SF assignments are rejected") {
    NetworkRealization r = uniform_realization({7, 8});
    r.ed_sf.pop_back();
    CHECK_THROWS_AS(draw_active_interferers(r, 7, InterferenceMode::co_sf, rng), InvalidArgument);
  }
}

TEST_CASE("interference_power sums faded received powers per class") {
  const LinkBudget b;
  const Point gw{3.0, 4.0};
  CounterStream rng(1, 0, 0, StreamLane::fading);
  const SfPowers none = interference_power({}, gw, FadingModel::rayleigh(), b, rng);
  CHECK(none.total() == 0.0);

  // One interferer at the signal distance with unit fading: SIR = tagged |h|^2.
  const std::vector<Interferer> one{{{0.0, 4.0}, 7}};
  const double unit = 1.0;
  const SfPowers p1 = interference_power(one, gw, std::span(&unit, 1), b);
  CHECK(p1[7] == doctest::Approx(b.tx_mw() * path_gain(3.0, b.wavelength_km, 2.75)));
  const double tagged_gain = 0.37;
  const double signal = b.tx_mw() * tagged_gain * path_gain(5.0, b.wavelength_km, 2.75);
  const std::vector<Interferer> same_distance{{{0.0, 0.0}, 7}};
  CHECK(signal / interference_power(same_distance, gw, std::span(&unit, 1), b)[7] ==
        doctest::Approx(tagged_gain).epsilon(1e-14));

  // Additivity with shared draws.
  const std::vector<Interferer> two{{{0.0, 4.0}, 8}, {{9.0, 9.0}, 8}};
  const std::vector<double> gains{0.4, 2.1};
  const SfPowers both = interference_power(two, gw, gains, b);
  const SfPowers a = interference_power(std::span(two).first(1), gw, std::span(gains).first(1), b);
  const SfPowers c = interference_power(std::span(two).last(1), gw, std::span(gains).last(1), b);
  CHECK(both[8] == doctest::Approx(a[8] + c[8]).epsilon(1e-15));
  CHECK(both[7] == 0.0);

  CHECK_THROWS_AS(interference_power(two, gw, std::span(gains).first(1), b), InvalidArgument);
}

TEST_CASE("eval_h2") {
  SfPowers none;
  CHECK(eval_h2(1e-15, none, 7, InterferenceMode::co_sf));
  CHECK(eval_h2(0.0, none, 7, InterferenceMode::inter_sf));

  SfPowers co;
  co[7] = 1.0;
  CHECK(eval_h2(1.259, co, 7, InterferenceMode::co_sf));
  CHECK(eval_h2(co_sf_threshold(), co, 7, InterferenceMode::co_sf));
  CHECK_FALSE(eval_h2(1.25, co, 7, InterferenceMode::co_sf));

  // Tagged SF7: SF8 class at SIR 0.2 passes (-8 dB), SF7 class at SIR 1.0 fails.
  SfPowers mixed;
  mixed[8] = 5.0;
  mixed[7] = 1.0;
  CHECK_FALSE(eval_h2(1.0, mixed, 7, InterferenceMode::inter_sf));
  mixed[7] = 0.0;
  CHECK(eval_h2(1.0, mixed, 7, InterferenceMode::inter_sf));
  mixed[8] = 7.0;  // SIR 0.143 < 0.158
  CHECK_FALSE(eval_h2(1.0, mixed, 7, InterferenceMode::inter_sf));
  // co-SF mode ignores other classes.
  CHECK(eval_h2(1.0, mixed, 7, InterferenceMode::co_sf));
}

TEST_CASE("throughput") {
  CHECK(throughput(7, 1.0) == doctest::Approx(98.0 * 200.0 / 3600.0));
  CHECK(throughput(7, 1.0) == doctest::Approx(5.44).epsilon(1e-3));
  CHECK(throughput(10, 0.0) == 0.0);
  CHECK(throughput(12, 0.5) == doctest::Approx(0.139).epsilon(2e-3));
  CHECK_THROWS_AS(throughput(7, 1.5), InvalidArgument);
  CHECK_THROWS_AS(throughput(6, 0.5), InvalidArgument);
}

TEST_CASE("ci half-width is the 3-sigma Wald interval") {
  CHECK(ci_halfwidth(0.5, 100) == doctest::Approx(0.15));
  CHECK(ci_halfwidth(0.0, 100) == 0.0);
  CHECK(ci_halfwidth(1.0, 100) == 0.0);
}

TEST_CASE("config validation") {
  SimConfig c;
  CHECK_NOTHROW(c.validate());
  c.trials = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = SimConfig{};
  c.distance_bins = {1.0, 1.0};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.distance_bins = {1.0, 25.0};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = SimConfig{};
  c.budget.path_loss_exponent = 1.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = SimConfig{};
  c.gw_intensity = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("run_trial without interferers reduces to the channel oracle") {
  SimConfig c;
  c.ed_intensity = 1e-12;
  c.fading_kind = FadingModel::Kind::rician;
  const SfBoundaries edges = c.boundaries();
  for (double d : {0.0005, 3.0, 7.5}) {
    constexpr std::uint64_t n = 50000;
    std::uint64_t ok = 0;
    for (std::uint64_t t = 0; t < n; ++t) {
      const TrialOutcome o = run_trial(c, edges, d, 0, t);
      REQUIRE(o.h2);
      REQUIRE_FALSE(o.sir_linear.has_value());
      ok += o.success;
    }
    const int sf = sf_for_distance(d, edges);
    const double p = analytic_conn_prob(c.fading(), std::max(d, kMinDistanceKm),
                                        snr_threshold_linear(sf), c.budget);
    CAPTURE(d);
    CHECK(testing::within_binomial(static_cast<double>(ok) / n, p, n));
  }
}

TEST_CASE("union over a single gateway equals the nearest-only outcome") {
  SimConfig nearest_cfg;
  nearest_cfg.gw_intensity = 1e-12;
  nearest_cfg.ed_intensity = 50.0;
  SimConfig union_cfg = nearest_cfg;
  union_cfg.gateway_mode = GatewayMode::any_gateway;
  const SfBoundaries edges = nearest_cfg.boundaries();
  for (std::uint64_t t = 0; t < 2000; ++t) {
    TrialLog log;
    const TrialOutcome a = run_trial(nearest_cfg, edges, 5.0, 0, t);
    const TrialOutcome b = run_trial(union_cfg, edges, 5.0, 0, t, &log);
    REQUIRE(log.gateways.size() == 1);
    CHECK(a.success == b.success);
    CHECK(a.h1 == b.h1);
    CHECK(a.h2 == b.h2);
  }
}

TEST_CASE("union success contains nearest-only success trial by trial") {
  SimConfig nearest_cfg;
  nearest_cfg.gw_intensity = 0.05;
  SimConfig union_cfg = nearest_cfg;
  union_cfg.gateway_mode = GatewayMode::any_gateway;
  const SfBoundaries edges = nearest_cfg.boundaries();
  int strictly_better = 0;
  for (std::uint64_t t = 0; t < 5000; ++t) {
    const TrialOutcome a = run_trial(nearest_cfg, edges, 6.0, 2, t);
    const TrialOutcome b = run_trial(union_cfg, edges, 6.0, 2, t);
    if (a.success) CHECK(b.success);
    strictly_better += b.success && !a.success;
  }
  CHECK(strictly_better > 0);
}

TEST_CASE("serving gateway is the nearest one in the realization") {
  SimConfig c;
  c.gw_intensity = 0.1;
  const SfBoundaries edges = c.boundaries();
  for (std::uint64_t t = 0; t < 500; ++t) {
    TrialLog log;
    run_trial(c, edges, 3.0, 0, t, &log);
    CHECK(nearest({0, 0}, log.gateways).index == 0);
    CHECK(distance({0, 0}, log.gateways[0]) == doctest::Approx(3.0));
    REQUIRE(log.activity_draws.size() == log.candidates.size());
  }
}

TEST_CASE("independent coupling redraws the SIR-side fading only") {
  SimConfig shared;
  shared.ed_intensity = 50.0;
  SimConfig independent = shared;
  independent.coupling = FadingCoupling::independent;
  const SfBoundaries edges = shared.boundaries();
  int differs = 0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    TrialLog a, b;
    const TrialOutcome oa = run_trial(shared, edges, 4.5, 0, t, &a);
    const TrialOutcome ob = run_trial(independent, edges, 4.5, 0, t, &b);
    CHECK(a.signal_gains == a.sir_signal_gains);
    CHECK(a.signal_gains == b.signal_gains);
    CHECK(oa.h1 == ob.h1);
    differs += b.sir_signal_gains != b.signal_gains;
  }
  CHECK(differs == 200);
}

TEST_CASE("thinned candidate sampling matches full-deployment activity") {
  // Same gateway layouts, two routes to the active set: run_trial's direct
  // sampling of the thinned process, and a full PPP of every end device
  // passed through assign_sfs and draw_active_interferers.
  SimConfig c;
  c.interference_mode = InterferenceMode::inter_sf;
  const SfBoundaries edges = c.boundaries();
  constexpr int trials = 1500;
  std::array<double, kNumSf> thinned{}, full{};
  for (int t = 0; t < trials; ++t) {
    TrialLog log;
    run_trial(c, edges, 5.0, 0, static_cast<std::uint64_t>(t), &log);
    for (const Interferer& x : log.active) thinned[sf_index(x.sf)] += 1.0;

    CounterStream rng(c.seed, 7, static_cast<std::uint64_t>(t), StreamLane::geometry);
    NetworkRealization r;
    r.deployment.end_devices = sample_ppp(c.ed_intensity, c.radius_km, rng);
    r.deployment.gateways = log.gateways;
    r.ed_sf = assign_sfs(r.deployment.end_devices, r.deployment.gateways, edges);
    for (const Interferer& x : draw_active_interferers(r, 7, InterferenceMode::inter_sf, rng)) {
      full[sf_index(x.sf)] += 1.0;
    }
  }
  for (std::size_t k = 0; k < kNumSf; ++k) {
    // Difference of two Poisson-like totals: sd ~ sqrt(a + b).
    CAPTURE(k);
    CHECK(std::abs(thinned[k] - full[k]) <= 3.0 * std::sqrt(thinned[k] + full[k] + 1.0));
  }
}

TEST_CASE("run_trial rejects distances outside the disk") {
  SimConfig c;
  const SfBoundaries edges = c.boundaries();
  CHECK_THROWS_AS(run_trial(c, edges, 20.0, 0, 0), InvalidArgument);
  CHECK_THROWS_AS(run_trial(c, edges, -1.0, 0, 0), InvalidArgument);
}

TEST_CASE("single-trial sweeps produce 0/1 probabilities") {
  SimConfig c;
  c.trials = 1;
  const CurveEstimate curve = run_sweep(c, {1});
  REQUIRE(curve.bins.size() == c.distance_bins.size());
  for (const BinEstimate& b : curve.bins) {
    CHECK(b.trials == 1);
    for (double p : {b.p_h1(), b.p_h2(), b.p_success()}) CHECK((p == 0.0 || p == 1.0));
  }
}

TEST_CASE("sweep output does not depend on the thread count") {
  SimConfig c;
  c.trials = 3000;
  c.gateway_mode = GatewayMode::any_gateway;
  c.interference_mode = InterferenceMode::inter_sf;
  c.distance_bins = {0.5, 4.0, 9.0, 14.0};
  const CurveEstimate one = run_sweep(c, {1});
  for (unsigned threads : {2u, 3u, 8u}) {
    const CurveEstimate many = run_sweep(c, {threads});
    for (std::size_t b = 0; b < one.bins.size(); ++b) {
      CHECK(one.bins[b].h1_count == many.bins[b].h1_count);
      CHECK(one.bins[b].h2_count == many.bins[b].h2_count);
      CHECK(one.bins[b].success_count == many.bins[b].success_count);
      CHECK(one.bins[b].trials == many.bins[b].trials);
    }
  }
}

TEST_CASE("Rayleigh sweep: p_h1 just inside each ring edge matches the oracle") {
  SimConfig c;
  c.trials = 20000;
  const SfBoundaries edges = c.boundaries();
  c.distance_bins.clear();
  for (std::size_t k = 1; k <= kNumSf; ++k) c.distance_bins.push_back(edges[k] * (1.0 - 1e-6));
  const CurveEstimate curve = run_sweep(c, {1});
  for (std::size_t k = 0; k < kNumSf; ++k) {
    const BinEstimate& b = curve.bins[k];
    CHECK(b.sf == kMinSf + static_cast<int>(k));
    const double p = analytic_conn_prob(FadingModel::rayleigh(), b.distance_km,
                                        snr_threshold_linear(b.sf), c.budget);
    CHECK(p == doctest::Approx(std::exp(-1.0)).epsilon(1e-4));
    CHECK(std::abs(b.p_h1() - p) <= ci_halfwidth(b.p_h1(), b.trials));
  }
}

TEST_CASE("p_h1 saw-tooth: jumps at ring edges, falls inside rings") {
  SimConfig c;
  c.trials = 20000;
  const SfBoundaries edges = c.boundaries();
  c.distance_bins.clear();
  for (std::size_t k = 1; k < kNumSf; ++k) {
    c.distance_bins.push_back(edges[k] * 0.999);
    c.distance_bins.push_back(edges[k] * 1.001);
  }
  const CurveEstimate curve = run_sweep(c, {1});
  for (std::size_t k = 0; k + 1 < curve.bins.size(); k += 2) {
    const BinEstimate& before = curve.bins[k];
    const BinEstimate& after = curve.bins[k + 1];
    CAPTURE(before.distance_km);
    CHECK(after.sf == before.sf + 1);
    CHECK(after.p_h1() - before.p_h1() >
          2.0 * std::max(ci_halfwidth(before.p_h1(), before.trials),
                         ci_halfwidth(after.p_h1(), after.trials)));
    if (k + 2 < curve.bins.size()) {
      CHECK(curve.bins[k + 2].p_h1() < after.p_h1());
    }
  }
}

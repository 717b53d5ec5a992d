// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lorasim Authors

#pragma once

#include <cmath>

#include "lorasim/rng.hpp"

namespace lorasim {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double ratio) { return 10.0 * std::log10(ratio); }

/// Small-scale fading of the power gain |h|^2, normalized to unit mean.
struct FadingModel {
  enum class Kind { rayleigh, rician };

  Kind kind = Kind::rayleigh;
  double k_factor = 0.0;  // LoS / scattered power, Rician only

  static FadingModel rayleigh() { return {Kind::rayleigh, 0.0}; }
  static FadingModel rician(double k_factor);

  friend bool operator==(const FadingModel&, const FadingModel&) = default;
};

inline constexpr double kDefaultRicianK = 4.0;

struct LinkBudget {
  double tx_power_dbm = 19.0;
  double bandwidth_hz = 125e3;
  double noise_figure_db = 6.0;
  double wavelength_km = 34.5e-5;
  double path_loss_exponent = 2.75;

  /// Throws InvalidArgument when a field is out of its domain.
  void validate() const;

  double noise_dbm() const;
  double noise_mw() const { return db_to_linear(noise_dbm()); }
  double tx_mw() const { return db_to_linear(tx_power_dbm); }

  friend bool operator==(const LinkBudget&, const LinkBudget&) = default;
};

/// Thermal floor over `bandwidth_hz` plus receiver noise figure, in dBm.
double noise_dbm(double bandwidth_hz, double noise_figure_db);

/// Friis-style attenuation (lambda / 4 pi d)^eta as a linear gain.
double path_gain(double d_km, double wavelength_km, double eta);

double sample_power_gain(const FadingModel& model, CounterStream& rng);

/// First-order Marcum Q function Q1(a, b) = P[ncx2(2, a^2) > b^2], summed as a
/// Poisson mixture of central chi-square tails to ~1e-13 absolute.
double marcum_q1(double a, double b);

/// P[|h|^2 >= t] for the given fading model.
double fading_exceedance(const FadingModel& model, double t);

/// Probability that the faded SNR at distance d meets `q_linear`.
double analytic_conn_prob(const FadingModel& model, double d_km, double q_linear,
                          const LinkBudget& budget);

}  // namespace lorasim

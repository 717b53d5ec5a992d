// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lorasim Authors

#include "lorasim/channel.hpp"

#include <algorithm>
#include <numbers>
#include <random>

#include "lorasim/errors.hpp"
#include "lorasim/geometry.hpp"

namespace lorasim {

FadingModel FadingModel::rician(double k_factor) {
  if (!(k_factor >= 0.0) || !std::isfinite(k_factor)) {
    throw InvalidArgument("Rician K-factor must be finite and non-negative");
  }
  return {Kind::rician, k_factor};
}

double noise_dbm(double bandwidth_hz, double noise_figure_db) {
  if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz)) {
    throw InvalidArgument("bandwidth must be positive");
  }
  return -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

void LinkBudget::validate() const {
  if (!std::isfinite(tx_power_dbm)) throw InvalidArgument("tx power must be finite");
  if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz)) {
    throw InvalidArgument("bandwidth must be positive");
  }
  if (!std::isfinite(noise_figure_db)) throw InvalidArgument("noise figure must be finite");
  if (!(wavelength_km > 0.0) || !std::isfinite(wavelength_km)) {
    throw InvalidArgument("wavelength must be positive");
  }
  if (!(path_loss_exponent >= 2.0) || !std::isfinite(path_loss_exponent)) {
    throw InvalidArgument("path-loss exponent must be >= 2");
  }
}

double LinkBudget::noise_dbm() const { return lorasim::noise_dbm(bandwidth_hz, noise_figure_db); }

double path_gain(double d_km, double wavelength_km, double eta) {
  if (!(d_km >= kMinDistanceKm)) throw InvalidArgument("distance below the 1 m clamp");
  if (!(wavelength_km > 0.0)) throw InvalidArgument("wavelength must be positive");
  if (!(eta >= 2.0)) throw InvalidArgument("path-loss exponent must be >= 2");
  return std::pow(wavelength_km / (4.0 * std::numbers::pi * d_km), eta);
}

double sample_power_gain(const FadingModel& model, CounterStream& rng) {
  if (model.kind == FadingModel::Kind::rayleigh) {
    std::exponential_distribution<double> gain(1.0);
    return gain(rng);
  }
  // |h|^2 = (nu + X)^2 + Y^2 with nu^2 = K/(K+1), X,Y ~ N(0, 1/(2(K+1))).
  const double k = model.k_factor;
  const double los = std::sqrt(k / (k + 1.0));
  std::normal_distribution<double> scatter(0.0, std::sqrt(0.5 / (k + 1.0)));
  const double in_phase = los + scatter(rng);
  const double quadrature = scatter(rng);
  return in_phase * in_phase + quadrature * quadrature;
}

double marcum_q1(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw InvalidArgument("Marcum Q needs finite a, b");
  if (a < 0.0 || b < 0.0) throw InvalidArgument("Marcum Q needs a, b >= 0");
  if (b == 0.0) return 1.0;
  const double y = 0.5 * b * b;
  if (a == 0.0) return std::exp(-y);

  // Q1(a, b) = sum_k Pois(k; a^2/2) * Q(k + 1, b^2/2), where the regularized
  // upper gamma for integer shape is the Poisson CDF e^-y sum_{j<=k} y^j / j!.
  const double lambda = 0.5 * a * a;
  const double log_lambda = std::log(lambda);
  const double log_y = std::log(y);
  const auto last = static_cast<long>(std::ceil(lambda + 12.0 * std::sqrt(lambda) + 40.0));

  double result = 0.0;
  double gamma_tail = 0.0;
  for (long k = 0; k <= last; ++k) {
    const double log_fact = std::lgamma(static_cast<double>(k) + 1.0);
    gamma_tail += std::exp(-y + static_cast<double>(k) * log_y - log_fact);
    const double weight = std::exp(-lambda + static_cast<double>(k) * log_lambda - log_fact);
    result += weight * std::min(gamma_tail, 1.0);
  }
  return std::clamp(result, 0.0, 1.0);
}

double fading_exceedance(const FadingModel& model, double t) {
  if (!(t >= 0.0)) throw InvalidArgument("exceedance level must be non-negative");
  if (model.kind == FadingModel::Kind::rayleigh) return std::exp(-t);
  const double k = model.k_factor;
  return marcum_q1(std::sqrt(2.0 * k), std::sqrt(2.0 * (k + 1.0) * t));
}

double analytic_conn_prob(const FadingModel& model, double d_km, double q_linear,
                          const LinkBudget& budget) {
  if (!(q_linear >= 0.0)) throw InvalidArgument("threshold must be non-negative");
  const double gain =
      path_gain(d_km, budget.wavelength_km, budget.path_loss_exponent);
  const double t = q_linear * budget.noise_mw() / (budget.tx_mw() * gain);
  return fading_exceedance(model, t);
}

}  // namespace lorasim

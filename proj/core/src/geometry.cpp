// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lorasim Authors

#include "lorasim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "lorasim/errors.hpp"

namespace lorasim {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

Point sample_on_circle(double r_km, CounterStream& rng) {
  const double theta = 2.0 * std::numbers::pi * rng.uniform();
  return {r_km * std::cos(theta), r_km * std::sin(theta)};
}

std::vector<Point> sample_ppp_annulus(double intensity, double inner_km, double outer_km,
                                      CounterStream& rng) {
  if (!(intensity >= 0.0) || !std::isfinite(intensity)) {
    throw InvalidArgument("PPP intensity must be finite and non-negative");
  }
  if (!(inner_km >= 0.0) || !(outer_km > 0.0) || !(outer_km > inner_km) ||
      !std::isfinite(outer_km)) {
    throw InvalidArgument("PPP region needs 0 <= inner < outer");
  }
  std::vector<Point> points;
  if (intensity == 0.0) return points;

  const double inner_sq = inner_km * inner_km;
  const double span_sq = outer_km * outer_km - inner_sq;
  std::poisson_distribution<long> count_dist(intensity * std::numbers::pi * span_sq);
  const long count = count_dist(rng);
  points.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    // Inverse CDF of the radial density 2r / (R^2 - r0^2).
    const double r = std::sqrt(inner_sq + span_sq * rng.uniform());
    points.push_back(sample_on_circle(r, rng));
  }
  return points;
}

std::vector<Point> sample_ppp(double intensity, double radius_km, CounterStream& rng) {
  if (!(radius_km > 0.0)) throw InvalidArgument("PPP radius must be positive");
  return sample_ppp_annulus(intensity, 0.0, radius_km, rng);
}

NearestResult nearest(Point origin, std::span<const Point> candidates) {
  if (candidates.empty()) throw NoGatewayError();
  std::size_t best = 0;
  double best_sq = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double dx = candidates[i].x - origin.x;
    const double dy = candidates[i].y - origin.y;
    const double sq = dx * dx + dy * dy;
    if (sq < best_sq) {
      best_sq = sq;
      best = i;
    }
  }
  return {best, std::max(std::sqrt(best_sq), kMinDistanceKm)};
}

Deployment sample_deployment(double radius_km, double gw_intensity, double ed_intensity,
                             CounterStream& rng) {
  Deployment deployment;
  deployment.radius_km = radius_km;
  deployment.gw_intensity = gw_intensity;
  deployment.ed_intensity = ed_intensity;
  deployment.gateways = sample_ppp(gw_intensity, radius_km, rng);
  deployment.end_devices = sample_ppp(ed_intensity, radius_km, rng);
  return deployment;
}

}  // namespace lorasim

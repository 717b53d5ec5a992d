// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lorasim Authors

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lorasim/rng.hpp"

namespace lorasim {

/// Position in km.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Links shorter than 1 m are evaluated at 1 m; Friis diverges at d -> 0.
inline constexpr double kMinDistanceKm = 0.001;

double distance(Point a, Point b);

/// Homogeneous PPP on the disk of `radius_km` about the origin: Poisson count
/// with mean intensity * pi * R^2, points i.i.d. uniform.
std::vector<Point> sample_ppp(double intensity, double radius_km, CounterStream& rng);

/// Same process restricted to the annulus inner_km <= r < outer_km.
std::vector<Point> sample_ppp_annulus(double intensity, double inner_km, double outer_km,
                                      CounterStream& rng);

/// Uniform point on the circle of radius `r_km`.
Point sample_on_circle(double r_km, CounterStream& rng);

struct NearestResult {
  std::size_t index;
  double distance_km;  // clamped to kMinDistanceKm
};

/// Closest candidate to `origin`, lowest index on ties. Throws NoGatewayError
/// on an empty candidate set.
NearestResult nearest(Point origin, std::span<const Point> candidates);

struct Deployment {
  std::vector<Point> gateways;
  std::vector<Point> end_devices;
  double radius_km = 0.0;
  double gw_intensity = 0.0;
  double ed_intensity = 0.0;
};

Deployment sample_deployment(double radius_km, double gw_intensity, double ed_intensity,
                             CounterStream& rng);

}  // namespace lorasim

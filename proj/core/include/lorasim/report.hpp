// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lorasim Authors

#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>

#include "lorasim/engine.hpp"

namespace lorasim {

inline constexpr std::string_view kCurvesHeader =
    "distance_km,p_h1,p_h1_ci,p_h2,p_h2_ci,p_success,p_success_ci,trials,sf,throughput_bps";

/// Everything needed to reproduce a curve file.
struct RunManifest {
  SimConfig config;
  std::string tool_version;
  double wall_clock_seconds = 0.0;
};

/// One row per bin; probabilities, CIs, distance and throughput in fixed
/// notation with 6 fractional digits, trials and sf as integers.
void write_curves_csv(const CurveEstimate& curve, std::ostream& out);

/// The resolved config in config-file grammar, with run metadata and per-bin
/// trial counts as `#` comments so the file parses back as a config.
void write_manifest(const RunManifest& manifest, const CurveEstimate& curve, std::ostream& out);

/// Writes both files. On failure neither file is left behind and IoError is
/// thrown.
void emit_curves(const CurveEstimate& curve, const RunManifest& manifest,
                 const std::filesystem::path& csv_path,
                 const std::filesystem::path& manifest_path);

}  // namespace lorasim

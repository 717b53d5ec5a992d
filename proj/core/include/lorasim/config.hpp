// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lorasim Authors

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lorasim/engine.hpp"

// Flat `key = value` configuration documents. One pair per line, `#` starts a
// comment, keys absent from the document keep their SimConfig defaults.
//
//   radius_km gw_intensity ed_intensity tx_power_dbm bandwidth_hz
//   noise_figure_db wavelength_km eta fading rician_k trials seed
//   gateway_mode interference_mode h1_h2_coupling bins sf_boundaries

namespace lorasim {

/// Throws ConfigError naming the key and line on unknown keys, duplicate keys,
/// malformed values or invariant violations.
SimConfig parse_config(std::string_view text);

/// Reads and parses a file; IoError names the path when it cannot be read.
SimConfig load_config(const std::filesystem::path& path);

/// "a,b,c" or "start:stop:step" (stop inclusive).
std::vector<double> parse_bins(std::string_view value);

/// Renders every key with a value that parses back to the identical config.
std::string format_config(const SimConfig& config);

const char* to_string(GatewayMode mode);
const char* to_string(InterferenceMode mode);
const char* to_string(FadingCoupling coupling);
const char* to_string(FadingModel::Kind kind);

}  // namespace lorasim

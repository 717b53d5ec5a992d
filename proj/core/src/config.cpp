// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lorasim Authors

#include "lorasim/config.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "lorasim/errors.hpp"

namespace lorasim {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw InvalidArgument("expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

std::uint64_t to_u64(std::string_view text) {
  text = trim(text);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw InvalidArgument("expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return value;
}

std::vector<double> to_list(std::string_view text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    values.push_back(to_double(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return values;
}

template <typename Enum>
Enum to_enum(std::string_view text, std::initializer_list<std::pair<const char*, Enum>> names) {
  text = trim(text);
  std::string allowed;
  for (const auto& [name, value] : names) {
    if (text == name) return value;
    allowed += allowed.empty() ? name : std::string("|") + name;
  }
  throw InvalidArgument("expected one of " + allowed + ", got '" + std::string(text) + "'");
}

using Setter = std::function<void(SimConfig&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table{
      {"radius_km", [](SimConfig& c, std::string_view v) { c.radius_km = to_double(v); }},
      {"gw_intensity", [](SimConfig& c, std::string_view v) { c.gw_intensity = to_double(v); }},
      {"ed_intensity", [](SimConfig& c, std::string_view v) { c.ed_intensity = to_double(v); }},
      {"tx_power_dbm",
       [](SimConfig& c, std::string_view v) { c.budget.tx_power_dbm = to_double(v); }},
      {"bandwidth_hz",
       [](SimConfig& c, std::string_view v) { c.budget.bandwidth_hz = to_double(v); }},
      {"noise_figure_db",
       [](SimConfig& c, std::string_view v) { c.budget.noise_figure_db = to_double(v); }},
      {"wavelength_km",
       [](SimConfig& c, std::string_view v) { c.budget.wavelength_km = to_double(v); }},
      {"eta", [](SimConfig& c, std::string_view v) { c.budget.path_loss_exponent = to_double(v); }},
      {"fading",
       [](SimConfig& c, std::string_view v) {
         c.fading_kind = to_enum<FadingModel::Kind>(
             v, {{"rayleigh", FadingModel::Kind::rayleigh}, {"rician", FadingModel::Kind::rician}});
       }},
      {"rician_k", [](SimConfig& c, std::string_view v) { c.rician_k = to_double(v); }},
      {"trials", [](SimConfig& c, std::string_view v) { c.trials = to_u64(v); }},
      {"seed", [](SimConfig& c, std::string_view v) { c.seed = to_u64(v); }},
      {"gateway_mode",
       [](SimConfig& c, std::string_view v) {
         c.gateway_mode = to_enum<GatewayMode>(
             v, {{"nearest", GatewayMode::nearest}, {"union", GatewayMode::any_gateway}});
       }},
      {"interference_mode",
       [](SimConfig& c, std::string_view v) {
         c.interference_mode = to_enum<InterferenceMode>(
             v, {{"co_sf", InterferenceMode::co_sf}, {"inter_sf", InterferenceMode::inter_sf}});
       }},
      {"h1_h2_coupling",
       [](SimConfig& c, std::string_view v) {
         c.coupling = to_enum<FadingCoupling>(
             v, {{"shared", FadingCoupling::shared}, {"independent", FadingCoupling::independent}});
       }},
      {"bins", [](SimConfig& c, std::string_view v) { c.distance_bins = parse_bins(v); }},
      {"sf_boundaries",
       [](SimConfig& c, std::string_view v) {
         const std::vector<double> edges = to_list(v);
         if (edges.size() != kNumSf) throw InvalidArgument("expected 6 radii d1..d6");
         std::array<double, kNumSf> outer{};
         std::copy(edges.begin(), edges.end(), outer.begin());
         c.sf_boundaries_override = SfBoundaries::from_outer_edges(outer);
       }},
  };
  return table;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += fmt::format("{}", values[i]);
  }
  return out;
}

}  // namespace

std::vector<double> parse_bins(std::string_view value) {
  value = trim(value);
  if (value.find(':') == std::string_view::npos) return to_list(value);

  const auto first = value.find(':');
  const auto second = value.find(':', first + 1);
  if (second == std::string_view::npos || value.find(':', second + 1) != std::string_view::npos) {
    throw InvalidArgument("range form is start:stop:step");
  }
  const double start = to_double(value.substr(0, first));
  const double stop = to_double(value.substr(first + 1, second - first - 1));
  const double step = to_double(value.substr(second + 1));
  if (!(step > 0.0) || !(stop >= start)) throw InvalidArgument("range needs step > 0, stop >= start");
  const double count = std::floor((stop - start) / step + 1e-9);
  if (count > 1e6) throw InvalidArgument("range produces too many bins");
  std::vector<double> bins;
  for (long i = 0; i <= static_cast<long>(count); ++i) bins.push_back(start + step * i);
  return bins;
}

SimConfig parse_config(std::string_view text) {
  SimConfig config;
  std::map<std::string, std::size_t, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("", line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));

    const auto setter = setters().find(key);
    if (setter == setters().end()) throw ConfigError(key, line_no, "unknown key");
    if (!seen.emplace(key, line_no).second) throw ConfigError(key, line_no, "duplicate key");
    if (value.empty()) throw ConfigError(key, line_no, "missing value");
    try {
      setter->second(config, value);
    } catch (const std::exception& e) {
      throw ConfigError(key, line_no, e.what());
    }
  }

  try {
    config.validate();
  } catch (const ConfigError& e) {
    const auto it = seen.find(e.key());
    const std::size_t line = it == seen.end() ? 0 : it->second;
    throw ConfigError(e.key(), line, e.message());
  }
  return config;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

const char* to_string(GatewayMode mode) {
  return mode == GatewayMode::nearest ? "nearest" : "union";
}

const char* to_string(InterferenceMode mode) {
  return mode == InterferenceMode::co_sf ? "co_sf" : "inter_sf";
}

const char* to_string(FadingCoupling coupling) {
  return coupling == FadingCoupling::shared ? "shared" : "independent";
}

const char* to_string(FadingModel::Kind kind) {
  return kind == FadingModel::Kind::rayleigh ? "rayleigh" : "rician";
}

std::string format_config(const SimConfig& c) {
  std::string out;
  auto put = [&out](std::string_view key, const std::string& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  put("radius_km", fmt::format("{}", c.radius_km));
  put("gw_intensity", fmt::format("{}", c.gw_intensity));
  put("ed_intensity", fmt::format("{}", c.ed_intensity));
  put("tx_power_dbm", fmt::format("{}", c.budget.tx_power_dbm));
  put("bandwidth_hz", fmt::format("{}", c.budget.bandwidth_hz));
  put("noise_figure_db", fmt::format("{}", c.budget.noise_figure_db));
  put("wavelength_km", fmt::format("{}", c.budget.wavelength_km));
  put("eta", fmt::format("{}", c.budget.path_loss_exponent));
  put("fading", to_string(c.fading_kind));
  put("rician_k", fmt::format("{}", c.rician_k));
  put("trials", fmt::format("{}", c.trials));
  put("seed", fmt::format("{}", c.seed));
  put("gateway_mode", to_string(c.gateway_mode));
  put("interference_mode", to_string(c.interference_mode));
  put("h1_h2_coupling", to_string(c.coupling));
  put("bins", join(c.distance_bins));
  if (c.sf_boundaries_override) {
    const auto& r = c.sf_boundaries_override->radii();
    put("sf_boundaries", join(std::vector<double>(r.begin() + 1, r.end())));
  }
  return out;
}

}  // namespace lorasim

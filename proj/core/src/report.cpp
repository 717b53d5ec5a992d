// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lorasim Authors

#include "lorasim/report.hpp"

#include <fmt/format.h>

#include <fstream>
#include <system_error>

#include "lorasim/config.hpp"
#include "lorasim/errors.hpp"

namespace lorasim {

void write_curves_csv(const CurveEstimate& curve, std::ostream& out) {
  out << kCurvesHeader << '\n';
  for (const BinEstimate& bin : curve.bins) {
    const double h1 = bin.p_h1();
    const double h2 = bin.p_h2();
    const double ok = bin.p_success();
    out << fmt::format("{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{},{},{:.6f}\n",
                       bin.distance_km, h1, ci_halfwidth(h1, bin.trials), h2,
                       ci_halfwidth(h2, bin.trials), ok, ci_halfwidth(ok, bin.trials), bin.trials,
                       bin.sf, throughput(bin.sf, ok));
  }
}

void write_manifest(const RunManifest& manifest, const CurveEstimate& curve, std::ostream& out) {
  out << "# lorasim run manifest\n";
  out << "# tool_version = " << manifest.tool_version << '\n';
  out << fmt::format("# wall_clock_seconds = {:.3f}\n", manifest.wall_clock_seconds);
  out << "# throughput_bps = p_success * tx_per_hour * 200 bit / 3600 s (derived metric)\n";
  if (!manifest.config.sf_boundaries_override) {
    const auto& r = manifest.config.boundaries().radii();
    out << fmt::format("# derived sf_boundaries = {},{},{},{},{},{}\n", r[1], r[2], r[3], r[4],
                       r[5], r[6]);
  }
  out << format_config(manifest.config);
  for (const BinEstimate& bin : curve.bins) {
    out << fmt::format("# bin {} km: trials = {}, zero_gateway = {}\n", bin.distance_km,
                       bin.trials, bin.no_gateway_count);
  }
}

void emit_curves(const CurveEstimate& curve, const RunManifest& manifest,
                 const std::filesystem::path& csv_path,
                 const std::filesystem::path& manifest_path) {
  auto discard = [&] {
    std::error_code ignored;
    std::filesystem::remove(csv_path, ignored);
    std::filesystem::remove(manifest_path, ignored);
  };
  try {
    {
      std::ofstream csv(csv_path, std::ios::binary | std::ios::trunc);
      if (!csv) throw IoError("cannot open '" + csv_path.string() + "' for writing");
      write_curves_csv(curve, csv);
      csv.flush();
      if (!csv) throw IoError("write failed on '" + csv_path.string() + "'");
    }
    {
      std::ofstream out(manifest_path, std::ios::binary | std::ios::trunc);
      if (!out) throw IoError("cannot open '" + manifest_path.string() + "' for writing");
      write_manifest(manifest, curve, out);
      out.flush();
      if (!out) throw IoError("write failed on '" + manifest_path.string() + "'");
    }
  } catch (...) {
    discard();
    throw;
  }
}

}  // namespace lorasim

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lorasim Authors

#include "cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <optional>

#include "lorasim/config.hpp"
#include "lorasim/errors.hpp"
#include "lorasim/report.hpp"
#include "lorasim/version.hpp"

namespace lorasim::cli {

namespace {

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::string channel;
  std::string out_dir = ".";
  unsigned threads = 0;
  bool quiet = false;
};

void print_summary(std::ostream& out, const std::string& channel, const CurveEstimate& curve) {
  out << fmt::format("{}: {} bins\n", channel, curve.bins.size());
  for (const BinEstimate& bin : curve.bins) {
    out << fmt::format("  d={:7.3f} km  SF{:<2}  H1={:.4f}  H2={:.4f}  H={:.4f}\n",
                       bin.distance_km, bin.sf, bin.p_h1(), bin.p_h2(), bin.p_success());
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monte Carlo uplink success probability for multi-cell LoRa networks", "lorasim"};
  Options opt;
  app.add_option("--config", opt.config_path, "Flat key = value configuration file");
  app.add_option("--seed", opt.seed, "Master seed (overrides the config)");
  app.add_option("--trials", opt.trials, "Trials per distance bin (overrides the config)")
      ->check(CLI::PositiveNumber);
  app.add_option("--channel", opt.channel, "Fading model to run")
      ->check(CLI::IsMember({"rayleigh", "rician", "both"}));
  app.add_option("--out", opt.out_dir, "Output directory");
  app.add_option("--threads", opt.threads, "Worker threads, 0 = all cores (results do not change)");
  app.add_flag("--quiet", opt.quiet, "Suppress the per-bin summary");
  app.set_version_flag("--version", kVersion);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  std::vector<std::filesystem::path> written;
  try {
    SimConfig base = opt.config_path.empty() ? SimConfig{} : load_config(opt.config_path);
    if (opt.seed) base.seed = *opt.seed;
    if (opt.trials) base.trials = *opt.trials;
    base.validate();

    std::vector<FadingModel::Kind> kinds;
    if (opt.channel.empty()) {
      kinds.push_back(base.fading_kind);
    } else if (opt.channel == "both") {
      kinds = {FadingModel::Kind::rayleigh, FadingModel::Kind::rician};
    } else {
      kinds.push_back(opt.channel == "rayleigh" ? FadingModel::Kind::rayleigh
                                                : FadingModel::Kind::rician);
    }

    const std::filesystem::path dir(opt.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());

    for (const FadingModel::Kind kind : kinds) {
      SimConfig config = base;
      config.fading_kind = kind;
      const std::string channel = to_string(kind);

      const auto start = std::chrono::steady_clock::now();
      const CurveEstimate curve = run_sweep(config, SweepOptions{opt.threads});
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

      const RunManifest manifest{config, kVersion, elapsed.count()};
      const auto csv = dir / (channel + "_curves.csv");
      const auto manifest_path = dir / (channel + "_manifest.txt");
      written.push_back(csv);
      written.push_back(manifest_path);
      emit_curves(curve, manifest, csv, manifest_path);

      if (!opt.quiet) {
        print_summary(out, channel, curve);
        out << fmt::format("wrote {} and {} ({:.2f} s)\n", csv.string(), manifest_path.string(),
                           elapsed.count());
      }
    }
  } catch (const std::exception& e) {
    for (const auto& path : written) {
      std::error_code ignored;
      std::filesystem::remove(path, ignored);
    }
    err << "lorasim: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace lorasim::cli

// Command-line front end over the libunruhqi C API.
//
//   unruhqi analyze   --p 0.9 --r-frac 1 [--with-oracles] [--out file.json]
//   unruhqi sweep     --grid 50x50 --out sweep.csv [--with-oracles]
//   unruhqi ellipsoid --p 0.9 --r 0.785398 --steered first --samples 400 --out e.csv

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "unruhqi/unruhqi.h"

namespace {

struct AccelerationFlags {
  std::optional<double> r;
  std::optional<double> r_frac;
};

void add_acceleration_flags(CLI::App* cmd, AccelerationFlags& flags) {
  auto* r = cmd->add_option("--r", flags.r, "acceleration parameter in radians, [0, pi/4]");
  auto* frac = cmd->add_option("--r-frac", flags.r_frac, "acceleration parameter as a fraction of pi/4, [0, 1]");
  r->excludes(frac);
}

double resolve_r(const AccelerationFlags& flags) {
  if (flags.r_frac) {
    if (*flags.r_frac < 0.0 || *flags.r_frac > 1.0) throw CLI::ValidationError("--r-frac", "must lie in [0, 1]");
    return *flags.r_frac * std::numbers::pi / 4.0;
  }
  return flags.r.value_or(0.0);
}

int report(uqi_status status) {
  if (status == UQI_OK) return 0;
  std::cerr << "unruhqi: " << uqi_status_name(status) << ": " << uqi_last_error() << '\n';
  return status == UQI_ERR_IO ? 3 : 2;
}

int qubit_selector(const std::string& name) { return name == "second" ? UQI_SECOND : UQI_FIRST; }

std::pair<int, int> parse_grid(const std::string& grid) {
  const auto x = grid.find_first_of("xX");
  if (x == std::string::npos) throw CLI::ValidationError("--grid", "expected P_STEPSxR_STEPS, e.g. 50x50");
  try {
    std::size_t used_p = 0;
    std::size_t used_r = 0;
    const int p = std::stoi(grid.substr(0, x), &used_p);
    const int r = std::stoi(grid.substr(x + 1), &used_r);
    if (used_p != x || used_r != grid.size() - x - 1) throw std::invalid_argument(grid);
    return {p, r};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--grid", "expected P_STEPSxR_STEPS, e.g. 50x50");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unruh-degraded correlations of two-qubit Werner states"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(uqi_version()));

  uqi_options options;
  uqi_options_default(&options);
  bool with_oracles = false;
  int threads = 0;

  // analyze
  auto* analyze = app.add_subcommand("analyze", "all quantities for one (p, r) point as JSON");
  double analyze_p = 0.0;
  AccelerationFlags analyze_r;
  std::string analyze_out = "-";
  analyze->add_option("--p", analyze_p, "Werner mixing parameter in [0, 1]")->required();
  add_acceleration_flags(analyze, analyze_r);
  analyze->add_option("--out", analyze_out, "output path, '-' for stdout");
  analyze->add_flag("--with-oracles", with_oracles, "also run the measurement-sweep and quadrature oracles");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "CSV over a (p, r) grid, p outer, r inner");
  uqi_sweep_spec spec;
  uqi_sweep_spec_default(&spec);
  std::string grid;
  std::string sweep_out;
  std::string quantities;
  sweep->add_option("--grid", grid, "P_STEPSxR_STEPS (default 11x11)");
  sweep->add_option("--p-min", spec.p_min, "lowest p");
  sweep->add_option("--p-max", spec.p_max, "highest p");
  sweep->add_option("--r-min", spec.r_min, "lowest r in radians");
  sweep->add_option("--r-max", spec.r_max, "highest r in radians");
  sweep->add_option("--quantities", quantities,
                    "comma-separated subset of concurrence,concurrence_eq17,chsh_M,msc,r_c,thresholds");
  sweep->add_option("--out", sweep_out, "output CSV path, '-' for stdout")->required();
  sweep->add_option("--threads", threads, "worker threads, 0 for all cores");
  sweep->add_flag("--with-oracles", with_oracles, "append msc_oracle and r_c_quadrature columns");

  // ellipsoid
  auto* ellipsoid = app.add_subcommand("ellipsoid", "surface point cloud of a steering ellipsoid");
  double ellipsoid_p = 0.0;
  AccelerationFlags ellipsoid_r;
  std::string steered = "first";
  int samples = 400;
  std::string ellipsoid_out;
  ellipsoid->add_option("--p", ellipsoid_p, "Werner mixing parameter in [0, 1]")->required();
  add_acceleration_flags(ellipsoid, ellipsoid_r);
  ellipsoid->add_option("--steered", steered, "qubit whose ellipsoid is exported")
      ->check(CLI::IsMember({"first", "second"}));
  ellipsoid->add_option("--samples", samples, "number of surface points (>= 8)");
  ellipsoid->add_option("--out", ellipsoid_out, "output CSV path, '-' for stdout")->required();

  try {
    app.parse(argc, argv);
    if (analyze->parsed()) {
      options.with_oracles = with_oracles ? 1 : 0;
      uqi_analysis* analysis = nullptr;
      if (const int rc = report(uqi_analyze(analyze_p, resolve_r(analyze_r), &options, &analysis))) return rc;
      std::size_t needed = 0;
      uqi_analysis_json(analysis, nullptr, 0, &needed);
      std::vector<char> text(needed);
      const uqi_status status = uqi_analysis_json(analysis, text.data(), text.size(), nullptr);
      uqi_analysis_free(analysis);
      if (const int rc = report(status)) return rc;
      if (analyze_out == "-") {
        std::cout << text.data() << '\n';
      } else {
        std::ofstream file(analyze_out, std::ios::binary | std::ios::trunc);
        file << text.data() << '\n';
        if (!file) {
          std::cerr << "unruhqi: cannot write '" << analyze_out << "'\n";
          return 3;
        }
      }
      return 0;
    }
    if (sweep->parsed()) {
      if (!grid.empty()) std::tie(spec.p_steps, spec.r_steps) = parse_grid(grid);
      spec.quantities = quantities.empty() ? nullptr : quantities.c_str();
      options.with_oracles = with_oracles ? 1 : 0;
      options.threads = threads;
      return report(uqi_sweep_csv(&spec, &options, sweep_out.c_str()));
    }
    if (ellipsoid->parsed()) {
      return report(uqi_ellipsoid_csv(ellipsoid_p, resolve_r(ellipsoid_r), qubit_selector(steered), samples,
                                      ellipsoid_out.c_str()));
    }
  } catch (const CLI::Error& e) {
    // --help and --version exit 0; every usage error maps to 2.
    return app.exit(e) == 0 ? 0 : 2;
  }
  return 0;
}

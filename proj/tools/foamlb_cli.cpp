#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "foamlb/config.hpp"
#include "foamlb/materials.hpp"
#include "foamlb/metrics.hpp"
#include "foamlb/output.hpp"
#include "foamlb/scenario.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInstability = 3;
constexpr int kExitIo = 4;

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

fs::path default_out_dir() {
  if (const char* env = std::getenv("FOAMLB_OUT_DIR"); env != nullptr && *env != '\0') return env;
  return "foamlb_out";
}

void print_metrics(const foamlb::BubbleMetrics& m) {
  std::printf("bubble fraction      %.4f %%\n", m.bubble_fraction);
  std::printf("foam density         %.4f g/cm^3\n", m.foam_density);
  std::printf("mean bubble diameter %.4f mm (%zu of %zu bubbles)\n", m.mean_bubble_diameter, m.measured_count,
              m.bubble_count);
  std::printf("histogram (%.3g mm bins):", m.bin_width);
  for (std::size_t c : m.histogram) std::printf(" %zu", c);
  std::printf("\n");
}

// Snapshot input: CSV with its optional .meta sidecar.
foamlb::FieldSnapshot load_snapshot(const fs::path& p) { return foamlb::read_csv(p); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"foamlb: two-dimensional lattice Boltzmann metal-foam simulator"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run a configuration to its stop rule");
  std::string config_path;
  std::optional<std::string> model;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<long> cadence;
  bool quiet = false;
  run->add_option("config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
  run->add_option("--model", model, "Override the model")->check(CLI::IsMember({"modified", "classic"}));
  run->add_option("--seed", seed, "Override the nucleation and noise seed");
  run->add_option("--out-dir", out_dir, "Output directory (default $FOAMLB_OUT_DIR or ./foamlb_out)");
  run->add_option("--cadence", cadence, "Snapshot every n steps, 0 for the final state only")
      ->check(CLI::NonNegativeNumber);
  run->add_flag("-q,--quiet", quiet, "Only print the final report");

  // props
  auto* props = app.add_subcommand("props", "Tabulate hydrogen/aluminium material values");
  double temperature = 0.0;
  double pressure_bar = 1.0;
  props->add_option("T", temperature, "Temperature, K")->required()->check(CLI::PositiveNumber);
  props->add_option("p", pressure_bar, "Hydrogen pressure, bar")->required()->check(CLI::NonNegativeNumber);

  // tile
  auto* tile = app.add_subcommand("tile", "Mirror-tile a snapshot into a PGM image");
  std::string tile_input;
  int kx = 1;
  int ky = 1;
  std::string tile_output;
  tile->add_option("snapshot", tile_input, "Snapshot CSV")->required()->check(CLI::ExistingFile);
  tile->add_option("kx", kx, "Repetitions in x")->required()->check(CLI::PositiveNumber);
  tile->add_option("ky", ky, "Repetitions in y")->required()->check(CLI::PositiveNumber);
  tile->add_option("-o,--output", tile_output, "Output PGM (default <snapshot>_tiled.pgm)");

  // measure
  auto* meas = app.add_subcommand("measure", "Bubble metrics of a snapshot");
  std::string measure_input;
  double melt_density = 2.7;
  double gas_density = 0.089;
  double bin_mm = 0.5;
  bool include_edge = false;
  meas->add_option("snapshot", measure_input, "Snapshot CSV")->required()->check(CLI::ExistingFile);
  meas->add_option("--melt-density", melt_density, "g/cm^3")->capture_default_str();
  meas->add_option("--gas-density", gas_density, "g/cm^3")->capture_default_str();
  meas->add_option("--bin", bin_mm, "Histogram bin width, mm")->capture_default_str()->check(CLI::PositiveNumber);
  meas->add_flag("--include-edge", include_edge, "Count bubbles touching the edge in the diameter statistics");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) {
      foamlb::SimulationConfig cfg = foamlb::load_config(config_path);
      if (model) cfg.model = *model == "classic" ? foamlb::Model::classic : foamlb::Model::modified;
      if (seed) cfg.seed = *seed;
      if (cadence) cfg.cadence = *cadence;
      cfg.validate();
      foamlb::RunOptions opts;
      opts.out_dir = out_dir ? fs::path(*out_dir) : default_out_dir();
      if (!quiet) opts.log = [](const std::string& m) { std::fprintf(stderr, "%s\n", m.c_str()); };
      const auto report = foamlb::run_scenario(cfg, opts);
      std::fputs(foamlb::format_report(report, utc_now()).c_str(), stdout);
      return kExitOk;
    }
    if (*props) {
      using namespace foamlb;
      const double D_low = diffusion_coefficient(temperature, DiffusionBranch::low);
      const double D_high = diffusion_coefficient(temperature, DiffusionBranch::high);
      std::printf("T = %.2f K, p = %.4g bar\n", temperature, pressure_bar);
      std::printf("H2 solubility, melt    %.6e cm^3/g\n", solubility(temperature, pressure_bar, AluminiumPhase::melt));
      std::printf("H2 solubility, solid   %.6e cm^3/g\n", solubility(temperature, pressure_bar, AluminiumPhase::solid));
      std::printf("H diffusivity, low     %.6e m^2/s\n", D_low);
      std::printf("H diffusivity, high    %.6e m^2/s\n", D_high);
      std::printf("diffusion length 1 s   %.6e m (low branch)\n", diffusion_length(D_low, 1.0));
      return kExitOk;
    }
    if (*tile) {
      const auto snap = load_snapshot(tile_input);
      const fs::path out = tile_output.empty() ? fs::path(fs::path(tile_input).replace_extension("").string() + "_tiled.pgm")
                                               : fs::path(tile_output);
      foamlb::write_pgm(foamlb::mirror_tile(snap, kx, ky), out);
      std::vector<double> rho(snap.shape.cells());
      for (std::size_t c = 0; c < rho.size(); ++c) rho[c] = snap.rho_melt[c] + snap.rho_gas[c];
      const foamlb::GridShape tiled{snap.shape.nx * kx, snap.shape.ny * ky};
      const auto field = foamlb::mirror_tile<double>(rho, snap.shape, kx, ky);
      const auto seams = foamlb::seam_scan(field, tiled, snap.shape);
      std::printf("wrote %s (%dx%d)\n", out.string().c_str(), tiled.nx, tiled.ny);
      std::printf("max density jump: %.6g across seams, %.6g inside tiles\n", seams.max_seam_jump,
                  seams.max_interior_jump);
      return kExitOk;
    }
    if (*meas) {
      const auto snap = load_snapshot(measure_input);
      foamlb::MetricOptions mo;
      mo.melt_density = melt_density;
      mo.gas_density = gas_density;
      mo.bin_width = bin_mm * 1e-3;
      mo.include_edge_bubbles = include_edge;
      print_metrics(foamlb::measure(snap, mo));
      return kExitOk;
    }
  } catch (const foamlb::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const foamlb::InstabilityError& e) {
    std::fprintf(stderr, "instability: %s\n", e.what());
    return kExitInstability;
  } catch (const foamlb::IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}

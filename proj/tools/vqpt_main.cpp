// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "vqpt/bench.hpp"

namespace {

namespace fs = std::filesystem;

struct Overrides {
  std::optional<std::string> backend;
  std::optional<int> depth;
  std::optional<long> seed;
  std::optional<int> iters;
  std::optional<long> shots;
  std::optional<double> phase_sigma;
  std::optional<double> learning_rate;
  std::optional<std::string> out_dir;
  bool dump_intensities = false;
};

void apply_overrides(vqpt::RunConfig& config, const Overrides& o) {
  if (o.backend) {
    if (*o.backend != "exact" && *o.backend != "sampled" &&
        *o.backend != "photonic") {
      throw vqpt::ConfigError("--backend must be exact, sampled or photonic");
    }
    config.backend = *o.backend;
    config.backends.clear();
  }
  if (o.depth) {
    if (*o.depth < 1) throw vqpt::ConfigError("--depth must be >= 1");
    config.depth = *o.depth;
    config.depths.clear();
  }
  if (o.seed) {
    config.seed = static_cast<std::uint64_t>(*o.seed);
  }
  if (o.iters) {
    if (*o.iters < 1) throw vqpt::ConfigError("--iters must be >= 1");
    config.iterations = *o.iters;
  }
  if (o.shots) {
    if (*o.shots < 1) throw vqpt::ConfigError("--shots must be >= 1");
    config.shots = *o.shots;
  }
  if (o.phase_sigma) {
    if (*o.phase_sigma < 0.0) {
      throw vqpt::ConfigError("--phase-sigma must be >= 0");
    }
    config.phase_sigma = *o.phase_sigma;
  }
  if (o.learning_rate) {
    if (!(*o.learning_rate > 0.0)) {
      throw vqpt::ConfigError("--learning-rate must be > 0");
    }
    config.learning_rate = *o.learning_rate;
  }
  if (o.out_dir) {
    config.out_dir = *o.out_dir;
  }
  if (o.dump_intensities) {
    config.dump_intensities = true;
  }
}

void write_report(const vqpt::BenchmarkReport& report) {
  fs::create_directories(report.config.out_dir);
  const fs::path dir(report.config.out_dir);
  vqpt::emit_csv(report, dir / "results.csv");
  vqpt::emit_json(report, dir / "results.json");
  std::cout << "wrote " << (dir / "results.csv").string() << " and "
            << (dir / "results.json").string() << '\n';
}

int run_command(const std::string& config_path, const Overrides& overrides) {
  vqpt::RunConfig config = vqpt::load_config(config_path);
  apply_overrides(config, overrides);
  config.replications = 1;  // `run` executes a single unitary
  const vqpt::BenchmarkReport report = vqpt::run_benchmark(config);
  write_report(report);
  const vqpt::BenchmarkCell& cell = report.cells.front();
  const vqpt::RunRecord& last = cell.records.back();
  std::cout << "backend=" << cell.backend << " depth=" << cell.depth
            << " final cost=" << last.cost << " final fidelity="
            << last.fidelity << '\n';
  return 0;
}

int bench_command(const std::string& config_path, const std::string& out_dir,
                  const Overrides& overrides) {
  vqpt::RunConfig config = vqpt::load_config(config_path);
  apply_overrides(config, overrides);
  config.out_dir = out_dir;
  const vqpt::BenchmarkReport report = vqpt::run_benchmark(config);
  write_report(report);
  std::cout << report.cells.size() << " runs, total wall time "
            << report.total_wall_seconds << " s\n";
  return 0;
}

int decompose_command(const std::string& matrix_path,
                      const std::string& out_path) {
  const vqpt::ComplexMatrix m = vqpt::read_matrix(matrix_path);
  const vqpt::UnitaryMatrix u(m);
  const vqpt::MeshProgram mesh = vqpt::decompose(u);
  vqpt::write_mesh(out_path, mesh);
  const double residual =
      vqpt::frobenius_distance(vqpt::reconstruct(mesh).matrix(), m);
  std::cout << "decomposed " << mesh.mode_count << "-mode unitary into "
            << mesh.cells.size() << " cells, round-trip residual " << residual
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational quantum process tomography simulator and "
               "photonic mesh benchmark harness"};
  app.require_subcommand(1);

  Overrides overrides;
  std::string config_path;
  std::string out_dir;
  std::string matrix_path;
  std::string mesh_out;

  CLI::App* run = app.add_subcommand("run", "Execute a single tomography run");
  run->add_option("--config", config_path, "Config file (key = value lines)")
      ->required();
  run->add_option("--out", overrides.out_dir, "Output directory");
  run->add_option("--backend", overrides.backend, "exact|sampled|photonic");
  run->add_option("--depth", overrides.depth, "Ansatz depth");
  run->add_option("--seed", overrides.seed, "Master seed");
  run->add_option("--iters", overrides.iters, "Optimization iterations");
  run->add_option("--shots", overrides.shots, "Shots for the sampled backend");
  run->add_option("--phase-sigma", overrides.phase_sigma,
                  "Phase jitter std-dev (radians)");
  run->add_option("--learning-rate", overrides.learning_rate,
                  "Adam learning rate");
  run->add_flag("--dump-intensities", overrides.dump_intensities,
                "Dump raw photonic intensities to CSV");

  CLI::App* bench =
      app.add_subcommand("bench", "Run a benchmark sweep (backends × depths "
                                  "× replications)");
  bench->add_option("--config", config_path, "Config file")->required();
  bench->add_option("--out", out_dir, "Output directory")->required();

  CLI::App* decompose =
      app.add_subcommand("decompose", "Decompose a unitary matrix file into "
                                      "a mesh program");
  decompose->add_option("--matrix", matrix_path, "Input matrix file")
      ->required();
  decompose->add_option("--out", mesh_out, "Output mesh file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (run->parsed()) {
      return run_command(config_path, overrides);
    }
    if (bench->parsed()) {
      return bench_command(config_path, out_dir, overrides);
    }
    if (decompose->parsed()) {
      return decompose_command(matrix_path, mesh_out);
    }
  } catch (const vqpt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

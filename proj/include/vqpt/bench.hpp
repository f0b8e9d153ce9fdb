// SPDX-License-Identifier: Apache-2.0

#ifndef VQPT_BENCH_HPP
#define VQPT_BENCH_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "vqpt/tomography.hpp"

namespace vqpt {

inline constexpr const char* kToolName = "vqpt";
inline constexpr const char* kToolVersion = "0.1.0";

/// Effective run/benchmark configuration. Every field has a default so an
/// empty config file is valid. Parsed from a line-oriented "key = value"
/// format with '#' comments; see README for the full key table.
struct RunConfig {
  int target_qubits = 2;               // t
  int depth = 3;                       // depth
  std::vector<int> depths;             // depths (bench sweep; empty -> {depth})
  std::uint64_t seed = 1;              // seed
  std::uint64_t unitary_index = 0;     // unitary_index (base stream)
  int replications = 3;                // replications
  int iterations = 10;                 // iterations
  std::string backend = "exact";       // backend: exact|sampled|photonic
  std::vector<std::string> backends;   // backends (bench sweep)
  long shots = 8194;                   // shots
  double phase_sigma = 0.0;            // phase_sigma (radians)
  double noisefloor_mean = 0.0;        // noisefloor_mean
  double noisefloor_sigma = 0.0;       // noisefloor_sigma
  double intensity_sigma = 0.0;        // intensity_sigma
  double learning_rate = 0.1;          // learning_rate
  int threads = 1;                     // threads
  std::string optimizer_space = "gate";  // optimizer_space: gate|mesh
  std::string out_dir = ".";           // out
  bool dump_intensities = false;       // dump_intensities
};

/// Parses config text; unknown keys, malformed lines, and out-of-range
/// values raise ConfigError naming the line number.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

Backend make_backend(const RunConfig& config, const std::string& name);

struct BenchmarkCell {
  std::string backend;
  int depth = 0;
  int replication = 0;
  std::vector<RunRecord> records;
};

struct IterationAggregate {
  std::string backend;
  int depth = 0;
  int iteration = 0;
  double cost_mean = 0.0;
  double cost_stddev = 0.0;  // sample standard deviation across replications
  double fidelity_mean = 0.0;
  double fidelity_stddev = 0.0;
  double wall_mean_s = 0.0;
};

struct BenchmarkReport {
  RunConfig config;
  std::vector<BenchmarkCell> cells;
  std::vector<IterationAggregate> aggregates;
  double total_wall_seconds = 0.0;
};

/// Runs every (backend, depth, replication) cell. Replication r draws its
/// target from stream unitary_index + r of the master seed.
BenchmarkReport run_benchmark(const RunConfig& config);

/// Frozen CSV schema: backend,depth,replication,iteration,cost,fidelity,
/// wall_time_s with 12 significant digits for cost and fidelity.
void emit_csv(const BenchmarkReport& report, std::ostream& out);
void emit_csv(const BenchmarkReport& report, const std::filesystem::path& path);
std::string csv_string(const BenchmarkReport& report);

/// JSON mirror of the records plus the effective config and tool version.
void emit_json(const BenchmarkReport& report, const std::filesystem::path& path);
std::string json_string(const BenchmarkReport& report);
BenchmarkReport parse_report_json(const std::string& text);

}  // namespace vqpt

#endif  // VQPT_BENCH_HPP

// SPDX-License-Identifier: Apache-2.0

#include "vqpt/bench.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace vqpt {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) {
    return {};
  }
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) {
      items.push_back(item);
    }
  }
  return items;
}

[[noreturn]] void fail(long line_no, const std::string& message) {
  throw ConfigError("config line " + std::to_string(line_no) + ": " + message);
}

long parse_integer(const std::string& value, long line_no) {
  std::size_t consumed = 0;
  long parsed = 0;
  try {
    parsed = std::stol(value, &consumed);
  } catch (const std::exception&) {
    fail(line_no, "expected an integer, got '" + value + "'");
  }
  if (consumed != value.size()) {
    fail(line_no, "trailing characters after integer '" + value + "'");
  }
  return parsed;
}

double parse_real(const std::string& value, long line_no) {
  std::size_t consumed = 0;
  double parsed = 0.0;
  try {
    parsed = std::stod(value, &consumed);
  } catch (const std::exception&) {
    fail(line_no, "expected a number, got '" + value + "'");
  }
  if (consumed != value.size()) {
    fail(line_no, "trailing characters after number '" + value + "'");
  }
  return parsed;
}

bool parse_bool(const std::string& value, long line_no) {
  if (value == "true" || value == "1") {
    return true;
  }
  if (value == "false" || value == "0") {
    return false;
  }
  fail(line_no, "expected true/false, got '" + value + "'");
}

void check_backend_name(const std::string& name, long line_no) {
  if (name != "exact" && name != "sampled" && name != "photonic") {
    fail(line_no, "unknown backend '" + name + "'");
  }
}

void format_sig12(std::ostream& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  out << buf;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig config;
  std::istringstream in(text);
  std::string raw_line;
  long line_no = 0;
  while (std::getline(in, raw_line)) {
    ++line_no;
    std::string line = raw_line;
    const auto comment = line.find('#');
    if (comment != std::string::npos) {
      line.erase(comment);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail(line_no, "expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      fail(line_no, "empty key");
    }
    if (value.empty()) {
      fail(line_no, "empty value for key '" + key + "'");
    }

    if (key == "t") {
      const long v = parse_integer(value, line_no);
      if (v < 1) fail(line_no, "t must be >= 1");
      config.target_qubits = static_cast<int>(v);
    } else if (key == "depth") {
      const long v = parse_integer(value, line_no);
      if (v < 1) fail(line_no, "depth must be >= 1");
      config.depth = static_cast<int>(v);
    } else if (key == "depths") {
      config.depths.clear();
      for (const std::string& item : split_list(value)) {
        const long v = parse_integer(item, line_no);
        if (v < 1) fail(line_no, "depths entries must be >= 1");
        config.depths.push_back(static_cast<int>(v));
      }
      if (config.depths.empty()) fail(line_no, "depths list is empty");
    } else if (key == "seed") {
      config.seed = static_cast<std::uint64_t>(parse_integer(value, line_no));
    } else if (key == "unitary_index") {
      const long v = parse_integer(value, line_no);
      if (v < 0) fail(line_no, "unitary_index must be >= 0");
      config.unitary_index = static_cast<std::uint64_t>(v);
    } else if (key == "replications") {
      const long v = parse_integer(value, line_no);
      if (v < 1) fail(line_no, "replications must be >= 1");
      config.replications = static_cast<int>(v);
    } else if (key == "iterations") {
      const long v = parse_integer(value, line_no);
      if (v < 1) fail(line_no, "iterations must be >= 1");
      config.iterations = static_cast<int>(v);
    } else if (key == "backend") {
      check_backend_name(value, line_no);
      config.backend = value;
    } else if (key == "backends") {
      config.backends.clear();
      for (const std::string& item : split_list(value)) {
        check_backend_name(item, line_no);
        config.backends.push_back(item);
      }
      if (config.backends.empty()) fail(line_no, "backends list is empty");
    } else if (key == "shots") {
      const long v = parse_integer(value, line_no);
      if (v < 1) fail(line_no, "shots must be >= 1");
      config.shots = v;
    } else if (key == "phase_sigma") {
      const double v = parse_real(value, line_no);
      if (v < 0.0) fail(line_no, "phase_sigma must be >= 0");
      config.phase_sigma = v;
    } else if (key == "noisefloor_mean") {
      const double v = parse_real(value, line_no);
      if (v < 0.0) fail(line_no, "noisefloor_mean must be >= 0");
      config.noisefloor_mean = v;
    } else if (key == "noisefloor_sigma") {
      const double v = parse_real(value, line_no);
      if (v < 0.0) fail(line_no, "noisefloor_sigma must be >= 0");
      config.noisefloor_sigma = v;
    } else if (key == "intensity_sigma") {
      const double v = parse_real(value, line_no);
      if (v < 0.0) fail(line_no, "intensity_sigma must be >= 0");
      config.intensity_sigma = v;
    } else if (key == "learning_rate") {
      const double v = parse_real(value, line_no);
      if (!(v > 0.0)) fail(line_no, "learning_rate must be > 0");
      config.learning_rate = v;
    } else if (key == "threads") {
      const long v = parse_integer(value, line_no);
      if (v < 1) fail(line_no, "threads must be >= 1");
      config.threads = static_cast<int>(v);
    } else if (key == "optimizer_space") {
      if (value != "gate" && value != "mesh") {
        fail(line_no, "optimizer_space must be gate or mesh");
      }
      config.optimizer_space = value;
    } else if (key == "out") {
      config.out_dir = value;
    } else if (key == "dump_intensities") {
      config.dump_intensities = parse_bool(value, line_no);
    } else {
      fail(line_no, "unknown key '" + key + "'");
    }
  }
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

Backend make_backend(const RunConfig& config, const std::string& name) {
  if (name == "exact") {
    return Backend::exact();
  }
  if (name == "sampled") {
    return Backend::sampled(config.shots);
  }
  if (name == "photonic") {
    NoiseConfig noise;
    noise.phase_sigma = config.phase_sigma;
    noise.noisefloor_mean = config.noisefloor_mean;
    noise.noisefloor_sigma = config.noisefloor_sigma;
    noise.intensity_noise_sigma = config.intensity_sigma;
    return Backend::photonic(noise);
  }
  throw ConfigError("unknown backend '" + name + "'");
}

BenchmarkReport run_benchmark(const RunConfig& config) {
  BenchmarkReport report;
  report.config = config;

  const std::vector<std::string> backends =
      config.backends.empty() ? std::vector<std::string>{config.backend}
                              : config.backends;
  const std::vector<int> depths =
      config.depths.empty() ? std::vector<int>{config.depth} : config.depths;

  std::shared_ptr<IntensityDump> dump;
  if (config.dump_intensities) {
    std::filesystem::create_directories(config.out_dir);
    dump = std::make_shared<IntensityDump>(
        std::filesystem::path(config.out_dir) / "intensities.csv");
  }

  for (const std::string& backend_name : backends) {
    for (const int depth : depths) {
      for (int rep = 0; rep < config.replications; ++rep) {
        TomographyConfig tc;
        tc.target_qubits = config.target_qubits;
        tc.depth = depth;
        tc.seed = config.seed;
        tc.unitary_stream = config.unitary_index + rep;
        tc.iterations = config.iterations;
        tc.backend = make_backend(config, backend_name);
        if (backend_name == "photonic") {
          tc.backend.dump = dump;
        }
        tc.learning_rate = config.learning_rate;
        tc.threads = config.threads;
        tc.space = config.optimizer_space == "mesh"
                       ? OptimizationSpace::MeshParameters
                       : OptimizationSpace::GateAngles;
        try {
          BenchmarkCell cell;
          cell.backend = backend_name;
          cell.depth = depth;
          cell.replication = static_cast<int>(tc.unitary_stream);
          cell.records = run_tomography(tc);
          for (const RunRecord& r : cell.records) {
            report.total_wall_seconds += r.wall_seconds;
          }
          report.cells.push_back(std::move(cell));
        } catch (const Error& e) {
          throw Error("cell (" + backend_name + ", depth " +
                      std::to_string(depth) + ", replication " +
                      std::to_string(tc.unitary_stream) + "): " + e.what());
        }
      }
    }
  }

  // Per-iteration aggregates across replications of each (backend, depth).
  std::map<std::pair<std::string, int>, std::vector<const BenchmarkCell*>>
      groups;
  for (const BenchmarkCell& cell : report.cells) {
    groups[{cell.backend, cell.depth}].push_back(&cell);
  }
  for (const auto& [key, cells] : groups) {
    const int iterations = static_cast<int>(cells.front()->records.size());
    for (int it = 0; it < iterations; ++it) {
      IterationAggregate agg;
      agg.backend = key.first;
      agg.depth = key.second;
      agg.iteration = it;
      const double n = static_cast<double>(cells.size());
      for (const BenchmarkCell* cell : cells) {
        agg.cost_mean += cell->records[it].cost;
        agg.fidelity_mean += cell->records[it].fidelity;
        agg.wall_mean_s += cell->records[it].wall_seconds;
      }
      agg.cost_mean /= n;
      agg.fidelity_mean /= n;
      agg.wall_mean_s /= n;
      if (cells.size() > 1) {
        double cost_ss = 0.0;
        double fid_ss = 0.0;
        for (const BenchmarkCell* cell : cells) {
          const double dc = cell->records[it].cost - agg.cost_mean;
          const double df = cell->records[it].fidelity - agg.fidelity_mean;
          cost_ss += dc * dc;
          fid_ss += df * df;
        }
        agg.cost_stddev = std::sqrt(cost_ss / (n - 1.0));
        agg.fidelity_stddev = std::sqrt(fid_ss / (n - 1.0));
      }
      report.aggregates.push_back(std::move(agg));
    }
  }
  return report;
}

void emit_csv(const BenchmarkReport& report, std::ostream& out) {
  out << "backend,depth,replication,iteration,cost,fidelity,wall_time_s\n";
  for (const BenchmarkCell& cell : report.cells) {
    for (const RunRecord& r : cell.records) {
      out << cell.backend << ',' << cell.depth << ',' << cell.replication
          << ',' << r.iteration << ',';
      format_sig12(out, r.cost);
      out << ',';
      format_sig12(out, r.fidelity);
      char wall[32];
      std::snprintf(wall, sizeof(wall), "%.6f", r.wall_seconds);
      out << ',' << wall << '\n';
    }
  }
}

void emit_csv(const BenchmarkReport& report,
              const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot write CSV: " + path.string());
  }
  emit_csv(report, out);
  if (!out) {
    throw ConfigError("write failed: " + path.string());
  }
}

std::string csv_string(const BenchmarkReport& report) {
  std::ostringstream out;
  emit_csv(report, out);
  return out.str();
}

namespace {

json config_to_json(const RunConfig& c) {
  json j;
  j["t"] = c.target_qubits;
  j["depth"] = c.depth;
  j["depths"] = c.depths;
  j["seed"] = c.seed;
  j["unitary_index"] = c.unitary_index;
  j["replications"] = c.replications;
  j["iterations"] = c.iterations;
  j["backend"] = c.backend;
  j["backends"] = c.backends;
  j["shots"] = c.shots;
  j["phase_sigma"] = c.phase_sigma;
  j["noisefloor_mean"] = c.noisefloor_mean;
  j["noisefloor_sigma"] = c.noisefloor_sigma;
  j["intensity_sigma"] = c.intensity_sigma;
  j["learning_rate"] = c.learning_rate;
  j["threads"] = c.threads;
  j["optimizer_space"] = c.optimizer_space;
  j["out"] = c.out_dir;
  j["dump_intensities"] = c.dump_intensities;
  return j;
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  c.target_qubits = j.at("t").get<int>();
  c.depth = j.at("depth").get<int>();
  c.depths = j.at("depths").get<std::vector<int>>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.unitary_index = j.at("unitary_index").get<std::uint64_t>();
  c.replications = j.at("replications").get<int>();
  c.iterations = j.at("iterations").get<int>();
  c.backend = j.at("backend").get<std::string>();
  c.backends = j.at("backends").get<std::vector<std::string>>();
  c.shots = j.at("shots").get<long>();
  c.phase_sigma = j.at("phase_sigma").get<double>();
  c.noisefloor_mean = j.at("noisefloor_mean").get<double>();
  c.noisefloor_sigma = j.at("noisefloor_sigma").get<double>();
  c.intensity_sigma = j.at("intensity_sigma").get<double>();
  c.learning_rate = j.at("learning_rate").get<double>();
  c.threads = j.at("threads").get<int>();
  c.optimizer_space = j.at("optimizer_space").get<std::string>();
  c.out_dir = j.at("out").get<std::string>();
  c.dump_intensities = j.at("dump_intensities").get<bool>();
  return c;
}

}  // namespace

std::string json_string(const BenchmarkReport& report) {
  json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["config"] = config_to_json(report.config);
  j["runs"] = json::array();
  for (const BenchmarkCell& cell : report.cells) {
    json run;
    run["backend"] = cell.backend;
    run["depth"] = cell.depth;
    run["replication"] = cell.replication;
    run["records"] = json::array();
    for (const RunRecord& r : cell.records) {
      run["records"].push_back({{"iteration", r.iteration},
                                {"cost", r.cost},
                                {"fidelity", r.fidelity},
                                {"wall_time_s", r.wall_seconds}});
    }
    j["runs"].push_back(std::move(run));
  }
  j["aggregates"] = json::array();
  for (const IterationAggregate& a : report.aggregates) {
    j["aggregates"].push_back({{"backend", a.backend},
                               {"depth", a.depth},
                               {"iteration", a.iteration},
                               {"cost_mean", a.cost_mean},
                               {"cost_stddev", a.cost_stddev},
                               {"fidelity_mean", a.fidelity_mean},
                               {"fidelity_stddev", a.fidelity_stddev},
                               {"wall_time_mean_s", a.wall_mean_s}});
  }
  j["total_wall_time_s"] = report.total_wall_seconds;
  return j.dump(2);
}

void emit_json(const BenchmarkReport& report,
               const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot write JSON: " + path.string());
  }
  out << json_string(report) << '\n';
  if (!out) {
    throw ConfigError("write failed: " + path.string());
  }
}

BenchmarkReport parse_report_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid report JSON: ") + e.what());
  }
  BenchmarkReport report;
  report.config = config_from_json(j.at("config"));
  for (const json& run : j.at("runs")) {
    BenchmarkCell cell;
    cell.backend = run.at("backend").get<std::string>();
    cell.depth = run.at("depth").get<int>();
    cell.replication = run.at("replication").get<int>();
    for (const json& rec : run.at("records")) {
      RunRecord r;
      r.iteration = rec.at("iteration").get<int>();
      r.cost = rec.at("cost").get<double>();
      r.fidelity = rec.at("fidelity").get<double>();
      r.wall_seconds = rec.at("wall_time_s").get<double>();
      cell.records.push_back(r);
    }
    report.cells.push_back(std::move(cell));
  }
  for (const json& a : j.at("aggregates")) {
    IterationAggregate agg;
    agg.backend = a.at("backend").get<std::string>();
    agg.depth = a.at("depth").get<int>();
    agg.iteration = a.at("iteration").get<int>();
    agg.cost_mean = a.at("cost_mean").get<double>();
    agg.cost_stddev = a.at("cost_stddev").get<double>();
    agg.fidelity_mean = a.at("fidelity_mean").get<double>();
    agg.fidelity_stddev = a.at("fidelity_stddev").get<double>();
    agg.wall_mean_s = a.at("wall_time_mean_s").get<double>();
    report.aggregates.push_back(std::move(agg));
  }
  report.total_wall_seconds = j.at("total_wall_time_s").get<double>();
  return report;
}

}  // namespace vqpt

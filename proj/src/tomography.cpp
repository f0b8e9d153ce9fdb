// SPDX-License-Identifier: Apache-2.0

#include "vqpt/tomography.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <thread>

namespace vqpt {

namespace {

Eigen::Index pow2(int n) { return Eigen::Index{1} << n; }

constexpr int kFloorCalibrationSamples = 380;

// Child-stream keys within one evaluation / one iteration.
constexpr std::uint64_t kMeasurementStream = 0;
constexpr std::uint64_t kFloorStream = 1;
constexpr std::uint64_t kRecordedCostKey = 0;

double cost_from_pre_measurement(const UnitaryMatrix& w, int target_qubits,
                                 const Backend& backend, SeededRng& rng) {
  const int total_qubits = target_qubits + 1;
  const int inputs = 1 << target_qubits;
  SeededRng measurement_rng = rng.child(kMeasurementStream);
  double sum = 0.0;

  switch (backend.kind) {
    case Backend::Kind::Exact: {
      for (int i = 0; i < inputs; ++i) {
        sum += 2.0 * (1.0 - exact_ancilla_zero_probability(w, i));
      }
      break;
    }
    case Backend::Kind::Sampled: {
      if (backend.shots < 1) {
        throw DomainError("cost: sampled backend needs shots >= 1");
      }
      const Eigen::Index dim = w.dim();
      std::vector<double> cdf(dim);
      for (int i = 0; i < inputs; ++i) {
        const Eigen::Index col = 2 * i;
        double acc = 0.0;
        for (Eigen::Index k = 0; k < dim; ++k) {
          acc += std::norm(w(k, col));
          cdf[k] = acc;
        }
        long even = 0;
        for (long s = 0; s < backend.shots; ++s) {
          const double u = measurement_rng.uniform() * acc;
          const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
          const Eigen::Index k =
              std::min<Eigen::Index>(it - cdf.begin(), dim - 1);
          even += (k % 2 == 0);
        }
        const double p = static_cast<double>(even) /
                         static_cast<double>(backend.shots);
        sum += 2.0 * (1.0 - p);
      }
      break;
    }
    case Backend::Kind::Photonic: {
      const int modes = static_cast<int>(w.dim());
      // The noise stream label keeps draws disjoint between configurations
      // sharing one evaluation stream.
      measurement_rng =
          rng.child(kMeasurementStream).child(backend.noise.stream_id);
      RealVector floor_estimate;
      if (backend.noisefloor_estimate) {
        floor_estimate = *backend.noisefloor_estimate;
      } else if (backend.noise.floor_enabled()) {
        SeededRng floor_rng =
            rng.child(kFloorStream).child(backend.noise.stream_id);
        floor_estimate = estimate_noisefloor(backend.noise, modes,
                                             kFloorCalibrationSamples,
                                             floor_rng);
      } else {
        floor_estimate = RealVector::Zero(modes);
      }
      for (int i = 0; i < inputs; ++i) {
        const UnitaryMatrix permuted = absorb_input_permutation(w, 2 * i);
        const MeshProgram mesh = strip_output_phases(decompose(permuted));
        const RealVector raw = scatter_raw(
            mesh, OneHotIndex{total_qubits, 0}, backend.noise,
            measurement_rng);
        const IntensityDistribution dist = process_raw(raw, floor_estimate);
        if (backend.dump) {
          const RealVector floored = (raw - floor_estimate).cwiseMax(0.0);
          backend.dump->record(raw, floored, dist.probabilities);
        }
        sum += 2.0 * (1.0 - ancilla_zero_probability(dist, total_qubits));
      }
      break;
    }
  }
  return sum / static_cast<double>(pow2(target_qubits - 1));
}

// Four-term shift gradient of an arbitrary cost functional. Evaluation
// (parameter p, shift s) always consumes child stream 1 + 4p + s of the
// supplied rng, so the result is identical for any thread count.
std::vector<double> shift_gradient(
    const std::function<double(const std::vector<double>&, SeededRng)>& eval,
    const std::vector<double>& params, const SeededRng& rng, int threads) {
  static constexpr double kShifts[4] = {
      std::numbers::pi / 2.0, -std::numbers::pi / 2.0,
      3.0 * std::numbers::pi / 2.0, -3.0 * std::numbers::pi / 2.0};
  const std::size_t n = params.size();
  std::vector<double> values(4 * n, 0.0);

  auto run_task = [&](std::size_t task) {
    const std::size_t p = task / 4;
    const std::size_t s = task % 4;
    std::vector<double> shifted = params;
    shifted[p] += kShifts[s];
    values[task] = eval(shifted, rng.child(1 + task));
  };

  const std::size_t tasks = 4 * n;
  const int workers =
      std::max(1, std::min(threads, static_cast<int>(tasks)));
  if (workers == 1) {
    for (std::size_t task = 0; task < tasks; ++task) {
      run_task(task);
    }
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w]() {
        for (std::size_t task = w; task < tasks; task += workers) {
          run_task(task);
        }
      });
    }
    for (std::thread& t : pool) {
      t.join();
    }
  }

  std::vector<double> grad(n, 0.0);
  for (std::size_t p = 0; p < n; ++p) {
    grad[p] = kShiftPlusCoefficient * (values[4 * p] - values[4 * p + 1]) -
              kShiftMinusCoefficient * (values[4 * p + 2] - values[4 * p + 3]);
  }
  return grad;
}

std::vector<double> mesh_raw_params(const MeshProgram& mesh) {
  std::vector<double> raw;
  raw.reserve(2 * mesh.cells.size() + mesh.mode_count);
  for (const UnitCell& cell : mesh.cells) {
    raw.push_back(cell.theta);
    raw.push_back(cell.phi);
  }
  for (int k = 0; k < mesh.mode_count; ++k) {
    raw.push_back(std::arg(mesh.output_phases(k)));
  }
  return raw;
}

}  // namespace

IntensityDump::IntensityDump(const std::filesystem::path& path) {
  std::FILE* f = std::fopen(path.string().c_str(), "w");
  if (f == nullptr) {
    throw ConfigError("cannot open intensity dump: " + path.string());
  }
  file_ = std::shared_ptr<std::FILE>(f, &std::fclose);
  std::fputs("mode,raw,floored,normalized\n", f);
}

void IntensityDump::record(const RealVector& raw, const RealVector& floored,
                           const RealVector& normalized) {
  std::lock_guard<std::mutex> lock(mutex_);
  for (Eigen::Index k = 0; k < raw.size(); ++k) {
    std::fprintf(file_.get(), "%ld,%.12g,%.12g,%.12g\n", static_cast<long>(k),
                 raw(k), floored(k), normalized(k));
  }
}

Backend Backend::exact() { return Backend{}; }

Backend Backend::sampled(long shots) {
  Backend b;
  b.kind = Kind::Sampled;
  b.shots = shots;
  if (shots < 1) {
    throw DomainError("Backend::sampled: shots must be >= 1");
  }
  return b;
}

Backend Backend::photonic(NoiseConfig noise) {
  Backend b;
  b.kind = Kind::Photonic;
  b.noise = noise;
  return b;
}

double exact_ancilla_zero_probability(const UnitaryMatrix& w, int input) {
  const Eigen::Index dim = w.dim();
  if (input < 0 || 2 * input >= dim) {
    throw DomainError("exact_ancilla_zero_probability: input out of range");
  }
  double p = 0.0;
  for (Eigen::Index k = 0; k < dim; k += 2) {
    p += std::norm(w(k, 2 * input));
  }
  return p;
}

double cost(const UnitaryMatrix& u_target, const Circuit& ansatz,
            const ParamVector& params, const Backend& backend, SeededRng rng) {
  const UnitaryMatrix w = build_tomography_unitary(u_target, ansatz, params);
  return cost_from_pre_measurement(w, ansatz.qubit_count(), backend, rng);
}

double cost_with_vqc(const UnitaryMatrix& u_target, const UnitaryMatrix& u_vqc,
                     const Backend& backend, SeededRng rng) {
  if (u_target.dim() != u_vqc.dim()) {
    throw ShapeError("cost_with_vqc: dimensions differ");
  }
  int t = 0;
  while (pow2(t) < u_target.dim()) {
    ++t;
  }
  if (pow2(t) != u_target.dim()) {
    throw ShapeError("cost_with_vqc: dimension must be a power of two");
  }
  const UnitaryMatrix w = hadamard_test_unitary(u_target, u_vqc);
  return cost_from_pre_measurement(w, t, backend, rng);
}

std::vector<double> gradient(const UnitaryMatrix& u_target,
                             const Circuit& ansatz, const ParamVector& params,
                             const Backend& backend, SeededRng rng,
                             int threads) {
  if (static_cast<int>(params.size()) != ansatz.param_count()) {
    throw ArityError("gradient: parameter count mismatch");
  }
  auto eval = [&](const std::vector<double>& p, SeededRng r) {
    return cost(u_target, ansatz, p, backend, std::move(r));
  };
  return shift_gradient(eval, params, rng, threads);
}

AdamState make_adam_state(std::size_t param_count, const AdamConfig& config) {
  AdamState state;
  state.config = config;
  state.first_moment.assign(param_count, 0.0);
  state.second_moment.assign(param_count, 0.0);
  return state;
}

void adam_step(AdamState& state, const std::vector<double>& grad,
               ParamVector& params) {
  if (grad.size() != params.size() ||
      grad.size() != state.first_moment.size()) {
    throw ShapeError("adam_step: vector lengths differ");
  }
  const AdamConfig& cfg = state.config;
  state.step += 1;
  const double bc1 = 1.0 - std::pow(cfg.beta1, state.step);
  const double bc2 = 1.0 - std::pow(cfg.beta2, state.step);
  for (std::size_t i = 0; i < params.size(); ++i) {
    double& m = state.first_moment[i];
    double& v = state.second_moment[i];
    m = cfg.beta1 * m + (1.0 - cfg.beta1) * grad[i];
    v = cfg.beta2 * v + (1.0 - cfg.beta2) * grad[i] * grad[i];
    const double m_hat = m / bc1;
    const double v_hat = v / bc2;
    params[i] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
  }
}

double process_fidelity(const UnitaryMatrix& u_ideal,
                        const UnitaryMatrix& u_actual) {
  if (u_ideal.dim() != u_actual.dim()) {
    throw ShapeError("process_fidelity: dimensions differ");
  }
  const Eigen::Index dim = u_ideal.dim();
  auto chi = [dim](const UnitaryMatrix& u) {
    ComplexVector vec(dim * dim);  // row-major vectorization
    for (Eigen::Index r = 0; r < dim; ++r) {
      for (Eigen::Index c = 0; c < dim; ++c) {
        vec(r * dim + c) = u(r, c);
      }
    }
    return ComplexMatrix((vec * vec.adjoint()) / static_cast<double>(dim));
  };
  const ComplexMatrix chi_actual = chi(u_actual);
  const ComplexMatrix chi_ideal = chi(u_ideal);
  const Complex trace =
      (chi_actual.array() * chi_ideal.transpose().array()).sum();
  return trace.real();
}

std::vector<RunRecord> run_tomography(const TomographyConfig& config) {
  if (config.target_qubits < 1 || config.depth < 1 || config.iterations < 1) {
    throw DomainError("run_tomography: t, depth, iterations must be >= 1");
  }
  if (!(config.learning_rate > 0.0)) {
    throw DomainError("run_tomography: learning rate must be positive");
  }
  if (config.threads < 1) {
    throw DomainError("run_tomography: threads must be >= 1");
  }

  const int t = config.target_qubits;
  const SeededRng base(config.seed, config.unitary_stream);

  UnitaryMatrix target = [&]() {
    if (config.target) {
      if (config.target->dim() != pow2(t)) {
        throw ShapeError("run_tomography: target dimension must be 2^t");
      }
      return *config.target;
    }
    SeededRng haar_rng = base.child(0);
    return haar_unitary(static_cast<int>(pow2(t)), haar_rng);
  }();

  const Circuit ansatz = build_ansatz({t, config.depth});

  ParamVector params;
  if (config.initial_params) {
    params = *config.initial_params;
    if (static_cast<int>(params.size()) != ansatz.param_count()) {
      throw ArityError("run_tomography: initial parameter count mismatch");
    }
  } else {
    SeededRng init_rng = base.child(1);
    params.resize(ansatz.param_count());
    for (double& p : params) {
      p = init_rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
  }

  Backend backend = config.backend;
  if (backend.kind == Backend::Kind::Photonic &&
      backend.noise.floor_enabled() && !backend.noisefloor_estimate) {
    SeededRng calibration_rng = base.child(2);
    backend.noisefloor_estimate = estimate_noisefloor(
        backend.noise, static_cast<int>(pow2(t + 1)),
        kFloorCalibrationSamples, calibration_rng);
  }

  // Mesh-parameter space keeps the cell layout of the initial decomposition
  // fixed and lets the raw angles run unwrapped; only evaluation maps them
  // to a unitary.
  const bool mesh_space = config.space == OptimizationSpace::MeshParameters;
  MeshProgram layout;
  std::vector<double> variables;
  if (mesh_space) {
    layout = decompose(compile(ansatz, params));
    variables = mesh_raw_params(layout);
  } else {
    variables = params;
  }

  auto eval = [&](const std::vector<double>& vars, SeededRng r) {
    if (mesh_space) {
      return cost_with_vqc(target, reconstruct_relaxed(layout, vars), backend,
                           std::move(r));
    }
    return cost(target, ansatz, vars, backend, std::move(r));
  };
  auto current_vqc = [&](const std::vector<double>& vars) {
    return mesh_space ? reconstruct_relaxed(layout, vars)
                      : compile(ansatz, vars);
  };

  AdamState adam =
      make_adam_state(variables.size(), AdamConfig{config.learning_rate});
  std::vector<RunRecord> records;
  records.reserve(config.iterations);

  for (int it = 0; it < config.iterations; ++it) {
    const auto started = std::chrono::steady_clock::now();
    const SeededRng iter_rng = base.child(3 + static_cast<std::uint64_t>(it));
    const std::vector<double> grad =
        shift_gradient(eval, variables, iter_rng, config.threads);
    adam_step(adam, grad, variables);
    const double c = eval(variables, iter_rng.child(kRecordedCostKey));
    const double fidelity = process_fidelity(target, current_vqc(variables));
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - started;
    records.push_back(RunRecord{it, c, fidelity, elapsed.count()});
  }
  return records;
}

}  // namespace vqpt

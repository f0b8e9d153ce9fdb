// SPDX-License-Identifier: Apache-2.0

#ifndef VQPT_TOMOGRAPHY_HPP
#define VQPT_TOMOGRAPHY_HPP

#include <cstdio>
#include <filesystem>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <vector>

#include "vqpt/circuit.hpp"
#include "vqpt/photonic.hpp"

namespace vqpt {

/// Thread-safe CSV sink for raw/floored/normalized intensities, one row per
/// mode per photonic evaluation.
class IntensityDump {
 public:
  explicit IntensityDump(const std::filesystem::path& path);
  void record(const RealVector& raw, const RealVector& floored,
              const RealVector& normalized);

 private:
  std::mutex mutex_;
  std::shared_ptr<std::FILE> file_;
};

/// Where cost evaluations run: an exact statevector simulation, a
/// finite-shot sampler over the same distribution, or the simulated one-hot
/// optical scattering experiment.
struct Backend {
  enum class Kind { Exact, Sampled, Photonic };

  Kind kind = Kind::Exact;
  long shots = 8194;   // Sampled
  NoiseConfig noise;   // Photonic
  /// Calibrated floor subtracted by the photonic pipeline. Filled in once
  /// per run; when absent and floor noise is on, each cost call calibrates
  /// from its own child stream.
  std::optional<RealVector> noisefloor_estimate;
  std::shared_ptr<IntensityDump> dump;

  static Backend exact();
  static Backend sampled(long shots);
  static Backend photonic(NoiseConfig noise);
};

/// P(ancilla = 0) read directly from a pre-measurement unitary column.
double exact_ancilla_zero_probability(const UnitaryMatrix& w, int input);

/// Hadamard-test cost
///   C(θ̂) = 1/2^{t−1} · Σ_i [1 − Re⟨Ψᵢᵗʳ|Ψᵢᵖʳ⟩],
/// with Re recovered from the ancilla statistics as 2·P_i(ancilla=0) − 1 and
/// the sum running over all 2^t computational inputs of the target register.
double cost(const UnitaryMatrix& u_target, const Circuit& ansatz,
            const ParamVector& params, const Backend& backend,
            SeededRng rng = SeededRng(0));

/// Same cost with the variational unitary supplied directly (mesh-space
/// optimization and oracle tests).
double cost_with_vqc(const UnitaryMatrix& u_target, const UnitaryMatrix& u_vqc,
                     const Backend& backend, SeededRng rng = SeededRng(0));

inline constexpr double kShiftPlusCoefficient =
    (std::numbers::sqrt2 + 1.0) / (4.0 * std::numbers::sqrt2);
inline constexpr double kShiftMinusCoefficient =
    (std::numbers::sqrt2 - 1.0) / (4.0 * std::numbers::sqrt2);

/// Four-term parameter-shift gradient: per parameter,
///   ∇ᵢ = c₊·[C(θᵢ+π/2) − C(θᵢ−π/2)] − c₋·[C(θᵢ+3π/2) − C(θᵢ−3π/2)].
/// Evaluations are independent; with threads > 1 they run in parallel on
/// child streams keyed by (parameter, shift), so results do not depend on
/// scheduling.
std::vector<double> gradient(const UnitaryMatrix& u_target,
                             const Circuit& ansatz, const ParamVector& params,
                             const Backend& backend,
                             SeededRng rng = SeededRng(0), int threads = 1);

struct AdamConfig {
  double learning_rate = 0.1;
  double beta1 = 0.8;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  AdamConfig config;
  std::vector<double> first_moment;
  std::vector<double> second_moment;
  long step = 0;
};

AdamState make_adam_state(std::size_t param_count, const AdamConfig& config);

/// Standard bias-corrected Adam descent step, applied in place.
void adam_step(AdamState& state, const std::vector<double>& grad,
               ParamVector& params);

/// Tr(χ_actual·χ_ideal) over the normalized chi operators
/// χ_U = vec(U)·vec(U)†/D. Equals |Tr(U_ideal†·U_actual)|²/D² and is
/// invariant under a global phase of either argument.
double process_fidelity(const UnitaryMatrix& u_ideal,
                        const UnitaryMatrix& u_actual);

struct RunRecord {
  int iteration = 0;
  double cost = 0.0;
  double fidelity = 0.0;
  double wall_seconds = 0.0;
};

enum class OptimizationSpace {
  GateAngles,      // shift and update the circuit rotation angles (default)
  MeshParameters,  // experimental: shift and update the variational
                   // unitary's own mesh parameters (θ, φ per cell plus
                   // output phases)
};

struct TomographyConfig {
  int target_qubits = 2;
  int depth = 3;
  std::uint64_t seed = 1;
  std::uint64_t unitary_stream = 0;  // replication / unitary index
  int iterations = 10;
  Backend backend;
  double learning_rate = 0.1;
  int threads = 1;
  OptimizationSpace space = OptimizationSpace::GateAngles;
  std::optional<UnitaryMatrix> target;        // default: Haar from the seed
  std::optional<ParamVector> initial_params;  // default: uniform [0, 2π)
};

/// Full tomography loop: per iteration a four-term-shift gradient, an Adam
/// update, then the recorded (post-update) cost, process fidelity against
/// the target, and the iteration wall time. Deterministic for a fixed
/// config, independent of the thread count.
std::vector<RunRecord> run_tomography(const TomographyConfig& config);

}  // namespace vqpt

#endif  // VQPT_TOMOGRAPHY_HPP

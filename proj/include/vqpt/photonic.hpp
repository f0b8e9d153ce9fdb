// SPDX-License-Identifier: Apache-2.0

#ifndef VQPT_PHOTONIC_HPP
#define VQPT_PHOTONIC_HPP

#include <cstdint>
#include <string_view>

#include "vqpt/clements.hpp"
#include "vqpt/haar.hpp"

namespace vqpt {

/// One-hot encoding of an n-qubit basis state: mode = integer value of the
/// bit string (qubit 0 most significant, ancilla least significant).
struct OneHotIndex {
  int qubit_count = 0;
  int mode = 0;
};

OneHotIndex encode(int qubit_count, std::string_view label);

/// Noise model for the simulated processor. Zero everywhere means exact
/// scattering. Phase jitter is drawn fresh for every evaluation (heater
/// thermal noise); the noisefloor is an additive per-mode offset in raw
/// units; intensity noise is a relative multiplicative fluctuation covering
/// residual effects such as mode mismatch and detector dark counts.
struct NoiseConfig {
  double phase_sigma = 0.0;            // radians, on every cell θ and φ
  double noisefloor_mean = 0.0;        // raw units
  double noisefloor_sigma = 0.0;       // raw units
  double intensity_noise_sigma = 0.0;  // relative
  std::uint64_t stream_id = 0;

  bool phase_noise_enabled() const { return phase_sigma > 0.0; }
  bool floor_enabled() const {
    return noisefloor_mean != 0.0 || noisefloor_sigma > 0.0;
  }
  bool intensity_noise_enabled() const { return intensity_noise_sigma > 0.0; }
  bool any_enabled() const {
    return phase_noise_enabled() || floor_enabled() ||
           intensity_noise_enabled();
  }
};

/// Non-negative per-mode probabilities summing to one.
struct IntensityDistribution {
  int mode_count = 0;
  RealVector probabilities;
};

/// Raw detector response for light fed into the given input mode: the
/// squared-modulus column of the reconstructed mesh, with optional phase
/// jitter (θ clamped to [0,π], φ wrapped), multiplicative intensity
/// fluctuation, and additive noisefloor offsets, applied in that order.
RealVector scatter_raw(const MeshProgram& mesh, const OneHotIndex& input,
                       const NoiseConfig& noise, SeededRng& rng);

/// Average of `samples` independent floor-only captures, the calibration
/// step performed before an experiment.
RealVector estimate_noisefloor(const NoiseConfig& noise, int mode_count,
                               int samples, SeededRng& rng);

/// Subtract the floor estimate, clamp negatives to zero, normalize to sum 1.
/// Throws DegenerateSignalError when nothing remains.
IntensityDistribution process_raw(const RealVector& raw,
                                  const RealVector& noisefloor_estimate);

/// Probability that the ancilla (least significant bit) reads 0: the summed
/// probability over even mode indices.
double ancilla_zero_probability(const IntensityDistribution& dist,
                                int qubit_count);

}  // namespace vqpt

#endif  // VQPT_PHOTONIC_HPP

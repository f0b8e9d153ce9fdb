// SPDX-License-Identifier: Apache-2.0

#include "vqpt/photonic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace vqpt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phi(double phi) {
  phi = std::fmod(phi, kTwoPi);
  if (phi < 0.0) {
    phi += kTwoPi;
  }
  return phi;
}

}  // namespace

OneHotIndex encode(int qubit_count, std::string_view label) {
  if (qubit_count < 1) {
    throw DomainError("encode: qubit_count must be >= 1");
  }
  if (static_cast<int>(label.size()) != qubit_count) {
    throw DomainError("encode: label length must equal qubit_count");
  }
  int mode = 0;
  for (char ch : label) {
    if (ch != '0' && ch != '1') {
      throw DomainError("encode: label must consist of '0'/'1'");
    }
    mode = (mode << 1) | (ch - '0');
  }
  return OneHotIndex{qubit_count, mode};
}

RealVector scatter_raw(const MeshProgram& mesh, const OneHotIndex& input,
                       const NoiseConfig& noise, SeededRng& rng) {
  validate_mesh(mesh);
  if ((Eigen::Index{1} << input.qubit_count) != mesh.mode_count) {
    throw ShapeError("scatter_raw: mesh must have 2^n modes");
  }
  if (input.mode < 0 || input.mode >= mesh.mode_count) {
    throw DomainError("scatter_raw: input mode out of range");
  }

  const MeshProgram* effective = &mesh;
  MeshProgram jittered;
  if (noise.phase_noise_enabled()) {
    jittered = mesh;
    for (UnitCell& cell : jittered.cells) {
      cell.theta = std::clamp(cell.theta + noise.phase_sigma * rng.gaussian(),
                              0.0, std::numbers::pi);
      cell.phi = wrap_phi(cell.phi + noise.phase_sigma * rng.gaussian());
    }
    effective = &jittered;
  }

  const UnitaryMatrix u = reconstruct(*effective);
  RealVector raw(mesh.mode_count);
  for (int k = 0; k < mesh.mode_count; ++k) {
    raw(k) = std::norm(u(k, input.mode));
  }
  if (noise.intensity_noise_enabled()) {
    for (int k = 0; k < mesh.mode_count; ++k) {
      raw(k) *= std::max(
          0.0, 1.0 + noise.intensity_noise_sigma * rng.gaussian());
    }
  }
  if (noise.floor_enabled()) {
    for (int k = 0; k < mesh.mode_count; ++k) {
      raw(k) += noise.noisefloor_mean + noise.noisefloor_sigma * rng.gaussian();
    }
  }
  return raw;
}

RealVector estimate_noisefloor(const NoiseConfig& noise, int mode_count,
                               int samples, SeededRng& rng) {
  if (mode_count < 1 || samples < 1) {
    throw DomainError("estimate_noisefloor: mode_count and samples >= 1");
  }
  RealVector sum = RealVector::Zero(mode_count);
  for (int s = 0; s < samples; ++s) {
    for (int k = 0; k < mode_count; ++k) {
      sum(k) +=
          noise.noisefloor_mean + noise.noisefloor_sigma * rng.gaussian();
    }
  }
  return sum / static_cast<double>(samples);
}

IntensityDistribution process_raw(const RealVector& raw,
                                  const RealVector& noisefloor_estimate) {
  if (raw.size() != noisefloor_estimate.size()) {
    throw ShapeError("process_raw: raw and floor estimate lengths differ");
  }
  RealVector corrected = (raw - noisefloor_estimate).cwiseMax(0.0);
  const double total = corrected.sum();
  if (!(total > 0.0)) {
    throw DegenerateSignalError(
        "process_raw: signal vanished after noisefloor subtraction");
  }
  IntensityDistribution dist;
  dist.mode_count = static_cast<int>(raw.size());
  dist.probabilities = corrected / total;
  return dist;
}

double ancilla_zero_probability(const IntensityDistribution& dist,
                                int qubit_count) {
  if ((Eigen::Index{1} << qubit_count) != dist.mode_count) {
    throw ShapeError("ancilla_zero_probability: mode_count must be 2^n");
  }
  double p = 0.0;
  for (int k = 0; k < dist.mode_count; k += 2) {
    p += dist.probabilities(k);
  }
  return p;
}

}  // namespace vqpt

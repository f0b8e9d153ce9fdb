// SPDX-License-Identifier: Apache-2.0

#ifndef VQPT_HAAR_HPP
#define VQPT_HAAR_HPP

#include <cstdint>
#include <random>

#include "vqpt/numerics.hpp"

namespace vqpt {

/// Deterministic random stream identified by (seed, stream_id). Identical
/// identifiers produce identical sequences on every run and under any thread
/// schedule. Gaussians come from a hand-rolled Box-Muller transform on top of
/// mt19937_64 so fixtures do not depend on the standard library's
/// implementation-defined normal_distribution.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64();
  /// Uniform double in [0, 1), 53 random bits.
  double uniform();
  double uniform(double lo, double hi);
  /// Standard normal via Box-Muller.
  double gaussian();
  /// Re and Im independently N(0, 1).
  Complex complex_gaussian();

  /// Independent child stream. Derivation depends only on this stream's
  /// identity, not on how much of it has been consumed.
  SeededRng child(std::uint64_t stream) const;

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_id_ = 0;
  std::uint64_t derived_ = 0;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Haar-random dim×dim unitary: QR of a complex Ginibre matrix with the
/// diagonal phase correction Λ = diag(R_ii/|R_ii|) applied as Q·Λ.
UnitaryMatrix haar_unitary(int dim, SeededRng& rng);

}  // namespace vqpt

#endif  // VQPT_HAAR_HPP

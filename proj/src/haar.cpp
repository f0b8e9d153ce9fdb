// SPDX-License-Identifier: Apache-2.0

#include "vqpt/haar.hpp"

#include <cmath>
#include <numbers>

namespace vqpt {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

SeededRng::SeededRng(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed),
      stream_id_(stream_id),
      derived_(splitmix64(seed + splitmix64(stream_id + 1))),
      engine_(derived_) {}

std::uint64_t SeededRng::next_u64() { return engine_(); }

double SeededRng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeededRng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

double SeededRng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1], log-safe
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

Complex SeededRng::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return Complex(re, im);
}

SeededRng SeededRng::child(std::uint64_t stream) const {
  return SeededRng(derived_, stream);
}

UnitaryMatrix haar_unitary(int dim, SeededRng& rng) {
  if (dim < 1) {
    throw DomainError("haar_unitary: dim must be >= 1");
  }
  ComplexMatrix g(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      g(r, c) = rng.complex_gaussian();
    }
  }
  QrFactors qr = qr_decompose(g);
  // Q alone is not Haar: fixing R's diagonal phases makes the factorization
  // unique and the resulting distribution left-invariant.
  ComplexMatrix u = qr.q;
  for (int c = 0; c < dim; ++c) {
    const Complex rcc = qr.r(c, c);
    const double mag = std::abs(rcc);
    const Complex phase = mag > 0.0 ? rcc / mag : Complex(1.0, 0.0);
    u.col(c) *= phase;
  }
  return UnitaryMatrix(std::move(u), 1e-12);
}

}  // namespace vqpt

// SPDX-License-Identifier: Apache-2.0

#ifndef VQPT_NUMERICS_HPP
#define VQPT_NUMERICS_HPP

#include <Eigen/Dense>
#include <complex>
#include <filesystem>

#include "vqpt/errors.hpp"

namespace vqpt {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// ‖U†U − I‖_F, the deviation of a square matrix from unitarity.
double unitarity_defect(const ComplexMatrix& m);

/// Square complex matrix with ‖U†U − I‖_F below tolerance, checked on
/// construction. Immutable afterwards.
class UnitaryMatrix {
 public:
  static constexpr double kDefaultTolerance = 1e-10;

  explicit UnitaryMatrix(ComplexMatrix m, double tolerance = kDefaultTolerance);

  Eigen::Index dim() const { return mat_.rows(); }
  const ComplexMatrix& matrix() const { return mat_; }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return mat_(r, c); }

  static UnitaryMatrix identity(Eigen::Index dim);

 private:
  ComplexMatrix mat_;
};

/// Normalized complex amplitude vector (Σ|a_i|² = 1 within tolerance).
class StateVector {
 public:
  explicit StateVector(ComplexVector v, double tolerance = 1e-10);

  Eigen::Index dim() const { return amps_.size(); }
  const ComplexVector& amplitudes() const { return amps_; }
  Complex operator[](Eigen::Index i) const { return amps_(i); }

 private:
  ComplexVector amps_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix dagger(const ComplexMatrix& a);

/// Kronecker product with a-major block ordering:
/// (a ⊗ b)[p·rows(b)+s, q·cols(b)+t] = a[p,q]·b[s,t].
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

struct QrFactors {
  ComplexMatrix q;  // unitary
  ComplexMatrix r;  // upper triangular
};

/// Householder QR of a square matrix; a = q·r within 1e-10.
QrFactors qr_decompose(const ComplexMatrix& a);

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Text fixture format: first line "rows cols", then one "re im" pair per
/// line in row-major order, 17 significant digits on write.
ComplexMatrix read_matrix(const std::filesystem::path& path);
void write_matrix(const std::filesystem::path& path, const ComplexMatrix& m);

}  // namespace vqpt

#endif  // VQPT_NUMERICS_HPP

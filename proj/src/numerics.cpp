// SPDX-License-Identifier: Apache-2.0

#include "vqpt/numerics.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace vqpt {

double unitarity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw ShapeError("unitarity_defect: matrix must be square");
  }
  ComplexMatrix gram = m.adjoint() * m;
  gram -= ComplexMatrix::Identity(m.rows(), m.cols());
  return gram.norm();
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m, double tolerance)
    : mat_(std::move(m)) {
  if (mat_.rows() < 1 || mat_.rows() != mat_.cols()) {
    throw ShapeError("UnitaryMatrix: matrix must be square and non-empty");
  }
  if (!mat_.allFinite()) {
    throw DomainError("UnitaryMatrix: entries must be finite");
  }
  const double defect = unitarity_defect(mat_);
  if (!(defect < tolerance)) {
    throw DomainError("UnitaryMatrix: not unitary, defect = " +
                      std::to_string(defect));
  }
}

UnitaryMatrix UnitaryMatrix::identity(Eigen::Index dim) {
  return UnitaryMatrix(ComplexMatrix::Identity(dim, dim));
}

StateVector::StateVector(ComplexVector v, double tolerance)
    : amps_(std::move(v)) {
  if (amps_.size() < 1) {
    throw ShapeError("StateVector: empty amplitude vector");
  }
  if (!amps_.allFinite()) {
    throw DomainError("StateVector: amplitudes must be finite");
  }
  const double norm2 = amps_.squaredNorm();
  if (std::abs(norm2 - 1.0) > tolerance) {
    throw DomainError("StateVector: not normalized, Σ|a|² = " +
                      std::to_string(norm2));
  }
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("matmul: inner dimensions differ (" +
                     std::to_string(a.cols()) + " vs " +
                     std::to_string(b.rows()) + ")");
  }
  return a * b;
}

ComplexMatrix dagger(const ComplexMatrix& a) { return a.adjoint(); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index p = 0; p < a.rows(); ++p) {
    for (Eigen::Index q = 0; q < a.cols(); ++q) {
      out.block(p * b.rows(), q * b.cols(), b.rows(), b.cols()) = a(p, q) * b;
    }
  }
  return out;
}

QrFactors qr_decompose(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw ShapeError("qr_decompose: matrix must be square");
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(a);
  QrFactors out;
  out.q = qr.householderQ();
  out.r = qr.matrixQR().triangularView<Eigen::Upper>();
  return out;
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("frobenius_distance: shapes differ");
  }
  return (a - b).norm();
}

ComplexMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open matrix file: " + path.string());
  }
  std::string line;
  long line_no = 0;
  auto next_line = [&]() -> std::string& {
    if (!std::getline(in, line)) {
      throw ConfigError(path.string() + ": unexpected end of file at line " +
                        std::to_string(line_no + 1));
    }
    ++line_no;
    return line;
  };

  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  {
    std::istringstream head(next_line());
    if (!(head >> rows >> cols) || rows < 1 || cols < 1) {
      throw ConfigError(path.string() + ":1: expected header \"rows cols\"");
    }
  }
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      std::istringstream entry(next_line());
      double re = 0.0;
      double im = 0.0;
      if (!(entry >> re >> im)) {
        throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                          ": expected \"re im\" entry");
      }
      m(r, c) = Complex(re, im);
    }
  }
  if (!m.allFinite()) {
    throw DomainError(path.string() + ": matrix contains non-finite entries");
  }
  return m;
}

void write_matrix(const std::filesystem::path& path, const ComplexMatrix& m) {
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot write matrix file: " + path.string());
  }
  out << m.rows() << ' ' << m.cols() << '\n';
  char buf[80];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g %.17g", m(r, c).real(),
                    m(r, c).imag());
      out << buf << '\n';
    }
  }
  if (!out) {
    throw ConfigError("write failed: " + path.string());
  }
}

}  // namespace vqpt

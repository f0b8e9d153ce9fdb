// SPDX-License-Identifier: Apache-2.0

#include "vqpt/clements.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

namespace vqpt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kNullTolerance = 1e-12;  // entry treated as already null

double wrap_phi(double phi) {
  phi = std::fmod(phi, kTwoPi);
  if (phi < 0.0) {
    phi += kTwoPi;
  }
  return phi;
}

// Left-multiply by the cell acting on rows (p, p+1).
void apply_cell_left(ComplexMatrix& a, int p, double theta, double phi) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Complex e = std::polar(1.0, phi);
  const Eigen::RowVectorXcd top = (e * c) * a.row(p) - s * a.row(p + 1);
  const Eigen::RowVectorXcd bottom = (e * s) * a.row(p) + c * a.row(p + 1);
  a.row(p) = top;
  a.row(p + 1) = bottom;
}

// Right-multiply by the inverse (adjoint) cell acting on columns (p, p+1).
void apply_cell_inverse_right(ComplexMatrix& a, int p, double theta,
                              double phi) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Complex e = std::polar(1.0, -phi);
  const ComplexVector left = (e * c) * a.col(p) - s * a.col(p + 1);
  const ComplexVector right = (e * s) * a.col(p) + c * a.col(p + 1);
  a.col(p) = left;
  a.col(p + 1) = right;
}

// Cell parameters nulling a(row, col) by a column operation on (col, col+1):
// e^{-iφ} cos(θ/2)·a(row,col) − sin(θ/2)·a(row,col+1) = 0.
UnitCell solve_right_nulling(const ComplexMatrix& a, int row, int col) {
  UnitCell cell;
  cell.m1 = col;
  cell.m2 = col + 1;
  const Complex u = a(row, col);
  const Complex v = a(row, col + 1);
  if (std::abs(u) <= kNullTolerance) {
    cell.theta = 0.0;
  } else if (std::abs(v) <= kNullTolerance) {
    cell.theta = std::numbers::pi;
  } else {
    cell.theta = 2.0 * std::atan2(std::abs(u), std::abs(v));
    cell.phi = wrap_phi(std::arg(u) - std::arg(v));
  }
  return cell;
}

// Cell parameters nulling a(row, col) by a row operation on (row−1, row):
// e^{iφ} sin(θ/2)·a(row−1,col) + cos(θ/2)·a(row,col) = 0.
UnitCell solve_left_nulling(const ComplexMatrix& a, int row, int col) {
  UnitCell cell;
  cell.m1 = row - 1;
  cell.m2 = row;
  const Complex u = a(row, col);
  const Complex v = a(row - 1, col);
  if (std::abs(u) <= kNullTolerance) {
    cell.theta = 0.0;
  } else if (std::abs(v) <= kNullTolerance) {
    cell.theta = std::numbers::pi;
  } else {
    cell.theta = 2.0 * std::atan2(std::abs(u), std::abs(v));
    cell.phi = wrap_phi(std::arg(-u) - std::arg(v));
  }
  return cell;
}

}  // namespace

void validate_mesh(const MeshProgram& mesh) {
  if (mesh.mode_count < 1) {
    throw ShapeError("mesh: mode_count must be >= 1");
  }
  if (mesh.output_phases.size() != mesh.mode_count) {
    throw ShapeError("mesh: output phase row length must equal mode_count");
  }
  for (int k = 0; k < mesh.mode_count; ++k) {
    if (std::abs(std::abs(mesh.output_phases(k)) - 1.0) > 1e-10) {
      throw DomainError("mesh: output phases must have unit modulus");
    }
  }
  for (const UnitCell& cell : mesh.cells) {
    if (cell.m2 != cell.m1 + 1 || cell.m1 < 0 || cell.m2 >= mesh.mode_count) {
      throw DomainError("mesh: cell modes must be adjacent and in range");
    }
    if (cell.theta < 0.0 || cell.theta > std::numbers::pi) {
      throw DomainError("mesh: cell theta outside [0, pi]");
    }
    if (cell.phi < 0.0 || cell.phi >= kTwoPi) {
      throw DomainError("mesh: cell phi outside [0, 2pi)");
    }
  }
}

UnitaryMatrix cell_matrix(const UnitCell& cell, int mode_count) {
  if (cell.m1 < 0 || cell.m2 != cell.m1 + 1 || cell.m2 >= mode_count) {
    throw DomainError("cell_matrix: cell modes out of range");
  }
  ComplexMatrix m = ComplexMatrix::Identity(mode_count, mode_count);
  const double c = std::cos(cell.theta / 2.0);
  const double s = std::sin(cell.theta / 2.0);
  const Complex e = std::polar(1.0, cell.phi);
  m(cell.m1, cell.m1) = e * c;
  m(cell.m1, cell.m2) = -s;
  m(cell.m2, cell.m1) = e * s;
  m(cell.m2, cell.m2) = c;
  return UnitaryMatrix(std::move(m));
}

MeshProgram decompose(const UnitaryMatrix& u) {
  const int m = static_cast<int>(u.dim());
  ComplexMatrix a = u.matrix();

  std::vector<UnitCell> left_ops;   // chronological application order
  std::vector<UnitCell> right_ops;  // chronological application order

  // Null the lower triangle one anti-diagonal at a time, starting from the
  // bottom-left corner. Odd diagonals use column ops, even diagonals row ops;
  // the interleaving keeps previously created zeros intact.
  for (int diag = 1; diag < m; ++diag) {
    if (diag % 2 == 1) {
      for (int k = 0; k < diag; ++k) {
        const int row = m - 1 - k;
        const int col = diag - 1 - k;
        UnitCell cell = solve_right_nulling(a, row, col);
        apply_cell_inverse_right(a, cell.m1, cell.theta, cell.phi);
        right_ops.push_back(cell);
      }
    } else {
      for (int k = 1; k <= diag; ++k) {
        const int row = m + k - diag - 1;
        const int col = k - 1;
        UnitCell cell = solve_left_nulling(a, row, col);
        apply_cell_left(a, cell.m1, cell.theta, cell.phi);
        left_ops.push_back(cell);
      }
    }
  }

  // a is now diagonal up to roundoff.
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) {
      if (r != c && std::abs(a(r, c)) > 1e-8) {
        throw DomainError("decompose: nulling failed to reach diagonal form");
      }
    }
  }

  ComplexVector d(m);
  for (int k = 0; k < m; ++k) {
    d(k) = a(k, k) / std::abs(a(k, k));
  }

  // At this point U = L1⁻¹···Lq⁻¹ · diag(d) · R_r···R_1.  Commute each left
  // inverse through the diagonal: T⁻¹·D = D'·T' with the same θ and adjusted
  // φ and phases, so all cells end up to the right of D.
  std::vector<UnitCell> cells;
  cells.reserve(m * (m - 1) / 2);
  for (auto it = left_ops.rbegin(); it != left_ops.rend(); ++it) {
    UnitCell cell = *it;
    const int p = cell.m1;
    const double s = std::sin(cell.theta / 2.0);
    const double phi_old = cell.phi;
    if (s == 0.0) {
      d(p) *= std::polar(1.0, -phi_old);
      cell.phi = 0.0;
    } else {
      const Complex dp = d(p);
      const Complex dq = d(p + 1);
      cell.phi = wrap_phi(std::arg(-dp / dq));
      d(p) = -std::polar(1.0, -phi_old) * dq;
    }
    cells.insert(cells.begin(), cell);
  }
  for (auto it = right_ops.rbegin(); it != right_ops.rend(); ++it) {
    cells.push_back(*it);
  }

  MeshProgram mesh;
  mesh.mode_count = m;
  mesh.cells = std::move(cells);
  mesh.output_phases = std::move(d);
  validate_mesh(mesh);
  return mesh;
}

UnitaryMatrix reconstruct(const MeshProgram& mesh) {
  validate_mesh(mesh);
  ComplexMatrix m =
      ComplexMatrix::Identity(mesh.mode_count, mesh.mode_count);
  // Accumulate the ordered product cells[0]·cells[1]·... by left-multiplying
  // in reverse, touching only two rows per cell.
  for (auto it = mesh.cells.rbegin(); it != mesh.cells.rend(); ++it) {
    apply_cell_left(m, it->m1, it->theta, it->phi);
  }
  for (int k = 0; k < mesh.mode_count; ++k) {
    m.row(k) *= mesh.output_phases(k);
  }
  return UnitaryMatrix(std::move(m));
}

UnitaryMatrix reconstruct_relaxed(const MeshProgram& layout,
                                  const std::vector<double>& raw_params) {
  const std::size_t expected =
      2 * layout.cells.size() + static_cast<std::size_t>(layout.mode_count);
  if (raw_params.size() != expected) {
    throw ArityError("reconstruct_relaxed: expected " +
                     std::to_string(expected) + " parameters, got " +
                     std::to_string(raw_params.size()));
  }
  ComplexMatrix m =
      ComplexMatrix::Identity(layout.mode_count, layout.mode_count);
  for (std::size_t i = layout.cells.size(); i-- > 0;) {
    apply_cell_left(m, layout.cells[i].m1, raw_params[2 * i],
                    raw_params[2 * i + 1]);
  }
  const std::size_t phase_base = 2 * layout.cells.size();
  for (int k = 0; k < layout.mode_count; ++k) {
    m.row(k) *= std::polar(1.0, raw_params[phase_base + k]);
  }
  return UnitaryMatrix(std::move(m));
}

MeshProgram strip_output_phases(MeshProgram mesh) {
  mesh.output_phases = ComplexVector::Ones(mesh.mode_count);
  return mesh;
}

UnitaryMatrix absorb_input_permutation(const UnitaryMatrix& u, int input_mode) {
  if (input_mode < 0 || input_mode >= u.dim()) {
    throw DomainError("absorb_input_permutation: mode index out of range");
  }
  ComplexMatrix m = u.matrix();
  m.col(0).swap(m.col(input_mode));
  return UnitaryMatrix(std::move(m));
}

void write_mesh(const std::filesystem::path& path, const MeshProgram& mesh) {
  validate_mesh(mesh);
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot write mesh file: " + path.string());
  }
  out << mesh.mode_count << ' ' << mesh.cells.size() << '\n';
  char buf[96];
  for (const UnitCell& cell : mesh.cells) {
    std::snprintf(buf, sizeof(buf), "%d %.17g %.17g", cell.m1, cell.theta,
                  cell.phi);
    out << buf << '\n';
  }
  for (int k = 0; k < mesh.mode_count; ++k) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g", mesh.output_phases(k).real(),
                  mesh.output_phases(k).imag());
    out << (k ? " " : "") << buf;
  }
  out << '\n';
  if (!out) {
    throw ConfigError("write failed: " + path.string());
  }
}

MeshProgram read_mesh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open mesh file: " + path.string());
  }
  MeshProgram mesh;
  std::size_t cell_count = 0;
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
  {
    std::istringstream head(next_line());
    if (!(head >> mesh.mode_count >> cell_count) || mesh.mode_count < 1) {
      throw ConfigError(path.string() + ":1: expected header \"m cell_count\"");
    }
  }
  mesh.cells.resize(cell_count);
  for (std::size_t i = 0; i < cell_count; ++i) {
    std::istringstream row(next_line());
    UnitCell& cell = mesh.cells[i];
    if (!(row >> cell.m1 >> cell.theta >> cell.phi)) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                        ": expected \"m1 theta phi\"");
    }
    cell.m2 = cell.m1 + 1;
    cell.phi = wrap_phi(cell.phi);
  }
  mesh.output_phases.resize(mesh.mode_count);
  {
    std::istringstream row(next_line());
    for (int k = 0; k < mesh.mode_count; ++k) {
      double re = 0.0;
      double im = 0.0;
      if (!(row >> re >> im)) {
        throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                          ": expected " + std::to_string(mesh.mode_count) +
                          " \"re im\" output phases");
      }
      mesh.output_phases(k) = Complex(re, im);
    }
  }
  validate_mesh(mesh);
  return mesh;
}

}  // namespace vqpt

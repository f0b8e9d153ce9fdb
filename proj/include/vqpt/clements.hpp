// SPDX-License-Identifier: Apache-2.0

#ifndef VQPT_CLEMENTS_HPP
#define VQPT_CLEMENTS_HPP

#include <filesystem>
#include <vector>

#include "vqpt/numerics.hpp"

namespace vqpt {

/// One mesh unit cell on adjacent modes (m1, m2 = m1+1): external phase
/// shifter followed by a tunable beam splitter. As an m×m matrix it is the
/// identity except for the 2×2 block
///   [ e^{iφ} cos(θ/2)   −sin(θ/2) ]
///   [ e^{iφ} sin(θ/2)    cos(θ/2) ]
/// with θ ∈ [0, π] (reflectivity) and φ ∈ [0, 2π).
struct UnitCell {
  int m1 = 0;
  int m2 = 1;
  double theta = 0.0;
  double phi = 0.0;
};

/// Rectangular mesh program: ordered unit cells plus the output phase row D.
/// A full decomposition of an m-mode unitary has exactly m(m−1)/2 cells and
/// satisfies U = diag(D) · cells[0] · cells[1] · ... .
struct MeshProgram {
  int mode_count = 0;
  std::vector<UnitCell> cells;
  ComplexVector output_phases;  // |D_k| = 1
};

/// Throws unless cell indices, angle ranges, and |D_k| = 1 all hold.
void validate_mesh(const MeshProgram& mesh);

UnitaryMatrix cell_matrix(const UnitCell& cell, int mode_count);

/// Decomposes a unitary into a mesh program by nulling the lower triangle
/// diagonal-by-diagonal, alternating column operations (cells merged from
/// the right) and row operations (cells commuted through the diagonal
/// afterwards). Deterministic: the cell layout depends only on the mode
/// count, and under-determined phases at θ ∈ {0, π} are set to zero.
MeshProgram decompose(const UnitaryMatrix& u);

/// diag(D) times the ordered cell product.
UnitaryMatrix reconstruct(const MeshProgram& mesh);

/// Product of the cell sequence at explicitly given raw (θ, φ) values plus
/// output phase angles, without range canonicalization. Layout (mode pairs
/// and cell order) is taken from the mesh; raw_params holds θ₀,φ₀,θ₁,φ₁,...
/// followed by mode_count output phase angles.
UnitaryMatrix reconstruct_relaxed(const MeshProgram& layout,
                                  const std::vector<double>& raw_params);

/// Replaces D by all-ones: the local processor cannot set output phases.
/// Output intensity distributions are unchanged for every input.
MeshProgram strip_output_phases(MeshProgram mesh);

/// U·P_j with P_j exchanging columns 0 and j, so driving physical input
/// mode 0 reproduces the response of mode j.
UnitaryMatrix absorb_input_permutation(const UnitaryMatrix& u, int input_mode);

/// Text format: header "m cell_count", one "m1 theta phi" line per cell,
/// then one line of m output phases as "re im" pairs.
void write_mesh(const std::filesystem::path& path, const MeshProgram& mesh);
MeshProgram read_mesh(const std::filesystem::path& path);

}  // namespace vqpt

#endif  // VQPT_CLEMENTS_HPP

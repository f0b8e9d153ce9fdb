// SPDX-License-Identifier: Apache-2.0

#ifndef VQPT_CIRCUIT_HPP
#define VQPT_CIRCUIT_HPP

#include <memory>
#include <vector>

#include "vqpt/numerics.hpp"

namespace vqpt {

// Bit convention used throughout: qubit 0 is the most significant bit of the
// basis-state label, the ancilla (when present) is the last qubit and thus
// the least significant bit. The integer value of a ket label is its basis
// index.

enum class GateKind {
  RZ,
  RY,
  RX,
  H,
  X,
  CX,
  ControlledU,      // payload applied to the target register when ancilla = 1
  OpenControlledU,  // payload applied when ancilla = 0
};

bool is_rotation(GateKind kind);

struct Gate {
  GateKind kind;
  int target = 0;       // qubit index; CX target
  int control = -1;     // CX control, or the ancilla for controlled payloads
  int param_index = -1; // source angle slot for parameterized rotations
  double angle = 0.0;   // fixed angle when param_index < 0
  std::shared_ptr<const UnitaryMatrix> payload;  // controlled-U only

  static Gate rotation(GateKind kind, int target, int param_index);
  static Gate rotation_fixed(GateKind kind, int target, double angle);
  static Gate hadamard(int target);
  static Gate pauli_x(int target);
  static Gate cx(int control, int target);
  /// Controlled payload on the full target register, control on the ancilla
  /// (last qubit). control_value selects closed (1) or open (0) control.
  static Gate controlled_payload(UnitaryMatrix u, int control_value);
};

/// Ordered gate list over a fixed number of qubits.
class Circuit {
 public:
  explicit Circuit(int qubit_count);

  void add(Gate gate);

  int qubit_count() const { return qubit_count_; }
  int param_count() const { return param_count_; }
  const std::vector<Gate>& gates() const { return gates_; }

 private:
  int qubit_count_;
  int param_count_ = 0;
  std::vector<Gate> gates_;
};

using ParamVector = std::vector<double>;

enum class EntanglerPattern {
  Alternating,  // CX pairs start at qubit 0 for even blocks, 1 for odd
  FixedEven,    // every block starts at qubit 0
};

struct AnsatzSpec {
  int target_qubits = 2;
  int depth = 3;
  EntanglerPattern entangler = EntanglerPattern::Alternating;
};

/// Hardware-efficient ansatz: per block, RZ-RY-RZ on every target qubit
/// (three fresh parameters each) followed by CX entanglers on neighbor
/// pairs. With the alternating pattern the pair offset follows the block
/// parity; when the odd offset leaves no pair (t = 2) the block falls back
/// to CX(0,1) so every block stays entangling. Total parameters: 3·t·d.
Circuit build_ansatz(const AnsatzSpec& spec);

/// Dense 2ⁿ×2ⁿ unitary of the circuit at the given parameter values.
UnitaryMatrix compile(const Circuit& circuit, const ParamVector& params);

/// Controlled version of u with the control on an added least-significant
/// ancilla: applies u on the target register exactly when the ancilla equals
/// control_value.
UnitaryMatrix controlled(const UnitaryMatrix& u, int control_value);

/// Hadamard-test circuit around a known branch pair: H on the ancilla, u_a
/// applied under closed control, u_b under open control, H again.
/// P(ancilla = 0 | input i) = (1 + Re⟨i|u_a† u_b|i⟩)/2.
UnitaryMatrix hadamard_test_unitary(const UnitaryMatrix& u_closed,
                                    const UnitaryMatrix& u_open);

/// Full pre-measurement tomography unitary
/// H_a · openControlled(compile(ansatz, params)) · controlled(u_target) · H_a.
UnitaryMatrix build_tomography_unitary(const UnitaryMatrix& u_target,
                                       const Circuit& ansatz,
                                       const ParamVector& params);

}  // namespace vqpt

#endif  // VQPT_CIRCUIT_HPP

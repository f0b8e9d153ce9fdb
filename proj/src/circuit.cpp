// SPDX-License-Identifier: Apache-2.0

#include "vqpt/circuit.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace vqpt {

namespace {

constexpr Complex kI{0.0, 1.0};

ComplexMatrix rz_matrix(double theta) {
  ComplexMatrix m(2, 2);
  m << std::exp(-kI * (theta / 2.0)), 0.0, 0.0, std::exp(kI * (theta / 2.0));
  return m;
}

ComplexMatrix ry_matrix(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  ComplexMatrix m(2, 2);
  m << c, -s, s, c;
  return m;
}

ComplexMatrix rx_matrix(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  ComplexMatrix m(2, 2);
  m << c, -kI * s, -kI * s, c;
  return m;
}

ComplexMatrix h_matrix() {
  const double r = 1.0 / std::sqrt(2.0);
  ComplexMatrix m(2, 2);
  m << r, r, r, -r;
  return m;
}

ComplexMatrix x_matrix() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix projector(int value) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(value, value) = 1.0;
  return m;
}

Eigen::Index pow2(int n) { return Eigen::Index{1} << n; }

bool is_power_of_two(Eigen::Index v) { return v >= 1 && (v & (v - 1)) == 0; }

// I_{2^q} ⊗ g ⊗ I_{2^(n-1-q)}; qubit 0 is the most significant bit.
ComplexMatrix embed_single(const ComplexMatrix& g, int qubit, int n) {
  ComplexMatrix left = ComplexMatrix::Identity(pow2(qubit), pow2(qubit));
  ComplexMatrix right =
      ComplexMatrix::Identity(pow2(n - 1 - qubit), pow2(n - 1 - qubit));
  return kron(kron(left, g), right);
}

ComplexMatrix rotation_matrix(GateKind kind, double angle) {
  switch (kind) {
    case GateKind::RZ:
      return rz_matrix(angle);
    case GateKind::RY:
      return ry_matrix(angle);
    case GateKind::RX:
      return rx_matrix(angle);
    default:
      throw DomainError("rotation_matrix: gate is not a rotation");
  }
}

ComplexMatrix gate_matrix(const Gate& gate, int n, const ParamVector& params) {
  switch (gate.kind) {
    case GateKind::RZ:
    case GateKind::RY:
    case GateKind::RX: {
      const double angle =
          gate.param_index >= 0 ? params[gate.param_index] : gate.angle;
      return embed_single(rotation_matrix(gate.kind, angle), gate.target, n);
    }
    case GateKind::H:
      return embed_single(h_matrix(), gate.target, n);
    case GateKind::X:
      return embed_single(x_matrix(), gate.target, n);
    case GateKind::CX:
      return embed_single(projector(0), gate.control, n) +
             embed_single(projector(1), gate.control, n) *
                 embed_single(x_matrix(), gate.target, n);
    case GateKind::ControlledU:
    case GateKind::OpenControlledU: {
      if (gate.control != n - 1) {
        throw ShapeError("controlled payload: control must be the ancilla");
      }
      if (gate.payload->dim() != pow2(n - 1)) {
        throw ShapeError("controlled payload: dimension mismatch");
      }
      const int value = gate.kind == GateKind::ControlledU ? 1 : 0;
      return controlled(*gate.payload, value).matrix();
    }
  }
  throw DomainError("gate_matrix: unknown gate kind");
}

}  // namespace

bool is_rotation(GateKind kind) {
  return kind == GateKind::RZ || kind == GateKind::RY || kind == GateKind::RX;
}

Gate Gate::rotation(GateKind kind, int target, int param_index) {
  if (!is_rotation(kind)) {
    throw DomainError("Gate::rotation: kind must be RZ/RY/RX");
  }
  Gate g;
  g.kind = kind;
  g.target = target;
  g.param_index = param_index;
  return g;
}

Gate Gate::rotation_fixed(GateKind kind, int target, double angle) {
  if (!is_rotation(kind)) {
    throw DomainError("Gate::rotation_fixed: kind must be RZ/RY/RX");
  }
  Gate g;
  g.kind = kind;
  g.target = target;
  g.angle = angle;
  return g;
}

Gate Gate::hadamard(int target) {
  Gate g;
  g.kind = GateKind::H;
  g.target = target;
  return g;
}

Gate Gate::pauli_x(int target) {
  Gate g;
  g.kind = GateKind::X;
  g.target = target;
  return g;
}

Gate Gate::cx(int control, int target) {
  if (control == target) {
    throw DomainError("Gate::cx: control and target must differ");
  }
  Gate g;
  g.kind = GateKind::CX;
  g.control = control;
  g.target = target;
  return g;
}

Gate Gate::controlled_payload(UnitaryMatrix u, int control_value) {
  Gate g;
  g.kind = control_value == 1 ? GateKind::ControlledU : GateKind::OpenControlledU;
  g.payload = std::make_shared<const UnitaryMatrix>(std::move(u));
  return g;
}

Circuit::Circuit(int qubit_count) : qubit_count_(qubit_count) {
  if (qubit_count < 1) {
    throw DomainError("Circuit: qubit_count must be >= 1");
  }
}

void Circuit::add(Gate gate) {
  auto check_index = [this](int q, const char* what) {
    if (q < 0 || q >= qubit_count_) {
      throw DomainError(std::string("Circuit::add: ") + what +
                        " index out of range");
    }
  };
  if (gate.kind == GateKind::ControlledU ||
      gate.kind == GateKind::OpenControlledU) {
    // Payload spans qubits 0..n-2; pin the control to the ancilla.
    gate.control = qubit_count_ - 1;
    if (!gate.payload) {
      throw DomainError("Circuit::add: controlled gate without payload");
    }
  } else {
    check_index(gate.target, "target");
    if (gate.kind == GateKind::CX) {
      check_index(gate.control, "control");
      if (gate.control == gate.target) {
        throw DomainError("Circuit::add: control equals target");
      }
    }
  }
  if (gate.param_index >= 0) {
    param_count_ = std::max(param_count_, gate.param_index + 1);
  }
  gates_.push_back(std::move(gate));
}

Circuit build_ansatz(const AnsatzSpec& spec) {
  if (spec.target_qubits < 1 || spec.depth < 1) {
    throw DomainError("build_ansatz: target_qubits and depth must be >= 1");
  }
  const int t = spec.target_qubits;
  Circuit circ(t);
  int p = 0;
  for (int block = 0; block < spec.depth; ++block) {
    for (int q = 0; q < t; ++q) {
      circ.add(Gate::rotation(GateKind::RZ, q, p++));
      circ.add(Gate::rotation(GateKind::RY, q, p++));
      circ.add(Gate::rotation(GateKind::RZ, q, p++));
    }
    int start = 0;
    if (spec.entangler == EntanglerPattern::Alternating) {
      start = block % 2;
      if (start + 1 >= t) {
        start = 0;  // keep two-qubit circuits entangling in every block
      }
    }
    for (int q = start; q + 1 < t; q += 2) {
      circ.add(Gate::cx(q, q + 1));
    }
  }
  return circ;
}

UnitaryMatrix compile(const Circuit& circuit, const ParamVector& params) {
  if (static_cast<int>(params.size()) != circuit.param_count()) {
    throw ArityError("compile: expected " +
                     std::to_string(circuit.param_count()) + " parameters, got " +
                     std::to_string(params.size()));
  }
  const int n = circuit.qubit_count();
  ComplexMatrix u = ComplexMatrix::Identity(pow2(n), pow2(n));
  for (const Gate& g : circuit.gates()) {
    u = gate_matrix(g, n, params) * u;
  }
  return UnitaryMatrix(std::move(u));
}

UnitaryMatrix controlled(const UnitaryMatrix& u, int control_value) {
  if (control_value != 0 && control_value != 1) {
    throw DomainError("controlled: control_value must be 0 or 1");
  }
  if (!is_power_of_two(u.dim())) {
    throw ShapeError("controlled: payload dimension must be a power of two");
  }
  ComplexMatrix eye = ComplexMatrix::Identity(u.dim(), u.dim());
  ComplexMatrix full = kron(u.matrix(), projector(control_value)) +
                       kron(eye, projector(1 - control_value));
  return UnitaryMatrix(std::move(full));
}

UnitaryMatrix hadamard_test_unitary(const UnitaryMatrix& u_closed,
                                    const UnitaryMatrix& u_open) {
  if (u_closed.dim() != u_open.dim()) {
    throw ShapeError("hadamard_test_unitary: branch dimensions differ");
  }
  ComplexMatrix ha =
      kron(ComplexMatrix::Identity(u_closed.dim(), u_closed.dim()), h_matrix());
  ComplexMatrix w = ha * controlled(u_open, 0).matrix() *
                    controlled(u_closed, 1).matrix() * ha;
  return UnitaryMatrix(std::move(w));
}

UnitaryMatrix build_tomography_unitary(const UnitaryMatrix& u_target,
                                       const Circuit& ansatz,
                                       const ParamVector& params) {
  if (u_target.dim() != pow2(ansatz.qubit_count())) {
    throw ShapeError("build_tomography_unitary: target dimension must be 2^t");
  }
  return hadamard_test_unitary(u_target, compile(ansatz, params));
}

}  // namespace vqpt

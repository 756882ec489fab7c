// Copyright 2026 The tetris-adapt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include "tetris/generator.hpp"
#include "tetris/statevector.hpp"

namespace tetris {

enum class GateKind { kCnot, kH, kX, kRx, kRy, kRz };

std::string_view to_string(GateKind k);

/// Rotations are R_a(angle) = exp(-i*angle*a/2). For CNOT, q0 is the control.
struct Gate {
  GateKind kind = GateKind::kH;
  int q0 = 0;
  int q1 = -1;
  double angle = 0.0;
  /// Angle depends on a variational parameter; never dropped as zero.
  bool parametric = false;

  bool is_rotation() const {
    return kind == GateKind::kRx || kind == GateKind::kRy || kind == GateKind::kRz;
  }
  bool acts_on(int q) const { return q0 == q || q1 == q; }
};

struct Circuit {
  int qubit_count = 0;
  std::vector<Gate> gates;

  void append(const Circuit& other);
  int cnot_count() const;
};

struct ResourceReport {
  int cnot_count = 0;
  int depth = 0;
  int gate_count = 0;
};

/// exp(theta * i * rate * S) for a single string S: basis change, CNOT
/// ladder over the ascending support onto the largest qubit, Rz, and the
/// mirror image. Uses 2(w-1) CNOTs for weight w.
Circuit compile_pauli_rotation(const PauliKey& key, double rate, double theta, int qubit_count);
/// Same for a one-term generator i*r*S; throws std::invalid_argument otherwise.
Circuit compile_pauli_rotation(const PauliSum& g, double theta);

/// exp(theta * (i/2)(X_iY_j - Y_iX_j)) with two CNOTs.
Circuit compile_qe_single(int i, int j, double theta, int qubit_count);

/// exp(theta * g) with g the 8-string double on (i, j, k, l), thirteen CNOTs.
/// Exact up to the global phase exp(-i*pi/4).
Circuit compile_qe_double(int i, int j, int k, int l, double theta, int qubit_count);

/// Template circuit for a pool operator at parameter value theta.
Circuit compile_operator(const PoolOperator& op, double theta, int qubit_count);

/// Back-to-back cancellation to a fixpoint: identical CNOT pairs, H-H and X-X
/// pairs, and merged same-axis rotations on a qubit.
Circuit cancel_adjacent(const Circuit& c);

/// ASAP scheduling with unit duration per gate.
ResourceReport schedule_depth(const Circuit& c);

/// Operator circuits concatenated in ansatz order, cancelled, then scheduled.
/// Disjoint consecutive unitaries always overlap under ASAP scheduling;
/// `concurrent_layers` is carried for reporting only.
ResourceReport ansatz_report(const Ansatz& ansatz, bool concurrent_layers = true);
Circuit ansatz_circuit(const Ansatz& ansatz);

void apply_gate(StateVector& state, const Gate& g);
void apply_circuit(StateVector& state, const Circuit& c);

/// One gate per line: "<KIND> <q0> [<q1>] [<angle>]".
std::string to_netlist(const Circuit& c);
std::string report_to_json(const ResourceReport& r);

}  // namespace tetris

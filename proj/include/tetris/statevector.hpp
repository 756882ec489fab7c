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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tetris/chem.hpp"
#include "tetris/generator.hpp"
#include "tetris/pauli.hpp"

namespace tetris {

/// 2^n amplitudes. Bit q of an amplitude index is the state of qubit q; kets
/// render qubit 0 first, so index 0b0011 on 4 qubits is |1100>.
class StateVector {
 public:
  StateVector() = default;
  /// |0...0>.
  explicit StateVector(int qubit_count);
  StateVector(int qubit_count, std::vector<cplx> amplitudes);

  /// Computational basis state from an occupation string, qubit 0 first.
  static StateVector basis(std::string_view bits);

  int qubit_count() const { return n_; }
  std::size_t dimension() const { return amps_.size(); }
  std::span<cplx> amplitudes() { return amps_; }
  std::span<const cplx> amplitudes() const { return amps_; }
  cplx& operator[](std::size_t i) { return amps_[i]; }
  const cplx& operator[](std::size_t i) const { return amps_[i]; }

  cplx amplitude(std::string_view bits) const { return amps_[index_of(bits)]; }

  double norm() const;
  void normalize();

  std::string ket(std::size_t index) const;
  static std::size_t index_of(std::string_view bits);

 private:
  int n_ = 0;
  std::vector<cplx> amps_;
};

/// exp(i*angle*S) applied in place with paired-amplitude updates.
void apply_pauli_rotation(StateVector& state, const PauliKey& key, double angle);

/// state <- exp(theta*g) state.
void apply_generator_exp(StateVector& state, const Generator& g, double theta);
/// Validating form; throws UnsupportedGenerator for non-commuting terms.
StateVector apply_generator_exp(StateVector state, const PauliSum& g, double theta);

/// out <- s * in for a sum of Pauli strings.
void apply_pauli_sum(const PauliSum& s, const StateVector& in, StateVector& out);

/// Hermitian operator compiled for repeated application: terms are grouped
/// by X-mask and each group's diagonal is tabulated when it fits the budget.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  /// Throws std::invalid_argument if `h` is not hermitian.
  explicit HermitianOperator(const PauliSum& h, double constant = 0.0);

  int qubit_count() const { return n_; }
  double constant() const { return constant_; }

  /// out <- (H - constant) in; the constant is not applied.
  void apply(const StateVector& in, StateVector& out) const;
  /// <psi|H|psi> + constant.
  double expectation(const StateVector& psi) const;

 private:
  struct Group {
    QubitMask x = 0;
    std::vector<std::pair<QubitMask, cplx>> zterms;  // coefficient includes i^{#Y}
    std::vector<cplx> diagonal;                      // empty when not tabulated
  };
  cplx group_diagonal(const Group& g, std::size_t b) const;

  int n_ = 0;
  double constant_ = 0.0;
  std::vector<Group> groups_;
};

/// <psi|h|psi>; throws if h is not hermitian.
double expectation(const StateVector& state, const PauliSum& h);
/// Energy including the constant offset.
double energy(const StateVector& state, const QubitHamiltonian& h);

/// d/dtheta <psi|exp(-theta p) H exp(theta p)|psi> at 0, i.e. <psi|[H, p]|psi>.
double gradient_at_zero(const StateVector& state, const PauliSum& h, const PauliSum& p);

/// 2 Re <h_psi| g |psi> where h_psi = H psi was computed once for many g.
double commutator_expectation(const StateVector& h_psi, const StateVector& psi,
                              const Generator& g);

cplx overlap(const StateVector& a, const StateVector& b);

/// Number of amplitudes with magnitude >= floor.
int count_determinants(const StateVector& state, double floor = 1e-3);

/// Product ansatz exp(theta_N g_N) ... exp(theta_1 g_1)|reference>.
struct Ansatz {
  std::string reference;
  std::vector<PoolOperator> operators;
  std::vector<double> parameters;

  std::size_t size() const { return operators.size(); }
};

/// Applies operators in list order (the first entry acts first).
StateVector prepare(const Ansatz& ansatz);
StateVector prepare(const Ansatz& ansatz, std::span<const double> parameters);

/// Energy and its gradient for a fixed operator sequence. Evaluations use
/// private state vectors, so one objective may serve concurrent callers.
class AnsatzObjective {
 public:
  AnsatzObjective(const QubitHamiltonian& h, std::string reference,
                  std::vector<PoolOperator> operators);
  AnsatzObjective(std::shared_ptr<const HermitianOperator> h, std::string reference,
                  std::vector<PoolOperator> operators);

  std::size_t size() const { return ops_.size(); }
  double energy(std::span<const double> theta) const;
  /// Two-sweep adjoint gradient; returns the energy as well.
  double energy_and_gradient(std::span<const double> theta, std::span<double> grad) const;

 private:
  std::shared_ptr<const HermitianOperator> h_;
  std::string reference_;
  std::vector<PoolOperator> ops_;
};

/// dE/dtheta_k for every ansatz parameter.
std::vector<double> analytic_gradient(const Ansatz& ansatz, const QubitHamiltonian& h);

}  // namespace tetris

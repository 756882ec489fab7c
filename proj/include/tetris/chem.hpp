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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "tetris/pauli.hpp"

namespace tetris {

/// Spin-restricted molecular integrals in Hartree. The two-electron tensor is
/// stored in chemists' notation (pq|rs) with all 8 permutational images.
class MolecularIntegrals {
 public:
  MolecularIntegrals() = default;
  MolecularIntegrals(int orbital_count, int electron_count);

  int orbital_count() const { return norb_; }
  int electron_count() const { return nelec_; }
  int ms2() const { return ms2_; }
  void set_ms2(int ms2) { ms2_ = ms2; }

  double core_energy() const { return core_; }
  void set_core_energy(double e) { core_ = e; }

  double one_body(int p, int q) const { return h1_[p * norb_ + q]; }
  double two_body(int p, int q, int r, int s) const { return h2_[index(p, q, r, s)]; }

  /// Sets h_pq and h_qp.
  void set_one_body(int p, int q, double v);
  /// Sets all 8 images of (pq|rs).
  void set_two_body(int p, int q, int r, int s, double v);

  /// Largest deviation from the declared symmetries over all entries.
  double max_symmetry_violation() const;

 private:
  std::size_t index(int p, int q, int r, int s) const {
    return ((static_cast<std::size_t>(p) * norb_ + q) * norb_ + r) * norb_ + s;
  }

  int norb_ = 0;
  int nelec_ = 0;
  int ms2_ = 0;
  double core_ = 0.0;
  std::vector<double> h1_;
  std::vector<double> h2_;
};

/// Qubit image of the electronic Hamiltonian. Identity contributions live in
/// `constant_offset`; `pauli_sum` carries no identity term.
struct QubitHamiltonian {
  PauliSum pauli_sum;
  int qubit_count = 0;
  double constant_offset = 0.0;
  /// Occupation bitstring, qubit 0 first.
  std::string hf_reference;

  int electron_count() const;
};

/// Reads FCIDUMP text: a namelist header with NORB/NELEC/MS2 and value lines
/// "value p q r s" in 1-based spatial-orbital indices. Errors carry the line
/// number of the offending input.
MolecularIntegrals parse_fcidump(std::istream& in);
MolecularIntegrals parse_fcidump_file(const std::filesystem::path& path);

/// Interleaved spin-orbital Jordan-Wigner mapping: qubit 2p is spin-up and
/// qubit 2p+1 spin-down of spatial orbital p; a_j = (X_j + iY_j)/2 Z_0...Z_{j-1}.
QubitHamiltonian jordan_wigner(const MolecularIntegrals& m);

/// JW images of single-mode ladder operators on `qubit_count` qubits.
PauliSum jw_annihilation(int mode, int qubit_count);
PauliSum jw_creation(int mode, int qubit_count);
/// Qubit (Z-chain free) ladder operators Q = (X + iY)/2, Q^dagger = (X - iY)/2.
PauliSum qubit_annihilation(int qubit, int qubit_count);
PauliSum qubit_creation(int qubit, int qubit_count);

/// Sum over modes of a^dagger a = (I - Z)/2.
PauliSum number_operator(int qubit_count);

enum class ExcitationKind { kFermionic, kQubit };

/// Antihermitian excitation generator for strictly increasing indices.
/// Two indices (i<j): a_i^dagger a_j - h.c.; four indices (i<j<k<l):
/// a_i^dagger a_j^dagger a_k a_l - h.c. The qubit kind is the same operator
/// with every Z-chain omitted.
PauliSum jw_excitation(const std::vector<int>& indices, ExcitationKind kind, int qubit_count);

/// Excitation moving `from` to `to` (each one or two distinct orbitals, any
/// order inside a pair), minus its adjoint. Fermionic kind builds
/// a_to^dagger... a_from... with JW strings; qubit kind uses Q operators.
PauliSum excitation_generator(const std::vector<int>& from, const std::vector<int>& to,
                              ExcitationKind kind, int qubit_count);

/// Replaces every Z factor by I (Y factors keep their X part).
PauliSum strip_z(const PauliSum& s);

/// JSON document {qubit_count, terms: [{coeff, string}], constant, hf_reference}.
QubitHamiltonian hamiltonian_from_json(const std::string& text);
std::string hamiltonian_to_json(const QubitHamiltonian& h);

/// Loads ".json" as a qubit Hamiltonian document, anything else as FCIDUMP.
QubitHamiltonian load_hamiltonian(const std::filesystem::path& path);

}  // namespace tetris

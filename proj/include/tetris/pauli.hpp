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

#include <Eigen/Dense>

#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace tetris {

using cplx = std::complex<double>;

/// Bit q set means qubit q participates. Registers are limited to 64 qubits.
using QubitMask = std::uint64_t;
inline constexpr int kMaxQubits = 64;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);

/// Symplectic key of an unsigned Pauli string. Y on qubit q sets bit q in
/// both masks. The operator it names is the plain tensor product of the
/// symbols, e.g. (x=0b10, z=0b11) is Z0 Y1.
struct PauliKey {
  QubitMask x = 0;
  QubitMask z = 0;

  QubitMask support() const { return x | z; }
  int y_count() const;
  bool commutes_with(const PauliKey& other) const;
  auto operator<=>(const PauliKey&) const = default;
};

/// Signed tensor product of single-qubit Paulis: i^phase_exponent times the
/// symbols. Two strings compare equal iff symbols and phase match.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int qubit_count, PauliKey key = {}, int phase_exponent = 0);

  /// Parses "X2 X3 X6 Y7", "I", or a phased form like "-i X0 Y1".
  static PauliString parse(std::string_view text, int qubit_count);

  int qubit_count() const { return qubit_count_; }
  const PauliKey& key() const { return key_; }
  int phase_exponent() const { return phase_; }
  cplx phase() const;

  Pauli at(int qubit) const;
  PauliString& set(int qubit, Pauli p);

  QubitMask support_mask() const { return key_.support(); }
  int weight() const;
  bool commutes_with(const PauliString& other) const { return key_.commutes_with(other.key_); }

  /// Rendering with phase prefix (omitted for +1) and "I" for the identity.
  std::string str() const;

  bool operator==(const PauliString&) const = default;

 private:
  int qubit_count_ = 1;
  PauliKey key_;
  int phase_ = 0;
};

/// Group product a*b with the accumulated phase.
PauliString multiply(const PauliString& a, const PauliString& b);

/// Phase exponent k such that key(a)*key(b) = i^k * key(a^b) as unsigned strings.
int product_phase(const PauliKey& a, const PauliKey& b);

/// Complex-weighted sum of unsigned Pauli strings. Coefficients whose
/// magnitude falls below kDedupFloor are dropped after each arithmetic step.
class PauliSum {
 public:
  static constexpr double kDedupFloor = 1e-14;
  using TermMap = std::map<PauliKey, cplx>;

  PauliSum() = default;
  explicit PauliSum(int qubit_count);
  PauliSum(const PauliString& p, cplx coeff = 1.0);

  /// Parses the rendering produced by str().
  static PauliSum parse(std::string_view text, int qubit_count);

  /// Identity times `coeff`.
  static PauliSum identity(int qubit_count, cplx coeff = 1.0);

  int qubit_count() const { return qubit_count_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Coefficient of an unsigned string, zero if absent.
  cplx coefficient(const PauliKey& key) const;

  void add(const PauliKey& key, cplx coeff);
  void add(const PauliString& p, cplx coeff = 1.0);

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(cplx scalar);
  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, cplx s) { return a *= s; }
  friend PauliSum operator*(cplx s, PauliSum a) { return a *= s; }
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);

  PauliSum adjoint() const;

  /// All coefficients real (within tol).
  bool is_hermitian(double tol = 1e-12) const;
  /// All coefficients imaginary (within tol).
  bool is_antihermitian(double tol = 1e-12) const;
  /// Every pair of terms commutes.
  bool terms_commute() const;

  QubitMask support_mask() const;

  /// Terms in key order as "<signed coeff> <string>", e.g.
  /// "+0.5i X0 Y1 -0.5i Y0 X1". The empty sum renders as "0".
  std::string str() const;

  /// Removes terms below `floor`.
  void prune(double floor = kDedupFloor);

  bool approx_equal(const PauliSum& other, double tol) const;

 private:
  void check_same_size(const PauliSum& other) const;

  int qubit_count_ = 1;
  TermMap terms_;
};

/// ab - ba. Only anticommuting string pairs contribute.
PauliSum commutator(const PauliSum& a, const PauliSum& b);

std::vector<int> support(const PauliString& p);
std::vector<int> support(const PauliSum& s);
std::vector<int> mask_to_indices(QubitMask mask);
QubitMask indices_to_mask(const std::vector<int>& indices);

/// Dense matrix; row/column index bit q is the state of qubit q. Throws
/// CapacityError above `max_qubits`.
Eigen::MatrixXcd to_matrix(const PauliSum& s, int max_qubits = 10);
Eigen::MatrixXcd to_matrix(const PauliString& p, int max_qubits = 10);

}  // namespace tetris

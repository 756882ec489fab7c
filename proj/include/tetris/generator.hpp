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
#include <string_view>
#include <vector>

#include "tetris/pauli.hpp"

namespace tetris {

/// exp(theta * i * rate * S) for an unsigned Pauli string S.
struct RotationTerm {
  PauliKey key;
  double rate = 0.0;
};

/// Terms sharing one X-mask; they pair the same amplitudes. On a pair
/// (b, b^x) with the lowest x bit clear in b the group acts as
/// exp(i*theta*B), B = [[0, beta], [conj(beta), 0]], and beta depends on b
/// only through b & pattern_mask.
struct TermGroup {
  QubitMask x = 0;
  std::vector<RotationTerm> terms;
  QubitMask pattern_mask = 0;
  /// Nonzero (pattern, beta) entries; empty when x == 0 or the mask is too wide.
  std::vector<std::pair<QubitMask, cplx>> pair_weights;
};

/// Antihermitian generator sum_t i*rate_t*S_t whose terms mutually commute,
/// so exp(theta*g) factorizes exactly into per-term rotations.
class Generator {
 public:
  Generator() = default;

  /// Throws UnsupportedGenerator unless `g` is antihermitian with commuting terms.
  explicit Generator(const PauliSum& g);

  const PauliSum& sum() const { return sum_; }
  const std::vector<RotationTerm>& terms() const { return terms_; }
  const std::vector<TermGroup>& groups() const { return groups_; }
  int qubit_count() const { return sum_.qubit_count(); }
  QubitMask support_mask() const { return support_; }

 private:
  PauliSum sum_;
  std::vector<RotationTerm> terms_;
  std::vector<TermGroup> groups_;
  QubitMask support_ = 0;
};

enum class OperatorKind {
  kQubitSingle,
  kQubitDouble,
  kQeSingle,
  kQeDouble,
  kFermionicSingle,
  kFermionicDouble,
};

std::string_view to_string(OperatorKind k);

/// One pool entry. `indices` are the excitation labels the circuit template
/// is parameterized by: (i, j) for singles, (i, j, k, l) for doubles moving
/// {i, j} to {k, l} (qubit-pool strings list their support instead).
struct PoolOperator {
  Generator generator;
  OperatorKind kind = OperatorKind::kQubitSingle;
  std::vector<int> indices;
  std::string label;

  QubitMask support_mask() const { return generator.support_mask(); }
  std::vector<int> support() const { return mask_to_indices(support_mask()); }
};

}  // namespace tetris

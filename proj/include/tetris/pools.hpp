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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tetris/generator.hpp"

namespace tetris {

enum class PoolKind { kQubit, kQe, kFermionic };

std::string_view to_string(PoolKind k);
/// "qubit", "qe" or "fermionic"; throws std::invalid_argument otherwise.
PoolKind parse_pool_kind(std::string_view s);

struct OperatorPool {
  int qubit_count = 0;
  PoolKind kind = PoolKind::kQubit;
  std::vector<PoolOperator> operators;

  std::size_t size() const { return operators.size(); }
  bool empty() const { return operators.empty(); }
  const PoolOperator& operator[](std::size_t i) const { return operators[i]; }
  std::optional<std::size_t> find(std::string_view label) const;
};

/// iX_iY_j, iY_iX_j for i<j with i+j even, and for every 4-subset with even
/// index sum the four XXXY-type and four YYYX-type strings (odd letter placed
/// at each position, last position first).
OperatorPool build_qubit_pool(int qubit_count);

/// Qubit-excitation singles between same-spin orbitals and doubles between
/// disjoint pairs with equal spin content. `electron_count` is accepted for
/// interface symmetry; the pool does not depend on it.
OperatorPool build_qe_pool(int qubit_count, int electron_count = 0);

/// Fermionic singles and doubles with the same index selection as the QE pool.
OperatorPool build_fermionic_pool(int qubit_count);

OperatorPool build_pool(PoolKind kind, int qubit_count, int electron_count = 0);

/// (i/2)(X_iY_j - Y_iX_j) for distinct i, j.
PauliSum qe_single_generator(int i, int j, int qubit_count);
/// The 8-string double with letters placed on qubits (i, j, k, l):
/// (i/8)(XYXX + YXXX + YYYX + YYXY - XXYX - XXXY - YXYY - XYYY).
PauliSum qe_double_generator(int i, int j, int k, int l, int qubit_count);

/// JSON array of {kind, label, support, term_count}.
std::string pool_to_json(const OperatorPool& pool);

}  // namespace tetris

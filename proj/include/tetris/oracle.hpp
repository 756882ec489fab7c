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

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "tetris/chem.hpp"
#include "tetris/statevector.hpp"

namespace tetris {

struct GroundTruth {
  double energy = 0.0;
  /// Orthonormal basis of every eigenvector within the degeneracy window.
  std::vector<StateVector> ground_space;
  int degeneracy() const { return static_cast<int>(ground_space.size()); }
};

enum class EigenMethod { kAuto, kDense, kLanczos };

struct OracleOptions {
  EigenMethod method = EigenMethod::kAuto;
  /// Restrict to basis states with this many ones; nullopt = whole space.
  std::optional<int> electron_count;
  double degeneracy_window = 1e-9;
  int max_qubits = 16;
};

/// Lowest eigenvalue and its eigenspace of pauli_sum + constant_offset.
/// Auto uses dense diagonalization below 12 qubits and Lanczos otherwise.
GroundTruth ground_state(const QubitHamiltonian& h, const OracleOptions& opt = {});

/// Options restricted to the electron number of h.hf_reference.
OracleOptions sector_options(const QubitHamiltonian& h, EigenMethod method = EigenMethod::kAuto);

/// 1 - ||projection of state onto the ground space||^2, clamped to [0, 1].
double infidelity(const StateVector& state, const GroundTruth& truth);

/// ||(H - E) psi|| for a normalized psi.
double eigen_residual(const QubitHamiltonian& h, const StateVector& psi, double e);

/// Ground data memoized by Hamiltonian content; safe for concurrent readers.
class GroundTruthCache {
 public:
  std::shared_ptr<const GroundTruth> get(const QubitHamiltonian& h);

 private:
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<const GroundTruth>> cache_;
};

}  // namespace tetris

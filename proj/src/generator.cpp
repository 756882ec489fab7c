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

#include "tetris/generator.hpp"

#include <algorithm>
#include <bit>

#include "tetris/error.hpp"

namespace tetris {

namespace {

constexpr int kMaxPatternBits = 20;

void tabulate_pairs(TermGroup& gr) {
  if (gr.x == 0) return;
  const QubitMask pivot = gr.x & (~gr.x + 1);
  QubitMask zs = 0;
  for (const auto& t : gr.terms) zs |= t.key.z;
  const QubitMask mask = zs | pivot;
  if (std::popcount(mask) > kMaxPatternBits) return;
  gr.pattern_mask = mask;
  const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  // Enumerate submasks of `mask` with the pivot bit clear.
  const QubitMask free = mask & ~pivot;
  QubitMask p = 0;
  do {
    cplx beta = 0.0;
    for (const auto& t : gr.terms) {
      // <b|S|b^x> = i^{#Y} * sign(b^x)
      const int par = std::popcount((p ^ gr.x) & t.key.z) & 1;
      beta += t.rate * ipow[t.key.y_count() & 3] * (par ? -1.0 : 1.0);
    }
    if (std::abs(beta) > 1e-14) gr.pair_weights.emplace_back(p, beta);
    p = (p - free) & free;
  } while (p != 0);
}

}  // namespace

Generator::Generator(const PauliSum& g) : sum_(g) {
  sum_.prune();
  if (!sum_.is_antihermitian(1e-12)) {
    throw UnsupportedGenerator("generator is not antihermitian: " + sum_.str());
  }
  if (!sum_.terms_commute()) {
    throw UnsupportedGenerator("generator terms do not commute: " + sum_.str());
  }
  for (const auto& [key, c] : sum_.terms()) {
    if (key.x == 0 && key.z == 0) {
      // i*r*I only contributes a global phase
      continue;
    }
    terms_.push_back({key, c.imag()});
    support_ |= key.support();
  }
  for (const auto& t : terms_) {
    auto it = std::find_if(groups_.begin(), groups_.end(),
                           [&](const TermGroup& gr) { return gr.x == t.key.x; });
    if (it == groups_.end()) it = groups_.insert(groups_.end(), TermGroup{t.key.x, {}, 0, {}});
    it->terms.push_back(t);
  }
  for (auto& gr : groups_) tabulate_pairs(gr);
}

std::string_view to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::kQubitSingle: return "qubit_single";
    case OperatorKind::kQubitDouble: return "qubit_double";
    case OperatorKind::kQeSingle: return "qe_single";
    case OperatorKind::kQeDouble: return "qe_double";
    case OperatorKind::kFermionicSingle: return "fermionic_single";
    case OperatorKind::kFermionicDouble: return "fermionic_double";
  }
  return "unknown";
}

}  // namespace tetris

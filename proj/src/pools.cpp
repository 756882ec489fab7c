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

#include "tetris/pools.hpp"

#include <map>
#include <stdexcept>

#include <json.hpp>

#include "tetris/chem.hpp"

namespace tetris {

namespace {

void check_even(int n) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("pool needs an even qubit count >= 2, got " + std::to_string(n));
  }
  if (n > kMaxQubits) throw std::invalid_argument("qubit count above 64");
}

PauliString letters_on(const char* letters, const std::vector<int>& idx, int n) {
  PauliString p(n);
  for (std::size_t t = 0; t < idx.size(); ++t) {
    p.set(idx[t], letters[t] == 'X' ? Pauli::X : (letters[t] == 'Y' ? Pauli::Y : Pauli::Z));
  }
  return p;
}

std::string index_label(std::string_view prefix, const std::vector<int>& idx) {
  std::string s(prefix);
  for (int i : idx) s += " " + std::to_string(i);
  return s;
}

// Keys of the terms with the sign of the first coefficient folded out, so
// that g and -g collide.
std::vector<std::pair<PauliKey, cplx>> sign_free_key(const PauliSum& g) {
  std::vector<std::pair<PauliKey, cplx>> out(g.terms().begin(), g.terms().end());
  if (!out.empty()) {
    const cplx lead = out.front().second;
    const bool flip = lead.real() < 0 || (lead.real() == 0 && lead.imag() < 0);
    if (flip) {
      for (auto& [k, c] : out) c = -c;
    }
  }
  return out;
}

struct KeyLess {
  bool operator()(const std::vector<std::pair<PauliKey, cplx>>& a,
                  const std::vector<std::pair<PauliKey, cplx>>& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].first != b[i].first) return a[i].first < b[i].first;
      if (a[i].second.real() != b[i].second.real()) return a[i].second.real() < b[i].second.real();
      if (a[i].second.imag() != b[i].second.imag()) return a[i].second.imag() < b[i].second.imag();
    }
    return false;
  }
};

// Drops later operators whose generator equals an earlier one up to sign.
void dedup(OperatorPool& pool) {
  std::map<std::vector<std::pair<PauliKey, cplx>>, bool, KeyLess> seen;
  std::vector<PoolOperator> kept;
  for (auto& op : pool.operators) {
    if (seen.emplace(sign_free_key(op.generator.sum()), true).second) kept.push_back(std::move(op));
  }
  pool.operators = std::move(kept);
}

PoolOperator make(const PauliSum& g, OperatorKind kind, std::vector<int> idx, std::string label) {
  PoolOperator op;
  op.generator = Generator(g);
  op.kind = kind;
  op.indices = std::move(idx);
  op.label = std::move(label);
  return op;
}

// Disjoint pairs {a,b}, {c,d} with equal spin content, each unordered pair of
// pairs once: the pair holding the smallest index comes first.
template <typename F>
void for_each_double(int n, F&& f) {
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = a + 1; c < n; ++c) {
        if (c == b) continue;
        for (int d = c + 1; d < n; ++d) {
          if (d == b) continue;
          const int sa = (a % 2) + (b % 2);
          const int sc = (c % 2) + (d % 2);
          if (sa != sc) continue;
          f(a, b, c, d);
        }
      }
    }
  }
}

}  // namespace

std::string_view to_string(PoolKind k) {
  switch (k) {
    case PoolKind::kQubit: return "qubit";
    case PoolKind::kQe: return "qe";
    case PoolKind::kFermionic: return "fermionic";
  }
  return "unknown";
}

PoolKind parse_pool_kind(std::string_view s) {
  if (s == "qubit") return PoolKind::kQubit;
  if (s == "qe") return PoolKind::kQe;
  if (s == "fermionic") return PoolKind::kFermionic;
  throw std::invalid_argument("unknown pool kind '" + std::string(s) + "'");
}

std::optional<std::size_t> OperatorPool::find(std::string_view label) const {
  for (std::size_t i = 0; i < operators.size(); ++i) {
    if (operators[i].label == label) return i;
  }
  return std::nullopt;
}

PauliSum qe_single_generator(int i, int j, int n) {
  PauliSum g(n);
  g.add(letters_on("XY", {i, j}, n), cplx(0, 0.5));
  g.add(letters_on("YX", {i, j}, n), cplx(0, -0.5));
  return g;
}

PauliSum qe_double_generator(int i, int j, int k, int l, int n) {
  const std::vector<int> idx = {i, j, k, l};
  PauliSum g(n);
  for (const char* p : {"XYXX", "YXXX", "YYYX", "YYXY"}) g.add(letters_on(p, idx, n), cplx(0, 0.125));
  for (const char* m : {"XXYX", "XXXY", "YXYY", "XYYY"}) g.add(letters_on(m, idx, n), cplx(0, -0.125));
  return g;
}

OperatorPool build_qubit_pool(int n) {
  check_even(n);
  OperatorPool pool{n, PoolKind::kQubit, {}};
  auto add_string = [&](const char* letters, const std::vector<int>& idx, OperatorKind kind) {
    const PauliString p = letters_on(letters, idx, n);
    PauliSum g(n);
    g.add(p, cplx(0, 1));
    pool.operators.push_back(make(g, kind, idx, p.str()));
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if ((i + j) % 2) continue;
      add_string("XY", {i, j}, OperatorKind::kQubitSingle);
      add_string("YX", {i, j}, OperatorKind::kQubitSingle);
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        for (int l = k + 1; l < n; ++l) {
          if ((i + j + k + l) % 2) continue;
          for (const char* s : {"XXXY", "XXYX", "XYXX", "YXXX", "YYYX", "YYXY", "YXYY", "XYYY"}) {
            add_string(s, {i, j, k, l}, OperatorKind::kQubitDouble);
          }
        }
      }
    }
  }
  dedup(pool);
  return pool;
}

OperatorPool build_qe_pool(int n, int /*electron_count*/) {
  check_even(n);
  OperatorPool pool{n, PoolKind::kQe, {}};
  for (int i = 0; i < n; ++i) {
    for (int j = i + 2; j < n; j += 2) {
      pool.operators.push_back(make(qe_single_generator(i, j, n), OperatorKind::kQeSingle, {i, j},
                                    index_label("qe", {i, j})));
    }
  }
  for_each_double(n, [&](int a, int b, int c, int d) {
    pool.operators.push_back(make(qe_double_generator(a, b, c, d, n), OperatorKind::kQeDouble,
                                  {a, b, c, d}, index_label("qe", {a, b, c, d})));
  });
  dedup(pool);
  return pool;
}

OperatorPool build_fermionic_pool(int n) {
  check_even(n);
  OperatorPool pool{n, PoolKind::kFermionic, {}};
  for (int i = 0; i < n; ++i) {
    for (int j = i + 2; j < n; j += 2) {
      pool.operators.push_back(make(jw_excitation({i, j}, ExcitationKind::kFermionic, n),
                                    OperatorKind::kFermionicSingle, {i, j}, index_label("f", {i, j})));
    }
  }
  for_each_double(n, [&](int a, int b, int c, int d) {
    // {c,d} -> {a,b}; sign chosen so that dropping Z factors gives the QE double.
    PauliSum g = excitation_generator({c, d}, {a, b}, ExcitationKind::kFermionic, n);
    const PauliSum qe = qe_double_generator(a, b, c, d, n);
    if (!strip_z(g).approx_equal(qe, 1e-14)) g *= -1.0;
    pool.operators.push_back(make(g, OperatorKind::kFermionicDouble, {a, b, c, d},
                                  index_label("f", {a, b, c, d})));
  });
  dedup(pool);
  return pool;
}

OperatorPool build_pool(PoolKind kind, int n, int electron_count) {
  switch (kind) {
    case PoolKind::kQubit: return build_qubit_pool(n);
    case PoolKind::kQe: return build_qe_pool(n, electron_count);
    case PoolKind::kFermionic: return build_fermionic_pool(n);
  }
  throw std::invalid_argument("unknown pool kind");
}

std::string pool_to_json(const OperatorPool& pool) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& op : pool.operators) {
    arr.push_back({{"kind", std::string(to_string(op.kind))},
                   {"label", op.label},
                   {"support", op.support()},
                   {"term_count", op.generator.sum().size()}});
  }
  return arr.dump(2);
}

}  // namespace tetris

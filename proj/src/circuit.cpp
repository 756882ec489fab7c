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

#include "tetris/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "tetris/error.hpp"
#include "tetris/pools.hpp"

namespace tetris {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

struct Builder {
  Circuit c;
  explicit Builder(int n) { c.qubit_count = n; }
  Builder& cx(int ctrl, int tgt) { return add({GateKind::kCnot, ctrl, tgt}); }
  Builder& h(int q) { return add({GateKind::kH, q}); }
  Builder& x(int q) { return add({GateKind::kX, q}); }
  Builder& rx(int q, double a, bool p = false) { return add({GateKind::kRx, q, -1, a, p}); }
  Builder& ry(int q, double a, bool p = false) { return add({GateKind::kRy, q, -1, a, p}); }
  Builder& rz(int q, double a, bool p = false) { return add({GateKind::kRz, q, -1, a, p}); }
  Builder& add(Gate g) {
    if (g.q0 < 0 || g.q0 >= c.qubit_count || g.q1 >= c.qubit_count || g.q0 == g.q1) {
      throw std::invalid_argument("gate qubit out of range");
    }
    c.gates.push_back(g);
    return *this;
  }
};

void check_distinct(std::initializer_list<int> idx, int n) {
  std::vector<int> v(idx);
  for (std::size_t a = 0; a < v.size(); ++a) {
    if (v[a] < 0 || v[a] >= n) throw std::invalid_argument("template index out of range");
    for (std::size_t b = a + 1; b < v.size(); ++b) {
      if (v[a] == v[b]) throw std::invalid_argument("template indices must be distinct");
    }
  }
}

bool same_gate_pair(const Gate& a, const Gate& b) {
  return a.kind == b.kind && a.q0 == b.q0 && a.q1 == b.q1;
}

// One sweep; returns true if anything changed.
bool cancel_pass(const std::vector<Gate>& in, std::vector<Gate>& out, int n) {
  std::vector<std::optional<Gate>> kept;
  std::vector<std::vector<std::size_t>> top(n);
  bool changed = false;
  auto pop = [&](std::size_t idx) {
    const Gate& g = *kept[idx];
    top[g.q0].pop_back();
    if (g.q1 >= 0) top[g.q1].pop_back();
    kept[idx].reset();
  };
  for (const Gate& g : in) {
    const bool has0 = !top[g.q0].empty();
    if (g.kind == GateKind::kCnot) {
      if (has0 && !top[g.q1].empty() && top[g.q0].back() == top[g.q1].back()) {
        const std::size_t idx = top[g.q0].back();
        if (same_gate_pair(*kept[idx], g)) {
          pop(idx);
          changed = true;
          continue;
        }
      }
    } else if (has0) {
      const std::size_t idx = top[g.q0].back();
      Gate& prev = *kept[idx];
      if (prev.q1 < 0 && prev.kind == g.kind) {
        if (g.kind == GateKind::kH || g.kind == GateKind::kX) {
          pop(idx);
          changed = true;
          continue;
        }
        prev.angle += g.angle;
        prev.parametric = prev.parametric || g.parametric;
        if (!prev.parametric && std::abs(prev.angle) < 1e-12) pop(idx);
        changed = true;
        continue;
      }
    }
    kept.push_back(g);
    top[g.q0].push_back(kept.size() - 1);
    if (g.q1 >= 0) top[g.q1].push_back(kept.size() - 1);
  }
  out.clear();
  for (auto& g : kept) {
    if (g) out.push_back(*g);
  }
  return changed;
}

}  // namespace

std::string_view to_string(GateKind k) {
  switch (k) {
    case GateKind::kCnot: return "CNOT";
    case GateKind::kH: return "H";
    case GateKind::kX: return "X";
    case GateKind::kRx: return "RX";
    case GateKind::kRy: return "RY";
    case GateKind::kRz: return "RZ";
  }
  return "?";
}

void Circuit::append(const Circuit& other) {
  if (other.qubit_count != qubit_count) throw DimensionError("circuit size mismatch");
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

int Circuit::cnot_count() const {
  return static_cast<int>(std::count_if(gates.begin(), gates.end(),
                                        [](const Gate& g) { return g.kind == GateKind::kCnot; }));
}

Circuit compile_pauli_rotation(const PauliKey& key, double rate, double theta, int n) {
  const auto qs = mask_to_indices(key.support());
  if (qs.empty()) throw std::invalid_argument("identity has no rotation circuit");
  if (qs.back() >= n) throw std::invalid_argument("string exceeds circuit size");
  Builder b(n);
  auto basis = [&](bool forward) {
    for (int q : qs) {
      const bool x = (key.x >> q) & 1, z = (key.z >> q) & 1;
      if (x && !z) b.h(q);
      if (x && z) b.rx(q, forward ? kHalfPi : -kHalfPi);
    }
  };
  basis(true);
  for (std::size_t t = 0; t + 1 < qs.size(); ++t) b.cx(qs[t], qs[t + 1]);
  b.rz(qs.back(), -2.0 * rate * theta, true);
  for (std::size_t t = qs.size() - 1; t-- > 0;) b.cx(qs[t], qs[t + 1]);
  basis(false);
  return b.c;
}

Circuit compile_pauli_rotation(const PauliSum& g, double theta) {
  if (g.size() != 1) throw std::invalid_argument("compile_pauli_rotation needs a single string");
  const auto& [key, c] = *g.terms().begin();
  if (std::abs(c.real()) > 1e-12) throw std::invalid_argument("generator must be i*r*S");
  return compile_pauli_rotation(key, c.imag(), theta, g.qubit_count());
}

Circuit compile_qe_single(int i, int j, double theta, int n) {
  check_distinct({i, j}, n);
  Builder b(n);
  b.rz(j, kHalfPi).rx(j, kHalfPi).rx(i, kHalfPi);
  b.cx(j, i);
  b.rx(j, theta, true).rz(i, theta, true);
  b.cx(j, i);
  b.rx(j, -kHalfPi).rz(j, -kHalfPi).rx(i, -kHalfPi);
  return b.c;
}

Circuit compile_qe_double(int i, int j, int k, int l, double theta, int n) {
  check_distinct({i, j, k, l}, n);
  const double a = 2.0 * theta / 8.0;
  Builder b(n);
  b.cx(l, k).cx(j, i).x(k).x(i).cx(l, j);
  b.ry(l, a, true).h(k).cx(l, k);
  b.ry(l, -a, true).h(i).cx(l, i);
  b.ry(l, a, true).cx(l, k);
  b.ry(l, -a, true).h(j).cx(l, j);
  b.ry(l, a, true).cx(l, k);
  b.ry(l, -a, true).cx(l, i);
  b.ry(l, a, true).h(i).cx(l, k);
  b.ry(l, -a, true).h(k).rz(j, kHalfPi).cx(l, j);
  b.rz(l, -kHalfPi).rz(j, kHalfPi);
  b.x(k).ry(j, kHalfPi).x(i);
  b.cx(l, k).cx(j, i);
  return b.c;
}

Circuit compile_operator(const PoolOperator& op, double theta, int n) {
  const auto& x = op.indices;
  switch (op.kind) {
    case OperatorKind::kQeSingle: return compile_qe_single(x.at(0), x.at(1), theta, n);
    case OperatorKind::kQeDouble: return compile_qe_double(x.at(0), x.at(1), x.at(2), x.at(3), theta, n);
    default: break;
  }
  Circuit c{n, {}};
  for (const auto& t : op.generator.terms()) c.append(compile_pauli_rotation(t.key, t.rate, theta, n));
  return c;
}

Circuit cancel_adjacent(const Circuit& c) {
  Circuit out{c.qubit_count, c.gates};
  std::vector<Gate> next;
  while (cancel_pass(out.gates, next, c.qubit_count)) out.gates.swap(next);
  return out;
}

ResourceReport schedule_depth(const Circuit& c) {
  std::vector<int> level(c.qubit_count, 0);
  ResourceReport r;
  for (const auto& g : c.gates) {
    int start = level[g.q0];
    if (g.q1 >= 0) start = std::max(start, level[g.q1]);
    level[g.q0] = start + 1;
    if (g.q1 >= 0) level[g.q1] = start + 1;
    r.depth = std::max(r.depth, start + 1);
    if (g.kind == GateKind::kCnot) ++r.cnot_count;
  }
  r.gate_count = static_cast<int>(c.gates.size());
  return r;
}

Circuit ansatz_circuit(const Ansatz& ansatz) {
  const int n = static_cast<int>(ansatz.reference.size());
  Circuit c{n, {}};
  for (std::size_t k = 0; k < ansatz.operators.size(); ++k) {
    const double th = k < ansatz.parameters.size() ? ansatz.parameters[k] : 0.0;
    c.append(compile_operator(ansatz.operators[k], th, n));
  }
  return c;
}

ResourceReport ansatz_report(const Ansatz& ansatz, bool /*concurrent_layers*/) {
  if (ansatz.operators.empty()) return {};
  return schedule_depth(cancel_adjacent(ansatz_circuit(ansatz)));
}

void apply_gate(StateVector& state, const Gate& g) {
  auto a = state.amplitudes();
  const std::size_t m0 = std::size_t{1} << g.q0;
  switch (g.kind) {
    case GateKind::kCnot: {
      const std::size_t m1 = std::size_t{1} << g.q1;
      for (std::size_t b = 0; b < a.size(); ++b) {
        if ((b & m0) && !(b & m1)) std::swap(a[b], a[b | m1]);
      }
      return;
    }
    case GateKind::kX:
      for (std::size_t b = 0; b < a.size(); ++b) {
        if (!(b & m0)) std::swap(a[b], a[b | m0]);
      }
      return;
    case GateKind::kH: {
      const double r = std::numbers::sqrt2 / 2;
      for (std::size_t b = 0; b < a.size(); ++b) {
        if (b & m0) continue;
        const cplx u = a[b], v = a[b | m0];
        a[b] = r * (u + v);
        a[b | m0] = r * (u - v);
      }
      return;
    }
    default: break;
  }
  // exp(-i*angle/2 * P) = exp(i*(-angle/2) * P)
  PauliKey key;
  if (g.kind == GateKind::kRx) key.x = m0;
  if (g.kind == GateKind::kRz) key.z = m0;
  if (g.kind == GateKind::kRy) key = {m0, m0};
  apply_pauli_rotation(state, key, -0.5 * g.angle);
}

void apply_circuit(StateVector& state, const Circuit& c) {
  if (state.qubit_count() != c.qubit_count) throw DimensionError("circuit/state size mismatch");
  for (const auto& g : c.gates) apply_gate(state, g);
}

std::string to_netlist(const Circuit& c) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& g : c.gates) {
    out << to_string(g.kind) << ' ' << g.q0;
    if (g.q1 >= 0) out << ' ' << g.q1;
    if (g.is_rotation()) out << ' ' << g.angle;
    out << '\n';
  }
  return out.str();
}

std::string report_to_json(const ResourceReport& r) {
  return nlohmann::json{{"cnot_count", r.cnot_count}, {"depth", r.depth}, {"gate_count", r.gate_count}}
      .dump();
}

}  // namespace tetris

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

#include "tetris/statevector.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>

#include "tetris/error.hpp"

namespace tetris {

namespace {

// Beyond this many tabulated diagonal entries, groups are evaluated on the fly.
constexpr std::size_t kDiagonalBudget = std::size_t{1} << 23;

constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

inline double parity_sign(std::size_t b, QubitMask z) {
  return (std::popcount(static_cast<QubitMask>(b) & z) & 1) ? -1.0 : 1.0;
}

void check_qubits(int a, int b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": operand on " + std::to_string(b) +
                         " qubits, state on " + std::to_string(a));
  }
}

// sum_b conj(bra[b ^ x]) * sign(b) * ket[b] for one unsigned string (no i^{#Y}).
cplx string_matrix_element(const StateVector& bra, const StateVector& ket, const PauliKey& key) {
  const auto& a = bra.amplitudes();
  const auto& k = ket.amplitudes();
  cplx acc = 0.0;
  for (std::size_t b = 0; b < k.size(); ++b) {
    acc += std::conj(a[b ^ key.x]) * (parity_sign(b, key.z) * k[b]);
  }
  return acc * kIPow[key.y_count() & 3];
}

// Index of the j-th amplitude whose `pivot` bit is clear.
inline std::size_t insert_zero(std::size_t j, QubitMask pivot) {
  const std::size_t low = static_cast<std::size_t>(pivot) - 1;
  return ((j & ~low) << 1) | (j & low);
}

struct PairTerm {
  double c;
  cplx f;         // i*sin*i^{#Y}
  QubitMask z;
  double x_sign;  // parity of x & z
};

}  // namespace

StateVector::StateVector(int qubit_count) : n_(qubit_count) {
  if (qubit_count < 1 || qubit_count > 30) {
    throw CapacityError("statevector needs 1..30 qubits, got " + std::to_string(qubit_count));
  }
  amps_.assign(std::size_t{1} << qubit_count, cplx(0.0));
  amps_[0] = 1.0;
}

StateVector::StateVector(int qubit_count, std::vector<cplx> amplitudes)
    : StateVector(qubit_count) {
  if (amplitudes.size() != amps_.size()) {
    throw DimensionError("amplitude count " + std::to_string(amplitudes.size()) +
                         " does not match 2^" + std::to_string(qubit_count));
  }
  amps_ = std::move(amplitudes);
}

StateVector StateVector::basis(std::string_view bits) {
  StateVector s(static_cast<int>(bits.size()));
  s.amps_[0] = 0.0;
  s.amps_[index_of(bits)] = 1.0;
  return s;
}

std::size_t StateVector::index_of(std::string_view bits) {
  std::size_t idx = 0;
  for (std::size_t q = 0; q < bits.size(); ++q) {
    if (bits[q] == '1') {
      idx |= std::size_t{1} << q;
    } else if (bits[q] != '0') {
      throw std::invalid_argument("bitstring must contain only 0 and 1: " + std::string(bits));
    }
  }
  return idx;
}

std::string StateVector::ket(std::size_t index) const {
  std::string s(n_, '0');
  for (int q = 0; q < n_; ++q) {
    if ((index >> q) & 1) s[q] = '1';
  }
  return s;
}

double StateVector::norm() const {
  double acc = 0.0;
  for (const auto& a : amps_) acc += std::norm(a);
  return std::sqrt(acc);
}

void StateVector::normalize() {
  const double n = norm();
  if (n == 0.0) throw std::domain_error("cannot normalize the zero vector");
  for (auto& a : amps_) a /= n;
}

void apply_pauli_rotation(StateVector& state, const PauliKey& key, double angle) {
  auto amps = state.amplitudes();
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  if (key.x == 0) {
    const cplx plus(c, s);
    const cplx minus(c, -s);
    for (std::size_t b = 0; b < amps.size(); ++b) {
      amps[b] *= (parity_sign(b, key.z) > 0) ? plus : minus;
    }
    return;
  }
  // i*s*i^{#Y}, applied with the parity sign of the source index
  const cplx f = cplx(0.0, s) * kIPow[key.y_count() & 3];
  const QubitMask pivot = key.x & (~key.x + 1);
  const std::size_t half = amps.size() / 2;
  for (std::size_t j = 0; j < half; ++j) {
    const std::size_t b = insert_zero(j, pivot);
    const std::size_t b2 = b ^ key.x;
    const cplx a1 = amps[b];
    const cplx a2 = amps[b2];
    amps[b] = c * a1 + f * parity_sign(b2, key.z) * a2;
    amps[b2] = c * a2 + f * parity_sign(b, key.z) * a1;
  }
}

void apply_generator_exp(StateVector& state, const Generator& g, double theta) {
  check_qubits(state.qubit_count(), g.qubit_count(), "apply_generator_exp");
  auto amps = state.amplitudes();
  const QubitMask all = static_cast<QubitMask>(amps.size() - 1);
  for (const TermGroup& gr : g.groups()) {
    if (gr.pair_weights.empty()) {
      for (const auto& t : gr.terms) apply_pauli_rotation(state, t.key, theta * t.rate);
      continue;
    }
    const QubitMask rest = all & ~gr.pattern_mask;
    // |beta| takes few distinct values; reuse the last trig pair.
    double m_prev = -1.0, c = 1.0, s_over_m = 0.0;
    for (const auto& [p, beta] : gr.pair_weights) {
      const double m = std::abs(beta);
      if (m != m_prev) {
        m_prev = m;
        c = std::cos(theta * m);
        s_over_m = std::sin(theta * m) / m;
      }
      const cplx u = cplx(0.0, s_over_m) * beta;
      const cplx l = cplx(0.0, s_over_m) * std::conj(beta);
      QubitMask r = 0;
      do {
        const std::size_t b = p | r;
        const std::size_t b2 = b ^ gr.x;
        const cplx a1 = amps[b], a2 = amps[b2];
        amps[b] = c * a1 + u * a2;
        amps[b2] = c * a2 + l * a1;
        r = (r - rest) & rest;
      } while (r != 0);
    }
  }
}

StateVector apply_generator_exp(StateVector state, const PauliSum& g, double theta) {
  apply_generator_exp(state, Generator(g), theta);
  return state;
}

void apply_pauli_sum(const PauliSum& s, const StateVector& in, StateVector& out) {
  check_qubits(in.qubit_count(), s.qubit_count(), "apply_pauli_sum");
  if (out.qubit_count() != in.qubit_count()) out = StateVector(in.qubit_count());
  auto o = out.amplitudes();
  const auto& i = in.amplitudes();
  std::fill(o.begin(), o.end(), cplx(0.0));
  for (const auto& [key, c] : s.terms()) {
    const cplx f = c * kIPow[key.y_count() & 3];
    for (std::size_t b = 0; b < i.size(); ++b) {
      o[b ^ key.x] += f * parity_sign(b, key.z) * i[b];
    }
  }
}

HermitianOperator::HermitianOperator(const PauliSum& h, double constant)
    : n_(h.qubit_count()), constant_(constant) {
  if (!h.is_hermitian(1e-10)) throw std::invalid_argument("operator is not hermitian");
  std::map<QubitMask, Group> by_x;
  for (const auto& [key, c] : h.terms()) {
    if (key.x == 0 && key.z == 0) {
      constant_ += c.real();
      continue;
    }
    auto& g = by_x[key.x];
    g.x = key.x;
    g.zterms.emplace_back(key.z, cplx(c.real(), 0.0) * kIPow[key.y_count() & 3]);
  }
  const std::size_t dim = std::size_t{1} << n_;
  std::size_t used = 0;
  for (auto& [x, g] : by_x) {
    if (g.zterms.size() > 1 && used + dim <= kDiagonalBudget) {
      g.diagonal.resize(dim);
      for (std::size_t b = 0; b < dim; ++b) g.diagonal[b] = group_diagonal(g, b);
      used += dim;
    }
    groups_.push_back(std::move(g));
  }
}

cplx HermitianOperator::group_diagonal(const Group& g, std::size_t b) const {
  cplx d = 0.0;
  for (const auto& [z, c] : g.zterms) d += parity_sign(b, z) * c;
  return d;
}

void HermitianOperator::apply(const StateVector& in, StateVector& out) const {
  check_qubits(in.qubit_count(), n_, "HermitianOperator::apply");
  if (out.qubit_count() != n_) out = StateVector(n_);
  auto o = out.amplitudes();
  const auto& i = in.amplitudes();
  std::fill(o.begin(), o.end(), cplx(0.0));
  for (const auto& g : groups_) {
    if (!g.diagonal.empty()) {
      for (std::size_t b = 0; b < i.size(); ++b) o[b ^ g.x] += g.diagonal[b] * i[b];
    } else {
      for (std::size_t b = 0; b < i.size(); ++b) o[b ^ g.x] += group_diagonal(g, b) * i[b];
    }
  }
}

double HermitianOperator::expectation(const StateVector& psi) const {
  check_qubits(psi.qubit_count(), n_, "HermitianOperator::expectation");
  const auto& a = psi.amplitudes();
  double acc = 0.0;
  for (const auto& g : groups_) {
    cplx part = 0.0;
    if (!g.diagonal.empty()) {
      for (std::size_t b = 0; b < a.size(); ++b) part += std::conj(a[b ^ g.x]) * g.diagonal[b] * a[b];
    } else {
      for (std::size_t b = 0; b < a.size(); ++b) {
        part += std::conj(a[b ^ g.x]) * group_diagonal(g, b) * a[b];
      }
    }
    acc += part.real();
  }
  return acc + constant_ * std::norm(psi.norm());
}

double expectation(const StateVector& state, const PauliSum& h) {
  check_qubits(state.qubit_count(), h.qubit_count(), "expectation");
  if (!h.is_hermitian(1e-10)) throw std::invalid_argument("expectation of non-hermitian operator");
  double acc = 0.0;
  for (const auto& [key, c] : h.terms()) {
    acc += (c * string_matrix_element(state, state, key)).real();
  }
  return acc;
}

double energy(const StateVector& state, const QubitHamiltonian& h) {
  return expectation(state, h.pauli_sum) + h.constant_offset * std::norm(state.norm());
}

double gradient_at_zero(const StateVector& state, const PauliSum& h, const PauliSum& p) {
  check_qubits(state.qubit_count(), h.qubit_count(), "gradient_at_zero");
  check_qubits(state.qubit_count(), p.qubit_count(), "gradient_at_zero");
  StateVector hpsi(state.qubit_count());
  StateVector ppsi(state.qubit_count());
  apply_pauli_sum(h, state, hpsi);
  apply_pauli_sum(p, state, ppsi);
  return 2.0 * overlap(hpsi, ppsi).real();
}

double commutator_expectation(const StateVector& h_psi, const StateVector& psi,
                              const Generator& g) {
  check_qubits(psi.qubit_count(), g.qubit_count(), "commutator_expectation");
  check_qubits(psi.qubit_count(), h_psi.qubit_count(), "commutator_expectation");
  const auto& a = h_psi.amplitudes();
  const auto& k = psi.amplitudes();
  const QubitMask all = static_cast<QubitMask>(k.size() - 1);
  cplx acc = 0.0;
  for (const TermGroup& gr : g.groups()) {
    if (gr.pair_weights.empty()) {
      for (const auto& t : gr.terms)
        acc += cplx(0.0, t.rate) * string_matrix_element(h_psi, psi, t.key);
      continue;
    }
    // <h_psi| i*B |psi> summed over pairs
    const QubitMask rest = all & ~gr.pattern_mask;
    for (const auto& [p, beta] : gr.pair_weights) {
      cplx up = 0.0, down = 0.0;
      QubitMask r = 0;
      do {
        const std::size_t b = p | r;
        const std::size_t b2 = b ^ gr.x;
        up += std::conj(a[b]) * k[b2];
        down += std::conj(a[b2]) * k[b];
        r = (r - rest) & rest;
      } while (r != 0);
      acc += cplx(0.0, 1.0) * (beta * up + std::conj(beta) * down);
    }
  }
  return 2.0 * acc.real();
}

cplx overlap(const StateVector& a, const StateVector& b) {
  check_qubits(a.qubit_count(), b.qubit_count(), "overlap");
  cplx acc = 0.0;
  const auto& x = a.amplitudes();
  const auto& y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

int count_determinants(const StateVector& state, double floor) {
  int n = 0;
  for (const auto& a : state.amplitudes()) {
    if (std::abs(a) >= floor) ++n;
  }
  return n;
}

StateVector prepare(const Ansatz& ansatz) { return prepare(ansatz, ansatz.parameters); }

StateVector prepare(const Ansatz& ansatz, std::span<const double> parameters) {
  if (parameters.size() != ansatz.operators.size()) {
    throw std::invalid_argument("ansatz has " + std::to_string(ansatz.operators.size()) +
                                " operators but " + std::to_string(parameters.size()) +
                                " parameters");
  }
  StateVector psi = StateVector::basis(ansatz.reference);
  for (std::size_t k = 0; k < parameters.size(); ++k) {
    apply_generator_exp(psi, ansatz.operators[k].generator, parameters[k]);
  }
  return psi;
}

AnsatzObjective::AnsatzObjective(const QubitHamiltonian& h, std::string reference,
                                 std::vector<PoolOperator> operators)
    : AnsatzObjective(std::make_shared<HermitianOperator>(h.pauli_sum, h.constant_offset),
                      std::move(reference), std::move(operators)) {}

AnsatzObjective::AnsatzObjective(std::shared_ptr<const HermitianOperator> h,
                                 std::string reference, std::vector<PoolOperator> operators)
    : h_(std::move(h)), reference_(std::move(reference)), ops_(std::move(operators)) {
  check_qubits(static_cast<int>(reference_.size()), h_->qubit_count(), "AnsatzObjective");
}

double AnsatzObjective::energy(std::span<const double> theta) const {
  StateVector psi = StateVector::basis(reference_);
  for (std::size_t k = 0; k < ops_.size(); ++k) {
    apply_generator_exp(psi, ops_[k].generator, theta[k]);
  }
  return h_->expectation(psi);
}

double AnsatzObjective::energy_and_gradient(std::span<const double> theta,
                                            std::span<double> grad) const {
  StateVector psi = StateVector::basis(reference_);
  for (std::size_t k = 0; k < ops_.size(); ++k) {
    apply_generator_exp(psi, ops_[k].generator, theta[k]);
  }
  StateVector lambda(psi.qubit_count());
  h_->apply(psi, lambda);
  const double e = overlap(psi, lambda).real() + h_->constant();
  for (std::size_t k = ops_.size(); k-- > 0;) {
    grad[k] = commutator_expectation(lambda, psi, ops_[k].generator);
    if (k == 0) break;
    apply_generator_exp(psi, ops_[k].generator, -theta[k]);
    apply_generator_exp(lambda, ops_[k].generator, -theta[k]);
  }
  return e;
}

std::vector<double> analytic_gradient(const Ansatz& ansatz, const QubitHamiltonian& h) {
  AnsatzObjective obj(h, ansatz.reference, ansatz.operators);
  std::vector<double> grad(ansatz.size());
  obj.energy_and_gradient(ansatz.parameters, grad);
  return grad;
}

}  // namespace tetris

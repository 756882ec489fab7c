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

#include "tetris/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <unordered_map>

#include "tetris/error.hpp"

namespace tetris {

namespace {

constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

// Hamiltonian restricted to a set of basis states, as a sparse row list.
struct SectorOperator {
  std::vector<std::size_t> basis;
  std::vector<std::vector<std::pair<int, cplx>>> rows;
  double constant = 0.0;

  std::size_t dim() const { return basis.size(); }

  void apply(const Eigen::VectorXcd& v, Eigen::VectorXcd& out) const {
    out.setZero(v.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      cplx acc = 0.0;
      for (const auto& [c, val] : rows[r]) acc += val * v(c);
      out(r) = acc + constant * v(r);
    }
  }

  Eigen::MatrixXcd dense() const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim(), dim());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (const auto& [c, val] : rows[r]) m(r, c) += val;
      m(r, r) += constant;
    }
    return m;
  }
};

SectorOperator build_sector(const QubitHamiltonian& h, std::optional<int> electrons) {
  const int n = h.qubit_count;
  SectorOperator op;
  op.constant = h.constant_offset;
  const std::size_t full = std::size_t{1} << n;
  std::vector<int> where(full, -1);
  for (std::size_t b = 0; b < full; ++b) {
    if (!electrons || std::popcount(b) == *electrons) {
      where[b] = static_cast<int>(op.basis.size());
      op.basis.push_back(b);
    }
  }
  // <b'|S|b> = i^{#Y} (-1)^{|b & z|} with b' = b ^ x
  std::map<QubitMask, std::vector<std::pair<QubitMask, cplx>>> groups;
  for (const auto& [k, c] : h.pauli_sum.terms()) {
    groups[k.x].emplace_back(k.z, c * kIPow[k.y_count() & 3]);
  }
  op.rows.resize(op.dim());
  for (std::size_t col = 0; col < op.dim(); ++col) {
    const std::size_t b = op.basis[col];
    for (const auto& [x, zs] : groups) {
      const int row = where[b ^ x];
      if (row < 0) continue;
      cplx v = 0.0;
      for (const auto& [z, c] : zs) v += (std::popcount(b & z) & 1) ? -c : c;
      if (std::abs(v) > 1e-15) op.rows[row].emplace_back(static_cast<int>(col), v);
    }
  }
  return op;
}

StateVector embed(const SectorOperator& op, const Eigen::VectorXcd& v, int n) {
  std::vector<cplx> amps(std::size_t{1} << n, cplx(0.0));
  for (std::size_t i = 0; i < op.dim(); ++i) amps[op.basis[i]] = v(i);
  StateVector s(n, std::move(amps));
  s.normalize();
  return s;
}

GroundTruth dense_ground(const SectorOperator& op, int n, double window) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.dense());
  GroundTruth t;
  t.energy = es.eigenvalues()(0);
  for (int i = 0; i < es.eigenvalues().size() && es.eigenvalues()(i) - t.energy <= window; ++i) {
    t.ground_space.push_back(embed(op, es.eigenvectors().col(i), n));
  }
  return t;
}

void orthogonalize(Eigen::VectorXcd& v, const std::vector<Eigen::VectorXcd>& against) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& u : against) v -= u.dot(v) * u;
  }
}

// Lowest eigenpair orthogonal to `deflate`, by restarted Lanczos with full
// reorthogonalization.
std::pair<double, Eigen::VectorXcd> lanczos_lowest(const SectorOperator& op,
                                                   const std::vector<Eigen::VectorXcd>& deflate,
                                                   std::mt19937_64& rng) {
  const int dim = static_cast<int>(op.dim());
  const int free_dim = dim - static_cast<int>(deflate.size());
  const int m = std::min(free_dim, 200);
  std::normal_distribution<double> g;
  Eigen::VectorXcd start(dim);
  for (int i = 0; i < dim; ++i) start(i) = {g(rng), g(rng)};
  double theta = 0.0;
  Eigen::VectorXcd ritz;
  for (int restart = 0; restart < 50; ++restart) {
    orthogonalize(start, deflate);
    start.normalize();
    std::vector<Eigen::VectorXcd> q = {start};
    std::vector<double> alpha, beta;
    Eigen::VectorXcd w;
    for (int j = 0; j < m; ++j) {
      op.apply(q[j], w);
      alpha.push_back(q[j].dot(w).real());
      orthogonalize(w, deflate);
      orthogonalize(w, q);
      const double b = w.norm();
      if (j + 1 == m || b < 1e-12) break;
      beta.push_back(b);
      q.push_back(w / b);
    }
    const int k = static_cast<int>(alpha.size());
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) {
      tri(i, i) = alpha[i];
      if (i + 1 < k) tri(i, i + 1) = tri(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    theta = es.eigenvalues()(0);
    ritz = Eigen::VectorXcd::Zero(dim);
    for (int i = 0; i < k; ++i) ritz += es.eigenvectors()(i, 0) * q[i];
    orthogonalize(ritz, deflate);
    ritz.normalize();
    Eigen::VectorXcd hr;
    op.apply(ritz, hr);
    theta = ritz.dot(hr).real();
    if ((hr - theta * ritz).norm() < 1e-11) break;
    start = ritz;
  }
  return {theta, ritz};
}

GroundTruth lanczos_ground(const SectorOperator& op, int n, double window) {
  std::mt19937_64 rng(12345);
  std::vector<Eigen::VectorXcd> found;
  GroundTruth t;
  auto [e0, v0] = lanczos_lowest(op, found, rng);
  t.energy = e0;
  found.push_back(v0);
  while (found.size() < op.dim()) {
    auto [e, v] = lanczos_lowest(op, found, rng);
    if (e - t.energy > window) break;
    t.energy = std::min(t.energy, e);
    found.push_back(v);
  }
  for (const auto& v : found) t.ground_space.push_back(embed(op, v, n));
  return t;
}

}  // namespace

GroundTruth ground_state(const QubitHamiltonian& h, const OracleOptions& opt) {
  if (h.qubit_count > opt.max_qubits) {
    throw CapacityError("exact oracle limited to " + std::to_string(opt.max_qubits) + " qubits");
  }
  const auto op = build_sector(h, opt.electron_count);
  if (op.dim() == 0) throw std::invalid_argument("empty electron-number sector");
  EigenMethod m = opt.method;
  if (m == EigenMethod::kAuto) m = h.qubit_count < 12 ? EigenMethod::kDense : EigenMethod::kLanczos;
  if (m == EigenMethod::kLanczos && op.dim() > 2) return lanczos_ground(op, h.qubit_count, opt.degeneracy_window);
  return dense_ground(op, h.qubit_count, opt.degeneracy_window);
}

OracleOptions sector_options(const QubitHamiltonian& h, EigenMethod method) {
  OracleOptions o;
  o.method = method;
  if (!h.hf_reference.empty()) o.electron_count = h.electron_count();
  return o;
}

double infidelity(const StateVector& state, const GroundTruth& truth) {
  double p = 0.0;
  for (const auto& v : truth.ground_space) p += std::norm(overlap(v, state));
  return std::clamp(1.0 - p, 0.0, 1.0);
}

double eigen_residual(const QubitHamiltonian& h, const StateVector& psi, double e) {
  const HermitianOperator op(h.pauli_sum, h.constant_offset);
  StateVector hp;
  op.apply(psi, hp);
  double r = 0.0;
  const double shift = e - h.constant_offset;
  for (std::size_t i = 0; i < psi.dimension(); ++i) r += std::norm(hp[i] - shift * psi[i]);
  return std::sqrt(r);
}

std::shared_ptr<const GroundTruth> GroundTruthCache::get(const QubitHamiltonian& h) {
  const std::string key = hamiltonian_to_json(h);
  std::lock_guard lock(mu_);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  auto t = std::make_shared<const GroundTruth>(ground_state(h, sector_options(h)));
  cache_.emplace(key, t);
  return t;
}

}  // namespace tetris

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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "tetris/chem.hpp"
#include "tetris/error.hpp"
#include "tetris/pools.hpp"
#include "tetris/statevector.hpp"

using namespace tetris;

namespace {

PauliSum sum(std::string_view s, int n) { return PauliSum::parse(s, n); }

PoolOperator op_from(const PauliSum& g, std::string label = {}) {
  PoolOperator op;
  op.generator = Generator(g);
  op.label = std::move(label);
  return op;
}

PoolOperator string_op(std::string_view s, int n) {
  PauliSum g(n);
  g.add(PauliString::parse(s, n), cplx(0, 1));
  return op_from(g, std::string(s));
}

const QubitHamiltonian& h4_far() {
  static const QubitHamiltonian h =
      jordan_wigner(parse_fcidump_file(oracle::fixture("h4_3.0.fcidump")));
  return h;
}

}  // namespace

TEST(StateVector, BitOrderRendersQubitZeroFirst) {
  const auto s = StateVector::basis("11110000");
  EXPECT_EQ(StateVector::index_of("11110000"), 0b1111u);
  EXPECT_EQ(s.ket(0b1111), "11110000");
  EXPECT_EQ(s.amplitude("11110000"), cplx(1.0));
}

TEST(StateVector, BadInputs) {
  EXPECT_THROW(StateVector::basis("10a"), std::invalid_argument);
  EXPECT_THROW(StateVector(2, std::vector<cplx>(3)), DimensionError);
}

TEST(ApplyExp, ZeroAngleIsIdentity) {
  auto s = oracle::random_state(4, 3);
  const auto before = s;
  apply_generator_exp(s, Generator(sum("+1i X0 Y2", 4)), 0.0);
  for (std::size_t i = 0; i < s.dimension(); ++i) EXPECT_EQ(s[i], before[i]);
}

TEST(ApplyExp, SingleQubitX) {
  const auto s = apply_generator_exp(StateVector(1), sum("+1i X0", 1), std::numbers::pi / 2);
  EXPECT_NEAR(std::abs(s[0]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s[1] - cplx(0, 1)), 0.0, 1e-15);
}

TEST(ApplyExp, WeightFourStringOnReference) {
  const auto s = apply_generator_exp(StateVector::basis("11110000"), sum("+1i X2 X3 X6 Y7", 8), 0.5652);
  EXPECT_NEAR(s.amplitude("11110000").real(), 0.8445, 2e-3);
  EXPECT_NEAR(s.amplitude("11000011").real(), -0.5356, 2e-3);
  EXPECT_EQ(count_determinants(s), 2);
}

TEST(ApplyExp, NonCommutingGeneratorRejected) {
  EXPECT_THROW(apply_generator_exp(StateVector(2), sum("+1i X0 +1i Z0", 2), 0.1), UnsupportedGenerator);
  EXPECT_THROW(Generator(sum("+1 X0", 1)), UnsupportedGenerator);
}

TEST(ApplyExp, MatchesDenseExponentialForStrings) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> ang(-3, 3);
  for (int t = 0; t < 60; ++t) {
    PauliString p(4);
    for (int q = 0; q < 4; ++q) p.set(q, Pauli(rng() % 4));
    if (p.weight() == 0) continue;
    const double c = ang(rng), theta = ang(rng);
    PauliSum g(4);
    g.add(p.key(), cplx(0, c));
    const Eigen::MatrixXcd dense = oracle::expm_antihermitian(to_matrix(g), theta);
    const Eigen::MatrixXcd closed = std::cos(c * theta) * Eigen::MatrixXcd::Identity(16, 16) +
                                    cplx(0, std::sin(c * theta)) * to_matrix(p);
    EXPECT_LT((dense - closed).cwiseAbs().maxCoeff(), 1e-12);
    const Generator gen(g);
    for (int col = 0; col < 16; ++col) {
      StateVector s = StateVector::basis(StateVector(4).ket(col));
      apply_generator_exp(s, gen, theta);
      EXPECT_LT((oracle::to_eigen(s) - dense.col(col)).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(ApplyExp, QeDoubleMatchesDenseExponential) {
  const auto g = jw_excitation({0, 1, 2, 3}, ExcitationKind::kQubit, 4);
  const Generator gen(g);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> ang(-3.2, 3.2);
  for (int t = 0; t < 10; ++t) {
    const double theta = ang(rng);
    const Eigen::MatrixXcd dense = oracle::expm_antihermitian(to_matrix(g), theta);
    const auto s0 = oracle::random_state(4, 100 + t);
    auto s = s0;
    apply_generator_exp(s, gen, theta);
    EXPECT_LT((oracle::to_eigen(s) - dense * oracle::to_eigen(s0)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(ApplyExp, PoolGeneratorsMatchDenseOperators) {
  // Multi-term generators take the tabulated pair path.
  for (const auto& pool : {build_qe_pool(6), build_fermionic_pool(6)}) {
    for (std::size_t i = 0; i < pool.size(); i += 3) {
      const auto& gen = pool[i].generator;
      const Eigen::MatrixXcd a = to_matrix(gen.sum());
      const double theta = 0.37 + 0.11 * static_cast<double>(i);
      const auto s0 = oracle::random_state(6, 300 + static_cast<unsigned>(i));
      auto s = s0;
      apply_generator_exp(s, gen, theta);
      const Eigen::VectorXcd v0 = oracle::to_eigen(s0);
      EXPECT_LT((oracle::to_eigen(s) - oracle::expm_antihermitian(a, theta) * v0).cwiseAbs().maxCoeff(),
                1e-12)
          << pool[i].label;
      const auto hv = oracle::random_state(6, 900 + static_cast<unsigned>(i));
      const double want = 2.0 * oracle::to_eigen(hv).dot(a * v0).real();
      EXPECT_NEAR(commutator_expectation(hv, s0, gen), want, 1e-12) << pool[i].label;
    }
  }
}

TEST(ApplyExp, NormPreservationAndReversibility) {
  std::vector<Generator> gens = {
      Generator(jw_excitation({0, 1, 2, 3}, ExcitationKind::kQubit, 6)),
      Generator(jw_excitation({1, 2, 4, 5}, ExcitationKind::kFermionic, 6)),
      Generator(jw_excitation({0, 4}, ExcitationKind::kFermionic, 6)),
      Generator(sum("+1i X1 Y3", 6)),
  };
  auto s = oracle::random_state(6, 9);
  const auto s0 = s;
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> ang(-3, 3);
  std::vector<std::pair<int, double>> applied;
  for (int t = 0; t < 200; ++t) {
    const int k = rng() % gens.size();
    const double th = ang(rng);
    apply_generator_exp(s, gens[k], th);
    applied.emplace_back(k, th);
  }
  EXPECT_NEAR(s.norm(), 1.0, 1e-12);
  for (auto it = applied.rbegin(); it != applied.rend(); ++it) apply_generator_exp(s, gens[it->first], -it->second);
  for (std::size_t i = 0; i < s.dimension(); ++i) EXPECT_NEAR(std::abs(s[i] - s0[i]), 0.0, 1e-12);
}

TEST(Expectation, Examples) {
  EXPECT_DOUBLE_EQ(expectation(StateVector(1), sum("+1 Z0", 1)), 1.0);
  const auto plus = apply_generator_exp(StateVector(1), sum("+1i Y0", 1), -std::numbers::pi / 4);
  EXPECT_NEAR(expectation(plus, sum("+1 Z0", 1)), 0.0, 1e-15);
  EXPECT_NEAR(expectation(plus, sum("+1 X0", 1)), 1.0, 1e-15);
  EXPECT_THROW(expectation(StateVector(2), sum("+1 Z0", 1)), DimensionError);
  EXPECT_THROW(expectation(StateVector(1), sum("+1i Z0", 1)), std::invalid_argument);
}

TEST(Expectation, RandomMatchesDenseQuadraticForm) {
  for (unsigned seed = 0; seed < 10; ++seed) {
    const auto h = oracle::random_sum(6, 30, seed, true);
    const auto s = oracle::random_state(6, seed + 50);
    const Eigen::VectorXcd v = oracle::to_eigen(s);
    const double dense = (v.adjoint() * to_matrix(h) * v)(0).real();
    EXPECT_NEAR(expectation(s, h), dense, 1e-10);
    const HermitianOperator op(h, 0.25);
    EXPECT_NEAR(op.expectation(s), dense + 0.25, 1e-10);
    StateVector out;
    op.apply(s, out);
    EXPECT_LT((oracle::to_eigen(out) - to_matrix(h) * v).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Gradient, VanishesAtEigenstate) {
  const auto h = sum("+1 Z0 +0.5 Z0 Z1", 2);
  const auto p = sum("+1i X0 Y1", 2);
  EXPECT_NEAR(gradient_at_zero(StateVector::basis("10"), h, p), 0.0, 1e-15);
}

TEST(Gradient, MatchesFiniteDifference) {
  const auto h = sum("+1 Z0", 1);
  const auto p = sum("+1i Y0", 1);
  auto e = [&](const std::vector<double>& th) {
    return expectation(apply_generator_exp(StateVector(1), p, th[0]), h);
  };
  EXPECT_NEAR(gradient_at_zero(StateVector(1), h, p), oracle::central_difference(e, {0.0}, 0), 1e-8);

  const auto& hh = h4_far();
  const auto s = oracle::random_state(8, 4);
  const auto g = jw_excitation({0, 2, 5, 7}, ExcitationKind::kQubit, 8);
  auto e2 = [&](const std::vector<double>& th) { return energy(apply_generator_exp(s, g, th[0]), hh); };
  EXPECT_NEAR(gradient_at_zero(s, hh.pauli_sum, g), oracle::central_difference(e2, {0.0}, 0), 1e-7);
  StateVector hpsi;
  HermitianOperator(hh.pauli_sum).apply(s, hpsi);
  EXPECT_NEAR(commutator_expectation(hpsi, s, Generator(g)), gradient_at_zero(s, hh.pauli_sum, g), 1e-12);
}

TEST(Prepare, EmptyAnsatzIsReference) {
  Ansatz a{"1100", {}, {}};
  const auto s = prepare(a);
  EXPECT_EQ(s.amplitude("1100"), cplx(1.0));
  EXPECT_EQ(count_determinants(s), 1);
}

TEST(Prepare, LengthMismatchThrows) {
  Ansatz a{"1100", {string_op("X0 Y2", 4)}, {}};
  EXPECT_THROW(prepare(a), std::invalid_argument);
}

TEST(Prepare, TwoLayerQubitAnsatzReachesSpinDownState) {
  Ansatz a{"11110000", {string_op("X2 X3 X6 Y7", 8), string_op("X0 X3 X5 Y6", 8)}, {1.5708, -1.5708}};
  const auto s = prepare(a);
  EXPECT_GT(std::abs(s.amplitude("01010101")), 1 - 1e-6);
}

TEST(Prepare, TetrisFirstLayerAmplitudes) {
  Ansatz a{"11110000", {string_op("X0 X1 X4 Y5", 8), string_op("X2 X3 X6 Y7", 8)}, {0.6757, 0.6748}};
  const auto s = prepare(a);
  EXPECT_NEAR(s.amplitude("11110000").real(), 0.6092, 2e-3);
  EXPECT_NEAR(s.amplitude("00111100").real(), -0.4884, 2e-3);
  EXPECT_NEAR(s.amplitude("11000011").real(), -0.4875, 2e-3);
  EXPECT_NEAR(s.amplitude("00001111").real(), 0.3908, 2e-3);
  EXPECT_EQ(count_determinants(s), 4);
}

TEST(AnalyticGradient, SingleOperatorAtZeroMatchesScreening) {
  const auto& h = h4_far();
  const auto g = jw_excitation({2, 3, 6, 7}, ExcitationKind::kQubit, 8);
  Ansatz a{h.hf_reference, {op_from(g)}, {0.0}};
  const auto grad = analytic_gradient(a, h);
  EXPECT_NEAR(grad[0], gradient_at_zero(StateVector::basis(h.hf_reference), h.pauli_sum, g), 1e-12);
}

TEST(AnalyticGradient, MatchesFiniteDifferenceOnRandomAnsatze) {
  const auto& h = h4_far();
  std::vector<PoolOperator> candidates = {
      op_from(jw_excitation({0, 1, 4, 5}, ExcitationKind::kQubit, 8)),
      op_from(jw_excitation({2, 3, 6, 7}, ExcitationKind::kQubit, 8)),
      op_from(jw_excitation({0, 4}, ExcitationKind::kQubit, 8)),
      op_from(jw_excitation({1, 3, 4, 6}, ExcitationKind::kFermionic, 8)),
      op_from(jw_excitation({1, 5}, ExcitationKind::kFermionic, 8)),
      string_op("X0 X1 X4 Y5", 8),
      string_op("Y2 Y3 Y6 X7", 8),
      string_op("X1 Y3", 8),
  };
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  for (int trial = 0; trial < 10; ++trial) {
    Ansatz a{h.hf_reference, {}, {}};
    for (int k = 0; k < 3; ++k) {
      a.operators.push_back(candidates[rng() % candidates.size()]);
      a.parameters.push_back(ang(rng));
    }
    const auto grad = analytic_gradient(a, h);
    auto e = [&](const std::vector<double>& th) { return energy(prepare(a, th), h); };
    for (std::size_t k = 0; k < 3; ++k) {
      EXPECT_NEAR(grad[k], oracle::central_difference(e, a.parameters, k), 1e-7);
    }
  }
}

TEST(Overlap, Basics) {
  const auto s = oracle::random_state(5, 8);
  EXPECT_NEAR(std::abs(overlap(s, s) - 1.0), 0.0, 1e-14);
  EXPECT_EQ(overlap(StateVector::basis("10"), StateVector::basis("01")), cplx(0.0));
  EXPECT_THROW(overlap(StateVector(2), StateVector(3)), DimensionError);
}

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
#include <limits>

#include "oracles.hpp"
#include "tetris/adapt.hpp"
#include "tetris/error.hpp"

using namespace tetris;

namespace {

const QubitHamiltonian& h4_far() {
  static const QubitHamiltonian h = load_hamiltonian(oracle::fixture("h4_3.0.fcidump"));
  return h;
}

const GroundTruth& h4_far_truth() {
  static const GroundTruth t = ground_state(h4_far(), sector_options(h4_far()));
  return t;
}

OperatorPool subset(const OperatorPool& full, const std::vector<std::string>& labels) {
  OperatorPool p;
  p.qubit_count = full.qubit_count;
  p.kind = full.kind;
  for (const auto& l : labels) p.operators.push_back(full[full.find(l).value()]);
  return p;
}

AdaptTrace run_h4(Variant v, int max_layers = 40) {
  AdaptConfig cfg;
  cfg.variant = v;
  cfg.max_layers = max_layers;
  return run(h4_far(), build_qubit_pool(8), cfg, &h4_far_truth());
}

const AdaptTrace& h4_adapt() {
  static const AdaptTrace t = run_h4(Variant::kAdapt);
  return t;
}

const AdaptTrace& h4_tetris() {
  static const AdaptTrace t = run_h4(Variant::kTetris);
  return t;
}

}  // namespace

TEST(Convergence, StrictThreshold) {
  EXPECT_TRUE(check_convergence(std::vector<double>(5, 0.0), 1e-7));
  EXPECT_FALSE(check_convergence(std::vector<double>{1e-4, 0.0, 0.0}, 1e-7));
  // Norm of 100 entries of 1e-8 is 1e-7 up to rounding; nudge below to pin strictness.
  EXPECT_FALSE(check_convergence(std::vector<double>(100, 1e-8), 1e-7 * (1 - 1e-15)));
  EXPECT_FALSE(check_convergence(std::vector<double>{1e-7}, 1e-7));
}

TEST(Selection, SingleTakesLargestMagnitude) {
  const auto pool = build_qubit_pool(4);
  std::vector<double> g(pool.size(), 0.0);
  g[0] = 0.1;
  g[1] = -0.9;
  g[2] = 0.3;
  EXPECT_EQ(select_single(g, pool), 1u);
}

TEST(Selection, TiesGoToLowestIndex) {
  const auto pool = build_qubit_pool(4);
  std::vector<double> g(pool.size(), 0.0);
  g[3] = 0.5;
  g[5] = -0.5;
  EXPECT_EQ(select_single(g, pool), 3u);
  g[3] = 0.5 - 1e-14;
  EXPECT_EQ(select_single(g, pool), 3u);
  EXPECT_EQ(select_single(g, pool, 0.0), 5u);
}

TEST(Selection, EmptyPoolThrows) {
  const auto pool = build_qubit_pool(2);
  ASSERT_TRUE(pool.empty());
  EXPECT_THROW(select_single({}, pool), std::invalid_argument);
  EXPECT_THROW(select_tetris_batch({}, pool, 2), std::invalid_argument);
}

TEST(Selection, GradientOrderGroupsNearTies) {
  const std::vector<double> g{0.3, -0.7, 0.7 + 1e-13, 0.1, 0.7 - 1e-13};
  EXPECT_EQ(gradient_order(g), (std::vector<std::size_t>{1, 2, 4, 0, 3}));
  EXPECT_EQ(gradient_order(g, 0.0), (std::vector<std::size_t>{2, 1, 4, 0, 3}));
}

TEST(Tetris, OverlappingCandidateSkipped) {
  const auto pool = subset(build_qubit_pool(8), {"X2 X3 X6 Y7", "X0 Y2", "X0 X1 X4 Y5"});
  const std::vector<double> g{0.9, 0.7, 0.5};
  EXPECT_EQ(select_tetris_batch(g, pool, 8), (std::vector<std::size_t>{0, 2}));
}

TEST(Tetris, FullCoverStopsBatch) {
  const auto pool = build_qubit_pool(4);
  std::vector<double> g(pool.size(), 0.1);
  const std::size_t top = pool.size() - 1;
  ASSERT_EQ(pool[top].support().size(), 4u);
  g[top] = 0.8;
  EXPECT_EQ(select_tetris_batch(g, pool, 4), (std::vector<std::size_t>{top}));
}

TEST(Tetris, FloorExcludesVanishingGradients) {
  const auto pool = subset(build_qubit_pool(8), {"X2 X3 X6 Y7", "X0 X1 X4 Y5"});
  EXPECT_TRUE(select_tetris_batch(std::vector<double>{1e-13, -1e-12}, pool, 8).empty());
  EXPECT_EQ(select_tetris_batch(std::vector<double>{1e-13, 2e-12}, pool, 8),
            (std::vector<std::size_t>{1}));
}

TEST(Screening, HartreeFockPicksFarDouble) {
  const auto pool = build_qubit_pool(8);
  long long count = 0;
  const auto g = screen_pool(StateVector::basis(h4_far().hf_reference), h4_far(), pool, &count);
  EXPECT_EQ(count, static_cast<long long>(pool.size()));
  EXPECT_EQ(pool[select_single(g, pool)].label, "X2 X3 X6 Y7");
  const auto batch = select_tetris_batch(g, pool, 8);
  ASSERT_EQ(batch.size(), 2u);
  EXPECT_EQ(pool[batch[0]].label, "X2 X3 X6 Y7");
  EXPECT_EQ(pool[batch[1]].support(), (std::vector<int>{0, 1, 4, 5}));
}

TEST(Screening, VanishesAtEigenstate) {
  const auto pool = build_qubit_pool(8);
  const auto g = screen_pool(h4_far_truth().ground_space.front(), h4_far(), pool);
  for (double x : g) EXPECT_NEAR(x, 0.0, 1e-9);
}

TEST(Screening, MatchesFiniteDifferences) {
  const auto h = load_hamiltonian(oracle::fixture("h4_1.5.fcidump"));
  const auto pool = build_qe_pool(8, 4);
  const StateVector psi = oracle::random_state(8, 11);
  const auto g = screen_pool(psi, h, pool);
  const Eigen::MatrixXcd hm = to_matrix(h.pauli_sum, 8);
  const Eigen::VectorXcd v = oracle::to_eigen(psi);
  for (std::size_t i = 0; i < pool.size(); i += 7) {
    const Eigen::MatrixXcd a = to_matrix(pool[i].generator.sum(), 8);
    auto f = [&](const std::vector<double>& t) {
      const Eigen::VectorXcd w = oracle::expm_antihermitian(a, t[0]) * v;
      return w.dot(hm * w).real();
    };
    EXPECT_NEAR(g[i], oracle::central_difference(f, {0.0}, 0), 1e-7) << pool[i].label;
  }
}

TEST(Screening, ThreadedMatchesSerial) {
  const auto pool = build_qubit_pool(8);
  const HermitianOperator op(h4_far().pauli_sum, h4_far().constant_offset);
  const StateVector psi = oracle::random_state(8, 5);
  EXPECT_EQ(screen_pool(psi, op, pool, nullptr, 1), screen_pool(psi, op, pool, nullptr, 3));
}

TEST(Run, ZeroLayersGivesReferenceRecord) {
  const auto t = run_h4(Variant::kAdapt, 0);
  ASSERT_EQ(t.records.size(), 1u);
  EXPECT_EQ(t.reason, StopReason::kMaxLayers);
  EXPECT_NEAR(t.records[0].energy, oracle::manifest("h4_3.0").hf_energy, 1e-8);
  EXPECT_EQ(t.records[0].measurements, static_cast<long long>(t.pool_size));
  EXPECT_EQ(t.records[0].parameter_count, 0);
  EXPECT_EQ(t.records[0].determinants, 1);
}

TEST(Run, EmptyPoolStopsImmediately) {
  QubitHamiltonian h;
  h.qubit_count = 2;
  h.pauli_sum = PauliSum::parse("+0.5 Z0 +0.25 Z1", 2);
  h.hf_reference = "10";
  const auto t = run(h, build_qubit_pool(2), AdaptConfig{});
  ASSERT_EQ(t.records.size(), 1u);
  EXPECT_EQ(t.reason, StopReason::kEmptyPool);
  EXPECT_EQ(t.records[0].measurements, 0);
}

TEST(Run, QubitAdaptStallsAtAllSpinDown) {
  const auto& t = h4_adapt();
  EXPECT_EQ(t.reason, StopReason::kStalledAtEigenstate);
  EXPECT_EQ(t.final_record().layer, 2);
  EXPECT_FALSE(t.final_record().converged);
  EXPECT_LT(t.final_record().gradient_norm, 1e-7);
  const StateVector psi = prepare(t.ansatz);
  EXPECT_GE(std::abs(psi.amplitude("01010101")), 1 - 1e-6);
}

TEST(Run, TetrisReachesGroundState) {
  const auto& t = h4_tetris();
  EXPECT_EQ(t.reason, StopReason::kConverged);
  EXPECT_TRUE(reached_ground(t.final_record()));
  EXPECT_LT(t.final_record().infidelity, 1e-6);
}

TEST(Run, TraceInvariants) {
  for (const AdaptTrace* t : {&h4_adapt(), &h4_tetris()}) {
    const double fci = oracle::manifest("h4_3.0").fci_energy;
    for (std::size_t k = 0; k < t->records.size(); ++k) {
      const LayerRecord& r = t->records[k];
      EXPECT_EQ(r.layer, static_cast<int>(k));
      EXPECT_EQ(r.measurements, static_cast<long long>((k + 1) * t->pool_size));
      EXPECT_GE(r.energy, fci - 1e-9);
      if (k > 0) EXPECT_LE(r.energy, t->records[k - 1].energy + 1e-12);
    }
    ASSERT_EQ(t->batches.size() + 1, t->records.size());
    std::size_t params = 0;
    for (std::size_t b = 0; b < t->batches.size(); ++b) {
      QubitMask covered = 0;
      const auto& grads = t->batch_gradients[b];
      for (std::size_t j = 0; j < t->batches[b].size(); ++j) {
        const QubitMask s = t->ansatz.operators[params + j].support_mask();
        EXPECT_EQ(s & covered, 0u);
        covered |= s;
        if (j > 0) EXPECT_LE(std::abs(grads[j]), std::abs(grads[j - 1]) + 1e-10);
      }
      params += t->batches[b].size();
      EXPECT_EQ(t->records[b + 1].parameter_count, static_cast<int>(params));
    }
  }
}

TEST(Run, FirstSelectionsCoincide) {
  EXPECT_EQ(h4_adapt().batches.front().front(), h4_tetris().batches.front().front());
}

TEST(Run, ReproducibleAcrossRuns) {
  const auto again = run_h4(Variant::kTetris);
  EXPECT_EQ(trace_to_csv(again), trace_to_csv(h4_tetris()));
  EXPECT_EQ(trace_to_json(again), trace_to_json(h4_tetris()));
}

TEST(Run, RandomInitIsSeeded) {
  AdaptConfig cfg;
  cfg.max_layers = 3;
  cfg.init_mode = InitMode::kRandom;
  cfg.seed = 7;
  const auto pool = build_qubit_pool(8);
  const auto a = run(h4_far(), pool, cfg);
  const auto b = run(h4_far(), pool, cfg);
  EXPECT_EQ(trace_to_csv(a), trace_to_csv(b));
  EXPECT_TRUE(std::isnan(a.records[0].energy_error));
}

TEST(Run, BadConfigRejected) {
  AdaptConfig cfg;
  cfg.pool_gradient_norm_threshold = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.max_layers = -1;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.stagnation_tolerance = -1e-12;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  EXPECT_THROW(run(h4_far(), build_qubit_pool(4), AdaptConfig{}), DimensionError);
}

TEST(Run, StagnationStopsAfterSmallDrop) {
  // The first layer lowers the energy by about 0.098 Ha.
  AdaptConfig cfg;
  cfg.stagnation_tolerance = 0.2;
  const auto t = run(h4_far(), build_qubit_pool(8), cfg, &h4_far_truth());
  EXPECT_EQ(t.reason, StopReason::kStagnated);
  ASSERT_EQ(t.records.size(), 2u);
  EXPECT_EQ(t.final_record().reason, StopReason::kStagnated);
  EXPECT_GT(t.records[0].energy - t.records[1].energy, 0.05);
  EXPECT_FALSE(t.final_record().converged);

  cfg.stagnation_tolerance = 0.0;
  cfg.max_layers = 3;
  cfg.variant = Variant::kTetris;
  EXPECT_EQ(run(h4_far(), build_qubit_pool(8), cfg, &h4_far_truth()).reason, StopReason::kMaxLayers);
}

TEST(Ratios, StagnatedAdaptAtGroundIsUsable) {
  AdaptTrace t = h4_tetris();
  t.reason = StopReason::kStagnated;
  EXPECT_DOUBLE_EQ(measurement_ratio(t, h4_tetris()), 1.0);
}

TEST(Ratios, IdenticalTracesGiveOne) {
  const auto& t = h4_tetris();
  EXPECT_DOUBLE_EQ(measurement_ratio(t, t), 1.0);
  EXPECT_DOUBLE_EQ(depth_ratio(t, t), 1.0);
}

TEST(Ratios, NonConvergedAdaptRejected) {
  EXPECT_THROW(measurement_ratio(h4_adapt(), h4_tetris()), std::invalid_argument);
}

TEST(Ratios, MatchedRecordIsFirstAtAccuracy) {
  AdaptTrace a, t;
  a.reason = StopReason::kConverged;
  LayerRecord r;
  r.energy_error = 1e-9;
  r.measurements = 30;
  r.depth = 60;
  a.records = {r};
  for (double e : {1e-2, 5e-10, 1e-12}) {
    r.energy_error = e;
    r.measurements += 10;
    r.depth = 20;
    t.records.push_back(r);
  }
  EXPECT_EQ(matched_record(a, t), 1u);
  EXPECT_DOUBLE_EQ(measurement_ratio(a, t), 30.0 / 50.0);
  EXPECT_DOUBLE_EQ(depth_ratio(a, t), 3.0);
  t.records.pop_back();
  t.records.pop_back();
  EXPECT_THROW(matched_record(a, t), std::invalid_argument);
}

TEST(Serialization, CsvHeaderLocked) {
  EXPECT_EQ(trace_csv_header(),
            "layer,selected,energy,energy_error,parameter_count,cnot_count,depth,measurements,"
            "infidelity,determinants,gradient_norm,optimizer_iterations,function_evaluations,"
            "converged,reason");
}

TEST(Serialization, CsvRowPerRecord) {
  const std::string csv = trace_to_csv(h4_adapt());
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'),
            static_cast<long>(h4_adapt().records.size() + 1));
  EXPECT_NE(csv.find("2,X0 X3 X5 Y6,"), std::string::npos);
  EXPECT_NE(csv.find(",stalled-at-eigenstate\n"), std::string::npos);
}

TEST(Serialization, CheckpointRestoresBitExactly) {
  const auto& t = h4_tetris();
  const auto pool = build_qubit_pool(8);
  const Ansatz back = checkpoint_from_json(checkpoint_to_json(t.ansatz, PoolKind::kQubit), pool);
  EXPECT_EQ(back.reference, t.ansatz.reference);
  EXPECT_EQ(back.parameters, t.ansatz.parameters);
  const StateVector a = prepare(t.ansatz), b = prepare(back);
  for (std::size_t i = 0; i < a.dimension(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(Serialization, CheckpointRejectsMismatch) {
  const std::string text = checkpoint_to_json(h4_adapt().ansatz, PoolKind::kQubit);
  EXPECT_THROW(checkpoint_from_json(text, build_qe_pool(8, 4)), ParseError);
  EXPECT_THROW(checkpoint_from_json(text, subset(build_qubit_pool(8), {"X0 Y2"})), ParseError);
  EXPECT_THROW(checkpoint_from_json("{", build_qubit_pool(8)), ParseError);
}

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

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tetris/chem.hpp"
#include "tetris/optimizer.hpp"
#include "tetris/oracle.hpp"
#include "tetris/pools.hpp"
#include "tetris/statevector.hpp"

namespace tetris {

inline constexpr double kChemicalAccuracy = 1.6e-3;

enum class Variant { kAdapt, kTetris };
std::string_view to_string(Variant v);
Variant parse_variant(std::string_view s);

enum class StopReason {
  kNone,
  kConverged,
  kStalledAtEigenstate,
  kStalledNotEigenstate,
  kMaxLayers,
  kEmptyBatch,
  kOptimizerFailure,
  kEmptyPool,
  /// A layer lowered the energy by less than the stagnation tolerance.
  kStagnated,
};
std::string_view to_string(StopReason r);

struct AdaptConfig {
  PoolKind pool_kind = PoolKind::kQubit;
  Variant variant = Variant::kAdapt;
  double pool_gradient_norm_threshold = 1e-7;
  int max_layers = 100;
  double eligibility_floor = 1e-12;
  /// Gradients whose magnitudes differ by at most this are ties.
  double tie_tolerance = 1e-10;
  OptimizerConfig optimizer;
  InitMode init_mode = InitMode::kWarm;
  std::uint64_t seed = 0;
  /// ||(H - E) psi|| below this marks a vanished pool gradient as an eigenstate.
  double eigenstate_residual = 1e-5;
  /// Stop once a layer lowers the energy by less than this (Hartree); 0 disables.
  /// Below ~1e-12 the change is rounding noise and the next layer repeats the selection.
  double stagnation_tolerance = 1e-12;
  /// Worker threads for pool screening.
  int threads = 1;

  void validate() const;
};

struct LayerRecord {
  int layer = 0;
  std::vector<std::string> selected;
  double energy = 0.0;
  /// NaN when no oracle was supplied.
  double energy_error = 0.0;
  int parameter_count = 0;
  int cnot_count = 0;
  int depth = 0;
  long long measurements = 0;
  double infidelity = 0.0;
  int determinants = 0;
  double gradient_norm = 0.0;
  int optimizer_iterations = 0;
  int function_evaluations = 0;
  bool converged = false;
  StopReason reason = StopReason::kNone;
};

struct AdaptTrace {
  std::string label;
  PoolKind pool_kind = PoolKind::kQubit;
  Variant variant = Variant::kAdapt;
  std::size_t pool_size = 0;
  std::vector<LayerRecord> records;
  /// Pool indices accepted at each layer, in acceptance order.
  std::vector<std::vector<std::size_t>> batches;
  /// Pool gradients that produced each batch.
  std::vector<std::vector<double>> batch_gradients;
  Ansatz ansatz;
  StopReason reason = StopReason::kNone;

  const LayerRecord& final_record() const { return records.back(); }
  /// Stopped on the pool-gradient criterion at the ground state.
  bool converged() const { return reason == StopReason::kConverged; }
};

/// Component i is the pool-gradient of operator i; adds pool.size() to
/// `measurements` when given.
std::vector<double> screen_pool(const StateVector& state, const HermitianOperator& h,
                                const OperatorPool& pool, long long* measurements = nullptr,
                                int threads = 1);
std::vector<double> screen_pool(const StateVector& state, const QubitHamiltonian& h,
                                const OperatorPool& pool, long long* measurements = nullptr);

/// True iff the L2 norm is strictly below threshold.
bool check_convergence(std::span<const double> gradients, double threshold);

/// Pool indices by descending |gradient|. Runs of magnitudes within
/// `tie_tolerance` of the run's largest are ordered by index.
std::vector<std::size_t> gradient_order(std::span<const double> gradients,
                                        double tie_tolerance = 1e-10);

/// Index of the largest |gradient|, lowest index on ties.
std::size_t select_single(std::span<const double> gradients, const OperatorPool& pool,
                          double tie_tolerance = 1e-10);

/// Greedy disjoint-support batch in descending |gradient| (ties by index).
std::vector<std::size_t> select_tetris_batch(std::span<const double> gradients,
                                             const OperatorPool& pool, int qubit_count,
                                             double floor = 1e-12, double tie_tolerance = 1e-10);

using LayerCallback = std::function<void(const LayerRecord&)>;

AdaptTrace run(const QubitHamiltonian& h, const OperatorPool& pool, const AdaptConfig& cfg,
               const GroundTruth* oracle = nullptr, const LayerCallback& on_layer = {});

/// Index of the first tetris record whose energy error is at most the adapt
/// final error, or the tetris final record if that reached the ground state.
/// Throws std::invalid_argument if the adapt final record is not at the ground
/// state or nothing matches.
std::size_t matched_record(const AdaptTrace& adapt, const AdaptTrace& tetris);

/// Cumulative measurements of ADAPT at its final record over TETRIS at matched accuracy.
double measurement_ratio(const AdaptTrace& adapt, const AdaptTrace& tetris);
/// Circuit depth ratio at the same pair of records.
double depth_ratio(const AdaptTrace& adapt, const AdaptTrace& tetris);

/// Ground reached: infidelity < 1e-6 and energy error < chemical accuracy.
bool reached_ground(const LayerRecord& r);

std::string trace_csv_header();
std::string trace_to_csv(const AdaptTrace& t);
std::string trace_to_json(const AdaptTrace& t);

/// {pool_kind, qubit_count, reference, operators: [labels], parameters}.
std::string checkpoint_to_json(const Ansatz& a, PoolKind kind);
/// Rebuilds the ansatz against `pool`; throws ParseError for unknown labels
/// or a pool mismatch.
Ansatz checkpoint_from_json(const std::string& text, const OperatorPool& pool);

}  // namespace tetris

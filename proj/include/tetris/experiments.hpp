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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "tetris/adapt.hpp"

namespace tetris {

struct RunConfig {
  std::vector<std::filesystem::path> fixtures;
  PoolKind pool = PoolKind::kQubit;
  std::vector<Variant> variants{Variant::kAdapt, Variant::kTetris};
  double threshold = 1e-7;
  double eligibility_floor = 1e-12;
  double gradient_tolerance = 1e-10;
  double stagnation_tolerance = 1e-12;
  int max_layers = 200;
  InitMode init_mode = InitMode::kWarm;
  std::uint64_t seed = 0;
  /// Landscape mode.
  int samples = 300;
  double range_min = -3.14159265358979323846;
  double range_max = 3.14159265358979323846;
  /// Highest layer sampled by landscape mode; 0 samples every layer.
  int landscape_layers = 0;
  std::filesystem::path out = ".";
  int threads = 1;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  AdaptConfig adapt_config(Variant v) const;
};

/// File stem of a fixture, e.g. "h4_3.0".
std::string run_label(const std::filesystem::path& fixture);
/// Stem up to the first underscore, e.g. "h4".
std::string molecule_name(const std::filesystem::path& fixture);

struct RunOutcome {
  std::string label;
  Variant variant = Variant::kAdapt;
  AdaptTrace trace;
};

/// Runs every (fixture, variant) pair, writes trace and checkpoint files and
/// one summary line per run to `log`. Returns 0 when every run ended on the
/// pool-gradient criterion, stagnated, or hit an empty batch or pool.
int cmd_run(const RunConfig& cfg, std::ostream& log, std::vector<RunOutcome>* outcomes = nullptr);

struct TableRow {
  std::string molecule;
  PoolKind pool = PoolKind::kQubit;
  int qubits = 0;
  std::size_t pool_size = 0;
  int geometries = 0;
  int excluded = 0;
  double depth_ratio = 0.0;
  double adapt_measurements = 0.0;
  double tetris_measurements = 0.0;
  double measurement_ratio = 0.0;
  double reduction_percent = 0.0;
};

/// Averages over geometries where both variants reached the ground state.
/// Throws std::invalid_argument if a molecule has no usable geometry.
std::vector<TableRow> summarize(const std::vector<RunOutcome>& outcomes);
std::string table1_csv(const std::vector<TableRow>& rows);
std::string table2_csv(const std::vector<TableRow>& rows);

/// Runs both variants per fixture and writes table1.csv and table2.csv.
int cmd_compare(const RunConfig& cfg, std::ostream& log, std::vector<TableRow>* rows = nullptr);

struct LandscapeSample {
  std::string variant;
  std::string start;  // warm, cold or random
  int sample = 0;
  double energy = 0.0;
  int function_evaluations = 0;
};

struct LandscapeLayer {
  std::string label;
  int layer = 0;
  std::vector<LandscapeSample> samples;
};

/// Warm, cold and `samples` random starts at every layer of each variant's
/// warm-start trace. Writes landscape_<label>_layer<k>.csv.
int cmd_landscape(const RunConfig& cfg, std::ostream& log,
                  std::vector<LandscapeLayer>* layers = nullptr);

std::string landscape_csv_header();
std::string landscape_csv(const LandscapeLayer& layer);

}  // namespace tetris

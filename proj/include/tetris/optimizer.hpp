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
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tetris {

struct OptimizerConfig {
  double gradient_norm_tolerance = 1e-10;
  /// 0 means 200 * number of parameters.
  int max_iterations = 0;
  double c1 = 1e-4;
  double c2 = 0.9;

  /// Throws std::invalid_argument for out-of-range settings.
  void validate() const;
};

struct OptimizationResult {
  std::vector<double> parameters;
  double energy = 0.0;
  double gradient_norm = 0.0;
  int function_evaluations = 0;
  int gradient_evaluations = 0;
  int iterations = 0;
  bool converged = false;
  std::string message;
};

/// Returns f(x) and writes the gradient into `grad`.
using ValueAndGradient = std::function<double(std::span<const double> x, std::span<double> grad)>;

/// BFGS with a dense inverse-Hessian update (identity start) and a
/// strong-Wolfe line search with cubic interpolation.
OptimizationResult minimize(const ValueAndGradient& fg, std::vector<double> x0,
                            const OptimizerConfig& cfg = {});

OptimizationResult minimize(const std::function<double(std::span<const double>)>& f,
                            const std::function<void(std::span<const double>, std::span<double>)>& grad,
                            std::vector<double> x0, const OptimizerConfig& cfg = {});

enum class InitMode { kWarm, kCold, kRandom };

std::string_view to_string(InitMode m);
InitMode parse_init_mode(std::string_view s);

/// warm: previous values then zeros; cold: all zeros; random: all entries
/// i.i.d. uniform on [-pi, pi] from a generator seeded with `seed`.
std::vector<double> initialize_parameters(std::span<const double> previous, std::size_t new_count,
                                          InitMode mode, std::uint64_t seed = 0);

}  // namespace tetris

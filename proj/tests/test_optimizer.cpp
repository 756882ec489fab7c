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
#include "tetris/optimizer.hpp"
#include "tetris/pools.hpp"
#include "tetris/statevector.hpp"

using namespace tetris;

TEST(Minimize, ShiftedQuadratic) {
  auto fg = [](std::span<const double> x, std::span<double> g) {
    double f = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      f += (x[i] - 1) * (x[i] - 1);
      g[i] = 2 * (x[i] - 1);
    }
    return f;
  };
  const auto r = minimize(fg, std::vector<double>(5, 0.0));
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.iterations, 3);
  EXPECT_NEAR(r.energy, 0.0, 1e-20);
  for (double v : r.parameters) EXPECT_NEAR(v, 1.0, 1e-10);
}

TEST(Minimize, CosineFindsNearestMinimum) {
  auto f = [](std::span<const double> x) { return std::cos(x[0]); };
  auto g = [](std::span<const double> x, std::span<double> d) { d[0] = -std::sin(x[0]); };
  const auto r = minimize(f, g, {0.1});
  // Dense scan: the minimum of cos reached by descent from 0.1 is at pi.
  double best = 0, best_f = 1e9;
  for (int i = 0; i <= 100000; ++i) {
    const double x = 0.1 + 6.0 * i / 100000;
    if (std::cos(x) < best_f) best_f = std::cos(x), best = x;
  }
  EXPECT_NEAR(best, std::numbers::pi, 1e-4);
  EXPECT_NEAR(r.parameters[0], std::numbers::pi, 1e-9);
  EXPECT_LE(r.gradient_norm, 1e-10);
  EXPECT_TRUE(r.converged);
}

TEST(Minimize, ConvexQuadraticsFiniteTermination) {
  std::mt19937 rng(12);
  std::normal_distribution<double> nd;
  for (int dim = 1; dim <= 20; ++dim) {
    Eigen::MatrixXd a(dim, dim);
    for (auto& v : a.reshaped()) v = nd(rng);
    const Eigen::MatrixXd q = a * a.transpose() + Eigen::MatrixXd::Identity(dim, dim);
    Eigen::VectorXd b(dim);
    for (auto& v : b) v = nd(rng);
    auto fg = [&](std::span<const double> x, std::span<double> g) {
      Eigen::Map<const Eigen::VectorXd> xv(x.data(), dim);
      Eigen::Map<Eigen::VectorXd> gv(g.data(), dim);
      gv = q * xv - b;
      return 0.5 * xv.dot(q * xv) - b.dot(xv);
    };
    // Finite termination needs (near-)exact line searches.
    OptimizerConfig tight;
    tight.c1 = 1e-5;
    tight.c2 = 1e-3;
    const auto r = minimize(fg, std::vector<double>(dim, 0.0), tight);
    EXPECT_TRUE(r.converged) << dim;
    EXPECT_LE(r.iterations, dim + 2) << dim;
    const auto loose = minimize(fg, std::vector<double>(dim, 0.0));
    EXPECT_TRUE(loose.converged) << dim;
  }
}

TEST(Minimize, NeverIncreasesAndRespectsSufficientDecrease) {
  // Rosenbrock: each accepted iterate lowers f.
  std::vector<double> seen;
  auto fg = [&](std::span<const double> x, std::span<double> g) {
    const double a = 1 - x[0], b = x[1] - x[0] * x[0];
    g[0] = -2 * a - 400 * x[0] * b;
    g[1] = 200 * b;
    return a * a + 100 * b * b;
  };
  const std::vector<double> x0 = {-1.2, 1.0};
  std::vector<double> g0(2);
  const double f0 = fg(x0, g0);
  const auto r = minimize(fg, x0);
  EXPECT_LE(r.energy, f0 + 1e-12);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.parameters[0], 1.0, 1e-8);
}

TEST(Minimize, NonFiniteStartThrows) {
  auto fg = [](std::span<const double>, std::span<double> g) {
    g[0] = 0;
    return std::nan("");
  };
  EXPECT_THROW(minimize(fg, {0.0}), OptimizationFailure);
}

TEST(Minimize, NonFiniteRegionIsAvoided) {
  // log barrier: f undefined for x <= 0; start close to the wall.
  auto fg = [](std::span<const double> x, std::span<double> g) {
    if (x[0] <= 0) {
      g[0] = std::nan("");
      return std::nan("");
    }
    g[0] = 1 - 1 / x[0];
    return x[0] - std::log(x[0]);
  };
  const auto r = minimize(fg, {5.0});
  EXPECT_NEAR(r.parameters[0], 1.0, 1e-8);
}

TEST(Minimize, ConfigValidation) {
  OptimizerConfig c;
  c.c1 = 0.95;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.gradient_norm_tolerance = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Minimize, H4FirstLayerAngle) {
  const auto h = jordan_wigner(parse_fcidump_file(oracle::fixture("h4_3.0.fcidump")));
  const auto pool = build_qubit_pool(8);
  const AnsatzObjective obj(h, h.hf_reference, {pool[*pool.find("X2 X3 X6 Y7")]});
  const auto r = minimize([&](std::span<const double> x, std::span<double> g) {
    return obj.energy_and_gradient(x, g);
  }, {0.0});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.parameters[0], 0.5652, 1e-3);
}

TEST(InitializeParameters, Modes) {
  const std::vector<double> prev = {0.5};
  EXPECT_EQ(initialize_parameters(prev, 3, InitMode::kWarm), (std::vector<double>{0.5, 0, 0}));
  EXPECT_EQ(initialize_parameters({}, 4, InitMode::kCold), (std::vector<double>(4, 0.0)));
  const auto a = initialize_parameters(prev, 50, InitMode::kRandom, 7);
  const auto b = initialize_parameters(prev, 50, InitMode::kRandom, 7);
  EXPECT_EQ(a, b);
  for (double v : a) {
    EXPECT_GE(v, -std::numbers::pi);
    EXPECT_LE(v, std::numbers::pi);
  }
  EXPECT_NE(a, initialize_parameters(prev, 50, InitMode::kRandom, 8));
  EXPECT_THROW(initialize_parameters(prev, 0, InitMode::kWarm), std::invalid_argument);
}

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

#include "tetris/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "tetris/error.hpp"

namespace tetris {

namespace {

using Vec = Eigen::VectorXd;

struct Point {
  double alpha = 0.0;
  double f = 0.0;
  double df = 0.0;  // directional derivative along p
  Vec g;
};

class Evaluator {
 public:
  Evaluator(const ValueAndGradient& fg, OptimizationResult& res) : fg_(fg), res_(res) {}

  // Returns false on non-finite output.
  bool eval(const Vec& x, double& f, Vec& g) {
    g.resize(x.size());
    f = fg_(std::span<const double>(x.data(), x.size()), std::span<double>(g.data(), g.size()));
    ++res_.function_evaluations;
    ++res_.gradient_evaluations;
    return std::isfinite(f) && g.allFinite();
  }

 private:
  const ValueAndGradient& fg_;
  OptimizationResult& res_;
};

double cubic_min(const Point& a, const Point& b) {
  const double d1 = a.df + b.df - 3.0 * (a.f - b.f) / (a.alpha - b.alpha);
  const double disc = d1 * d1 - a.df * b.df;
  const double lo = std::min(a.alpha, b.alpha), hi = std::max(a.alpha, b.alpha);
  const double mid = 0.5 * (a.alpha + b.alpha);
  if (!(disc >= 0.0)) return mid;
  const double d2 = std::copysign(std::sqrt(disc), b.alpha - a.alpha);
  const double den = b.df - a.df + 2.0 * d2;
  if (den == 0.0) return mid;
  const double t = b.alpha - (b.alpha - a.alpha) * (b.df + d2 - d1) / den;
  const double margin = 0.1 * (hi - lo);
  if (!std::isfinite(t) || t < lo + margin || t > hi - margin) return mid;
  return t;
}

enum class SearchStatus { kWolfe, kArmijoOnly, kFailed };

struct LineSearch {
  Evaluator& ev;
  const Vec& x;
  const Vec& p;
  double c1, c2;
  Point zero;
  double slack;

  bool probe(double alpha, Point& out) {
    // Non-finite values halve the step toward the origin.
    for (int tries = 0; tries < 40; ++tries) {
      out.alpha = alpha;
      if (ev.eval(x + alpha * p, out.f, out.g)) {
        out.df = out.g.dot(p);
        return true;
      }
      alpha *= 0.5;
    }
    return false;
  }

  bool armijo(const Point& q) const { return q.f <= zero.f + c1 * q.alpha * zero.df + slack; }
  bool curvature(const Point& q) const { return std::abs(q.df) <= -c2 * zero.df; }

  SearchStatus zoom(Point lo, Point hi, Point& out) {
    for (int it = 0; it < 40; ++it) {
      if (std::abs(hi.alpha - lo.alpha) <= 1e-14 * std::max(1.0, std::abs(lo.alpha))) break;
      Point q;
      if (!probe(cubic_min(lo, hi), q)) return SearchStatus::kFailed;
      if (!armijo(q) || q.f >= lo.f) {
        hi = q;
      } else {
        if (curvature(q)) {
          out = q;
          return SearchStatus::kWolfe;
        }
        if (q.df * (hi.alpha - lo.alpha) >= 0) hi = lo;
        lo = q;
      }
    }
    if (lo.alpha > 0 && lo.f < zero.f) {
      out = lo;
      return SearchStatus::kArmijoOnly;
    }
    return SearchStatus::kFailed;
  }

  SearchStatus run(double alpha1, Point& out) {
    Point prev = zero;
    double alpha = alpha1;
    for (int it = 0; it < 30; ++it) {
      Point q;
      if (!probe(alpha, q)) return SearchStatus::kFailed;
      if (!armijo(q) || (it > 0 && q.f >= prev.f)) return zoom(prev, q, out);
      if (curvature(q)) {
        out = q;
        return SearchStatus::kWolfe;
      }
      if (q.df >= 0) return zoom(q, prev, out);
      prev = q;
      alpha = 2.0 * q.alpha;
    }
    return SearchStatus::kFailed;
  }
};

}  // namespace

void OptimizerConfig::validate() const {
  if (!(gradient_norm_tolerance > 0)) throw std::invalid_argument("gradient tolerance must be > 0");
  if (!(c1 > 0 && c1 < c2 && c2 < 1)) throw std::invalid_argument("need 0 < c1 < c2 < 1");
  if (max_iterations < 0) throw std::invalid_argument("max_iterations must be >= 0");
}

OptimizationResult minimize(const ValueAndGradient& fg, std::vector<double> x0,
                            const OptimizerConfig& cfg) {
  cfg.validate();
  OptimizationResult res;
  Evaluator ev(fg, res);
  const int n = static_cast<int>(x0.size());
  Vec x = Eigen::Map<Vec>(x0.data(), n);
  double f;
  Vec g;
  if (!ev.eval(x, f, g)) {
    std::ostringstream msg;
    msg << "non-finite objective or gradient at the starting point (n=" << n << ")";
    throw OptimizationFailure(msg.str());
  }
  const int max_iter = cfg.max_iterations > 0 ? cfg.max_iterations : 200 * std::max(n, 1);
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
  double f_prev = f + g.norm() / 2;
  res.message = "maximum iterations reached";

  while (n > 0 && g.norm() > cfg.gradient_norm_tolerance && res.iterations < max_iter) {
    Vec p = -hinv * g;
    double gp = g.dot(p);
    if (!(gp < 0)) {
      hinv.setIdentity();
      p = -g;
      gp = g.dot(p);
    }
    Point out;
    SearchStatus st = SearchStatus::kFailed;
    for (int attempt = 0; attempt < 2; ++attempt) {
      double alpha1 = 1.0;
      if (f_prev != f && gp != 0) alpha1 = std::min(1.0, 1.01 * 2.0 * (f - f_prev) / gp);
      if (!(alpha1 > 0)) alpha1 = 1.0;
      LineSearch ls{ev, x, p, cfg.c1, cfg.c2, Point{0.0, f, gp, g},
                    4 * std::numeric_limits<double>::epsilon() * (std::abs(f) + 1.0)};
      st = ls.run(alpha1, out);
      if (st != SearchStatus::kFailed || attempt == 1) break;
      // Retry once along steepest descent with a fresh Hessian.
      hinv.setIdentity();
      p = -g;
      gp = g.dot(p);
    }
    if (st == SearchStatus::kFailed) {
      res.message = "line search failed (precision loss)";
      break;
    }
    const Vec s = out.alpha * p;
    const Vec y = out.g - g;
    f_prev = f;
    x += s;
    f = out.f;
    g = out.g;
    ++res.iterations;
    const double ys = y.dot(s);
    if (ys > 0 && std::isfinite(ys)) {
      const double rho = 1.0 / ys;
      const Vec hy = hinv * y;
      // (I - rho s y^T) H (I - rho y s^T) + rho s s^T
      hinv += rho * ((1.0 + rho * y.dot(hy)) * (s * s.transpose()) - hy * s.transpose() -
                     s * hy.transpose());
    }
  }
  res.parameters.assign(x.data(), x.data() + n);
  res.energy = f;
  res.gradient_norm = g.norm();
  res.converged = res.gradient_norm <= cfg.gradient_norm_tolerance;
  if (res.converged) res.message = "converged";
  return res;
}

OptimizationResult minimize(const std::function<double(std::span<const double>)>& f,
                            const std::function<void(std::span<const double>, std::span<double>)>& grad,
                            std::vector<double> x0, const OptimizerConfig& cfg) {
  return minimize(
      [&](std::span<const double> x, std::span<double> g) {
        grad(x, g);
        return f(x);
      },
      std::move(x0), cfg);
}

std::string_view to_string(InitMode m) {
  switch (m) {
    case InitMode::kWarm: return "warm";
    case InitMode::kCold: return "cold";
    case InitMode::kRandom: return "random";
  }
  return "unknown";
}

InitMode parse_init_mode(std::string_view s) {
  if (s == "warm") return InitMode::kWarm;
  if (s == "cold") return InitMode::kCold;
  if (s == "random") return InitMode::kRandom;
  throw std::invalid_argument("unknown init mode '" + std::string(s) + "'");
}

std::vector<double> initialize_parameters(std::span<const double> previous, std::size_t new_count,
                                          InitMode mode, std::uint64_t seed) {
  if (new_count < previous.size()) {
    throw std::invalid_argument("new parameter count is smaller than the previous one");
  }
  std::vector<double> out(new_count, 0.0);
  switch (mode) {
    case InitMode::kWarm:
      std::copy(previous.begin(), previous.end(), out.begin());
      break;
    case InitMode::kCold:
      break;
    case InitMode::kRandom: {
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
      for (auto& v : out) v = u(rng);
      break;
    }
  }
  return out;
}

}  // namespace tetris

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


#include "tetris/adapt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "tetris/circuit.hpp"
#include "tetris/error.hpp"

namespace tetris {

std::string_view to_string(Variant v) { return v == Variant::kAdapt ? "adapt" : "tetris"; }

Variant parse_variant(std::string_view s) {
  if (s == "adapt") return Variant::kAdapt;
  if (s == "tetris") return Variant::kTetris;
  throw std::invalid_argument("unknown variant: " + std::string(s));
}

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::kNone: return "";
    case StopReason::kConverged: return "converged";
    case StopReason::kStalledAtEigenstate: return "stalled-at-eigenstate";
    case StopReason::kStalledNotEigenstate: return "stalled-not-eigenstate";
    case StopReason::kMaxLayers: return "max-layers";
    case StopReason::kEmptyBatch: return "empty-batch";
    case StopReason::kOptimizerFailure: return "optimizer-failure";
    case StopReason::kEmptyPool: return "empty-pool";
    case StopReason::kStagnated: return "stagnated";
  }
  return "";
}

void AdaptConfig::validate() const {
  if (!(pool_gradient_norm_threshold > 0.0)) throw std::invalid_argument("threshold must be positive");
  if (!(eligibility_floor > 0.0)) throw std::invalid_argument("eligibility floor must be positive");
  if (!(eigenstate_residual > 0.0)) throw std::invalid_argument("residual tolerance must be positive");
  if (!(stagnation_tolerance >= 0.0)) throw std::invalid_argument("stagnation tolerance must be nonnegative");
  if (!(tie_tolerance >= 0.0)) throw std::invalid_argument("tie tolerance must be non-negative");
  if (max_layers < 0) throw std::invalid_argument("max_layers must be non-negative");
  if (threads < 1) throw std::invalid_argument("threads must be at least 1");
  optimizer.validate();
}

std::vector<double> screen_pool(const StateVector& state, const HermitianOperator& h,
                                const OperatorPool& pool, long long* measurements, int threads) {
  if (state.qubit_count() != pool.qubit_count || h.qubit_count() != pool.qubit_count)
    throw DimensionError("screen_pool: qubit counts differ");
  std::vector<double> g(pool.size(), 0.0);
  if (!pool.empty()) {
    StateVector h_psi;
    h.apply(state, h_psi);
    auto work = [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i)
        g[i] = commutator_expectation(h_psi, state, pool[i].generator);
    };
    const std::size_t workers = std::min<std::size_t>(std::max(threads, 1), pool.size());
    if (workers <= 1) {
      work(0, pool.size());
    } else {
      std::vector<std::thread> pool_threads;
      const std::size_t chunk = (pool.size() + workers - 1) / workers;
      for (std::size_t b = 0; b < pool.size(); b += chunk)
        pool_threads.emplace_back(work, b, std::min(pool.size(), b + chunk));
      for (auto& t : pool_threads) t.join();
    }
  }
  if (measurements) *measurements += static_cast<long long>(pool.size());
  return g;
}

std::vector<double> screen_pool(const StateVector& state, const QubitHamiltonian& h,
                                const OperatorPool& pool, long long* measurements) {
  const HermitianOperator op(h.pauli_sum, h.constant_offset);
  return screen_pool(state, op, pool, measurements);
}

bool check_convergence(std::span<const double> gradients, double threshold) {
  double s = 0.0;
  for (double g : gradients) s += g * g;
  return std::sqrt(s) < threshold;
}

std::vector<std::size_t> gradient_order(std::span<const double> gradients, double tie_tolerance) {
  std::vector<std::size_t> order(gradients.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(gradients[a]) > std::abs(gradients[b]);
  });
  for (std::size_t lo = 0; lo < order.size();) {
    const double top = std::abs(gradients[order[lo]]);
    std::size_t hi = lo + 1;
    while (hi < order.size() && top - std::abs(gradients[order[hi]]) <= tie_tolerance) ++hi;
    std::sort(order.begin() + lo, order.begin() + hi);
    lo = hi;
  }
  return order;
}

std::size_t select_single(std::span<const double> gradients, const OperatorPool& pool,
                          double tie_tolerance) {
  if (pool.empty()) throw std::invalid_argument("select_single: empty pool");
  if (gradients.size() != pool.size()) throw DimensionError("select_single: size mismatch");
  return gradient_order(gradients, tie_tolerance).front();
}

std::vector<std::size_t> select_tetris_batch(std::span<const double> gradients,
                                             const OperatorPool& pool, int qubit_count,
                                             double floor, double tie_tolerance) {
  if (pool.empty()) throw std::invalid_argument("select_tetris_batch: empty pool");
  if (gradients.size() != pool.size()) throw DimensionError("select_tetris_batch: size mismatch");
  const QubitMask all = qubit_count >= 64 ? ~QubitMask{0} : (QubitMask{1} << qubit_count) - 1;
  QubitMask covered = 0;
  std::vector<std::size_t> batch;
  for (std::size_t i : gradient_order(gradients, tie_tolerance)) {
    if (!(std::abs(gradients[i]) > floor)) continue;
    const QubitMask s = pool[i].support_mask();
    if (s & covered) continue;
    batch.push_back(i);
    covered |= s;
    if ((covered & all) == all) break;
  }
  return batch;
}

namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double residual(const HermitianOperator& h, const StateVector& psi, double e) {
  StateVector hp;
  h.apply(psi, hp);
  const double shift = e - h.constant();
  double r = 0.0;
  for (std::size_t i = 0; i < psi.dimension(); ++i) r += std::norm(hp[i] - shift * psi[i]);
  return std::sqrt(r);
}

std::uint64_t layer_seed(std::uint64_t seed, int layer) {
  return seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(layer + 1);
}

}  // namespace

AdaptTrace run(const QubitHamiltonian& h, const OperatorPool& pool, const AdaptConfig& cfg,
               const GroundTruth* oracle, const LayerCallback& on_layer) {
  cfg.validate();
  if (h.qubit_count != pool.qubit_count) throw DimensionError("run: pool and Hamiltonian qubit counts differ");
  if (static_cast<int>(h.hf_reference.size()) != h.qubit_count)
    throw DimensionError("run: reference length differs from qubit count");

  auto op = std::make_shared<const HermitianOperator>(h.pauli_sum, h.constant_offset);
  AdaptTrace trace;
  trace.pool_kind = pool.kind;
  trace.variant = cfg.variant;
  trace.pool_size = pool.size();
  trace.ansatz.reference = h.hf_reference;

  StateVector state = StateVector::basis(h.hf_reference);
  double e = op->expectation(state);
  double e_before = e;
  long long measurements = 0;
  int layer = 0;
  std::vector<std::string> selected;
  OptimizationResult last_opt;

  while (true) {
    std::vector<double> grads = screen_pool(state, *op, pool, &measurements, cfg.threads);

    LayerRecord rec;
    rec.layer = layer;
    rec.selected = selected;
    rec.energy = e;
    rec.parameter_count = static_cast<int>(trace.ansatz.size());
    const ResourceReport rep = ansatz_report(trace.ansatz);
    rec.cnot_count = rep.cnot_count;
    rec.depth = rep.depth;
    rec.measurements = measurements;
    rec.determinants = count_determinants(state);
    rec.gradient_norm = norm2(grads);
    rec.optimizer_iterations = last_opt.iterations;
    rec.function_evaluations = last_opt.function_evaluations;
    if (oracle) {
      rec.energy_error = e - oracle->energy;
      rec.infidelity = infidelity(state, *oracle);
    } else {
      rec.energy_error = std::numeric_limits<double>::quiet_NaN();
      rec.infidelity = std::numeric_limits<double>::quiet_NaN();
    }

    StopReason stop = StopReason::kNone;
    std::vector<std::size_t> batch;
    if (pool.empty()) {
      stop = StopReason::kEmptyPool;
    } else if (check_convergence(grads, cfg.pool_gradient_norm_threshold)) {
      const bool at_ground = !oracle || rec.energy_error < kChemicalAccuracy;
      if (at_ground)
        stop = StopReason::kConverged;
      else if (residual(*op, state, e) < cfg.eigenstate_residual)
        stop = StopReason::kStalledAtEigenstate;
      else
        stop = StopReason::kStalledNotEigenstate;
    } else if (layer > 0 && e_before - e < cfg.stagnation_tolerance) {
      stop = StopReason::kStagnated;
    } else if (layer >= cfg.max_layers) {
      stop = StopReason::kMaxLayers;
    } else if (cfg.variant == Variant::kAdapt) {
      batch = {select_single(grads, pool, cfg.tie_tolerance)};
    } else {
      batch = select_tetris_batch(grads, pool, h.qubit_count, cfg.eligibility_floor,
                                  cfg.tie_tolerance);
      if (batch.empty()) stop = StopReason::kEmptyBatch;
    }

    if (stop != StopReason::kNone) {
      rec.converged = stop == StopReason::kConverged;
      rec.reason = stop;
      trace.reason = stop;
      trace.records.push_back(rec);
      if (on_layer) on_layer(trace.records.back());
      break;
    }
    trace.records.push_back(rec);
    if (on_layer) on_layer(trace.records.back());

    std::vector<double> batch_grads;
    selected.clear();
    for (std::size_t i : batch) {
      trace.ansatz.operators.push_back(pool[i]);
      selected.push_back(pool[i].label);
      batch_grads.push_back(grads[i]);
    }
    trace.batches.push_back(batch);
    trace.batch_gradients.push_back(std::move(batch_grads));
    ++layer;

    const std::vector<double> x0 = initialize_parameters(
        trace.ansatz.parameters, trace.ansatz.size(), cfg.init_mode, layer_seed(cfg.seed, layer));
    const AnsatzObjective objective(op, trace.ansatz.reference, trace.ansatz.operators);
    bool failed = false;
    try {
      last_opt = minimize(
          [&](std::span<const double> x, std::span<double> g) {
            return objective.energy_and_gradient(x, g);
          },
          x0, cfg.optimizer);
      failed = !std::isfinite(last_opt.energy);
    } catch (const OptimizationFailure&) {
      failed = true;
    }
    if (failed) {
      LayerRecord fail = trace.records.back();
      fail.layer = layer;
      fail.selected = selected;
      fail.reason = StopReason::kOptimizerFailure;
      fail.converged = false;
      trace.records.push_back(fail);
      trace.reason = StopReason::kOptimizerFailure;
      trace.ansatz.operators.resize(trace.ansatz.parameters.size());
      if (on_layer) on_layer(trace.records.back());
      break;
    }
    trace.ansatz.parameters = last_opt.parameters;
    state = prepare(trace.ansatz);
    e_before = e;
    e = last_opt.energy;
  }
  return trace;
}

bool reached_ground(const LayerRecord& r) {
  return r.infidelity < 1e-6 && r.energy_error < kChemicalAccuracy;
}

std::size_t matched_record(const AdaptTrace& adapt, const AdaptTrace& tetris) {
  if (!reached_ground(adapt.final_record()))
    throw std::invalid_argument("matched_record: adapt trace did not reach the ground state");
  if (tetris.records.empty()) throw std::invalid_argument("matched_record: empty tetris trace");
  const double target = adapt.final_record().energy_error;
  for (std::size_t i = 0; i < tetris.records.size(); ++i)
    if (tetris.records[i].energy_error <= target) return i;
  if (reached_ground(tetris.final_record())) return tetris.records.size() - 1;
  throw std::invalid_argument("matched_record: tetris trace never reaches the adapt accuracy");
}

double measurement_ratio(const AdaptTrace& adapt, const AdaptTrace& tetris) {
  const LayerRecord& t = tetris.records[matched_record(adapt, tetris)];
  return static_cast<double>(adapt.final_record().measurements) / static_cast<double>(t.measurements);
}

double depth_ratio(const AdaptTrace& adapt, const AdaptTrace& tetris) {
  const LayerRecord& t = tetris.records[matched_record(adapt, tetris)];
  if (t.depth == 0) throw std::invalid_argument("depth_ratio: zero-depth tetris record");
  return static_cast<double>(adapt.final_record().depth) / static_cast<double>(t.depth);
}

namespace {

std::string fmt_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string join(const std::vector<std::string>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

nlohmann::json real_or_null(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

}  // namespace

std::string trace_csv_header() {
  return "layer,selected,energy,energy_error,parameter_count,cnot_count,depth,measurements,"
         "infidelity,determinants,gradient_norm,optimizer_iterations,function_evaluations,"
         "converged,reason";
}

std::string trace_to_csv(const AdaptTrace& t) {
  std::ostringstream os;
  os << trace_csv_header() << '\n';
  for (const LayerRecord& r : t.records) {
    os << r.layer << ',' << join(r.selected, ';') << ',' << fmt_real(r.energy) << ','
       << fmt_real(r.energy_error) << ',' << r.parameter_count << ',' << r.cnot_count << ','
       << r.depth << ',' << r.measurements << ',' << fmt_real(r.infidelity) << ','
       << r.determinants << ',' << fmt_real(r.gradient_norm) << ',' << r.optimizer_iterations
       << ',' << r.function_evaluations << ',' << (r.converged ? 1 : 0) << ','
       << to_string(r.reason) << '\n';
  }
  return os.str();
}

std::string trace_to_json(const AdaptTrace& t) {
  nlohmann::json records = nlohmann::json::array();
  for (const LayerRecord& r : t.records) {
    records.push_back({{"layer", r.layer},
                       {"selected", r.selected},
                       {"energy", r.energy},
                       {"energy_error", real_or_null(r.energy_error)},
                       {"parameter_count", r.parameter_count},
                       {"cnot_count", r.cnot_count},
                       {"depth", r.depth},
                       {"measurements", r.measurements},
                       {"infidelity", real_or_null(r.infidelity)},
                       {"determinants", r.determinants},
                       {"gradient_norm", r.gradient_norm},
                       {"optimizer_iterations", r.optimizer_iterations},
                       {"function_evaluations", r.function_evaluations},
                       {"converged", r.converged},
                       {"reason", to_string(r.reason)}});
  }
  nlohmann::json doc{{"label", t.label},
                     {"pool", to_string(t.pool_kind)},
                     {"variant", to_string(t.variant)},
                     {"pool_size", t.pool_size},
                     {"reason", to_string(t.reason)},
                     {"records", records},
                     {"checkpoint", nlohmann::json::parse(checkpoint_to_json(t.ansatz, t.pool_kind))}};
  return doc.dump(2) + "\n";
}

std::string checkpoint_to_json(const Ansatz& a, PoolKind kind) {
  nlohmann::json labels = nlohmann::json::array();
  for (const PoolOperator& op : a.operators) labels.push_back(op.label);
  nlohmann::json doc{{"pool_kind", to_string(kind)},
                     {"qubit_count", a.reference.size()},
                     {"reference", a.reference},
                     {"operators", labels},
                     {"parameters", a.parameters}};
  return doc.dump(2) + "\n";
}

Ansatz checkpoint_from_json(const std::string& text, const OperatorPool& pool) {
  Ansatz a;
  try {
    const nlohmann::json doc = nlohmann::json::parse(text);
    if (doc.at("pool_kind").get<std::string>() != to_string(pool.kind))
      throw ParseError("checkpoint pool kind differs from the supplied pool");
    if (doc.at("qubit_count").get<int>() != pool.qubit_count)
      throw ParseError("checkpoint qubit count differs from the supplied pool");
    a.reference = doc.at("reference").get<std::string>();
    if (static_cast<int>(a.reference.size()) != pool.qubit_count)
      throw ParseError("checkpoint reference length differs from qubit count");
    for (const auto& label : doc.at("operators")) {
      const std::string s = label.get<std::string>();
      const auto idx = pool.find(s);
      if (!idx) throw ParseError("checkpoint operator not in pool: " + s);
      a.operators.push_back(pool[*idx]);
    }
    a.parameters = doc.at("parameters").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("checkpoint: ") + e.what());
  }
  if (a.parameters.size() != a.operators.size())
    throw ParseError("checkpoint parameter count differs from operator count");
  return a;
}

}  // namespace tetris

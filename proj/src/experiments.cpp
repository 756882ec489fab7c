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


#include "tetris/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "tetris/chem.hpp"
#include "tetris/error.hpp"
#include "tetris/oracle.hpp"

namespace tetris {

namespace {

// Runs job(i) for i in [0, n) on up to `threads` workers.
template <class Job>
void parallel_for(std::size_t n, int threads, const Job& job) {
  const std::size_t workers = std::min<std::size_t>(std::max(threads, 1), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << text;
}

std::string fmt(const char* spec, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

struct Problem {
  QubitHamiltonian h;
  std::shared_ptr<const GroundTruth> truth;
  OperatorPool pool;
};

Problem load_problem(const std::filesystem::path& fixture, PoolKind kind, GroundTruthCache& cache) {
  Problem p;
  p.h = load_hamiltonian(fixture);
  p.truth = cache.get(p.h);
  p.pool = build_pool(kind, p.h.qubit_count, p.h.electron_count());
  return p;
}

bool clean_stop(StopReason r) {
  return r == StopReason::kConverged || r == StopReason::kStalledAtEigenstate ||
         r == StopReason::kStalledNotEigenstate || r == StopReason::kEmptyBatch ||
         r == StopReason::kEmptyPool || r == StopReason::kStagnated;
}

}  // namespace

void RunConfig::validate() const {
  if (fixtures.empty()) throw std::invalid_argument("no fixture given");
  for (const auto& f : fixtures)
    if (!std::filesystem::exists(f)) throw std::invalid_argument("fixture not found: " + f.string());
  if (variants.empty()) throw std::invalid_argument("no variant given");
  if (samples < 1) throw std::invalid_argument("samples must be at least 1");
  if (!(range_min < range_max)) throw std::invalid_argument("empty parameter range");
  if (landscape_layers < 0) throw std::invalid_argument("landscape_layers must be non-negative");
  if (threads < 1) throw std::invalid_argument("threads must be at least 1");
  adapt_config(Variant::kAdapt).validate();
}

AdaptConfig RunConfig::adapt_config(Variant v) const {
  AdaptConfig c;
  c.pool_kind = pool;
  c.variant = v;
  c.pool_gradient_norm_threshold = threshold;
  c.eligibility_floor = eligibility_floor;
  c.optimizer.gradient_norm_tolerance = gradient_tolerance;
  c.stagnation_tolerance = stagnation_tolerance;
  c.max_layers = max_layers;
  c.init_mode = init_mode;
  c.seed = seed;
  return c;
}

std::string run_label(const std::filesystem::path& fixture) { return fixture.stem().string(); }

std::string molecule_name(const std::filesystem::path& fixture) {
  const std::string s = run_label(fixture);
  return s.substr(0, s.find('_'));
}

int cmd_run(const RunConfig& cfg, std::ostream& log, std::vector<RunOutcome>* outcomes) {
  cfg.validate();
  std::filesystem::create_directories(cfg.out);
  GroundTruthCache cache;
  struct Job {
    std::size_t fixture;
    Variant variant;
  };
  std::vector<Job> jobs;
  for (std::size_t f = 0; f < cfg.fixtures.size(); ++f)
    for (Variant v : cfg.variants) jobs.push_back({f, v});
  std::vector<RunOutcome> results(jobs.size());
  std::vector<std::string> lines(jobs.size());

  parallel_for(jobs.size(), cfg.threads, [&](std::size_t i) {
    const auto& fixture = cfg.fixtures[jobs[i].fixture];
    const Problem p = load_problem(fixture, cfg.pool, cache);
    RunOutcome& r = results[i];
    r.label = run_label(fixture);
    r.variant = jobs[i].variant;
    r.trace = run(p.h, p.pool, cfg.adapt_config(r.variant), p.truth.get());
    r.trace.label = r.label;
    const std::string stem =
        r.label + "_" + std::string(to_string(cfg.pool)) + "_" + std::string(to_string(r.variant));
    write_file(cfg.out / ("trace_" + stem + ".csv"), trace_to_csv(r.trace));
    write_file(cfg.out / ("trace_" + stem + ".json"), trace_to_json(r.trace));
    write_file(cfg.out / ("checkpoint_" + stem + ".json"), checkpoint_to_json(r.trace.ansatz, cfg.pool));
    const LayerRecord& last = r.trace.final_record();
    std::ostringstream os;
    os << stem << ": layers=" << last.layer << " status=" << to_string(r.trace.reason)
       << " error=" << fmt("%.3e", last.energy_error) << " infidelity=" << fmt("%.3e", last.infidelity)
       << " depth=" << last.depth << " cnots=" << last.cnot_count
       << " measurements=" << last.measurements;
    lines[i] = os.str();
  });

  int status = 0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    log << lines[i] << '\n';
    if (!clean_stop(results[i].trace.reason)) status = 3;
  }
  if (outcomes) *outcomes = std::move(results);
  return status;
}

std::vector<TableRow> summarize(const std::vector<RunOutcome>& outcomes) {
  struct Pair {
    const AdaptTrace* adapt = nullptr;
    const AdaptTrace* tetris = nullptr;
  };
  // molecule -> label -> pair
  std::map<std::string, std::map<std::string, Pair>> groups;
  for (const auto& o : outcomes) {
    Pair& p = groups[molecule_name(o.label)][o.label];
    (o.variant == Variant::kAdapt ? p.adapt : p.tetris) = &o.trace;
  }
  std::vector<TableRow> rows;
  for (const auto& [mol, pairs] : groups) {
    TableRow row;
    row.molecule = mol;
    double depth = 0, am = 0, tm = 0, ratio = 0, reduction = 0;
    for (const auto& [label, p] : pairs) {
      if (!p.adapt || !p.tetris) throw std::invalid_argument("missing variant for " + label);
      row.pool = p.adapt->pool_kind;
      row.pool_size = p.adapt->pool_size;
      row.qubits = static_cast<int>(p.adapt->ansatz.reference.size());
      const bool ok =
          reached_ground(p.adapt->final_record()) && reached_ground(p.tetris->final_record());
      if (!ok) {
        ++row.excluded;
        continue;
      }
      const auto& t = p.tetris->records[matched_record(*p.adapt, *p.tetris)];
      const double a_meas = static_cast<double>(p.adapt->final_record().measurements);
      const double t_meas = static_cast<double>(t.measurements);
      ++row.geometries;
      depth += depth_ratio(*p.adapt, *p.tetris);
      am += a_meas;
      tm += t_meas;
      ratio += a_meas / t_meas;
      reduction += 100.0 * (1.0 - t_meas / a_meas);
    }
    if (row.geometries == 0) throw std::invalid_argument("no usable geometry for " + mol);
    const double n = row.geometries;
    row.depth_ratio = depth / n;
    row.adapt_measurements = am / n;
    row.tetris_measurements = tm / n;
    row.measurement_ratio = ratio / n;
    row.reduction_percent = reduction / n;
    rows.push_back(row);
  }
  return rows;
}

std::string table1_csv(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  os << "molecule,pool,qubits,geometries,excluded,depth_ratio\n";
  for (const auto& r : rows)
    os << r.molecule << ',' << to_string(r.pool) << ',' << r.qubits << ',' << r.geometries << ','
       << r.excluded << ',' << fmt("%.6f", r.depth_ratio) << '\n';
  return os.str();
}

std::string table2_csv(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  os << "molecule,pool,qubits,pool_size,geometries,excluded,adapt_measurements,"
        "tetris_measurements,reduction_percent,measurement_ratio\n";
  for (const auto& r : rows)
    os << r.molecule << ',' << to_string(r.pool) << ',' << r.qubits << ',' << r.pool_size << ','
       << r.geometries << ',' << r.excluded << ',' << fmt("%.1f", r.adapt_measurements) << ','
       << fmt("%.1f", r.tetris_measurements) << ',' << fmt("%.2f", r.reduction_percent) << ','
       << fmt("%.6f", r.measurement_ratio) << '\n';
  return os.str();
}

int cmd_compare(const RunConfig& cfg, std::ostream& log, std::vector<TableRow>* rows) {
  RunConfig both = cfg;
  both.variants = {Variant::kAdapt, Variant::kTetris};
  std::vector<RunOutcome> outcomes;
  const int status = cmd_run(both, log, &outcomes);
  std::vector<TableRow> table = summarize(outcomes);
  write_file(cfg.out / "table1.csv", table1_csv(table));
  write_file(cfg.out / "table2.csv", table2_csv(table));
  for (const auto& r : table) {
    log << r.molecule << ' ' << to_string(r.pool) << ": depth ratio " << fmt("%.3f", r.depth_ratio)
        << ", measurement ratio " << fmt("%.3f", r.measurement_ratio) << " ("
        << fmt("%.1f", r.reduction_percent) << "% fewer), " << r.geometries << " geometries, "
        << r.excluded << " excluded\n";
  }
  if (rows) *rows = std::move(table);
  return status;
}

std::string landscape_csv_header() { return "variant,start,sample,energy,function_evaluations"; }

std::string landscape_csv(const LandscapeLayer& layer) {
  std::ostringstream os;
  os << landscape_csv_header() << '\n';
  for (const auto& s : layer.samples)
    os << s.variant << ',' << s.start << ',' << s.sample << ',' << fmt("%.17g", s.energy) << ','
       << s.function_evaluations << '\n';
  return os.str();
}

int cmd_landscape(const RunConfig& cfg, std::ostream& log, std::vector<LandscapeLayer>* layers) {
  cfg.validate();
  std::filesystem::create_directories(cfg.out);
  GroundTruthCache cache;
  std::vector<LandscapeLayer> all;
  int status = 0;
  for (const auto& fixture : cfg.fixtures) {
    const Problem p = load_problem(fixture, cfg.pool, cache);
    const auto op = std::make_shared<const HermitianOperator>(p.h.pauli_sum, p.h.constant_offset);
    const std::string label = run_label(fixture);
    std::map<int, LandscapeLayer> by_layer;
    for (Variant v : cfg.variants) {
      AdaptConfig ac = cfg.adapt_config(v);
      ac.init_mode = InitMode::kWarm;
      const AdaptTrace trace = run(p.h, p.pool, ac, p.truth.get());
      if (!clean_stop(trace.reason)) status = 3;
      int last = trace.final_record().layer;
      if (cfg.landscape_layers > 0) last = std::min(last, cfg.landscape_layers);
      const std::string vname(to_string(v));
      for (int k = 1; k <= last; ++k) {
        const LayerRecord& rec = trace.records[k];
        const std::size_t n = static_cast<std::size_t>(rec.parameter_count);
        const std::vector<PoolOperator> ops(trace.ansatz.operators.begin(),
                                            trace.ansatz.operators.begin() + n);
        const AnsatzObjective objective(op, trace.ansatz.reference, ops);
        auto fg = [&](std::span<const double> x, std::span<double> g) {
          return objective.energy_and_gradient(x, g);
        };
        // Slot 0 is the cold start, slots 1..samples the random starts.
        std::vector<LandscapeSample> runs(static_cast<std::size_t>(cfg.samples) + 1);
        parallel_for(runs.size(), cfg.threads, [&](std::size_t s) {
          std::vector<double> x0(n, 0.0);
          if (s > 0) {
            std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                              static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(k),
                              static_cast<std::uint32_t>(s)};
            std::mt19937_64 rng(seq);
            std::uniform_real_distribution<double> u(cfg.range_min, cfg.range_max);
            for (auto& x : x0) x = u(rng);
          }
          LandscapeSample& out = runs[s];
          out.variant = vname;
          out.start = s == 0 ? "cold" : "random";
          out.sample = static_cast<int>(s);
          try {
            const OptimizationResult r = minimize(fg, x0, ac.optimizer);
            out.energy = r.energy;
            out.function_evaluations = r.function_evaluations;
          } catch (const OptimizationFailure&) {
            out.energy = std::numeric_limits<double>::quiet_NaN();
          }
        });
        LandscapeLayer& L = by_layer[k];
        L.label = label;
        L.layer = k;
        L.samples.push_back({vname, "warm", 0, rec.energy, rec.function_evaluations});
        for (auto& s : runs) L.samples.push_back(std::move(s));
        double best = std::numeric_limits<double>::infinity();
        for (const auto& s : L.samples)
          if (s.start == "random" && s.energy < best) best = s.energy;
        log << label << ' ' << vname << " layer " << k << ": warm " << fmt("%.10f", rec.energy)
            << " cold " << fmt("%.10f", runs[0].energy) << " best random " << fmt("%.10f", best) << '\n';
      }
    }
    for (auto& [k, L] : by_layer) {
      write_file(cfg.out / ("landscape_" + label + "_layer" + std::to_string(k) + ".csv"), landscape_csv(L));
      all.push_back(std::move(L));
    }
  }
  if (layers) *layers = std::move(all);
  return status;
}

}  // namespace tetris

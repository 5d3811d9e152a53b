// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qccd-compiler Authors

#include "qccd/benchmarks.hpp"

#include "qccd/qasm.hpp"
#include "qccd/replay.hpp"
#include "qccd/scheduler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <thread>

namespace qccd {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter) {
  std::uint64_t z = master + (counter + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Circuit gen_random_circuit(int n, std::size_t n_gates, std::uint64_t seed) {
  if (n < 2) throw BenchError(BenchErrorKind::InvalidShape, "random circuits need at least 2 qubits");
  Circuit c;
  c.n_qubits = n;
  c.gates.reserve(n_gates);
  std::mt19937_64 engine(seed);
  const auto un = static_cast<std::uint64_t>(n);
  for (std::size_t i = 0; i < n_gates; ++i) {
    const auto a = static_cast<int>(uniform_below(engine, un));
    auto b = static_cast<int>(uniform_below(engine, un - 1));
    if (b >= a) ++b;
    c.append("cx", {a, b});
  }
  return c;
}

Circuit gen_qft(int n) {
  if (n < 2) throw BenchError(BenchErrorKind::InvalidShape, "QFT needs at least 2 qubits");
  Circuit c;
  c.n_qubits = n;
  for (int i = 0; i + 1 < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      c.append("cp", {i, j}, {std::numbers::pi / std::ldexp(1.0, j - i)});
    }
  }
  return c;
}

std::vector<std::vector<int>> toffoli_ladder(int n_total) {
  if (n_total < 4 || n_total % 2 != 0) {
    throw BenchError(BenchErrorKind::InvalidShape,
                     "a " + std::to_string(n_total) +
                         "-qubit Toffoli does not split into c controls, c-1 ancillas and a target");
  }
  const int c = n_total / 2;
  auto ctrl = [](int i) { return i; };
  auto anc = [c](int i) { return c + i; };
  const int target = n_total - 1;

  std::vector<std::vector<int>> compute{{ctrl(0), ctrl(1), anc(0)}};
  for (int i = 2; i < c; ++i) compute.push_back({ctrl(i), anc(i - 2), anc(i - 1)});

  std::vector<std::vector<int>> ladder = compute;
  ladder.push_back({anc(c - 2), target});
  ladder.insert(ladder.end(), compute.rbegin(), compute.rend());
  return ladder;
}

Circuit gen_toffoli(int n_total) {
  Circuit c;
  c.n_qubits = n_total;
  for (const auto& step : toffoli_ladder(n_total)) {
    if (step.size() == 2) {
      c.append("cx", step);
      continue;
    }
    for (Gate& g : decompose_toffoli(step[0], step[1], step[2])) {
      c.append(std::move(g.kind), std::move(g.operands));
    }
  }
  return c;
}

double circuit_fit(std::size_t cost, std::size_t n_gates) {
  if (n_gates == 0) throw BenchError(BenchErrorKind::DivisionByZero, "circuit fit of an empty circuit");
  return static_cast<double>(cost) / static_cast<double>(n_gates);
}

double theoretical_limit(int ions_per_crystal) {
  if (ions_per_crystal < 1) {
    throw BenchError(BenchErrorKind::DivisionByZero, "crystals hold at least one ion");
  }
  return 6.0 / ions_per_crystal;
}

FitReport fit_report(const Circuit& circuit, std::size_t cost, int ions_per_crystal) {
  FitReport r;
  r.n_qubits = circuit.n_qubits;
  r.total_cost = cost;
  r.n_two_qubit_gates = circuit.two_qubit_gate_count();
  r.circuit_fit = circuit_fit(cost, r.n_two_qubit_gates);
  r.theoretical_limit = theoretical_limit(ions_per_crystal);
  return r;
}

std::string_view to_string(Suite suite) {
  switch (suite) {
    case Suite::Random: return "random";
    case Suite::Qft: return "qft";
    case Suite::Toffoli: return "toffoli";
  }
  return "?";
}

std::optional<Suite> suite_from_string(std::string_view name) {
  for (Suite s : {Suite::Random, Suite::Qft, Suite::Toffoli}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::string SweepReport::to_csv() const {
  std::string out = "suite,n,method,trial,seed,cost,gates,fit\n";
  char fit[32];
  for (const SweepRecord& r : records) {
    out += std::string(to_string(r.suite)) + "," + std::to_string(r.n) + "," +
           std::string(to_string(r.method)) + "," + std::to_string(r.trial) + "," +
           std::to_string(r.seed) + ",";
    if (r.error) {
      out += "," + std::to_string(r.gates) + ",\n";
      continue;
    }
    std::snprintf(fit, sizeof fit, "%.6f", r.fit);
    out += std::to_string(r.cost) + "," + std::to_string(r.gates) + "," + fit + "\n";
  }
  return out;
}

Circuit sweep_circuit(const SweepOptions& options, int n) {
  switch (options.suite) {
    case Suite::Random:
      return gen_random_circuit(n, options.random_gates,
                                derive_seed(options.seed ^ 0x72616E646F6DULL,
                                            static_cast<std::uint64_t>(n)));
    case Suite::Qft: return gen_qft(n);
    case Suite::Toffoli: return gen_toffoli(n);
  }
  return gen_qft(n);
}

SweepReport run_sweep(const SweepOptions& options) {
  struct Task {
    std::size_t circuit;
    OrderingMethod method;
    std::size_t trial;
  };
  std::vector<Circuit> circuits;
  std::vector<Task> tasks;
  for (int n : options.n_list) {
    circuits.push_back(sweep_circuit(options, n));
    for (OrderingMethod m : options.methods) {
      const std::size_t runs = m == OrderingMethod::OIR ? std::max<std::size_t>(options.trials, 1) : 1;
      for (std::size_t t = 0; t < runs; ++t) tasks.push_back({circuits.size() - 1, m, t});
    }
  }

  std::vector<SweepRecord> records(tasks.size());
  auto run_task = [&](std::size_t i) {
    const Task& task = tasks[i];
    const Circuit& circuit = circuits[task.circuit];
    SweepRecord& rec = records[i];
    rec.suite = options.suite;
    rec.n = circuit.n_qubits;
    rec.method = task.method;
    rec.trial = task.trial;
    rec.seed = task.method == OrderingMethod::OIR ? derive_seed(options.seed, task.trial) : 0;
    rec.gates = circuit.two_qubit_gate_count();
    try {
      const TrapConfig config = options.trap.value_or(TrapConfig::scaled_for(circuit.n_qubits));
      const Ordering ordering = make_ordering(circuit, task.method, rec.seed);
      const ScheduleResult result = compile(circuit, ordering, config);
      ReplayOptions check;
      check.circuit = &circuit;
      const ReplayReport report = replay(result.sequence, config, check);
      if (!report.ok()) {
        rec.error = "replay violation: " + report.violations.front().message;
      } else if (report.cost() != result.cost) {
        rec.error = "replay cost mismatch";
      }
      rec.cost = result.cost;
      rec.fit = rec.gates ? circuit_fit(rec.cost, rec.gates) : 0.0;
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
  };

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1)));
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) run_task(i);
      });
    }
  }

  SweepReport report;
  report.records = std::move(records);
  std::map<std::pair<int, int>, SweepSummary> summaries;
  std::vector<std::pair<int, int>> key_order;
  for (const SweepRecord& r : report.records) {
    const auto key = std::make_pair(r.n, static_cast<int>(r.method));
    auto [it, fresh] = summaries.try_emplace(key);
    SweepSummary& s = it->second;
    if (fresh) {
      key_order.push_back(key);
      s.n = r.n;
      s.method = r.method;
      s.seed = options.seed;
      s.min = SIZE_MAX;
    }
    if (r.error) {
      ++s.failures;
      continue;
    }
    s.min = std::min(s.min, r.cost);
    s.max = std::max(s.max, r.cost);
    s.mean += static_cast<double>(r.cost);
    ++s.trials;
  }
  for (const auto& key : key_order) {
    SweepSummary s = summaries.at(key);
    if (s.trials == 0) {
      s.min = 0;
    } else {
      s.mean /= static_cast<double>(s.trials);
    }
    report.summaries.push_back(s);
  }
  return report;
}

void for_each_ordering_class(int n, const std::function<void(const Ordering&)>& visit) {
  if (n < 1) return;
  const int m = (n + 1) / 2;
  std::vector<IonId> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  const int slots = n % 2 == 0 ? 1 : m;
  do {
    for (int single = 0; single < slots; ++single) {
      Ordering o{{}, OrderingMethod::OAI, std::nullopt};
      std::size_t pos = 0;
      for (int c = 0; c < m; ++c) {
        const bool one = n % 2 == 1 && c == single;
        if (one) {
          o.crystals.push_back({perm[pos]});
          pos += 1;
        } else {
          o.crystals.push_back({perm[pos], perm[pos + 1]});
          pos += 2;
        }
      }
      if (o.crystals <= reversed(o).crystals) visit(o);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
}

std::size_t ordering_class_count(int n) {
  if (n < 1) return 0;
  if (n == 1) return 1;
  std::size_t fact = 1;
  for (int i = 2; i <= n; ++i) fact *= static_cast<std::size_t>(i);
  const std::size_t slots = n % 2 == 0 ? 1 : static_cast<std::size_t>((n + 1) / 2);
  return fact * slots / 2;
}

OracleResult brute_force_best_ordering(const Circuit& circuit, const TrapConfig& config) {
  if (circuit.n_qubits > 8) {
    throw BenchError(BenchErrorKind::TooLarge,
                     "exhaustive search is limited to 8 qubits, got " +
                         std::to_string(circuit.n_qubits));
  }
  OracleResult best;
  bool have = false;
  for_each_ordering_class(circuit.n_qubits, [&](const Ordering& o) {
    ++best.classes;
    const std::size_t c = compile(circuit, o, config).cost;
    if (!have || c < best.min_cost || (c == best.min_cost && o.crystals < best.best.crystals)) {
      best.best = o;
      best.min_cost = c;
      have = true;
    }
  });
  return best;
}

} // namespace qccd

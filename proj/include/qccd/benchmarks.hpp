// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qccd-compiler Authors

#pragma once

#include "qccd/circuit.hpp"
#include "qccd/ordering.hpp"
#include "qccd/trap.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qccd {

enum class BenchErrorKind { InvalidShape, TooLarge, DivisionByZero };

class BenchError : public std::runtime_error {
 public:
  BenchError(BenchErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  BenchErrorKind kind() const { return kind_; }

 private:
  BenchErrorKind kind_;
};

/// Counter-based seed derivation (splitmix64 finaliser).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter);

/// `n_gates` two-qubit gates on uniformly drawn distinct qubit pairs.
Circuit gen_random_circuit(int n, std::size_t n_gates, std::uint64_t seed);

/// All-pairs interaction circuit: (0,1),(0,2),...,(0,n-1),(1,2),...
/// Controlled-phase gates only; the single-qubit layers are left out.
Circuit gen_qft(int n);

/// Multi-controlled Toffoli over `n_total` = 2c qubits laid out as
/// c controls, c-1 ancillas, 1 target, built as a compute / uncompute
/// ladder of ccx gates with each ccx decomposed to cx and 1-qubit gates.
Circuit gen_toffoli(int n_total);

/// The undecomposed ladder: each entry lists the operands of a ccx (three
/// qubits) or cx (two qubits).
std::vector<std::vector<int>> toffoli_ladder(int n_total);

double circuit_fit(std::size_t cost, std::size_t n_gates);
double theoretical_limit(int ions_per_crystal);

struct FitReport {
  int n_qubits = 0;
  std::size_t total_cost = 0;
  std::size_t n_two_qubit_gates = 0;
  double circuit_fit = 0.0;
  double theoretical_limit = 0.0;
};

FitReport fit_report(const Circuit& circuit, std::size_t cost, int ions_per_crystal = 2);

enum class Suite { Random, Qft, Toffoli };

std::string_view to_string(Suite suite);
std::optional<Suite> suite_from_string(std::string_view name);

struct SweepOptions {
  Suite suite = Suite::Random;
  std::vector<int> n_list;
  std::vector<OrderingMethod> methods{OrderingMethod::OAI, OrderingMethod::OIR,
                                      OrderingMethod::IPO};
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  /// Gate count for the random suite.
  std::size_t random_gates = 1000;
  /// Trap used for every compile; unset means TrapConfig::scaled_for(n).
  std::optional<TrapConfig> trap;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// One compile.
struct SweepRecord {
  Suite suite = Suite::Random;
  int n = 0;
  OrderingMethod method = OrderingMethod::OAI;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t cost = 0;
  std::size_t gates = 0;
  double fit = 0.0;
  /// Set when the compile failed; cost and fit are then meaningless.
  std::optional<std::string> error;
};

struct SweepSummary {
  int n = 0;
  OrderingMethod method = OrderingMethod::OAI;
  std::size_t min = 0;
  double mean = 0.0;
  std::size_t max = 0;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::uint64_t seed = 0;
};

struct SweepReport {
  std::vector<SweepRecord> records;
  std::vector<SweepSummary> summaries;

  /// `suite,n,method,trial,seed,cost,gates,fit`, one line per record.
  std::string to_csv() const;
};

/// Circuit a sweep uses for a given suite and size.
Circuit sweep_circuit(const SweepOptions& options, int n);

/// Compiles every (n, method) combination; OIR runs `trials` times with
/// seeds derived from the master seed, OAI and IPO once. Each record's cost
/// is confirmed by an independent replay of the emitted sequence.
SweepReport run_sweep(const SweepOptions& options);

/// All layouts of ions 1..n into ceil(n/2) crystals of two ions (plus one
/// singleton in any position when n is odd), one representative per
/// reversal pair. Calls `visit` with each representative.
void for_each_ordering_class(int n, const std::function<void(const Ordering&)>& visit);

std::size_t ordering_class_count(int n);

struct OracleResult {
  Ordering best;
  std::size_t min_cost = 0;
  std::size_t classes = 0;
};

/// Exhaustive minimum over `for_each_ordering_class`; ties go to the
/// lexicographically smallest layout. Throws BenchError(TooLarge) for n > 8.
OracleResult brute_force_best_ordering(const Circuit& circuit, const TrapConfig& config);

} // namespace qccd

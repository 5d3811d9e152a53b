// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qccd-compiler Authors

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace qccd {

/// A single gate of the linearized circuit. Operands are 0-based qubit
/// indices; the ion encoding qubit q has id q + 1.
struct Gate {
  std::size_t index = 0;
  std::string kind;
  std::vector<int> operands;
  std::vector<double> params;

  bool is_two_qubit() const { return operands.size() == 2; }

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Ordered gate list over `n_qubits` qubits. Gate indices are kept dense
/// (0..len-1) by `append`.
struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;

  /// Appends a gate, assigning its index and checking operand validity.
  /// Throws std::invalid_argument on bad operands.
  Gate& append(std::string kind, std::vector<int> operands,
               std::vector<double> params = {});

  std::size_t two_qubit_gate_count() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Renders the circuit as OpenQASM 2.0 over a single register `q`.
std::string to_qasm(const Circuit& circuit);

} // namespace qccd

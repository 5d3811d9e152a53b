// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qccd-compiler Authors

#include "qccd/circuit.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qccd {

Gate& Circuit::append(std::string kind, std::vector<int> operands,
                      std::vector<double> params) {
  if (operands.empty() || operands.size() > 2) {
    throw std::invalid_argument("gate '" + kind + "' must have 1 or 2 operands");
  }
  for (int q : operands) {
    if (q < 0 || q >= n_qubits) {
      throw std::invalid_argument("operand " + std::to_string(q) +
                                  " out of range for " +
                                  std::to_string(n_qubits) + " qubits");
    }
  }
  if (operands.size() == 2 && operands[0] == operands[1]) {
    throw std::invalid_argument("gate '" + kind + "' repeats operand " +
                                std::to_string(operands[0]));
  }
  Gate g;
  g.index = gates.size();
  g.kind = std::move(kind);
  g.operands = std::move(operands);
  g.params = std::move(params);
  gates.push_back(std::move(g));
  return gates.back();
}

std::size_t Circuit::two_qubit_gate_count() const {
  return static_cast<std::size_t>(std::count_if(
      gates.begin(), gates.end(), [](const Gate& g) { return g.is_two_qubit(); }));
}

std::string to_qasm(const Circuit& circuit) {
  std::ostringstream out;
  out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  out << "qreg q[" << circuit.n_qubits << "];\n";
  char buf[32];
  for (const Gate& g : circuit.gates) {
    out << g.kind;
    if (!g.params.empty()) {
      out << '(';
      for (std::size_t i = 0; i < g.params.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", g.params[i]);
        out << (i ? "," : "") << buf;
      }
      out << ')';
    }
    for (std::size_t i = 0; i < g.operands.size(); ++i) {
      out << (i ? "," : " ") << "q[" << g.operands[i] << ']';
    }
    out << ";\n";
  }
  return out.str();
}

} // namespace qccd

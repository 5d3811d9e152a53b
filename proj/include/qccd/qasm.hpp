// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qccd-compiler Authors

#pragma once

#include "qccd/circuit.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qccd {

enum class QasmErrorKind { Syntax, UnsupportedGate, UndeclaredQubit };

/// Parse failure with a 1-based source position.
class QasmError : public std::runtime_error {
 public:
  QasmError(QasmErrorKind kind, int line, int column, const std::string& message);

  QasmErrorKind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }
  /// The message without the position prefix.
  const std::string& detail() const { return detail_; }

 private:
  QasmErrorKind kind_;
  int line_;
  int column_;
  std::string detail_;
};

struct ParseOptions {
  /// Expand `ccx` into 2-qubit and 1-qubit gates instead of rejecting it.
  bool decompose_toffoli = false;
};

struct Diagnostic {
  int line = 0;
  int column = 0;
  std::string message;
};

struct ParseResult {
  Circuit circuit;
  std::vector<Diagnostic> warnings;
};

/// Parses the supported OpenQASM 2.0 subset. Registers are flattened in
/// declaration order; `creg`, `measure`, `barrier` and `reset` are accepted
/// and dropped with a warning.
ParseResult parse_qasm_with_diagnostics(std::string_view text,
                                        const ParseOptions& options = {});

Circuit parse_qasm(std::string_view text, const ParseOptions& options = {});

/// Standard 6-CNOT Toffoli expansion with controls a, b and target t.
/// The returned gates carry no meaningful index; callers append them.
/// Throws std::invalid_argument unless a, b, t are distinct.
std::vector<Gate> decompose_toffoli(int a, int b, int t);

} // namespace qccd

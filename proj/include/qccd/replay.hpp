// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qccd-compiler Authors

#pragma once

#include "qccd/circuit.hpp"
#include "qccd/commands.hpp"
#include "qccd/trap.hpp"

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qccd {

struct Violation {
  /// 1-based sequence number of the offending command; 0 for whole-sequence
  /// findings such as missing gates.
  std::size_t seq = 0;
  std::string message;
};

struct ReplayReport {
  TrapState final_state;
  std::size_t s_count = 0;
  std::size_t m_count = 0;
  std::size_t dg_count = 0;
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::size_t cost() const { return s_count + m_count; }
};

class ReplayError : public std::runtime_error {
 public:
  explicit ReplayError(Violation v)
      : std::runtime_error("command " + std::to_string(v.seq) + ": " + v.message),
        violation_(std::move(v)) {}
  const Violation& violation() const { return violation_; }

 private:
  Violation violation_;
};

struct ReplayOptions {
  /// Abort with ReplayError on the first violation instead of collecting.
  bool strict = false;
  /// When set, every DG is checked against this circuit: the i-th DG must
  /// name gate i and all its operand ions must sit in the LIZ crystal.
  const Circuit* circuit = nullptr;
};

/// Called after each command has been applied (or rejected).
using ReplayObserver =
    std::function<void(std::size_t seq, const Command&, const TrapState&)>;

/// Executes the sequence against a fresh trap built from `config`.
ReplayReport replay(const CommandSequence& sequence, const TrapConfig& config,
                    const ReplayOptions& options = {},
                    const ReplayObserver& observer = {});

} // namespace qccd

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qccd-compiler Authors

#pragma once

#include "qccd/trap.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qccd {

/// Shuttling instruction set.
enum class Opcode { START, AIC, AEC, REC, SMU, SMD, RC, M, S, DG };

inline constexpr std::array<Opcode, 10> kAllOpcodes = {
    Opcode::START, Opcode::AIC, Opcode::AEC, Opcode::REC, Opcode::SMU,
    Opcode::SMD,   Opcode::RC,  Opcode::M,   Opcode::S,   Opcode::DG};

std::string_view to_string(Opcode op);
std::optional<Opcode> opcode_from_string(std::string_view name);

/// Whether `n` parameters are legal for `op`.
///   START, M, S: none.  AIC: ion, segment.  AEC, REC: segment.
///   SMU, SMD, RC: one or more segments.  DG: circuit gate index.
bool arity_ok(Opcode op, std::size_t n);

/// Commands that change where ions are (as opposed to wells, gates and the
/// START marker).
bool changes_ion_layout(Opcode op);

struct Command {
  Opcode op = Opcode::START;
  std::vector<int> params;

  friend bool operator==(const Command&, const Command&) = default;
};

/// Ordered command list. The sequence number of `commands[i]` is i + 1.
struct CommandSequence {
  int n_segments = 32;
  SegmentId liz = 19;
  std::vector<Command> commands;

  void push(Opcode op, std::vector<int> params = {}) {
    commands.push_back(Command{op, std::move(params)});
  }
  std::size_t size() const { return commands.size(); }
  bool empty() const { return commands.empty(); }
  std::size_t count(Opcode op) const;

  friend bool operator==(const CommandSequence&, const CommandSequence&) = default;
};

class FormatError : public std::runtime_error {
 public:
  FormatError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Text form: a `# segments=<S> liz=<L>` header line, then one line per
/// command, `<seq> <OPCODE> <nparams> <params...>`, single-space separated
/// and newline terminated. For SMU/SMD the nparams column is the segment
/// count.
std::string serialize(const CommandSequence& sequence);

/// Inverse of `serialize`. Other `#` lines are comments. Throws FormatError.
CommandSequence parse_sequence(std::string_view text);

/// Split plus merge count.
std::size_t cost(const CommandSequence& sequence);

} // namespace qccd

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qccd-compiler Authors

#include "qccd/replay.hpp"

#include <algorithm>

namespace qccd {

namespace {

class Replayer {
 public:
  Replayer(const TrapConfig& config, const ReplayOptions& options)
      : options_(options), report_{TrapState(config), 0, 0, 0, {}} {}

  void run(const CommandSequence& sequence, const ReplayObserver& observer) {
    for (std::size_t i = 0; i < sequence.commands.size(); ++i) {
      seq_ = i + 1;
      step(sequence.commands[i]);
      if (observer) observer(seq_, sequence.commands[i], report_.final_state);
    }
    if (options_.circuit != nullptr && report_.dg_count != options_.circuit->gates.size()) {
      seq_ = 0;
      flag("sequence executes " + std::to_string(report_.dg_count) + " of " +
           std::to_string(options_.circuit->gates.size()) + " gates");
    }
  }

  ReplayReport take() { return std::move(report_); }

 private:
  TrapState& state() { return report_.final_state; }

  void flag(std::string message) {
    Violation v{seq_, std::move(message)};
    if (options_.strict) throw ReplayError(std::move(v));
    report_.violations.push_back(std::move(v));
  }

  void check_wells(Opcode op) {
    if (!state().config().empty_wells_required) return;
    for (SegmentId s : state().missing_empty_wells()) {
      flag(std::string(to_string(op)) + " without an empty well or crystal at segment " +
           std::to_string(s));
    }
  }

  void step(const Command& cmd) {
    if (!arity_ok(cmd.op, cmd.params.size())) {
      flag(std::string(to_string(cmd.op)) + " with " + std::to_string(cmd.params.size()) +
           " parameters");
      return;
    }
    if (seq_ == 1 && cmd.op != Opcode::START) flag("sequence does not begin with START");
    try {
      apply(cmd);
    } catch (const TrapError& e) {
      flag(describe(cmd, e));
    }
  }

  static std::string describe(const Command& cmd, const TrapError& e) {
    switch (e.kind()) {
      case TrapErrorKind::NotInLiz:
        return cmd.op == Opcode::RC ? std::string("rotation outside LIZ (") + e.what() + ")"
                                    : std::string("split/merge outside LIZ (") + e.what() + ")";
      default: return e.what();
    }
  }

  void apply(const Command& cmd) {
    const auto& p = cmd.params;
    switch (cmd.op) {
      case Opcode::START:
        if (seq_ != 1) flag("START is only allowed as the first command");
        return;
      case Opcode::AIC:
        if (layout_touched_) {
          flag("AIC after shuttling started");
          return;
        }
        state().add_ion(p[0], p[1]);
        return;
      case Opcode::AEC:
        layout_touched_ = true;
        state().add_empty_well(p[0]);
        return;
      case Opcode::REC:
        layout_touched_ = true;
        state().remove_empty_well(p[0]);
        return;
      case Opcode::SMU:
      case Opcode::SMD:
        layout_touched_ = true;
        state().move_crystals(p, cmd.op == Opcode::SMU ? Direction::Up : Direction::Down);
        return;
      case Opcode::RC:
        layout_touched_ = true;
        check_wells(cmd.op);
        state().rotate(p);
        return;
      case Opcode::S:
        layout_touched_ = true;
        check_wells(cmd.op);
        state().split_at_liz();
        ++report_.s_count;
        return;
      case Opcode::M:
        layout_touched_ = true;
        check_wells(cmd.op);
        state().merge_at_liz();
        ++report_.m_count;
        return;
      case Opcode::DG:
        layout_touched_ = true;
        check_wells(cmd.op);
        gate(p[0]);
        return;
    }
  }

  void gate(int index) {
    const std::size_t expected = report_.dg_count++;
    const Crystal* liz = state().crystal_at(state().liz());
    if (liz == nullptr) {
      flag("DG with an empty LIZ");
      return;
    }
    if (options_.circuit == nullptr) return;
    const auto& gates = options_.circuit->gates;
    if (index < 0 || static_cast<std::size_t>(index) >= gates.size()) {
      flag("DG names unknown gate " + std::to_string(index));
      return;
    }
    if (static_cast<std::size_t>(index) != expected) {
      flag("DG " + std::to_string(index) + " out of circuit order, expected " +
           std::to_string(expected));
    }
    for (int q : gates[static_cast<std::size_t>(index)].operands) {
      if (std::ranges::find(liz->ions, q + 1) == liz->ions.end()) {
        flag("gate " + std::to_string(index) + " operand ion " + std::to_string(q + 1) +
             " is not in the LIZ crystal");
      }
    }
  }

  ReplayOptions options_;
  ReplayReport report_;
  std::size_t seq_ = 0;
  bool layout_touched_ = false;
};

} // namespace

ReplayReport replay(const CommandSequence& sequence, const TrapConfig& config,
                    const ReplayOptions& options, const ReplayObserver& observer) {
  Replayer r(config, options);
  r.run(sequence, observer);
  return r.take();
}

} // namespace qccd

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qccd-compiler Authors

#pragma once

#include "qccd/circuit.hpp"
#include "qccd/commands.hpp"
#include "qccd/ordering.hpp"
#include "qccd/trap.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace qccd {

/// Applies shuttling primitives to a trap while recording the matching
/// commands. Every primitive is validated by the trap model before it is
/// recorded.
class Shuttler {
 public:
  Shuttler(TrapState& state, CommandSequence& out);

  /// START followed by one AIC per ion of the current layout, top to bottom.
  void emit_prologue();

  /// Moves the crystal one segment at a time to `target`. Crystals in the
  /// way are pushed, recursively, to the first segment past `target` that
  /// respects the crystal spacing. Throws TrapError(TrapOverflow) when a
  /// push would leave the trap.
  void send_to_segment(CrystalId crystal, SegmentId target);

  /// Exchanges `upper_ion` and `lower_ion`, which must sit in vertically
  /// adjacent crystals with `upper_ion` above. When `gate` is set that gate
  /// is executed while both ions share the temporary LIZ crystal.
  /// Afterwards the upper crystal ends with `lower_ion` at its bottom and the
  /// lower crystal starts with `upper_ion`.
  void ion_permutation(IonId upper_ion, IonId lower_ion, std::optional<std::size_t> gate);

  /// Brings the crystal holding `ion` into the LIZ.
  void bring_to_liz(IonId ion);
  void rotate_liz();
  void split();
  void merge();
  void execute_gate(std::size_t gate_index);

  std::size_t split_merge_count() const { return split_merge_count_; }

 private:
  template <typename F>
  void with_empty_wells(F&& operation);
  void clear_split_staging();
  void move_step(SegmentId from, Direction d);

  TrapState& state_;
  CommandSequence& out_;
  std::size_t split_merge_count_ = 0;
};

struct ScheduleResult {
  CommandSequence sequence;
  std::size_t cost = 0;
  /// Split/merge commands spent on each circuit gate, aligned with gates.
  std::vector<std::size_t> per_gate_costs;
  TrapState final_state;
};

/// Generates the command sequence executing every gate in circuit order at
/// the LIZ, starting from `state` (which must hold exactly ions 1..n).
/// The sequence begins with START and the AIC prologue describing `state`.
ScheduleResult schedule(const Circuit& circuit, TrapState state);

/// Orders, places and schedules in one go.
ScheduleResult compile(const Circuit& circuit, const Ordering& ordering,
                       const TrapConfig& config);

} // namespace qccd

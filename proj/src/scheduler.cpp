// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qccd-compiler Authors

#include "qccd/scheduler.hpp"

#include <stdexcept>

namespace qccd {

Shuttler::Shuttler(TrapState& state, CommandSequence& out) : state_(state), out_(out) {
  out_.n_segments = state_.n_segments();
  out_.liz = state_.liz();
}

void Shuttler::emit_prologue() {
  out_.push(Opcode::START);
  for (const Crystal* c : state_.crystals_top_to_bottom()) {
    for (IonId ion : c->ions) out_.push(Opcode::AIC, {ion, c->segment});
  }
}

void Shuttler::move_step(SegmentId from, Direction d) {
  state_.move_crystal_step(from, d);
  out_.push(d == Direction::Up ? Opcode::SMU : Opcode::SMD, {from});
}

void Shuttler::send_to_segment(CrystalId crystal, SegmentId target) {
  if (!state_.in_bounds(target)) {
    throw TrapError(TrapErrorKind::TrapOverflow,
                    "TrapOverflow: crystal pushed to segment " + std::to_string(target) +
                        " outside 1.." + std::to_string(state_.n_segments()));
  }
  const int gap = state_.config().min_crystal_spacing;
  SegmentId at = state_.crystal(crystal).segment;
  if (at == target) return;
  const Direction d = target < at ? Direction::Up : Direction::Down;
  const int step = step_of(d);
  while (at != target) {
    const SegmentId next = at + step;
    // Nearest crystal ahead that the next step would crowd.
    for (int k = 0; k < gap; ++k) {
      if (const Crystal* blocker = state_.crystal_at(next + k * step)) {
        send_to_segment(blocker->id, target + gap * step);
        break;
      }
    }
    move_step(at, d);
    at = next;
  }
}

template <typename F>
void Shuttler::with_empty_wells(F&& operation) {
  std::vector<SegmentId> wells;
  if (state_.config().empty_wells_required) wells = state_.missing_empty_wells();
  for (SegmentId s : wells) {
    state_.add_empty_well(s);
    out_.push(Opcode::AEC, {s});
  }
  operation();
  for (SegmentId s : wells) {
    state_.remove_empty_well(s);
    out_.push(Opcode::REC, {s});
  }
}

void Shuttler::bring_to_liz(IonId ion) {
  send_to_segment(state_.crystal_of(ion).id, state_.liz());
}

void Shuttler::rotate_liz() {
  with_empty_wells([&] {
    state_.rotate_at_liz();
    out_.push(Opcode::RC, {state_.liz()});
  });
}

void Shuttler::clear_split_staging() {
  // Split products land next to the LIZ, so the segments two away must not
  // hold crystals.
  const SegmentId liz = state_.liz();
  for (Direction d : {Direction::Up, Direction::Down}) {
    const SegmentId near = liz + 2 * step_of(d);
    if (const Crystal* c = state_.crystal_at(near)) {
      send_to_segment(c->id, near + step_of(d));
    }
  }
}

void Shuttler::split() {
  clear_split_staging();
  with_empty_wells([&] {
    state_.split_at_liz();
    out_.push(Opcode::S);
  });
  ++split_merge_count_;
}

void Shuttler::merge() {
  with_empty_wells([&] {
    state_.merge_at_liz();
    out_.push(Opcode::M);
  });
  ++split_merge_count_;
}

void Shuttler::execute_gate(std::size_t gate_index) {
  with_empty_wells([&] {
    if (state_.crystal_at(state_.liz()) == nullptr) {
      throw TrapError(TrapErrorKind::EmptySegment, "EmptySegment: gate with an empty LIZ");
    }
    out_.push(Opcode::DG, {static_cast<int>(gate_index)});
  });
}

void Shuttler::ion_permutation(IonId upper_ion, IonId lower_ion,
                               std::optional<std::size_t> gate) {
  const SegmentId liz = state_.liz();
  {
    const Crystal& upper = state_.crystal_of(upper_ion);
    const Crystal* below = state_.neighbour(upper.id, Direction::Down);
    if (below == nullptr || below->id != state_.crystal_of(lower_ion).id) {
      throw std::logic_error("ion_permutation needs ions in adjacent crystals, upper first");
    }
  }
  const bool upper_pair = state_.crystal_of(upper_ion).size() == 2;
  const bool lower_pair = state_.crystal_of(lower_ion).size() == 2;

  // Turn the two ions to face each other.
  if (upper_pair && state_.crystal_of(upper_ion).top_ion() == upper_ion) {
    bring_to_liz(upper_ion);
    rotate_liz();
  }
  if (lower_pair && state_.crystal_of(lower_ion).bottom_ion() == lower_ion) {
    bring_to_liz(lower_ion);
    rotate_liz();
  }

  IonId upper_rest = 0;
  IonId lower_rest = 0;
  if (upper_pair) {
    upper_rest = state_.crystal_of(upper_ion).top_ion();
    bring_to_liz(upper_ion);
    split();
  }
  if (lower_pair) {
    lower_rest = state_.crystal_of(lower_ion).bottom_ion();
    bring_to_liz(lower_ion);
    split();
  }

  send_to_segment(state_.crystal_of(upper_ion).id, liz - 1);
  send_to_segment(state_.crystal_of(lower_ion).id, liz + 1);
  merge();
  rotate_liz();
  if (gate) execute_gate(*gate);
  split();

  // lower_ion is now above upper_ion; rebuild the home crystals.
  if (upper_pair) {
    send_to_segment(state_.crystal_of(upper_rest).id, liz - 1);
    send_to_segment(state_.crystal_of(lower_ion).id, liz + 1);
    merge();
  }
  if (lower_pair) {
    send_to_segment(state_.crystal_of(upper_ion).id, liz - 1);
    send_to_segment(state_.crystal_of(lower_rest).id, liz + 1);
    merge();
  }
}

ScheduleResult schedule(const Circuit& circuit, TrapState state) {
  if (state.ion_count() != static_cast<std::size_t>(circuit.n_qubits)) {
    throw std::invalid_argument("trap holds " + std::to_string(state.ion_count()) +
                                " ions but the circuit has " +
                                std::to_string(circuit.n_qubits) + " qubits");
  }
  for (IonId ion = 1; ion <= circuit.n_qubits; ++ion) {
    if (!state.has_ion(ion)) {
      throw std::invalid_argument("ion " + std::to_string(ion) + " is not in the trap");
    }
  }

  CommandSequence sequence;
  std::vector<std::size_t> per_gate;
  per_gate.reserve(circuit.gates.size());
  Shuttler sh(state, sequence);
  sh.emit_prologue();

  for (const Gate& g : circuit.gates) {
    const std::size_t before = sh.split_merge_count();
    const IonId first = g.operands[0] + 1;
    if (!g.is_two_qubit() ||
        state.crystal_of(first).id == state.crystal_of(g.operands[1] + 1).id) {
      sh.bring_to_liz(first);
      sh.execute_gate(g.index);
    } else {
      // The first operand travels towards the second, one crystal at a time.
      const IonId second = g.operands[1] + 1;
      const Direction d = state.crystal_of(first).segment < state.crystal_of(second).segment
                              ? Direction::Down
                              : Direction::Up;
      for (;;) {
        const Crystal* next = state.neighbour(state.crystal_of(first).id, d);
        if (next->id == state.crystal_of(second).id) break;
        if (d == Direction::Down) {
          sh.ion_permutation(first, next->top_ion(), std::nullopt);
        } else {
          sh.ion_permutation(next->bottom_ion(), first, std::nullopt);
        }
      }
      if (d == Direction::Down) {
        sh.ion_permutation(first, second, g.index);
      } else {
        sh.ion_permutation(second, first, g.index);
      }
    }
    per_gate.push_back(sh.split_merge_count() - before);
  }

  const std::size_t total = sh.split_merge_count();
  return ScheduleResult{std::move(sequence), total, std::move(per_gate), std::move(state)};
}

ScheduleResult compile(const Circuit& circuit, const Ordering& ordering,
                       const TrapConfig& config) {
  TrapState state(config);
  place_in_the_model(state, ordering, circuit);
  return schedule(circuit, std::move(state));
}

} // namespace qccd

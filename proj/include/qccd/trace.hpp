// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qccd-compiler Authors

#pragma once

#include "qccd/commands.hpp"
#include "qccd/trap.hpp"

#include <string>
#include <vector>

namespace qccd {

/// One rendered snapshot of the trap.
struct TraceRow {
  std::size_t first_seq = 0;
  std::size_t last_seq = 0;
  /// Per segment (index 0 is segment 1): ion ids of the crystal there.
  std::vector<std::vector<IonId>> cells;
  /// Gate indices executed while the trap was in this layout.
  std::vector<int> gates;
};

/// Replays the sequence (strictly) and records one row for the initial
/// placement and one for each SMU/SMD/RC/M/S. Commands that leave the ion
/// layout untouched are folded into the preceding row.
std::vector<TraceRow> trace_rows(const CommandSequence& sequence, const TrapConfig& config);

/// Text grid, time running downward. Every row has one two-character cell
/// per segment; ions are printed as base-62 digits (1-9, a-z, A-Z).
std::string render_trace(const CommandSequence& sequence, const TrapConfig& config);

std::string render_trace_svg(const CommandSequence& sequence, const TrapConfig& config);

/// Single-character label for an ion id, '?' when it does not fit.
char ion_glyph(IonId ion);

} // namespace qccd

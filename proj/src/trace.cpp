// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qccd-compiler Authors

#include "qccd/trace.hpp"

#include "qccd/replay.hpp"

#include <cstdio>
#include <sstream>

namespace qccd {

char ion_glyph(IonId ion) {
  static constexpr char digits[] =
      "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
  if (ion < 1 || ion >= 62) return '?';
  return digits[ion];
}

namespace {

std::vector<std::vector<IonId>> snapshot(const TrapState& state) {
  std::vector<std::vector<IonId>> cells(static_cast<std::size_t>(state.n_segments()));
  for (const Crystal* c : state.crystals_top_to_bottom()) {
    cells[static_cast<std::size_t>(c->segment - 1)] = c->ions;
  }
  return cells;
}

std::string seq_label(const TraceRow& row) {
  if (row.first_seq == row.last_seq) return std::to_string(row.first_seq);
  return std::to_string(row.first_seq) + "-" + std::to_string(row.last_seq);
}

} // namespace

std::vector<TraceRow> trace_rows(const CommandSequence& sequence, const TrapConfig& config) {
  std::vector<TraceRow> rows;
  bool placing = true;
  ReplayOptions strict;
  strict.strict = true;
  replay(sequence, config, strict,
         [&](std::size_t seq, const Command& cmd, const TrapState& state) {
           const bool placement = cmd.op == Opcode::START || cmd.op == Opcode::AIC;
           if (placement && placing) {
             if (rows.empty()) rows.push_back(TraceRow{seq, seq, {}, {}});
             rows.back().last_seq = seq;
             rows.back().cells = snapshot(state);
             return;
           }
           placing = false;
           if (changes_ion_layout(cmd.op) || rows.empty()) {
             rows.push_back(TraceRow{seq, seq, snapshot(state), {}});
           } else {
             rows.back().last_seq = seq;
           }
           if (cmd.op == Opcode::DG) rows.back().gates.push_back(cmd.params[0]);
         });
  return rows;
}

std::string render_trace(const CommandSequence& sequence, const TrapConfig& config) {
  const auto rows = trace_rows(sequence, config);
  std::ostringstream out;
  constexpr int label_width = 12;
  char buf[16];

  std::string header(label_width, ' ');
  header += '|';
  for (int s = 1; s <= config.n_segments; ++s) {
    std::snprintf(buf, sizeof buf, "%2d", s % 100);
    header += buf;
  }
  header += '|';
  std::string marker(label_width, ' ');
  marker += '|';
  for (int s = 1; s <= config.n_segments; ++s) marker += s == config.liz ? "LZ" : "  ";
  marker += '|';
  out << header << '\n' << marker << '\n';

  for (const TraceRow& row : rows) {
    std::string label = seq_label(row);
    label.resize(label_width, ' ');
    out << label << '|';
    for (const auto& cell : row.cells) {
      if (cell.empty()) {
        out << " .";
      } else if (cell.size() == 1) {
        out << ' ' << ion_glyph(cell[0]);
      } else {
        out << ion_glyph(cell[0]) << ion_glyph(cell[1]);
      }
    }
    out << '|';
    for (std::size_t i = 0; i < row.gates.size(); ++i) {
      out << (i ? "," : " DG ") << row.gates[i];
    }
    out << '\n';
  }
  return out.str();
}

std::string render_trace_svg(const CommandSequence& sequence, const TrapConfig& config) {
  const auto rows = trace_rows(sequence, config);
  constexpr int cell = 18;
  constexpr int margin = 70;
  const int width = margin + cell * config.n_segments + 10;
  const int height = cell * (static_cast<int>(rows.size()) + 1) + 10;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" font-family=\"monospace\" font-size=\"10\">\n";
  const int liz_x = margin + cell * (config.liz - 1);
  out << "<rect x=\"" << liz_x << "\" y=\"0\" width=\"" << cell << "\" height=\"" << height
      << "\" fill=\"#fff3c4\"/>\n";
  for (int s = 1; s <= config.n_segments; ++s) {
    out << "<text x=\"" << margin + cell * (s - 1) + 3 << "\" y=\"12\">" << s << "</text>\n";
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const int y = cell * (static_cast<int>(r) + 1) + cell / 2 + 4;
    out << "<text x=\"2\" y=\"" << y + 4 << "\">" << seq_label(rows[r]) << "</text>\n";
    for (std::size_t s = 0; s < rows[r].cells.size(); ++s) {
      const auto& ions = rows[r].cells[s];
      for (std::size_t k = 0; k < ions.size(); ++k) {
        const int cx = margin + cell * static_cast<int>(s) + 5 + static_cast<int>(k) * 8;
        const int hue = (ions[k] * 67) % 360;
        out << "<circle cx=\"" << cx << "\" cy=\"" << y << "\" r=\"4\" fill=\"hsl(" << hue
            << ",70%,45%)\"><title>ion " << ions[k] << "</title></circle>\n";
      }
    }
  }
  out << "</svg>\n";
  return out.str();
}

} // namespace qccd

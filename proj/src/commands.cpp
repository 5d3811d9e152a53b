// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qccd-compiler Authors

#include "qccd/commands.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace qccd {

std::string_view to_string(Opcode op) {
  switch (op) {
    case Opcode::START: return "START";
    case Opcode::AIC: return "AIC";
    case Opcode::AEC: return "AEC";
    case Opcode::REC: return "REC";
    case Opcode::SMU: return "SMU";
    case Opcode::SMD: return "SMD";
    case Opcode::RC: return "RC";
    case Opcode::M: return "M";
    case Opcode::S: return "S";
    case Opcode::DG: return "DG";
  }
  return "?";
}

std::optional<Opcode> opcode_from_string(std::string_view name) {
  for (Opcode op : kAllOpcodes) {
    if (to_string(op) == name) return op;
  }
  return std::nullopt;
}

bool arity_ok(Opcode op, std::size_t n) {
  switch (op) {
    case Opcode::START:
    case Opcode::M:
    case Opcode::S: return n == 0;
    case Opcode::AIC: return n == 2;
    case Opcode::AEC:
    case Opcode::REC:
    case Opcode::DG: return n == 1;
    case Opcode::SMU:
    case Opcode::SMD:
    case Opcode::RC: return n >= 1;
  }
  return false;
}

bool changes_ion_layout(Opcode op) {
  switch (op) {
    case Opcode::SMU:
    case Opcode::SMD:
    case Opcode::RC:
    case Opcode::M:
    case Opcode::S: return true;
    default: return false;
  }
}

std::size_t CommandSequence::count(Opcode op) const {
  return static_cast<std::size_t>(std::ranges::count(commands, op, &Command::op));
}

std::size_t cost(const CommandSequence& sequence) {
  return sequence.count(Opcode::S) + sequence.count(Opcode::M);
}

std::string serialize(const CommandSequence& sequence) {
  std::string out;
  out.reserve(sequence.commands.size() * 12 + 32);
  out += "# segments=" + std::to_string(sequence.n_segments) +
         " liz=" + std::to_string(sequence.liz) + "\n";
  char buf[16];
  auto put = [&](long v) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, end);
  };
  long seq = 0;
  for (const Command& c : sequence.commands) {
    put(++seq);
    out += ' ';
    out += to_string(c.op);
    out += ' ';
    put(static_cast<long>(c.params.size()));
    for (int p : c.params) {
      out += ' ';
      put(p);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<long> parse_int(std::string_view s) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

void parse_header(std::string_view line, int line_no, CommandSequence& seq) {
  for (std::string_view field : split_fields(line.substr(1))) {
    auto eq = field.find('=');
    if (eq == std::string_view::npos) continue;
    std::string_view key = field.substr(0, eq);
    if (key != "segments" && key != "liz") continue;
    auto value = parse_int(field.substr(eq + 1));
    if (!value || *value < 1 || *value > 1'000'000) {
      throw FormatError(line_no, "bad header value '" + std::string(field) + "'");
    }
    (key == "segments" ? seq.n_segments : seq.liz) = static_cast<int>(*value);
  }
}

} // namespace

CommandSequence parse_sequence(std::string_view text) {
  CommandSequence seq;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    if (!line.empty() && line.front() == '#') {
      parse_header(line, line_no, seq);
      continue;
    }
    auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() < 3) throw FormatError(line_no, "expected '<seq> <OPCODE> <nparams> ...'");

    auto number = parse_int(fields[0]);
    if (!number) throw FormatError(line_no, "bad sequence number '" + std::string(fields[0]) + "'");
    if (*number != static_cast<long>(seq.commands.size()) + 1) {
      throw FormatError(line_no, "sequence number " + std::to_string(*number) + " out of order, expected " +
                                     std::to_string(seq.commands.size() + 1));
    }
    auto op = opcode_from_string(fields[1]);
    if (!op) throw FormatError(line_no, "unknown opcode '" + std::string(fields[1]) + "'");
    auto nparams = parse_int(fields[2]);
    if (!nparams || *nparams < 0) {
      throw FormatError(line_no, "bad parameter count '" + std::string(fields[2]) + "'");
    }
    if (static_cast<std::size_t>(*nparams) != fields.size() - 3) {
      throw FormatError(line_no, "declared " + std::to_string(*nparams) + " parameters but found " +
                                     std::to_string(fields.size() - 3));
    }
    if (!arity_ok(*op, static_cast<std::size_t>(*nparams))) {
      throw FormatError(line_no, std::string(to_string(*op)) + " does not take " +
                                     std::to_string(*nparams) + " parameters");
    }
    Command cmd{*op, {}};
    for (std::size_t i = 3; i < fields.size(); ++i) {
      auto v = parse_int(fields[i]);
      if (!v || *v < -1'000'000'000L || *v > 1'000'000'000L) {
        throw FormatError(line_no, "bad parameter '" + std::string(fields[i]) + "'");
      }
      cmd.params.push_back(static_cast<int>(*v));
    }
    seq.commands.push_back(std::move(cmd));
  }
  return seq;
}

} // namespace qccd

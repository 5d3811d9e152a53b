// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qccd-compiler Authors

// qccdc: compile OpenQASM circuits to trap shuttling sequences, validate and
// render sequences, and run the benchmark sweeps.

#include "qccd/benchmarks.hpp"
#include "qccd/commands.hpp"
#include "qccd/ordering.hpp"
#include "qccd/qasm.hpp"
#include "qccd/replay.hpp"
#include "qccd/scheduler.hpp"
#include "qccd/trace.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace qccd;

enum ExitCode {
  kOk = 0,
  kFailure = 1,
  kParse = 2,
  kCapacity = 3,
  kOverflow = 4,
  kIo = 5,
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw IoError("cannot write " + path);
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct TrapFlags {
  std::optional<int> segments;
  std::optional<int> liz;

  void add_to(CLI::App* app) {
    app->add_option("--segments", segments, "Number of trap segments");
    app->add_option("--liz", liz, "LIZ segment");
  }

  TrapConfig apply(TrapConfig config) const {
    if (segments) config.n_segments = *segments;
    if (liz) config.liz = *liz;
    config.validate();
    return config;
  }
};

int report_error(const std::exception& e) {
  std::cerr << "error: " << e.what() << "\n";
  if (dynamic_cast<const QasmError*>(&e) || dynamic_cast<const FormatError*>(&e)) return kParse;
  if (auto* t = dynamic_cast<const TrapError*>(&e)) {
    if (t->kind() == TrapErrorKind::CapacityExceeded) return kCapacity;
    if (t->kind() == TrapErrorKind::TrapOverflow) return kOverflow;
    return kFailure;
  }
  if (dynamic_cast<const IoError*>(&e)) return kIo;
  return kFailure;
}

std::string write_trace(const std::string& path, const CommandSequence& seq, const TrapConfig& config) {
  return ends_with(path, ".svg") ? render_trace_svg(seq, config) : render_trace(seq, config);
}

struct CompileArgs {
  std::string input;
  std::string output;
  std::string ordering = "ipo";
  std::uint64_t seed = 0;
  std::string trace;
  bool decompose = false;
  TrapFlags trap;
};

int cmd_compile(const CompileArgs& args) {
  const TrapConfig config = args.trap.apply(TrapConfig{});
  ParseOptions opts;
  opts.decompose_toffoli = args.decompose;
  const auto parsed = parse_qasm_with_diagnostics(read_file(args.input), opts);
  for (const auto& w : parsed.warnings) {
    std::cerr << args.input << ":" << w.line << ":" << w.column << ": warning: " << w.message << "\n";
  }
  const Circuit& circuit = parsed.circuit;
  const auto method = ordering_method_from_string(args.ordering);
  if (!method) throw std::invalid_argument("unknown ordering '" + args.ordering + "'");

  const Ordering ordering = make_ordering(circuit, *method, args.seed);
  const ScheduleResult result = compile(circuit, ordering, config);
  const std::string text = serialize(result.sequence);
  if (args.output.empty() || args.output == "-") {
    std::cout << text;
  } else {
    write_file(args.output, text);
  }
  if (!args.trace.empty()) write_file(args.trace, write_trace(args.trace, result.sequence, config));

  std::ostream& log = args.output.empty() || args.output == "-" ? std::cerr : std::cout;
  log << "qubits " << circuit.n_qubits << ", gates " << circuit.gates.size() << " ("
      << circuit.two_qubit_gate_count() << " two-qubit), ordering " << args.ordering << "\n";
  log << "cost " << result.cost << " (S " << result.sequence.count(Opcode::S) << ", M "
      << result.sequence.count(Opcode::M) << ")\n";
  log << "commands";
  for (Opcode op : kAllOpcodes) log << " " << to_string(op) << "=" << result.sequence.count(op);
  log << "\n";
  if (circuit.two_qubit_gate_count() > 0) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", fit_report(circuit, result.cost).circuit_fit);
    log << "circuit fit " << buf << "\n";
  }
  return kOk;
}

struct ValidateArgs {
  std::string input;
  bool strict = false;
  TrapFlags trap;
};

int cmd_validate(const ValidateArgs& args) {
  const CommandSequence seq = parse_sequence(read_file(args.input));
  TrapConfig config;
  config.n_segments = seq.n_segments;
  config.liz = seq.liz;
  config = args.trap.apply(config);
  ReplayOptions opts;
  opts.strict = args.strict;
  try {
    const ReplayReport report = replay(seq, config, opts);
    for (const Violation& v : report.violations) {
      std::cerr << args.input << ": command " << v.seq << ": " << v.message << "\n";
    }
    std::cout << seq.size() << " commands, S " << report.s_count << ", M " << report.m_count
              << ", violations " << report.violations.size() << "\n";
    return report.ok() ? kOk : kFailure;
  } catch (const ReplayError& e) {
    std::cerr << args.input << ": " << e.what() << "\n";
    return kFailure;
  }
}

struct TraceArgs {
  std::string input;
  std::string output;
  std::string svg;
  TrapFlags trap;
};

int cmd_trace(const TraceArgs& args) {
  const CommandSequence seq = parse_sequence(read_file(args.input));
  TrapConfig config;
  config.n_segments = seq.n_segments;
  config.liz = seq.liz;
  config = args.trap.apply(config);
  const std::string grid = render_trace(seq, config);
  if (args.output.empty() || args.output == "-") {
    std::cout << grid;
  } else {
    write_file(args.output, grid);
  }
  if (!args.svg.empty()) write_file(args.svg, render_trace_svg(seq, config));
  return kOk;
}

struct BenchArgs {
  std::string suite = "random";
  std::vector<int> qubits;
  std::size_t gates = 1000;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::vector<std::string> orderings{"oai", "oir", "ipo"};
  std::string csv;
  unsigned threads = 0;
  TrapFlags trap;
};

int cmd_bench(const BenchArgs& args) {
  SweepOptions opts;
  const auto suite = suite_from_string(args.suite);
  if (!suite) throw std::invalid_argument("unknown suite '" + args.suite + "'");
  opts.suite = *suite;
  opts.n_list = args.qubits;
  opts.random_gates = args.gates;
  opts.trials = args.trials;
  opts.seed = args.seed;
  opts.threads = args.threads;
  opts.methods.clear();
  for (const auto& name : args.orderings) {
    const auto m = ordering_method_from_string(name);
    if (!m) throw std::invalid_argument("unknown ordering '" + name + "'");
    opts.methods.push_back(*m);
  }
  if (args.trap.segments || args.trap.liz) opts.trap = args.trap.apply(TrapConfig{});

  const SweepReport report = run_sweep(opts);
  if (!args.csv.empty()) write_file(args.csv, report.to_csv());

  std::printf("%-8s %4s %-6s %8s %10s %8s %7s %8s\n", "suite", "n", "method", "min", "mean",
              "max", "trials", "failed");
  for (const SweepSummary& s : report.summaries) {
    std::printf("%-8s %4d %-6s %8zu %10.2f %8zu %7zu %8zu\n", args.suite.c_str(), s.n,
                std::string(to_string(s.method)).c_str(), s.min, s.mean, s.max, s.trials,
                s.failures);
  }
  for (const SweepRecord& r : report.records) {
    if (r.error) {
      std::fprintf(stderr, "n=%d %s trial %zu: %s\n", r.n, std::string(to_string(r.method)).c_str(),
                   r.trial, r.error->c_str());
    }
  }
  const bool failed = std::ranges::any_of(report.records, [](const SweepRecord& r) { return r.error.has_value(); });
  return failed ? kFailure : kOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trapped-ion shuttling compiler"};
  app.require_subcommand(1);

  CompileArgs compile_args;
  auto* compile = app.add_subcommand("compile", "Compile an OpenQASM 2.0 circuit into a shuttling sequence");
  compile->add_option("-i,--input", compile_args.input, "OpenQASM file")->required();
  compile->add_option("-o,--output", compile_args.output, "Sequence output (default stdout)");
  compile->add_option("--ordering", compile_args.ordering, "Initial ordering")
      ->check(CLI::IsMember({"oai", "oir", "ipo"}));
  compile->add_option("--seed", compile_args.seed, "Seed for the random ordering");
  compile->add_option("--trace", compile_args.trace, "Write a trace (.svg for SVG, text otherwise)");
  compile->add_flag("--decompose-ccx", compile_args.decompose, "Expand ccx gates instead of rejecting them");
  compile_args.trap.add_to(compile);

  ValidateArgs validate_args;
  auto* validate = app.add_subcommand("validate", "Replay a sequence file and report constraint violations");
  validate->add_option("-i,--input", validate_args.input, "Sequence file")->required();
  validate->add_flag("--strict", validate_args.strict, "Stop at the first violation");
  validate_args.trap.add_to(validate);

  TraceArgs trace_args;
  auto* trace = app.add_subcommand("trace", "Render a sequence file as a text grid or SVG");
  trace->add_option("-i,--input", trace_args.input, "Sequence file")->required();
  trace->add_option("-o,--output", trace_args.output, "Text grid output (default stdout)");
  trace->add_option("--trace,--svg", trace_args.svg, "SVG output");
  trace_args.trap.add_to(trace);

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Run an ordering sweep over a benchmark suite");
  bench->add_option("--suite", bench_args.suite, "Benchmark suite")
      ->check(CLI::IsMember({"random", "qft", "toffoli"}));
  bench->add_option("--qubits", bench_args.qubits, "Qubit counts, comma separated")
      ->delimiter(',')
      ->required();
  bench->add_option("--gates", bench_args.gates, "Gates per random circuit");
  bench->add_option("--trials", bench_args.trials, "Random orderings per circuit");
  bench->add_option("--seed", bench_args.seed, "Master seed");
  bench->add_option("--ordering", bench_args.orderings, "Orderings to run, comma separated")
      ->delimiter(',');
  bench->add_option("--csv", bench_args.csv, "Write one CSV row per compile");
  bench->add_option("--threads", bench_args.threads, "Worker threads (0 = all cores)");
  bench_args.trap.add_to(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*compile) return cmd_compile(compile_args);
    if (*validate) return cmd_validate(validate_args);
    if (*trace) return cmd_trace(trace_args);
    if (*bench) return cmd_bench(bench_args);
  } catch (const std::exception& e) {
    return report_error(e);
  }
  return kFailure;
}

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qccd-compiler Authors

#include "qccd/benchmarks.hpp"
#include "qccd/replay.hpp"
#include "qccd/scheduler.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace qccd;

namespace {

using Layout = std::vector<std::vector<IonId>>;

TrapState trap_with(std::initializer_list<std::pair<std::vector<IonId>, SegmentId>> crystals) {
  TrapState t{TrapConfig{}};
  for (const auto& [ions, seg] : crystals) t.place_crystal(ions, seg);
  return t;
}

Layout layout(const TrapState& t) {
  Layout out;
  for (const Crystal* c : t.crystals_top_to_bottom()) out.push_back(c->ions);
  return out;
}

std::vector<Opcode> ops(const CommandSequence& s, std::size_t from = 0) {
  std::vector<Opcode> out;
  for (std::size_t i = from; i < s.commands.size(); ++i) out.push_back(s.commands[i].op);
  return out;
}

// Opcodes with the empty-well bracketing and the moves stripped.
std::vector<Opcode> core_ops(const CommandSequence& s) {
  std::vector<Opcode> out;
  for (const Command& c : s.commands) {
    if (c.op == Opcode::RC || c.op == Opcode::M || c.op == Opcode::S || c.op == Opcode::DG) out.push_back(c.op);
  }
  return out;
}

Circuit circuit(int n, std::initializer_list<std::pair<int, int>> one_based) {
  Circuit c;
  c.n_qubits = n;
  for (auto [a, b] : one_based) c.append("cx", {a - 1, b - 1});
  return c;
}

void expect_sound(const Circuit& c, const ScheduleResult& r, const TrapConfig& config) {
  ReplayOptions opts;
  opts.circuit = &c;
  const ReplayReport rep = replay(r.sequence, config, opts);
  for (const auto& v : rep.violations) ADD_FAILURE() << "command " << v.seq << ": " << v.message;
  EXPECT_EQ(rep.cost(), r.cost);
  EXPECT_EQ(cost(r.sequence), r.cost);
  std::size_t sum = 0;
  for (std::size_t g : r.per_gate_costs) sum += g;
  EXPECT_EQ(sum, r.cost);
  EXPECT_EQ(r.per_gate_costs.size(), c.gates.size());
  EXPECT_EQ(r.sequence.count(Opcode::DG), c.gates.size());
}

}  // namespace

TEST(Schedule, GateAlreadyInLiz) {
  const Circuit c = circuit(2, {{1, 2}});
  const ScheduleResult r = schedule(c, trap_with({{{1, 2}, 19}}));
  EXPECT_EQ(r.cost, 0u);
  EXPECT_EQ(ops(r.sequence), (std::vector<Opcode>{Opcode::START, Opcode::AIC, Opcode::AIC,
                                                  Opcode::AEC, Opcode::AEC, Opcode::DG,
                                                  Opcode::REC, Opcode::REC}));
  expect_sound(c, r, TrapConfig{});
}

TEST(Schedule, GateNeedsTransportOnly) {
  const Circuit c = circuit(2, {{1, 2}});
  const ScheduleResult r = schedule(c, trap_with({{{1, 2}, 10}}));
  EXPECT_EQ(r.cost, 0u);
  EXPECT_EQ(r.sequence.count(Opcode::SMD), 9u);
  EXPECT_EQ(r.sequence.count(Opcode::SMU), 0u);
  EXPECT_EQ(core_ops(r.sequence), (std::vector<Opcode>{Opcode::DG}));
  EXPECT_EQ(r.final_state.crystal_of(1).segment, 19);
  expect_sound(c, r, TrapConfig{});
}

TEST(Schedule, ExchangeBetweenFullCrystals) {
  const Circuit c = circuit(4, {{1, 3}});
  const ScheduleResult r = schedule(c, trap_with({{{1, 2}, 19}, {{3, 4}, 21}}));
  EXPECT_EQ(r.sequence.count(Opcode::S), 3u);
  EXPECT_EQ(r.sequence.count(Opcode::M), 3u);
  EXPECT_EQ(r.cost, 6u);
  // Upper RC, two splits, merge, RC, gate, split, two re-merges.
  EXPECT_EQ(core_ops(r.sequence),
            (std::vector<Opcode>{Opcode::RC, Opcode::S, Opcode::S, Opcode::M, Opcode::RC,
                                 Opcode::DG, Opcode::S, Opcode::M, Opcode::M}));
  expect_sound(c, r, TrapConfig{});
}

TEST(Schedule, OneQubitGatesTravelToLiz) {
  Circuit c;
  c.n_qubits = 4;
  c.append("h", {3});
  c.append("h", {0});
  const ScheduleResult r = schedule(c, trap_with({{{1, 2}, 19}, {{3, 4}, 21}}));
  EXPECT_EQ(r.cost, 0u);
  expect_sound(c, r, TrapConfig{});
}

TEST(Schedule, RejectsMismatchedState) {
  const Circuit c = circuit(3, {{1, 2}});
  EXPECT_THROW(schedule(c, trap_with({{{1, 2}, 19}})), std::invalid_argument);
  EXPECT_THROW(schedule(c, trap_with({{{1, 2}, 19}, {{4}, 23}})), std::invalid_argument);
}

TEST(IonPermutation, FullCrystalsExchange) {
  TrapState t = trap_with({{{1, 2}, 19}, {{3, 4}, 21}});
  CommandSequence out;
  Shuttler sh(t, out);
  sh.ion_permutation(1, 3, std::nullopt);
  EXPECT_EQ(sh.split_merge_count(), 6u);
  EXPECT_EQ(out.count(Opcode::DG), 0u);
  ASSERT_EQ(t.crystal_count(), 2u);
  auto sets = layout(t);
  for (auto& s : sets) std::ranges::sort(s);
  EXPECT_EQ(sets, (Layout{{2, 3}, {1, 4}}));
  EXPECT_TRUE(t.check_spacing().empty());
}

TEST(IonPermutation, TwoSingletonsWithGate) {
  TrapState t = trap_with({{{1}, 18}, {{3}, 20}});
  CommandSequence out;
  Shuttler sh(t, out);
  sh.ion_permutation(1, 3, 0);
  EXPECT_EQ(sh.split_merge_count(), 2u);
  EXPECT_EQ(core_ops(out), (std::vector<Opcode>{Opcode::M, Opcode::RC, Opcode::DG, Opcode::S}));
  EXPECT_EQ(layout(t), (Layout{{3}, {1}}));
}

TEST(IonPermutation, PairAboveSingleton) {
  TrapState t = trap_with({{{1, 2}, 19}, {{3}, 21}});
  CommandSequence out;
  Shuttler sh(t, out);
  sh.ion_permutation(2, 3, std::nullopt);
  EXPECT_EQ(out.count(Opcode::S), 2u);
  EXPECT_EQ(out.count(Opcode::M), 2u);
  EXPECT_EQ(out.count(Opcode::RC), 1u);
  EXPECT_EQ(layout(t), (Layout{{1, 3}, {2}}));
}

TEST(IonPermutation, RequiresAdjacentCrystals) {
  TrapState t = trap_with({{{1}, 15}, {{2}, 19}, {{3}, 23}});
  CommandSequence out;
  Shuttler sh(t, out);
  EXPECT_THROW(sh.ion_permutation(1, 3, std::nullopt), std::logic_error);
  EXPECT_THROW(sh.ion_permutation(3, 2, std::nullopt), std::logic_error);
}

TEST(SendToSegment, ClearPath) {
  TrapState t = trap_with({{{1}, 10}});
  CommandSequence out;
  Shuttler sh(t, out);
  sh.send_to_segment(t.crystal_of(1).id, 19);
  ASSERT_EQ(out.size(), 9u);
  for (std::size_t i = 0; i < out.size(); ++i) {
    EXPECT_EQ(out.commands[i], (Command{Opcode::SMD, {10 + static_cast<int>(i)}}));
  }
}

TEST(SendToSegment, PushesBlockerAhead) {
  TrapState t = trap_with({{{1}, 17}, {{2}, 19}});
  CommandSequence out;
  Shuttler sh(t, out);
  sh.send_to_segment(t.crystal_of(1).id, 19);
  EXPECT_EQ(out.commands, (std::vector<Command>{{Opcode::SMD, {19}},
                                               {Opcode::SMD, {20}},
                                               {Opcode::SMD, {17}},
                                               {Opcode::SMD, {18}}}));
  EXPECT_EQ(t.crystal_of(1).segment, 19);
  EXPECT_EQ(t.crystal_of(2).segment, 21);
}

TEST(SendToSegment, PushChainsRecursively) {
  TrapState t = trap_with({{{3}, 14}, {{1}, 10}, {{2}, 12}});
  CommandSequence out;
  Shuttler sh(t, out);
  sh.send_to_segment(t.crystal_of(1).id, 16);
  EXPECT_EQ(layout(t), (Layout{{1}, {2}, {3}}));
  EXPECT_EQ(t.crystal_of(1).segment, 16);
  EXPECT_EQ(t.crystal_of(2).segment, 18);
  EXPECT_EQ(t.crystal_of(3).segment, 20);
  EXPECT_TRUE(t.check_spacing().empty());
}

TEST(SendToSegment, UpwardsIsSymmetric) {
  TrapState t = trap_with({{{1}, 23}, {{2}, 21}});
  CommandSequence out;
  Shuttler sh(t, out);
  sh.send_to_segment(t.crystal_of(1).id, 21);
  EXPECT_EQ(out.commands, (std::vector<Command>{{Opcode::SMU, {21}},
                                               {Opcode::SMU, {20}},
                                               {Opcode::SMU, {23}},
                                               {Opcode::SMU, {22}}}));
}

TEST(SendToSegment, OverflowAtTheEdge) {
  TrapState t = trap_with({{{1}, 28}, {{2}, 30}, {{3}, 32}});
  CommandSequence out;
  Shuttler sh(t, out);
  try {
    sh.send_to_segment(t.crystal_of(1).id, 30);
    FAIL() << "expected TrapOverflow";
  } catch (const TrapError& e) {
    EXPECT_EQ(e.kind(), TrapErrorKind::TrapOverflow);
  }
}

TEST(Compile, EmptyWellsBracketEverySensitiveCommand) {
  const Circuit c = gen_random_circuit(8, 60, 99);
  const ScheduleResult r = compile(c, order_as_is(c), TrapConfig{});
  expect_sound(c, r, TrapConfig{});
  std::set<SegmentId> open;
  for (const Command& cmd : r.sequence.commands) {
    if (cmd.op == Opcode::AEC) open.insert(cmd.params[0]);
    if (cmd.op == Opcode::REC) {
      EXPECT_EQ(open.erase(cmd.params[0]), 1u);
    }
    if (cmd.op == Opcode::SMU || cmd.op == Opcode::SMD) {
      EXPECT_TRUE(open.empty());
    }
  }
  EXPECT_TRUE(open.empty());
}

TEST(Compile, AicPrologueComesFirst) {
  const Circuit c = gen_random_circuit(7, 30, 5);
  const ScheduleResult r = compile(c, increase_pairwise_order(c), TrapConfig{});
  ASSERT_FALSE(r.sequence.empty());
  EXPECT_EQ(r.sequence.commands[0].op, Opcode::START);
  for (std::size_t i = 1; i <= 7; ++i) EXPECT_EQ(r.sequence.commands[i].op, Opcode::AIC);
  for (std::size_t i = 8; i < r.sequence.size(); ++i) {
    EXPECT_NE(r.sequence.commands[i].op, Opcode::AIC);
    EXPECT_NE(r.sequence.commands[i].op, Opcode::START);
  }
}

// Random circuits, orderings and traps: the schedule must replay cleanly,
// charge exactly its S+M count, and cost the same from the mirrored layout.
TEST(CompileProperties, SoundAndReversalSymmetric) {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 11);
    Circuit c = gen_random_circuit(n, 1 + rng() % 40, rng());
    if (rng() % 3 == 0) c.append("h", {static_cast<int>(rng() % static_cast<unsigned>(n))});
    const OrderingMethod m = std::array{OrderingMethod::OAI, OrderingMethod::OIR, OrderingMethod::IPO}[rng() % 3];
    const Ordering o = make_ordering(c, m, rng());
    const TrapConfig config = TrapConfig::scaled_for(n);
    const ScheduleResult r = compile(c, o, config);
    expect_sound(c, r, config);
    const ScheduleResult mirrored = compile(c, reversed(o), config);
    EXPECT_EQ(mirrored.cost, r.cost);
    EXPECT_EQ(mirrored.per_gate_costs, r.per_gate_costs);
    std::size_t ions = 0;
    for (const Crystal* cr : r.final_state.crystals_top_to_bottom()) ions += cr->size();
    EXPECT_EQ(ions, static_cast<std::size_t>(n));
  }
}

TEST(CompileProperties, Deterministic) {
  const Circuit c = gen_random_circuit(10, 200, 3);
  for (OrderingMethod m : {OrderingMethod::OAI, OrderingMethod::OIR, OrderingMethod::IPO}) {
    const auto a = compile(c, make_ordering(c, m, 42), TrapConfig{});
    const auto b = compile(c, make_ordering(c, m, 42), TrapConfig{});
    EXPECT_EQ(serialize(a.sequence), serialize(b.sequence));
  }
}

TEST(Compile, QftUnderAsIsCostsSixPerExchange) {
  // Pair gates inside a crystal are free; all other gates of the first block
  // walk ion 1 down, one exchange (cost 6) per crystal.
  const Circuit c = gen_qft(4);
  const ScheduleResult r = compile(c, order_as_is(c), TrapConfig{});
  EXPECT_EQ(r.per_gate_costs[0], 0u);
  EXPECT_EQ(r.per_gate_costs[1], 6u);
  expect_sound(c, r, TrapConfig{});
}

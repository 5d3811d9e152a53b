// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qccd-compiler Authors

#include "qccd/trap.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace qccd;

namespace {

TrapErrorKind error_of(auto&& fn) {
  try {
    fn();
  } catch (const TrapError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected a TrapError";
  return TrapErrorKind::InvalidConfig;
}

CrystalId place(TrapState& t, std::vector<IonId> ions, SegmentId s) {
  return t.place_crystal(ions, s);
}

std::vector<IonId> all_ions(const TrapState& t) {
  std::vector<IonId> ions;
  for (const Crystal* c : t.crystals_top_to_bottom()) ions.insert(ions.end(), c->ions.begin(), c->ions.end());
  std::ranges::sort(ions);
  return ions;
}

}  // namespace

TEST(TrapConfig, Defaults) {
  const TrapConfig c;
  EXPECT_EQ(c.n_segments, 32);
  EXPECT_EQ(c.liz, 19);
  EXPECT_EQ(c.max_ions_per_crystal, 2);
  EXPECT_EQ(c.min_crystal_spacing, 2);
  EXPECT_TRUE(c.empty_wells_required);
  EXPECT_FALSE(c.parallel_rotations);
  EXPECT_NO_THROW(c.validate());

  const TrapState t(c);
  EXPECT_EQ(t.n_segments(), 32);
  EXPECT_EQ(t.liz(), 19);
  EXPECT_EQ(t.crystal_count(), 0u);
  for (SegmentId s = 1; s <= 32; ++s) EXPECT_TRUE(t.is_free(s));
}

TEST(TrapConfig, RejectsBadValues) {
  auto with = [](auto&& edit) {
    TrapConfig c;
    edit(c);
    return error_of([&] { TrapState t(c); });
  };
  EXPECT_EQ(with([](TrapConfig& c) { c.n_segments = 4; }), TrapErrorKind::InvalidConfig);
  EXPECT_EQ(with([](TrapConfig& c) { c.liz = 33; }), TrapErrorKind::InvalidConfig);
  EXPECT_EQ(with([](TrapConfig& c) { c.liz = 0; }), TrapErrorKind::InvalidConfig);
  EXPECT_EQ(with([](TrapConfig& c) { c.min_crystal_spacing = 1; }), TrapErrorKind::InvalidConfig);
  EXPECT_EQ(with([](TrapConfig& c) { c.max_ions_per_crystal = 3; }), TrapErrorKind::InvalidConfig);
  EXPECT_EQ(with([](TrapConfig& c) { c.n_liz = 2; }), TrapErrorKind::InvalidConfig);
}

TEST(TrapConfig, ScaledForLargeRegisters) {
  EXPECT_EQ(TrapConfig::scaled_for(8), TrapConfig{});
  for (int n : {12, 24, 40}) {
    const TrapConfig c = TrapConfig::scaled_for(n);
    EXPECT_NO_THROW(c.validate());
    EXPECT_GE(c.n_segments, 2 * ((n + 1) / 2) + 1);
  }
}

TEST(PlaceCrystal, Examples) {
  TrapState t{TrapConfig{}};
  const CrystalId id = place(t, {1, 2}, 19);
  EXPECT_EQ(t.crystal_at(19)->id, id);
  EXPECT_EQ(t.crystal_of(2).ions, (std::vector<IonId>{1, 2}));
  EXPECT_EQ(error_of([&] { place(t, {3}, 20); }), TrapErrorKind::SpacingViolation);
  EXPECT_EQ(error_of([&] { place(t, {1}, 5); }), TrapErrorKind::DuplicateIon);
  EXPECT_EQ(error_of([&] { place(t, {4, 4}, 5); }), TrapErrorKind::DuplicateIon);
  EXPECT_EQ(error_of([&] { place(t, {5, 6, 7}, 5); }), TrapErrorKind::CapacityExceeded);
  EXPECT_EQ(error_of([&] { place(t, {5}, 33); }), TrapErrorKind::OutOfBounds);
  EXPECT_NO_THROW(place(t, {3}, 21));
}

TEST(AddIon, BuildsCrystalsIonByIon) {
  TrapState t{TrapConfig{}};
  t.add_ion(3, 19);
  t.add_ion(1, 19);
  EXPECT_EQ(t.crystal_at(19)->ions, (std::vector<IonId>{3, 1}));
  EXPECT_EQ(error_of([&] { t.add_ion(2, 19); }), TrapErrorKind::CapacityExceeded);
  EXPECT_EQ(error_of([&] { t.add_ion(1, 15); }), TrapErrorKind::DuplicateIon);
  t.move_crystal_step(19, Direction::Down);
  EXPECT_EQ(error_of([&] { t.add_ion(2, 12); }), TrapErrorKind::PlacementClosed);
}

TEST(MoveCrystalStep, Examples) {
  TrapState t{TrapConfig{}};
  place(t, {1}, 10);
  EXPECT_EQ(t.move_crystal_step(10, Direction::Up), 9);
  EXPECT_EQ(t.crystal_of(1).segment, 9);

  TrapState edge{TrapConfig{}};
  place(edge, {1}, 1);
  EXPECT_EQ(error_of([&] { edge.move_crystal_step(1, Direction::Up); }), TrapErrorKind::OutOfBounds);
  EXPECT_EQ(error_of([&] { edge.move_crystal_step(4, Direction::Up); }), TrapErrorKind::EmptySegment);

  TrapState pair{TrapConfig{}};
  place(pair, {1}, 10);
  place(pair, {2}, 13);
  EXPECT_EQ(pair.move_crystal_step(13, Direction::Up), 12);
  EXPECT_EQ(error_of([&] { pair.move_crystal_step(12, Direction::Up); }),
            TrapErrorKind::SpacingViolation);
  EXPECT_EQ(pair.crystal_of(2).segment, 12);
}

TEST(MoveCrystals, MovesTogetherAndRespectsWells) {
  TrapState t{TrapConfig{}};
  place(t, {1}, 19);
  place(t, {2}, 21);
  const SegmentId both[] = {19, 21};
  t.move_crystals(both, Direction::Down);
  EXPECT_EQ(t.crystal_of(1).segment, 20);
  EXPECT_EQ(t.crystal_of(2).segment, 22);
  t.add_empty_well(23);
  const SegmentId lower[] = {22};
  EXPECT_EQ(error_of([&] { t.move_crystals(lower, Direction::Down); }), TrapErrorKind::Blocked);
}

TEST(SplitAtLiz, Examples) {
  TrapState t{TrapConfig{}};
  place(t, {4, 7}, 19);
  const CrystalId before = t.crystal_at(19)->id;
  const auto [up, down] = t.split_at_liz();
  EXPECT_EQ(t.crystal(up).ions, (std::vector<IonId>{4}));
  EXPECT_EQ(t.crystal(up).segment, 18);
  EXPECT_EQ(t.crystal(down).ions, (std::vector<IonId>{7}));
  EXPECT_EQ(t.crystal(down).segment, 20);
  EXPECT_TRUE(t.is_free(19));
  EXPECT_GT(up, before);
  EXPECT_GT(down, up);

  TrapState single{TrapConfig{}};
  place(single, {4}, 19);
  EXPECT_EQ(error_of([&] { single.split_at_liz(); }), TrapErrorKind::WrongSize);

  TrapState empty{TrapConfig{}};
  EXPECT_EQ(error_of([&] { empty.split_at_liz(); }), TrapErrorKind::EmptySegment);
}

TEST(SplitAtLiz, BlockedNextToLiz) {
  TrapState t{TrapConfig{}};
  place(t, {1, 2}, 18);
  t.move_crystal_step(18, Direction::Down);
  t.add_empty_well(20);
  EXPECT_EQ(error_of([&] { t.split_at_liz(); }), TrapErrorKind::Blocked);

  TrapState crowded{TrapConfig{}};
  place(crowded, {1, 2}, 19);
  place(crowded, {3}, 21);
  EXPECT_EQ(error_of([&] { crowded.split_at_liz(); }), TrapErrorKind::SpacingViolation);
}

TEST(MergeAtLiz, Examples) {
  TrapState t{TrapConfig{}};
  place(t, {4}, 18);
  place(t, {7}, 20);
  const CrystalId id = t.merge_at_liz();
  EXPECT_EQ(t.crystal(id).ions, (std::vector<IonId>{4, 7}));
  EXPECT_EQ(t.crystal(id).segment, 19);
  EXPECT_TRUE(t.is_free(18));
  EXPECT_TRUE(t.is_free(20));

  TrapState one{TrapConfig{}};
  place(one, {4}, 18);
  EXPECT_EQ(error_of([&] { one.merge_at_liz(); }), TrapErrorKind::MissingOperand);

  TrapState big{TrapConfig{}};
  place(big, {4, 5}, 18);
  place(big, {7}, 20);
  EXPECT_EQ(error_of([&] { big.merge_at_liz(); }), TrapErrorKind::ResultTooLarge);
}

TEST(RotateAtLiz, Examples) {
  TrapState t{TrapConfig{}};
  place(t, {4, 7}, 19);
  t.rotate_at_liz();
  EXPECT_EQ(t.crystal_at(19)->ions, (std::vector<IonId>{7, 4}));

  TrapState single{TrapConfig{}};
  place(single, {4}, 19);
  single.rotate_at_liz();
  EXPECT_EQ(single.crystal_at(19)->ions, (std::vector<IonId>{4}));

  TrapState off{TrapConfig{}};
  place(off, {1, 2}, 5);
  EXPECT_EQ(error_of([&] { off.rotate(5); }), TrapErrorKind::NotInLiz);
  EXPECT_EQ(error_of([&] { off.rotate_at_liz(); }), TrapErrorKind::EmptySegment);

  const SegmentId two[] = {5, 19};
  EXPECT_EQ(error_of([&] { off.rotate(two); }), TrapErrorKind::ParallelRotation);
}

TEST(EmptyWells, AddAndRemove) {
  TrapState t{TrapConfig{}};
  EXPECT_EQ(t.empty_well_sites(), (std::vector<SegmentId>{17, 21}));
  EXPECT_EQ(t.missing_empty_wells(), (std::vector<SegmentId>{17, 21}));
  t.add_empty_well(17);
  EXPECT_TRUE(t.has_empty_well(17));
  EXPECT_EQ(t.missing_empty_wells(), (std::vector<SegmentId>{21}));
  place(t, {1}, 21);
  EXPECT_TRUE(t.missing_empty_wells().empty());
  EXPECT_EQ(error_of([&] { t.add_empty_well(17); }), TrapErrorKind::Blocked);
  EXPECT_EQ(error_of([&] { t.remove_empty_well(18); }), TrapErrorKind::NoEmptyWell);
  t.remove_empty_well(17);
  EXPECT_TRUE(t.is_free(17));
}

TEST(CheckSpacing, Examples) {
  TrapState t{TrapConfig{}};
  EXPECT_TRUE(t.check_spacing().empty());
  place(t, {1}, 17);
  place(t, {2}, 19);
  place(t, {3}, 21);
  EXPECT_TRUE(t.check_spacing().empty());
  // {18, 19} cannot be built: every mutation refuses it up front.
  TrapState close{TrapConfig{}};
  place(close, {1}, 19);
  EXPECT_EQ(error_of([&] { place(close, {2}, 18); }), TrapErrorKind::SpacingViolation);
  EXPECT_TRUE(close.check_spacing().empty());
}

TEST(TrapState, Neighbours) {
  TrapState t{TrapConfig{}};
  const CrystalId a = place(t, {1}, 3);
  const CrystalId b = place(t, {2, 3}, 9);
  const CrystalId c = place(t, {4}, 30);
  EXPECT_EQ(t.neighbour(a, Direction::Up), nullptr);
  EXPECT_EQ(t.neighbour(a, Direction::Down)->id, b);
  EXPECT_EQ(t.neighbour(b, Direction::Down)->id, c);
  EXPECT_EQ(t.neighbour(c, Direction::Up)->id, b);
  EXPECT_EQ(t.neighbour(c, Direction::Down), nullptr);
  EXPECT_EQ(error_of([&] { t.crystal_of(9); }), TrapErrorKind::UnknownIon);
}

// Random walks over the primitives: whatever succeeds must conserve ions,
// keep spacing, and hand out strictly increasing crystal ids.
TEST(TrapProperties, RandomOperationSequences) {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 200; ++trial) {
    TrapState t{TrapConfig{}};
    place(t, {1, 2}, 15);
    place(t, {3, 4}, 19);
    place(t, {5}, 23);
    place(t, {6, 7}, 27);
    const auto ions = all_ions(t);
    CrystalId last_id = 4;
    for (int step = 0; step < 200; ++step) {
      const auto pick = rng() % 5;
      try {
        if (pick == 0) {
          const SegmentId s = 1 + static_cast<SegmentId>(rng() % 32);
          t.move_crystal_step(s, rng() % 2 ? Direction::Up : Direction::Down);
        } else if (pick == 1) {
          const auto [u, d] = t.split_at_liz();
          EXPECT_GT(u, last_id);
          EXPECT_GT(d, u);
          last_id = d;
        } else if (pick == 2) {
          const CrystalId m = t.merge_at_liz();
          EXPECT_GT(m, last_id);
          last_id = m;
        } else if (pick == 3) {
          t.rotate_at_liz();
        } else {
          const SegmentId s = 1 + static_cast<SegmentId>(rng() % 32);
          if (t.has_empty_well(s)) t.remove_empty_well(s); else t.add_empty_well(s);
        }
      } catch (const TrapError&) {
      }
      ASSERT_EQ(all_ions(t), ions);
      ASSERT_TRUE(t.check_spacing().empty());
      for (const Crystal* c : t.crystals_top_to_bottom()) {
        ASSERT_LE(c->size(), 2u);
        for (IonId ion : c->ions) ASSERT_EQ(t.crystal_of(ion).id, c->id);
      }
    }
  }
}

TEST(TrapProperties, SplitThenMergeRestoresOrder) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const IonId a = 1 + static_cast<IonId>(rng() % 50);
    IonId b = 1 + static_cast<IonId>(rng() % 49);
    if (b >= a) ++b;
    TrapState t{TrapConfig{}};
    place(t, {a, b}, 19);
    t.split_at_liz();
    t.merge_at_liz();
    EXPECT_EQ(t.crystal_at(19)->ions, (std::vector<IonId>{a, b}));
    t.rotate_at_liz();
    t.rotate_at_liz();
    EXPECT_EQ(t.crystal_at(19)->ions, (std::vector<IonId>{a, b}));
  }
}

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qccd-compiler Authors

#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qccd {

using IonId = int;
using CrystalId = int;
/// 1-based trap segment index; segment 1 is the top of the trap.
using SegmentId = int;

/// Up moves towards segment 1, down towards the last segment.
enum class Direction { Up, Down };

constexpr int step_of(Direction d) { return d == Direction::Up ? -1 : 1; }
constexpr Direction opposite(Direction d) {
  return d == Direction::Up ? Direction::Down : Direction::Up;
}

enum class TrapErrorKind {
  InvalidConfig,
  SpacingViolation,
  CapacityExceeded,
  DuplicateIon,
  OutOfBounds,
  EmptySegment,
  NotInLiz,
  WrongSize,
  Blocked,
  MissingOperand,
  ResultTooLarge,
  ParallelRotation,
  PlacementClosed,
  NoEmptyWell,
  TrapOverflow,
  UnknownIon,
};

const char* to_string(TrapErrorKind kind);

class TrapError : public std::runtime_error {
 public:
  TrapError(TrapErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  TrapErrorKind kind() const { return kind_; }

 private:
  TrapErrorKind kind_;
};

/// Hardware constraint set of a linear segmented trap with one laser
/// interaction zone (LIZ). Defaults are the reference architecture.
struct TrapConfig {
  int n_segments = 32;
  SegmentId liz = 19;
  int max_ions_per_crystal = 2;
  /// Minimum index difference between two occupied segments.
  int min_crystal_spacing = 2;
  bool empty_wells_required = true;
  bool split_merge_only_in_liz = true;
  bool rotation_only_in_liz = true;
  bool parallel_rotations = false;
  int max_rotation_crystal_size = 2;
  int n_liz = 1;

  /// Throws TrapError(InvalidConfig).
  void validate() const;

  /// The default constraint set with the segment count enlarged, and the
  /// LIZ moved proportionally, so that `n_qubits` ions have room to be
  /// shuttled. Returns the defaults when they already suffice.
  static TrapConfig scaled_for(int n_qubits);

  friend bool operator==(const TrapConfig&, const TrapConfig&) = default;
};

struct Crystal {
  CrystalId id = 0;
  /// Position 0 is the top ion.
  std::vector<IonId> ions;
  SegmentId segment = 0;

  std::size_t size() const { return ions.size(); }
  IonId top_ion() const { return ions.front(); }
  IonId bottom_ion() const { return ions.back(); }
};

struct SpacingViolation {
  SegmentId upper = 0;
  SegmentId lower = 0;
  friend bool operator==(const SpacingViolation&, const SpacingViolation&) = default;
};

/// One-dimensional trap model. Every mutation validates its constraints
/// before touching the state, so a throwing call leaves the state unchanged.
class TrapState {
 public:
  struct EmptyWell {};
  using Slot = std::variant<std::monostate, EmptyWell, CrystalId>;

  explicit TrapState(TrapConfig config);

  const TrapConfig& config() const { return config_; }
  SegmentId liz() const { return config_.liz; }
  int n_segments() const { return config_.n_segments; }
  bool in_bounds(SegmentId s) const { return s >= 1 && s <= config_.n_segments; }

  const Crystal* crystal_at(SegmentId s) const;
  bool has_empty_well(SegmentId s) const;
  bool is_free(SegmentId s) const;
  const Crystal& crystal(CrystalId id) const;
  const Crystal& crystal_of(IonId ion) const;
  bool has_ion(IonId ion) const { return ion_owner_.contains(ion); }
  std::size_t ion_count() const { return ion_owner_.size(); }
  std::size_t crystal_count() const { return crystals_.size(); }
  /// Live crystals ordered from the top of the trap.
  std::vector<const Crystal*> crystals_top_to_bottom() const;
  /// Nearest crystal strictly above / below `id`, or nullptr.
  const Crystal* neighbour(CrystalId id, Direction d) const;
  /// True once any shuttling operation has been applied.
  bool shuttling_started() const { return shuttling_started_; }

  CrystalId place_crystal(std::span<const IonId> ions, SegmentId s);
  /// Initial placement of one ion: creates a crystal at `s` or appends the
  /// ion to the crystal already there.
  CrystalId add_ion(IonId ion, SegmentId s);

  SegmentId move_crystal_step(SegmentId s, Direction d);
  /// Moves the crystals at all listed segments one step simultaneously.
  void move_crystals(std::span<const SegmentId> segments, Direction d);
  std::pair<CrystalId, CrystalId> split_at_liz();
  CrystalId merge_at_liz();
  void rotate(SegmentId s);
  void rotate(std::span<const SegmentId> segments);
  void rotate_at_liz() { rotate(config_.liz); }

  void add_empty_well(SegmentId s);
  void remove_empty_well(SegmentId s);
  /// Segments flanking the LIZ at distance 2 that must hold a crystal or an
  /// empty well before a sensitive operation at the LIZ.
  std::vector<SegmentId> empty_well_sites() const;
  /// Sites from `empty_well_sites` currently holding neither.
  std::vector<SegmentId> missing_empty_wells() const;

  std::vector<SpacingViolation> check_spacing() const;

 private:
  [[noreturn]] void fail(TrapErrorKind kind, const std::string& msg) const;
  void require_in_bounds(SegmentId s) const;
  void require_spacing(SegmentId dest, std::span<const SegmentId> ignore) const;
  CrystalId mint(std::vector<IonId> ions, SegmentId s);
  Crystal& mutable_crystal_at(SegmentId s);

  TrapConfig config_;
  std::vector<Slot> segments_;  // index 0 unused
  std::map<CrystalId, Crystal> crystals_;
  std::map<IonId, CrystalId> ion_owner_;
  CrystalId next_crystal_id_ = 1;
  bool shuttling_started_ = false;
};

} // namespace qccd

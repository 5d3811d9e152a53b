// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qccd-compiler Authors

#include "qccd/trap.hpp"

#include <algorithm>
#include <cstdlib>

namespace qccd {

const char* to_string(TrapErrorKind kind) {
  switch (kind) {
    case TrapErrorKind::InvalidConfig: return "InvalidConfig";
    case TrapErrorKind::SpacingViolation: return "SpacingViolation";
    case TrapErrorKind::CapacityExceeded: return "CapacityExceeded";
    case TrapErrorKind::DuplicateIon: return "DuplicateIon";
    case TrapErrorKind::OutOfBounds: return "OutOfBounds";
    case TrapErrorKind::EmptySegment: return "EmptySegment";
    case TrapErrorKind::NotInLiz: return "NotInLiz";
    case TrapErrorKind::WrongSize: return "WrongSize";
    case TrapErrorKind::Blocked: return "Blocked";
    case TrapErrorKind::MissingOperand: return "MissingOperand";
    case TrapErrorKind::ResultTooLarge: return "ResultTooLarge";
    case TrapErrorKind::ParallelRotation: return "ParallelRotation";
    case TrapErrorKind::PlacementClosed: return "PlacementClosed";
    case TrapErrorKind::NoEmptyWell: return "NoEmptyWell";
    case TrapErrorKind::TrapOverflow: return "TrapOverflow";
    case TrapErrorKind::UnknownIon: return "UnknownIon";
  }
  return "?";
}

void TrapConfig::validate() const {
  auto bad = [](const std::string& msg) {
    throw TrapError(TrapErrorKind::InvalidConfig, "invalid trap config: " + msg);
  };
  if (n_segments < 5) bad("at least 5 segments are required");
  if (liz < 1 || liz > n_segments) bad("LIZ segment outside the trap");
  if (min_crystal_spacing < 2) bad("crystals need at least one empty segment between them");
  if (max_ions_per_crystal != 2) bad("only crystals of up to 2 ions are supported");
  if (max_rotation_crystal_size < 1 || max_rotation_crystal_size > max_ions_per_crystal) {
    bad("rotation size limit out of range");
  }
  if (n_liz != 1) bad("exactly one LIZ is supported");
  if (!split_merge_only_in_liz) bad("split/merge is only defined at the LIZ");
}

TrapConfig TrapConfig::scaled_for(int n_qubits) {
  TrapConfig config;
  // Room for the packed crystals on either side of the LIZ plus the extra
  // singletons an exchange creates.
  const int crystals = (n_qubits + 1) / 2;
  const int needed = 2 * config.min_crystal_spacing * (crystals + 3) + 1;
  if (needed > config.n_segments) {
    config.liz = (needed * config.liz) / config.n_segments;
    config.n_segments = needed;
  }
  return config;
}

TrapState::TrapState(TrapConfig config) : config_(config) {
  config_.validate();
  segments_.resize(static_cast<std::size_t>(config_.n_segments) + 1);
}

void TrapState::fail(TrapErrorKind kind, const std::string& msg) const {
  throw TrapError(kind, std::string(to_string(kind)) + ": " + msg);
}

void TrapState::require_in_bounds(SegmentId s) const {
  if (!in_bounds(s)) {
    fail(TrapErrorKind::OutOfBounds,
         "segment " + std::to_string(s) + " outside 1.." + std::to_string(config_.n_segments));
  }
}

const Crystal* TrapState::crystal_at(SegmentId s) const {
  if (!in_bounds(s)) return nullptr;
  if (const auto* id = std::get_if<CrystalId>(&segments_[static_cast<std::size_t>(s)])) {
    return &crystals_.at(*id);
  }
  return nullptr;
}

Crystal& TrapState::mutable_crystal_at(SegmentId s) {
  return crystals_.at(std::get<CrystalId>(segments_[static_cast<std::size_t>(s)]));
}

bool TrapState::has_empty_well(SegmentId s) const {
  return in_bounds(s) &&
         std::holds_alternative<EmptyWell>(segments_[static_cast<std::size_t>(s)]);
}

bool TrapState::is_free(SegmentId s) const {
  return in_bounds(s) &&
         std::holds_alternative<std::monostate>(segments_[static_cast<std::size_t>(s)]);
}

const Crystal& TrapState::crystal(CrystalId id) const {
  auto it = crystals_.find(id);
  if (it == crystals_.end()) {
    throw TrapError(TrapErrorKind::EmptySegment, "no live crystal " + std::to_string(id));
  }
  return it->second;
}

const Crystal& TrapState::crystal_of(IonId ion) const {
  auto it = ion_owner_.find(ion);
  if (it == ion_owner_.end()) fail(TrapErrorKind::UnknownIon, "ion " + std::to_string(ion));
  return crystals_.at(it->second);
}

std::vector<const Crystal*> TrapState::crystals_top_to_bottom() const {
  std::vector<const Crystal*> out;
  out.reserve(crystals_.size());
  for (SegmentId s = 1; s <= config_.n_segments; ++s) {
    if (const Crystal* c = crystal_at(s)) out.push_back(c);
  }
  return out;
}

const Crystal* TrapState::neighbour(CrystalId id, Direction d) const {
  const int step = step_of(d);
  for (SegmentId s = crystal(id).segment + step; in_bounds(s); s += step) {
    if (const Crystal* c = crystal_at(s)) return c;
  }
  return nullptr;
}

void TrapState::require_spacing(SegmentId dest, std::span<const SegmentId> ignore) const {
  const int gap = config_.min_crystal_spacing;
  for (SegmentId s = dest - gap + 1; s <= dest + gap - 1; ++s) {
    if (std::ranges::find(ignore, s) != ignore.end()) continue;
    if (crystal_at(s) != nullptr) {
      fail(TrapErrorKind::SpacingViolation,
           "segment " + std::to_string(dest) + " is within " + std::to_string(gap - 1) +
               " of the crystal at segment " + std::to_string(s));
    }
  }
}

CrystalId TrapState::mint(std::vector<IonId> ions, SegmentId s) {
  const CrystalId id = next_crystal_id_++;
  for (IonId ion : ions) ion_owner_[ion] = id;
  crystals_.emplace(id, Crystal{id, std::move(ions), s});
  segments_[static_cast<std::size_t>(s)] = id;
  return id;
}

CrystalId TrapState::place_crystal(std::span<const IonId> ions, SegmentId s) {
  if (shuttling_started_) fail(TrapErrorKind::PlacementClosed, "shuttling has started");
  require_in_bounds(s);
  if (ions.empty()) fail(TrapErrorKind::WrongSize, "a crystal needs at least one ion");
  if (ions.size() > static_cast<std::size_t>(config_.max_ions_per_crystal)) {
    fail(TrapErrorKind::CapacityExceeded,
         std::to_string(ions.size()) + " ions exceed the crystal limit of " +
             std::to_string(config_.max_ions_per_crystal));
  }
  for (std::size_t i = 0; i < ions.size(); ++i) {
    if (ion_owner_.contains(ions[i]) ||
        std::find(ions.begin(), ions.begin() + static_cast<std::ptrdiff_t>(i), ions[i]) !=
            ions.begin() + static_cast<std::ptrdiff_t>(i)) {
      fail(TrapErrorKind::DuplicateIon, "ion " + std::to_string(ions[i]) + " already placed");
    }
  }
  if (!is_free(s)) fail(TrapErrorKind::Blocked, "segment " + std::to_string(s) + " is occupied");
  require_spacing(s, {});
  return mint(std::vector<IonId>(ions.begin(), ions.end()), s);
}

CrystalId TrapState::add_ion(IonId ion, SegmentId s) {
  require_in_bounds(s);
  if (const Crystal* existing = crystal_at(s)) {
    if (shuttling_started_) fail(TrapErrorKind::PlacementClosed, "shuttling has started");
    if (ion_owner_.contains(ion)) {
      fail(TrapErrorKind::DuplicateIon, "ion " + std::to_string(ion) + " already placed");
    }
    if (existing->size() >= static_cast<std::size_t>(config_.max_ions_per_crystal)) {
      fail(TrapErrorKind::CapacityExceeded,
           "crystal at segment " + std::to_string(s) + " is full");
    }
    Crystal& c = mutable_crystal_at(s);
    c.ions.push_back(ion);
    ion_owner_[ion] = c.id;
    return c.id;
  }
  const IonId one[] = {ion};
  return place_crystal(one, s);
}

SegmentId TrapState::move_crystal_step(SegmentId s, Direction d) {
  const SegmentId one[] = {s};
  move_crystals(one, d);
  return s + step_of(d);
}

void TrapState::move_crystals(std::span<const SegmentId> segments, Direction d) {
  if (segments.empty()) fail(TrapErrorKind::EmptySegment, "no segments to move");
  const int step = step_of(d);
  std::vector<SegmentId> sources(segments.begin(), segments.end());
  std::ranges::sort(sources);
  if (std::ranges::adjacent_find(sources) != sources.end()) {
    fail(TrapErrorKind::Blocked, "segment listed twice in one move");
  }
  for (SegmentId s : sources) {
    require_in_bounds(s);
    if (crystal_at(s) == nullptr) {
      fail(TrapErrorKind::EmptySegment, "no crystal at segment " + std::to_string(s));
    }
    require_in_bounds(s + step);
  }
  // Check every destination against the crystals that stay put, then the
  // movers against each other.
  for (SegmentId s : sources) {
    const SegmentId dest = s + step;
    if (has_empty_well(dest)) {
      fail(TrapErrorKind::Blocked,
           "segment " + std::to_string(dest) + " holds an empty well");
    }
    require_spacing(dest, sources);
  }
  for (std::size_t i = 1; i < sources.size(); ++i) {
    if (sources[i] - sources[i - 1] < config_.min_crystal_spacing) {
      fail(TrapErrorKind::SpacingViolation, "moved crystals too close");
    }
  }
  shuttling_started_ = true;
  std::vector<CrystalId> ids;
  for (SegmentId s : sources) {
    ids.push_back(std::get<CrystalId>(segments_[static_cast<std::size_t>(s)]));
    segments_[static_cast<std::size_t>(s)] = std::monostate{};
  }
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const SegmentId dest = sources[i] + step;
    crystals_.at(ids[i]).segment = dest;
    segments_[static_cast<std::size_t>(dest)] = ids[i];
  }
}

std::pair<CrystalId, CrystalId> TrapState::split_at_liz() {
  const SegmentId liz = config_.liz;
  const Crystal* c = crystal_at(liz);
  if (c == nullptr) fail(TrapErrorKind::EmptySegment, "no crystal in the LIZ to split");
  if (c->size() != 2) {
    fail(TrapErrorKind::WrongSize, "split needs a 2-ion crystal, LIZ holds " +
                                       std::to_string(c->size()));
  }
  require_in_bounds(liz - 1);
  require_in_bounds(liz + 1);
  if (!is_free(liz - 1) || !is_free(liz + 1)) {
    fail(TrapErrorKind::Blocked, "segments next to the LIZ must be free for a split");
  }
  const SegmentId self[] = {liz};
  require_spacing(liz - 1, self);
  require_spacing(liz + 1, self);
  shuttling_started_ = true;
  const std::vector<IonId> ions = c->ions;
  crystals_.erase(c->id);
  segments_[static_cast<std::size_t>(liz)] = std::monostate{};
  const CrystalId upper = mint({ions[0]}, liz - 1);
  const CrystalId lower = mint({ions[1]}, liz + 1);
  return {upper, lower};
}

CrystalId TrapState::merge_at_liz() {
  const SegmentId liz = config_.liz;
  if (!is_free(liz)) fail(TrapErrorKind::Blocked, "the LIZ must be empty for a merge");
  const Crystal* upper = crystal_at(liz - 1);
  const Crystal* lower = crystal_at(liz + 1);
  if (upper == nullptr || lower == nullptr) {
    fail(TrapErrorKind::MissingOperand, "merge needs crystals on both sides of the LIZ");
  }
  if (upper->size() + lower->size() > static_cast<std::size_t>(config_.max_ions_per_crystal)) {
    fail(TrapErrorKind::ResultTooLarge,
         "merged crystal would hold " + std::to_string(upper->size() + lower->size()) + " ions");
  }
  shuttling_started_ = true;
  std::vector<IonId> ions = upper->ions;
  ions.insert(ions.end(), lower->ions.begin(), lower->ions.end());
  crystals_.erase(upper->id);
  crystals_.erase(lower->id);
  segments_[static_cast<std::size_t>(liz - 1)] = std::monostate{};
  segments_[static_cast<std::size_t>(liz + 1)] = std::monostate{};
  return mint(std::move(ions), liz);
}

void TrapState::rotate(SegmentId s) {
  const SegmentId one[] = {s};
  rotate(one);
}

void TrapState::rotate(std::span<const SegmentId> segments) {
  if (segments.empty()) fail(TrapErrorKind::EmptySegment, "no segment to rotate");
  if (segments.size() > 1 && !config_.parallel_rotations) {
    fail(TrapErrorKind::ParallelRotation, "parallel rotations are not allowed");
  }
  for (SegmentId s : segments) {
    require_in_bounds(s);
    if (config_.rotation_only_in_liz && s != config_.liz) {
      fail(TrapErrorKind::NotInLiz,
           "rotation outside the LIZ at segment " + std::to_string(s));
    }
    const Crystal* c = crystal_at(s);
    if (c == nullptr) fail(TrapErrorKind::EmptySegment, "no crystal at segment " + std::to_string(s));
    if (c->size() > static_cast<std::size_t>(config_.max_rotation_crystal_size)) {
      fail(TrapErrorKind::WrongSize, "crystal too large to rotate");
    }
  }
  shuttling_started_ = true;
  for (SegmentId s : segments) {
    Crystal& c = mutable_crystal_at(s);
    std::ranges::reverse(c.ions);
  }
}

void TrapState::add_empty_well(SegmentId s) {
  require_in_bounds(s);
  if (!is_free(s)) {
    fail(TrapErrorKind::Blocked, "segment " + std::to_string(s) + " is not free for an empty well");
  }
  segments_[static_cast<std::size_t>(s)] = EmptyWell{};
}

void TrapState::remove_empty_well(SegmentId s) {
  require_in_bounds(s);
  if (!has_empty_well(s)) {
    fail(TrapErrorKind::NoEmptyWell, "no empty well at segment " + std::to_string(s));
  }
  segments_[static_cast<std::size_t>(s)] = std::monostate{};
}

std::vector<SegmentId> TrapState::empty_well_sites() const {
  std::vector<SegmentId> sites;
  for (SegmentId s : {config_.liz - 2, config_.liz + 2}) {
    if (in_bounds(s)) sites.push_back(s);
  }
  return sites;
}

std::vector<SegmentId> TrapState::missing_empty_wells() const {
  std::vector<SegmentId> missing;
  for (SegmentId s : empty_well_sites()) {
    if (is_free(s)) missing.push_back(s);
  }
  return missing;
}

std::vector<SpacingViolation> TrapState::check_spacing() const {
  std::vector<SpacingViolation> out;
  SegmentId previous = 0;
  for (SegmentId s = 1; s <= config_.n_segments; ++s) {
    if (crystal_at(s) == nullptr) continue;
    if (previous != 0 && s - previous < config_.min_crystal_spacing) {
      out.push_back({previous, s});
    }
    previous = s;
  }
  return out;
}

} // namespace qccd

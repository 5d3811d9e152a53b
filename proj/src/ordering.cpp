// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qccd-compiler Authors

#include "qccd/ordering.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>

namespace qccd {

std::string_view to_string(OrderingMethod method) {
  switch (method) {
    case OrderingMethod::OAI: return "oai";
    case OrderingMethod::OIR: return "oir";
    case OrderingMethod::IPO: return "ipo";
  }
  return "?";
}

std::optional<OrderingMethod> ordering_method_from_string(std::string_view name) {
  for (auto m : {OrderingMethod::OAI, OrderingMethod::OIR, OrderingMethod::IPO}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

std::size_t Ordering::ion_count() const {
  std::size_t n = 0;
  for (const auto& c : crystals) n += c.size();
  return n;
}

Ordering reversed(const Ordering& ordering) {
  Ordering out = ordering;
  std::ranges::reverse(out.crystals);
  for (auto& c : out.crystals) std::ranges::reverse(c);
  return out;
}

namespace {

std::vector<std::vector<IonId>> chunk_pairs(const std::vector<IonId>& ions) {
  std::vector<std::vector<IonId>> out;
  for (std::size_t i = 0; i < ions.size(); i += 2) {
    if (i + 1 < ions.size()) {
      out.push_back({ions[i], ions[i + 1]});
    } else {
      out.push_back({ions[i]});
    }
  }
  return out;
}

std::vector<IonId> all_ions(const Circuit& circuit) {
  std::vector<IonId> ions(static_cast<std::size_t>(circuit.n_qubits));
  std::iota(ions.begin(), ions.end(), 1);
  return ions;
}

} // namespace

Ordering order_as_is(const Circuit& circuit) {
  return Ordering{chunk_pairs(all_ions(circuit)), OrderingMethod::OAI, std::nullopt};
}

Ordering order_inputs_randomly(const Circuit& circuit, std::uint64_t seed) {
  std::vector<IonId> ions = all_ions(circuit);
  std::mt19937_64 engine(seed);
  for (std::size_t i = ions.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(engine, i));
    std::swap(ions[i - 1], ions[j]);
  }
  return Ordering{chunk_pairs(ions), OrderingMethod::OIR, seed};
}

Ordering increase_pairwise_order(const Circuit& circuit) {
  const std::size_t n = static_cast<std::size_t>(circuit.n_qubits);
  std::vector<std::vector<IonId>> crystals;
  std::vector<int> owner(n + 1, -1);  // ion -> index into crystals

  auto new_crystal = [&](std::vector<IonId> ions) {
    for (IonId ion : ions) owner[static_cast<std::size_t>(ion)] = static_cast<int>(crystals.size());
    crystals.push_back(std::move(ions));
  };

  // First pass: every gate whose two ions are both unplaced creates a crystal.
  for (const Gate& g : circuit.gates) {
    if (!g.is_two_qubit()) continue;
    const IonId u = g.operands[0] + 1;
    const IonId v = g.operands[1] + 1;
    if (owner[static_cast<std::size_t>(u)] < 0 && owner[static_cast<std::size_t>(v)] < 0) {
      new_crystal({u, v});
    }
  }
  // Leftovers are paired in ascending id order.
  std::vector<IonId> leftover;
  for (IonId ion = 1; ion <= static_cast<IonId>(n); ++ion) {
    if (owner[static_cast<std::size_t>(ion)] < 0) leftover.push_back(ion);
  }
  for (auto& group : chunk_pairs(leftover)) new_crystal(std::move(group));

  // Second pass: move crystals from V (pending) to V' (placed).
  std::vector<bool> pending(crystals.size(), true);
  std::deque<int> placed;

  auto place_closest = [&](int anchor, int crystal) {
    const auto pos = static_cast<std::size_t>(
        std::ranges::find(placed, anchor) - placed.begin());
    const std::size_t to_top = pos;
    const std::size_t to_bottom = placed.size() - 1 - pos;
    if (to_top <= to_bottom) {
      placed.push_front(crystal);
    } else {
      placed.push_back(crystal);
    }
  };

  for (const Gate& g : circuit.gates) {
    if (!g.is_two_qubit()) continue;
    const int cu = owner[static_cast<std::size_t>(g.operands[0] + 1)];
    const int cv = owner[static_cast<std::size_t>(g.operands[1] + 1)];
    const bool u_pending = pending[static_cast<std::size_t>(cu)];
    const bool v_pending = pending[static_cast<std::size_t>(cv)];
    if (cu == cv || (!u_pending && !v_pending)) continue;
    if (u_pending && v_pending) {
      placed.push_back(cu);
      placed.push_back(cv);
      pending[static_cast<std::size_t>(cu)] = false;
      pending[static_cast<std::size_t>(cv)] = false;
    } else if (u_pending) {
      place_closest(cv, cu);
      pending[static_cast<std::size_t>(cu)] = false;
    } else {
      place_closest(cu, cv);
      pending[static_cast<std::size_t>(cv)] = false;
    }
  }
  for (std::size_t i = 0; i < crystals.size(); ++i) {
    if (pending[i]) placed.push_back(static_cast<int>(i));
  }

  Ordering out{{}, OrderingMethod::IPO, std::nullopt};
  for (int idx : placed) out.crystals.push_back(crystals[static_cast<std::size_t>(idx)]);
  return out;
}

Ordering make_ordering(const Circuit& circuit, OrderingMethod method, std::uint64_t seed) {
  switch (method) {
    case OrderingMethod::OAI: return order_as_is(circuit);
    case OrderingMethod::OIR: return order_inputs_randomly(circuit, seed);
    case OrderingMethod::IPO: return increase_pairwise_order(circuit);
  }
  return order_as_is(circuit);
}

void place_in_the_model(TrapState& state, const Ordering& ordering, const Circuit& circuit) {
  if (state.crystal_count() != 0) {
    throw TrapError(TrapErrorKind::Blocked, "placement needs an empty trap");
  }
  const auto& config = state.config();
  const int k = static_cast<int>(ordering.crystals.size());
  if (k == 0) return;
  const int stride = config.min_crystal_spacing;
  const int span = (k - 1) * stride + 1;
  if (span > config.n_segments) {
    throw TrapError(TrapErrorKind::CapacityExceeded,
                    "CapacityExceeded: " + std::to_string(k) + " crystals need " +
                        std::to_string(span) + " segments, trap has " +
                        std::to_string(config.n_segments));
  }

  int anchor = 0;
  if (!circuit.gates.empty()) {
    const IonId first = circuit.gates.front().operands.front() + 1;
    for (int i = 0; i < k; ++i) {
      if (std::ranges::find(ordering.crystals[static_cast<std::size_t>(i)], first) !=
          ordering.crystals[static_cast<std::size_t>(i)].end()) {
        anchor = i;
        break;
      }
    }
  }
  int start = config.liz - anchor * stride;
  start = std::clamp(start, 1, config.n_segments - (span - 1));
  for (int i = 0; i < k; ++i) {
    state.place_crystal(ordering.crystals[static_cast<std::size_t>(i)], start + i * stride);
  }
}

} // namespace qccd

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qccd-compiler Authors

#pragma once

#include "qccd/circuit.hpp"
#include "qccd/trap.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace qccd {

enum class OrderingMethod { OAI, OIR, IPO };

std::string_view to_string(OrderingMethod method);
std::optional<OrderingMethod> ordering_method_from_string(std::string_view name);

/// Initial qubit-to-ion layout: crystals listed from the top of the trap,
/// each an ordered group of 1 or 2 ion ids (ion id = qubit index + 1).
struct Ordering {
  std::vector<std::vector<IonId>> crystals;
  OrderingMethod method = OrderingMethod::OAI;
  std::optional<std::uint64_t> seed;

  std::size_t ion_count() const;

  /// Equality looks at the layout only.
  friend bool operator==(const Ordering& a, const Ordering& b) {
    return a.crystals == b.crystals;
  }
};

/// The same layout seen from the other end of the trap: crystal list and
/// each crystal's ion order reversed.
Ordering reversed(const Ordering& ordering);

/// Pairs ions 1,2 | 3,4 | ... top to bottom.
Ordering order_as_is(const Circuit& circuit);

/// Uniform random permutation (Fisher-Yates over a seeded mt19937_64),
/// chunked pairwise from the top.
Ordering order_inputs_randomly(const Circuit& circuit, std::uint64_t seed);

/// Two-pass greedy pairing: co-gated ions share crystals, then crystals of
/// interacting ions are laid out next to each other.
Ordering increase_pairwise_order(const Circuit& circuit);

Ordering make_ordering(const Circuit& circuit, OrderingMethod method, std::uint64_t seed = 0);

/// Places the ordering into an empty trap at the minimum crystal spacing,
/// keeping list order, with the crystal holding the first gate's first
/// operand in the LIZ. The block is shifted inward if that would push it
/// past either end. Throws TrapError(CapacityExceeded) if it cannot fit.
void place_in_the_model(TrapState& state, const Ordering& ordering, const Circuit& circuit);

/// Uniform integer in [0, bound) from a 64-bit generator, without modulo
/// bias. Shared by every seeded routine so results do not depend on the
/// standard library's distribution implementations.
template <typename Engine>
std::uint64_t uniform_below(Engine& engine, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = engine();
  } while (x >= limit);
  return x % bound;
}

} // namespace qccd

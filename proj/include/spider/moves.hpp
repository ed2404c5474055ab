#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "spider/diagram.hpp"

namespace spider {

/// A Reidemeister move instance with its site parameters.
///
/// R1Add inserts an adjacent pair (Ok e, Uk e) at (comp1, pos1); over_first
/// picks the pair order.
/// R1Remove deletes crossing `crossing_a`, whose passages must be adjacent.
/// R2Add pokes the strand at (comp1, pos1) over the strand at (comp2, pos2):
/// [O a s, O b -s] on the first, [U b -s, U a s] on the second. Positions
/// refer to the unmodified diagram.
/// R2Remove deletes crossings (a, b) matching that pattern.
/// R3 names three strand segments (comp, pos)-(comp, pos+1) forming a
/// triangle; applying it swaps the two passages of each segment.
struct MoveSpec {
    enum class Kind { R1Add, R1Remove, R2Add, R2Remove, R3 };
    Kind kind = Kind::R1Add;

    int comp1 = 0, pos1 = 0;
    int comp2 = 0, pos2 = 0;
    int sign = 1;
    bool over_first = true;
    int crossing_a = 0, crossing_b = 0;
    std::array<int, 3> r3_comp{};
    std::array<int, 3> r3_pos{};

    std::string to_string() const;
};

/// Applies the move; DomainError naming the failed precondition when the
/// site is inapplicable. Crossings are renumbered afterwards, so ids in a
/// recorded trace are only meaningful for sequential replay.
Diagram apply_move(const Diagram& d, const MoveSpec& m);

std::vector<MoveSpec> enumerate_r1_removals(const Diagram& d);
std::vector<MoveSpec> enumerate_r2_removals(const Diagram& d);
std::vector<MoveSpec> enumerate_r3_moves(const Diagram& d);

struct WalkOptions {
    /// Soft ceiling on crossings: insertions are only drawn while under it,
    /// unless nothing else applies. Keeps fuzzed diagrams expandable.
    int max_crossings = 12;
};

/// `count` random applicable moves; deterministic for a fixed seed.
/// Inapplicable draws are redrawn. Optionally records the applied moves.
Diagram random_equivalent(const Diagram& d, int count, std::uint64_t seed,
                          const WalkOptions& opts = {},
                          std::vector<MoveSpec>* trace = nullptr);

} // namespace spider

#pragma once

// Depth-limited AND/OR search with no table, no symmetry and no move
// ordering, used to check the solver's proof depths.

#include <cstdint>
#include <vector>

#include "tak/board.hpp"
#include "tak/moves.hpp"

namespace plain {

// True when White can force a win within `depth` plies.
inline bool white_wins_within(tak::Position& pos, int depth, std::uint64_t& nodes) {
  ++nodes;
  const tak::Outcome o = tak::outcome(pos);
  if (o.terminal()) return o.is_win_for(tak::Color::White);
  if (depth == 0) return false;
  std::vector<tak::Move> moves;
  tak::generate_moves(pos, moves);
  const bool white = pos.to_move() == tak::Color::White;
  for (const tak::Move& m : moves) {
    const tak::UndoToken t = tak::apply_unchecked(pos, m);
    const bool win = white_wins_within(pos, depth - 1, nodes);
    tak::undo(pos, t);
    if (white && win) return true;
    if (!white && !win) return false;
  }
  return !white;
}

// Shortest forced White win of at most max_depth plies, or -1.
inline int white_win_distance(tak::Position pos, int max_depth, std::uint64_t& nodes) {
  for (int d = 0; d <= max_depth; ++d)
    if (white_wins_within(pos, d, nodes)) return d;
  return -1;
}

}  // namespace plain

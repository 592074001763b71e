#pragma once

#include "tak/board.hpp"

namespace tak::detail {

// Raw edits for move execution and parsing. Callers keep the invariants.
struct PositionAccess {
  static void set_stack(Position& p, int idx, const Stack& s) noexcept { p.set_stack(idx, s); }
  static Reserves& reserves(Position& p) noexcept { return p.reserves_; }
  static void set_to_move(Position& p, Color c) noexcept { p.to_move_ = c; }
  static void set_ply(Position& p, int ply) noexcept { p.ply_ = ply; }
  static void set_plies_since_placement(Position& p, int n) noexcept {
    p.plies_since_placement_ = n;
  }
  static std::uint64_t zobrist(const Position& p) noexcept { return p.zobrist_; }
  static int tall_stacks(const Position& p) noexcept { return p.tall_stacks_; }
  static void restore_hash_state(Position& p, std::uint64_t zobrist, int tall) noexcept {
    p.zobrist_ = zobrist;
    p.tall_stacks_ = tall;
  }
  // Overwrites a square without touching the hash; pair with
  // restore_hash_state.
  static void raw_stack(Position& p, int idx, const Stack& s) noexcept {
    p.board_[static_cast<std::size_t>(idx)] = s;
  }
};

}  // namespace tak::detail

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tak/board.hpp"
#include "tak/types.hpp"

namespace tak {

// Everything needed to take back one move: the squares it touched and the
// scalar state before it.
class UndoToken {
 public:
  static constexpr int kMaxSaved = Move::kMaxDrops + 1;

 private:
  friend struct MoveExecutor;

  std::array<std::pair<std::uint8_t, Stack>, kMaxSaved> saved_{};
  std::uint8_t saved_count_ = 0;
  Reserves reserves_{};
  Color to_move_ = Color::White;
  int ply_ = 0;
  int plies_since_placement_ = 0;
  std::uint64_t zobrist_ = 0;
  int tall_stacks_ = 0;
};

// Appends every legal move of `pos` to `out` without checking whether the
// game is already over. Order: placements square by square, then spreads.
void generate_moves(const Position& pos, std::vector<Move>& out);

// Throws ContractError when the game is over.
std::vector<Move> legal_moves(const Position& pos);

// Why `m` is illegal in `pos`, or nullopt when it is legal. Does not look at
// whether the game has ended.
std::optional<std::string> illegal_reason(const Position& pos, const Move& m);

// Plays a move known to be legal.
UndoToken apply_unchecked(Position& pos, const Move& m);
// Plays `m` after validating it; throws IllegalMove with the reason, or
// ContractError on a finished game.
UndoToken apply(Position& pos, const Move& m);
void undo(Position& pos, const UndoToken& token);

// Value-style apply: the new position plus the token that restores `pos`.
std::pair<Position, UndoToken> applied(const Position& pos, const Move& m);

// Number of legal move sequences of exactly `depth` plies. Finished games
// end their sequences.
std::uint64_t perft(const Position& pos, int depth);

}  // namespace tak

#pragma once

#include <random>
#include <vector>

#include "tak/board.hpp"
#include "tak/moves.hpp"

namespace tak::fixtures {

// Random legal playout of up to `plies` moves; stops early at a finished game.
inline Position random_position(int size, std::mt19937_64& rng, int plies) {
  Position pos = new_position(size);
  std::vector<Move> moves;
  for (int i = 0; i < plies && !outcome(pos).terminal(); ++i) {
    moves.clear();
    generate_moves(pos, moves);
    apply_unchecked(pos, moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)]);
  }
  return pos;
}

// Corpus with ply counts spread from the opening to long games.
inline std::vector<Position> random_corpus(int size, int count, std::uint64_t seed,
                                           int max_plies = 60) {
  std::mt19937_64 rng(seed);
  std::vector<Position> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out.push_back(random_position(size, rng, std::uniform_int_distribution<int>(0, max_plies)(rng)));
  return out;
}

inline int stones_on_board(const Position& pos, Color c) {
  int total = 0;
  for (int i = 0; i < pos.square_count(); ++i)
    for (int h = 0; h < pos.at(i).height(); ++h) total += pos.at(i).at(h).color == c;
  return total;
}

}  // namespace tak::fixtures

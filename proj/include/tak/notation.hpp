#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tak/board.hpp"
#include "tak/types.hpp"

namespace tak {

// Move grammar, canonical form:
//   placement  [S|C]<square>
//   spread     <square><dir><drops>      dir in + - < >, drops are digits
// Accepted on input as well: a leading stone count on spreads ("6c2>231"),
// a leading F on placements ("Fa1") and a direction with no drops, meaning
// the whole stack up to the carry limit in one drop.
//
// Without a position the stack height is unknown, so a bare direction is
// only accepted with a leading count there.
Move parse_move(std::string_view text, int size);
Move parse_move(std::string_view text, const Position& pos);

std::string format_move(const Move& m);
std::string format_square(Square sq);
Square parse_square(std::string_view text, int size);

// Diagram shorthand: "(S)a1" is a1 or Sa1, "b2<(2)" is b2<1 or b2<2 (a
// parenthesised count after the direction ranges from 1 up to it) and "c2±1"
// is c2+1 or c2-1. Canonical text expands to itself. Duplicates are
// removed; order follows the expansion.
std::vector<Move> expand_shorthand(std::string_view text, int size);
std::vector<Move> expand_shorthand(std::string_view text, const Position& pos);

// Throws ParseError unless every expansion of `text` is well-formed move
// text on this board size. A bare direction passes, since its meaning
// depends on the position.
void check_shorthand(std::string_view text, int size);

// Moves sorted by canonical text.
std::vector<Move> sorted_by_text(std::vector<Move> moves);

}  // namespace tak

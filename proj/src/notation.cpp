#include "tak/notation.hpp"

#include <algorithm>

#include "tak/errors.hpp"

namespace tak {

namespace {

constexpr std::string_view kPlusMinus = "\xC2\xB1";  // ±

char direction_char(Direction d) {
  switch (d) {
    case Direction::North: return '+';
    case Direction::South: return '-';
    case Direction::East: return '>';
    case Direction::West: return '<';
  }
  return '?';
}

bool is_direction_char(char c) { return c == '+' || c == '-' || c == '<' || c == '>'; }

Direction direction_from(char c) {
  switch (c) {
    case '+': return Direction::North;
    case '-': return Direction::South;
    case '>': return Direction::East;
    default: return Direction::West;
  }
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Parses text; `stack_height` < 0 means unknown.
Move parse_impl(std::string_view text, int size, int stack_height) {
  if (size < kMinSize || size > kMaxSize) throw DomainError("board size must be in 3..8");
  if (text.empty()) throw ParseError("empty move text", 0);
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(' || text[i] == ')' || text.substr(i, kPlusMinus.size()) == kPlusMinus)
      throw ParseError("diagram shorthand is not a move; expand it first", i);
  }

  std::size_t i = 0;
  int count_prefix = 0;
  if (is_digit(text[i])) {
    count_prefix = text[i] - '0';
    if (count_prefix == 0) throw ParseError("stone count must be positive", i);
    ++i;
  }
  char stone = 0;
  if (i < text.size() && (text[i] == 'F' || text[i] == 'S' || text[i] == 'C')) {
    stone = text[i];
    ++i;
  }
  const std::size_t square_at = i;
  if (i + 2 > text.size()) throw ParseError("expected a square", square_at);
  Square sq;
  try {
    sq = parse_square(text.substr(i, 2), size);
  } catch (const ParseError& e) {
    throw ParseError("bad square '" + std::string(text.substr(i, 2)) + "'", i + e.offset());
  }
  i += 2;

  if (i == text.size()) {
    if (count_prefix != 0) throw ParseError("a stone count needs a direction", 0);
    const PieceKind kind = stone == 'S'   ? PieceKind::Standing
                           : stone == 'C' ? PieceKind::Capstone
                                          : PieceKind::Flat;
    if (kind == PieceKind::Capstone && stone_counts(size).capstones == 0)
      throw ParseError("no capstones on this board size", 0);
    return Move::place(sq, kind);
  }

  if (stone != 0) throw ParseError("stone prefix on a spread", 0);
  if (!is_direction_char(text[i])) throw ParseError("expected a direction (+ - < >)", i);
  const Direction dir = direction_from(text[i]);
  ++i;

  std::vector<int> drops;
  for (; i < text.size(); ++i) {
    if (!is_digit(text[i])) throw ParseError("unexpected character", i);
    const int d = text[i] - '0';
    if (d == 0) throw ParseError("drop counts must be positive", i);
    drops.push_back(d);
  }
  if (drops.empty()) {
    if (count_prefix != 0) {
      drops.push_back(count_prefix);
    } else if (stack_height > 0) {
      drops.push_back(std::min(stack_height, size));
    } else if (stack_height == 0) {
      throw ParseError("bare direction from an empty square", square_at);
    } else {
      throw ParseError("bare direction needs a stone count or a position", square_at);
    }
  }

  int sum = 0;
  for (int d : drops) sum += d;
  if (sum > size)
    throw ParseError("carries " + std::to_string(sum) + " stones, carry limit is " +
                         std::to_string(size),
                     square_at);
  if (count_prefix != 0 && count_prefix != sum)
    throw ParseError("stone count " + std::to_string(count_prefix) + " does not match drops " +
                         std::to_string(sum),
                     0);
  if (static_cast<int>(drops.size()) > distance_to_edge(sq, dir, size))
    throw ParseError("spread runs off the board", square_at);
  return Move::spread(sq, dir, drops);
}

// Expands the shorthand into candidate canonical strings.
void expand_variants(std::string_view text, std::size_t at, std::string prefix,
                     std::vector<std::string>& out) {
  if (at >= text.size()) {
    out.push_back(std::move(prefix));
    return;
  }
  if (text.substr(at, kPlusMinus.size()) == kPlusMinus) {
    expand_variants(text, at + kPlusMinus.size(), prefix + '+', out);
    expand_variants(text, at + kPlusMinus.size(), prefix + '-', out);
    return;
  }
  const char c = text[at];
  if (c == ')') throw ParseError("unknown shorthand token ')'", at);
  if (c != '(') {
    expand_variants(text, at + 1, prefix + c, out);
    return;
  }
  const std::size_t close = text.find(')', at);
  if (close == std::string_view::npos) throw ParseError("unclosed '(' in shorthand", at);
  const std::string_view inner = text.substr(at + 1, close - at - 1);
  if (inner == "S" || inner == "C") {
    expand_variants(text, close + 1, prefix, out);
    expand_variants(text, close + 1, prefix + std::string(inner), out);
    return;
  }
  if (inner.size() == 1 && inner[0] >= '1' && inner[0] <= '8' && !prefix.empty() &&
      is_direction_char(prefix.back())) {
    for (char d = '1'; d <= inner[0]; ++d) expand_variants(text, close + 1, prefix + d, out);
    return;
  }
  throw ParseError("unknown shorthand token '(" + std::string(inner) + ")'", at);
}

template <typename Parse>
std::vector<Move> expand_with(std::string_view text, Parse&& parse) {
  std::vector<std::string> variants;
  expand_variants(text, 0, {}, variants);
  std::vector<Move> out;
  for (const std::string& v : variants) {
    const Move m = parse(v);
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  return out;
}

}  // namespace

Square parse_square(std::string_view text, int size) {
  if (text.size() != 2) throw ParseError("square must be a file letter and a rank digit", 0);
  const int file = text[0] - 'a';
  const int rank = text[1] - '1';
  if (file < 0 || file >= size) throw ParseError("file out of range", 0);
  if (rank < 0 || rank >= size) throw ParseError("rank out of range", 1);
  return Square{file, rank};
}

std::string format_square(Square sq) {
  return {static_cast<char>('a' + sq.file), static_cast<char>('1' + sq.rank)};
}

Move parse_move(std::string_view text, int size) { return parse_impl(text, size, -1); }

Move parse_move(std::string_view text, const Position& pos) {
  // Height of the origin square, needed only for bare directions.
  int height = -1;
  std::size_t i = 0;
  while (i < text.size() && (is_digit(text[i]) || text[i] == 'F' || text[i] == 'S' ||
                             text[i] == 'C'))
    ++i;
  if (i + 2 <= text.size()) {
    const int file = text[i] - 'a';
    const int rank = text[i + 1] - '1';
    const Square sq{file, rank};
    if (sq.on_board(pos.size())) height = pos[sq].height();
  }
  return parse_impl(text, pos.size(), height);
}

std::string format_move(const Move& m) {
  std::string out;
  if (m.is_place()) {
    if (m.kind() == PieceKind::Standing) out += 'S';
    if (m.kind() == PieceKind::Capstone) out += 'C';
    out += format_square(m.square());
    return out;
  }
  out += format_square(m.square());
  out += direction_char(m.direction());
  for (int i = 0; i < m.drop_count(); ++i) out += static_cast<char>('0' + m.drop(i));
  return out;
}

std::vector<Move> expand_shorthand(std::string_view text, int size) {
  return expand_with(text, [size](const std::string& v) { return parse_move(v, size); });
}

std::vector<Move> expand_shorthand(std::string_view text, const Position& pos) {
  return expand_with(text, [&pos](const std::string& v) { return parse_move(v, pos); });
}

void check_shorthand(std::string_view text, int size) {
  // A stack as tall as the carry limit makes any bare direction a single,
  // in-range drop, so only grammar problems remain.
  expand_with(text, [size](const std::string& v) { return parse_impl(v, size, size); });
}

std::vector<Move> sorted_by_text(std::vector<Move> moves) {
  std::vector<std::pair<std::string, Move>> keyed;
  keyed.reserve(moves.size());
  for (const Move& m : moves) keyed.emplace_back(format_move(m), m);
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < keyed.size(); ++i) moves[i] = keyed[i].second;
  return moves;
}

}  // namespace tak

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>

namespace tak {

inline constexpr int kMinSize = 3;
inline constexpr int kMaxSize = 8;
inline constexpr int kMaxSquares = kMaxSize * kMaxSize;

enum class Color : std::uint8_t { White = 0, Black = 1 };

constexpr Color opponent(Color c) noexcept {
  return c == Color::White ? Color::Black : Color::White;
}

constexpr int color_index(Color c) noexcept { return static_cast<int>(c); }

std::string_view color_name(Color c) noexcept;

enum class PieceKind : std::uint8_t { Flat = 0, Standing = 1, Capstone = 2 };

struct Piece {
  Color color = Color::White;
  PieceKind kind = PieceKind::Flat;

  friend constexpr bool operator==(Piece, Piece) = default;
};

// Piece codes used by every text format: wF, bF, wS, bS, wC, bC.
std::string_view piece_code(Piece p) noexcept;
int piece_code_index(Piece p) noexcept;  // 0..5, same order as piece_code

// file 0 is 'a', rank 0 is '1'.
struct Square {
  int file = 0;
  int rank = 0;

  constexpr bool on_board(int size) const noexcept {
    return file >= 0 && rank >= 0 && file < size && rank < size;
  }
  constexpr int index(int size) const noexcept { return rank * size + file; }
  static constexpr Square from_index(int idx, int size) noexcept {
    return Square{idx % size, idx / size};
  }

  friend constexpr auto operator<=>(Square, Square) = default;
};

enum class Direction : std::uint8_t { North = 0, South = 1, East = 2, West = 3 };

inline constexpr std::array<Direction, 4> kDirections = {
    Direction::North, Direction::South, Direction::East, Direction::West};

constexpr int file_step(Direction d) noexcept {
  return d == Direction::East ? 1 : d == Direction::West ? -1 : 0;
}
constexpr int rank_step(Direction d) noexcept {
  return d == Direction::North ? 1 : d == Direction::South ? -1 : 0;
}
constexpr Square step(Square s, Direction d, int distance = 1) noexcept {
  return Square{s.file + file_step(d) * distance, s.rank + rank_step(d) * distance};
}

// Squares from `s` to the board edge in direction d (exclusive of s).
constexpr int distance_to_edge(Square s, Direction d, int size) noexcept {
  switch (d) {
    case Direction::North: return size - 1 - s.rank;
    case Direction::South: return s.rank;
    case Direction::East: return size - 1 - s.file;
    case Direction::West: return s.file;
  }
  return 0;
}

// A placement or a spread. Drops are listed in the order they land, nearest
// square first.
class Move {
 public:
  enum class Type : std::uint8_t { Place, Spread };
  static constexpr int kMaxDrops = kMaxSize;

  constexpr Move() = default;

  static constexpr Move place(Square sq, PieceKind kind = PieceKind::Flat) noexcept {
    Move m;
    m.type_ = Type::Place;
    m.square_ = sq;
    m.kind_ = kind;
    return m;
  }
  static Move spread(Square origin, Direction dir, std::span<const int> drops);
  static Move spread(Square origin, Direction dir, std::initializer_list<int> drops) {
    return spread(origin, dir, std::span<const int>(drops.begin(), drops.size()));
  }

  constexpr Type type() const noexcept { return type_; }
  constexpr bool is_place() const noexcept { return type_ == Type::Place; }
  constexpr bool is_spread() const noexcept { return type_ == Type::Spread; }
  constexpr Square square() const noexcept { return square_; }
  constexpr PieceKind kind() const noexcept { return kind_; }
  constexpr Direction direction() const noexcept { return dir_; }
  constexpr int drop_count() const noexcept { return drop_count_; }
  constexpr int drop(int i) const noexcept { return drops_[static_cast<std::size_t>(i)]; }
  constexpr int carried() const noexcept {
    int total = 0;
    for (int i = 0; i < drop_count_; ++i) total += drops_[static_cast<std::size_t>(i)];
    return total;
  }

  Move with_square(Square sq) const noexcept {
    Move m = *this;
    m.square_ = sq;
    return m;
  }
  Move with_direction(Direction d) const noexcept {
    Move m = *this;
    m.dir_ = d;
    return m;
  }

  friend constexpr bool operator==(const Move& a, const Move& b) noexcept {
    if (a.type_ != b.type_ || a.square_ != b.square_) return false;
    if (a.type_ == Type::Place) return a.kind_ == b.kind_;
    if (a.dir_ != b.dir_ || a.drop_count_ != b.drop_count_) return false;
    for (int i = 0; i < a.drop_count_; ++i)
      if (a.drops_[static_cast<std::size_t>(i)] != b.drops_[static_cast<std::size_t>(i)])
        return false;
    return true;
  }

 private:
  Type type_ = Type::Place;
  Square square_{};
  PieceKind kind_ = PieceKind::Flat;
  Direction dir_ = Direction::North;
  std::uint8_t drop_count_ = 0;
  std::array<std::uint8_t, kMaxDrops> drops_{};
};

// The eight symmetries of the square.
enum class Symmetry : std::uint8_t {
  Identity = 0,
  Rotate90,
  Rotate180,
  Rotate270,
  MirrorFiles,      // a <-> last file
  MirrorRanks,      // 1 <-> last rank
  Transpose,        // reflect across the a1 diagonal
  AntiTranspose,    // reflect across the other diagonal
};

inline constexpr std::array<Symmetry, 8> kSymmetries = {
    Symmetry::Identity,    Symmetry::Rotate90,    Symmetry::Rotate180, Symmetry::Rotate270,
    Symmetry::MirrorFiles, Symmetry::MirrorRanks, Symmetry::Transpose, Symmetry::AntiTranspose};

std::string_view symmetry_name(Symmetry g) noexcept;
Symmetry inverse(Symmetry g) noexcept;
Square transform(Square s, Symmetry g, int size) noexcept;
Direction transform(Direction d, Symmetry g) noexcept;
Move transform(const Move& m, Symmetry g, int size) noexcept;

}  // namespace tak

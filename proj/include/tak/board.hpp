#pragma once

#include <array>
#include <bitset>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "tak/types.hpp"

namespace tak {

struct StoneCounts {
  int flats = 0;
  int capstones = 0;

  friend constexpr bool operator==(StoneCounts, StoneCounts) = default;
};

// Per-player stone supply for an n x n board. Throws DomainError outside 3..8.
StoneCounts stone_counts(int size);

// A tower of pieces, bottom first. Only the top piece may be a wall or a
// capstone, so a stack is its colors plus the kind of its top piece.
class Stack {
 public:
  static constexpr int kCapacity = 128;

  Stack() = default;
  explicit Stack(Piece p) { push(p); }

  int height() const noexcept { return height_; }
  bool empty() const noexcept { return height_ == 0; }
  Piece top() const noexcept { return at(height_ - 1); }
  Color controller() const noexcept { return top().color; }
  Piece at(int i) const noexcept {
    return Piece{colors_[static_cast<std::size_t>(i)] ? Color::Black : Color::White,
                 i == height_ - 1 ? top_kind_ : PieceKind::Flat};
  }
  // Top is a flat or capstone, i.e. the square counts toward a road.
  bool counts_for_road() const noexcept {
    return height_ > 0 && top_kind_ != PieceKind::Standing;
  }
  bool accepts_pieces() const noexcept {
    return height_ == 0 || top_kind_ == PieceKind::Flat;
  }

  void push(Piece p) noexcept;
  // Removes and returns the top `count` pieces.
  Stack take_top(int count) noexcept;
  // Removes and returns the bottom `count` pieces.
  Stack take_bottom(int count) noexcept;
  // Places `other` on top of this stack.
  void drop(const Stack& other) noexcept;
  // Turns a standing top into a flat.
  void flatten() noexcept { top_kind_ = PieceKind::Flat; }

  // wF,bF,... concatenated bottom to top; "x" when empty.
  std::string to_string() const;

  friend bool operator==(const Stack& a, const Stack& b) noexcept {
    return a.height_ == b.height_ && a.colors_ == b.colors_ &&
           (a.height_ == 0 || a.top_kind_ == b.top_kind_);
  }

 private:
  std::bitset<kCapacity> colors_;  // bit set = black
  std::uint8_t height_ = 0;
  PieceKind top_kind_ = PieceKind::Flat;
};

struct Reserves {
  std::array<int, 2> flats{};
  std::array<int, 2> capstones{};

  int flats_of(Color c) const noexcept { return flats[static_cast<std::size_t>(c)]; }
  int capstones_of(Color c) const noexcept { return capstones[static_cast<std::size_t>(c)]; }
  int total_of(Color c) const noexcept { return flats_of(c) + capstones_of(c); }

  friend bool operator==(const Reserves&, const Reserves&) = default;
};

enum class Phase : std::uint8_t { Swap, Normal };

struct Outcome {
  enum class Kind : std::uint8_t { Ongoing, RoadWin, FlatWin, Draw };

  Kind kind = Kind::Ongoing;
  Color winner = Color::White;  // meaningful for RoadWin and FlatWin only

  static constexpr Outcome ongoing() noexcept { return {}; }
  static constexpr Outcome road(Color c) noexcept { return {Kind::RoadWin, c}; }
  static constexpr Outcome flat(Color c) noexcept { return {Kind::FlatWin, c}; }
  static constexpr Outcome draw() noexcept { return {Kind::Draw, Color::White}; }

  constexpr bool terminal() const noexcept { return kind != Kind::Ongoing; }
  constexpr bool is_win() const noexcept {
    return kind == Kind::RoadWin || kind == Kind::FlatWin;
  }
  constexpr bool is_win_for(Color c) const noexcept { return is_win() && winner == c; }

  friend constexpr bool operator==(const Outcome& a, const Outcome& b) noexcept {
    if (a.kind != b.kind) return false;
    return !a.is_win() || a.winner == b.winner;
  }
};

// "ongoing", "road-win white", "flat-win black", "draw".
std::string to_string(const Outcome& o);

namespace detail {
struct PositionAccess;
}

// Full game state. The Zobrist part of the hash is kept up to date by every
// edit; pieces above kHashHeightCap fall back to hashing the serialization.
class Position {
 public:
  static constexpr int kHashHeightCap = 16;

  explicit Position(int size = 3);

  int size() const noexcept { return size_; }
  int square_count() const noexcept { return size_ * size_; }
  int carry_limit() const noexcept { return size_; }

  const Stack& at(int idx) const noexcept { return board_[static_cast<std::size_t>(idx)]; }
  const Stack& operator[](Square sq) const noexcept { return at(sq.index(size_)); }

  Color to_move() const noexcept { return to_move_; }
  int ply() const noexcept { return ply_; }
  Phase phase() const noexcept { return ply_ < 2 ? Phase::Swap : Phase::Normal; }
  int plies_since_placement() const noexcept { return plies_since_placement_; }
  const Reserves& reserves() const noexcept { return reserves_; }
  int empty_squares() const noexcept;

  std::uint64_t hash() const;
  std::uint64_t recompute_hash() const;  // from scratch, ignoring the cache

  // Equality used by transposition lookups: board, reserves, side to move and
  // phase; the move counters are ignored.
  bool same_state(const Position& other) const noexcept;

  friend bool operator==(const Position& a, const Position& b) noexcept {
    return a.same_state(b) && a.ply_ == b.ply_ &&
           a.plies_since_placement_ == b.plies_since_placement_;
  }

 private:
  friend struct detail::PositionAccess;

  void set_stack(int idx, const Stack& s) noexcept;
  std::uint64_t zobrist_of(int idx, const Stack& s) const noexcept;

  int size_;
  std::array<Stack, kMaxSquares> board_{};
  Reserves reserves_{};
  Color to_move_ = Color::White;
  int ply_ = 0;
  int plies_since_placement_ = 0;
  std::uint64_t zobrist_ = 0;  // board part only
  int tall_stacks_ = 0;        // stacks taller than kHashHeightCap
};

Position new_position(int size);

struct RuleOptions {
  // Draw when this many plies pass without a placement. Off by default.
  std::optional<int> placement_deadline;
};

bool has_road(const Position& pos, Color c);
int flat_count(const Position& pos, Color c);
Outcome outcome(const Position& pos, const RuleOptions& rules = {});

Position transform(const Position& pos, Symmetry g);
// Minimal serialization over the eight symmetric images, and the symmetry
// that produced it (first in kSymmetries order on ties).
std::pair<Position, Symmetry> canonical_form(const Position& pos);

std::uint64_t hash(const Position& pos);

// Canonical text form:
//   <rank n>/.../<rank 1> <w|b> <ply> <plies since placement> <wflats>,<wcaps> <bflats>,<bcaps>
// Squares are comma separated; a square is "x" or its piece codes bottom to
// top, e.g. "wFbFwS".
std::string serialize(const Position& pos);
// Throws ParseError on malformed text and on states that break
// conservation or stack legality.
Position parse_position(std::string_view text);

// Bit-packed board + side to move + phase; ordered so the minimum over the
// eight symmetries is a canonical key.
struct PackedKey {
  std::array<std::uint64_t, 8> words{};

  std::uint64_t digest() const noexcept;
  friend auto operator<=>(const PackedKey&, const PackedKey&) = default;
};

PackedKey pack(const Position& pos, Symmetry g = Symmetry::Identity);
// Minimal packed key over the symmetries, with the symmetry achieving it.
std::pair<PackedKey, Symmetry> canonical_key(const Position& pos);

// Text rendering, top rank first, for terminals.
std::string render(const Position& pos);

}  // namespace tak

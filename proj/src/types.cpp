#include "tak/types.hpp"

#include <array>

#include "tak/errors.hpp"

namespace tak {

std::string_view color_name(Color c) noexcept {
  return c == Color::White ? "white" : "black";
}

int piece_code_index(Piece p) noexcept {
  return static_cast<int>(p.kind) * 2 + color_index(p.color);
}

std::string_view piece_code(Piece p) noexcept {
  static constexpr std::array<std::string_view, 6> kCodes = {"wF", "bF", "wS", "bS", "wC", "bC"};
  return kCodes[static_cast<std::size_t>(piece_code_index(p))];
}

Move Move::spread(Square origin, Direction dir, std::span<const int> drops) {
  if (drops.empty() || drops.size() > static_cast<std::size_t>(kMaxDrops))
    throw DomainError("a spread needs 1 to 8 drops");
  Move m;
  m.type_ = Type::Spread;
  m.square_ = origin;
  m.dir_ = dir;
  m.drop_count_ = static_cast<std::uint8_t>(drops.size());
  for (std::size_t i = 0; i < drops.size(); ++i) {
    if (drops[i] < 1 || drops[i] > kMaxSize) throw DomainError("drop counts must be 1..8");
    m.drops_[i] = static_cast<std::uint8_t>(drops[i]);
  }
  return m;
}

std::string_view symmetry_name(Symmetry g) noexcept {
  switch (g) {
    case Symmetry::Identity: return "identity";
    case Symmetry::Rotate90: return "rot90";
    case Symmetry::Rotate180: return "rot180";
    case Symmetry::Rotate270: return "rot270";
    case Symmetry::MirrorFiles: return "mirror-files";
    case Symmetry::MirrorRanks: return "mirror-ranks";
    case Symmetry::Transpose: return "transpose";
    case Symmetry::AntiTranspose: return "anti-transpose";
  }
  return "?";
}

Symmetry inverse(Symmetry g) noexcept {
  if (g == Symmetry::Rotate90) return Symmetry::Rotate270;
  if (g == Symmetry::Rotate270) return Symmetry::Rotate90;
  return g;
}

namespace {

struct Vec {
  int x;
  int y;
};

// Linear part of each symmetry, rotations counterclockwise.
constexpr Vec apply_linear(Vec v, Symmetry g) noexcept {
  switch (g) {
    case Symmetry::Identity: return v;
    case Symmetry::Rotate90: return {-v.y, v.x};
    case Symmetry::Rotate180: return {-v.x, -v.y};
    case Symmetry::Rotate270: return {v.y, -v.x};
    case Symmetry::MirrorFiles: return {-v.x, v.y};
    case Symmetry::MirrorRanks: return {v.x, -v.y};
    case Symmetry::Transpose: return {v.y, v.x};
    case Symmetry::AntiTranspose: return {-v.y, -v.x};
  }
  return v;
}

}  // namespace

Square transform(Square s, Symmetry g, int size) noexcept {
  // Work in doubled coordinates centred on the board so the linear map applies.
  const int m = size - 1;
  const Vec centred{2 * s.file - m, 2 * s.rank - m};
  const Vec image = apply_linear(centred, g);
  return Square{(image.x + m) / 2, (image.y + m) / 2};
}

Direction transform(Direction d, Symmetry g) noexcept {
  const Vec image = apply_linear(Vec{file_step(d), rank_step(d)}, g);
  if (image.y > 0) return Direction::North;
  if (image.y < 0) return Direction::South;
  if (image.x > 0) return Direction::East;
  return Direction::West;
}

Move transform(const Move& m, Symmetry g, int size) noexcept {
  Move out = m.with_square(transform(m.square(), g, size));
  if (m.is_spread()) out = out.with_direction(transform(m.direction(), g));
  return out;
}

}  // namespace tak

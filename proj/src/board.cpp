#include "tak/board.hpp"

#include <algorithm>
#include <charconv>
#include <random>
#include <sstream>
#include <vector>

#include "position_access.hpp"
#include "tak/errors.hpp"

namespace tak {

StoneCounts stone_counts(int size) {
  switch (size) {
    case 3: return {10, 0};
    case 4: return {15, 0};
    case 5: return {21, 1};
    case 6: return {30, 1};
    case 7: return {40, 2};
    case 8: return {50, 2};
    default: throw DomainError("board size must be in 3..8, got " + std::to_string(size));
  }
}

// ---------------------------------------------------------------- Stack

void Stack::push(Piece p) noexcept {
  colors_[height_] = p.color == Color::Black;
  ++height_;
  top_kind_ = p.kind;
}

Stack Stack::take_top(int count) noexcept {
  Stack out;
  const int keep = height_ - count;
  out.colors_ = colors_ >> static_cast<std::size_t>(keep);
  out.height_ = static_cast<std::uint8_t>(count);
  out.top_kind_ = top_kind_;
  for (int i = keep; i < height_; ++i) colors_.reset(static_cast<std::size_t>(i));
  height_ = static_cast<std::uint8_t>(keep);
  top_kind_ = PieceKind::Flat;
  return out;
}

Stack Stack::take_bottom(int count) noexcept {
  Stack out;
  const auto shift = static_cast<std::size_t>(kCapacity - count);
  out.colors_ = (colors_ << shift) >> shift;
  out.height_ = static_cast<std::uint8_t>(count);
  out.top_kind_ = count == height_ ? top_kind_ : PieceKind::Flat;
  colors_ >>= static_cast<std::size_t>(count);
  height_ = static_cast<std::uint8_t>(height_ - count);
  if (height_ == 0) top_kind_ = PieceKind::Flat;
  return out;
}

void Stack::drop(const Stack& other) noexcept {
  if (other.height_ == 0) return;
  colors_ |= other.colors_ << static_cast<std::size_t>(height_);
  height_ = static_cast<std::uint8_t>(height_ + other.height_);
  top_kind_ = other.top_kind_;
}

std::string Stack::to_string() const {
  if (empty()) return "x";
  std::string out;
  out.reserve(static_cast<std::size_t>(height_) * 2);
  for (int i = 0; i < height_; ++i) out += piece_code(at(i));
  return out;
}

std::string to_string(const Outcome& o) {
  switch (o.kind) {
    case Outcome::Kind::Ongoing: return "ongoing";
    case Outcome::Kind::RoadWin: return "road-win " + std::string(color_name(o.winner));
    case Outcome::Kind::FlatWin: return "flat-win " + std::string(color_name(o.winner));
    case Outcome::Kind::Draw: return "draw";
  }
  return "?";
}

// ---------------------------------------------------------------- hashing

namespace {

struct ZobristKeys {
  std::array<std::array<std::array<std::uint64_t, 6>, Position::kHashHeightCap>, kMaxSquares>
      piece{};
  std::uint64_t black_to_move = 0;
  std::uint64_t swap_phase = 0;

  ZobristKeys() {
    std::mt19937_64 rng(0x7a6b5c4d3e2f1001ULL);
    for (auto& square : piece)
      for (auto& level : square)
        for (auto& key : level) key = rng();
    black_to_move = rng();
    swap_phase = rng();
  }
};

const ZobristKeys& zobrist_keys() {
  static const ZobristKeys keys;
  return keys;
}

std::uint64_t fnv1a(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string board_text(const Position& pos) {
  std::string out;
  const int n = pos.size();
  for (int rank = n - 1; rank >= 0; --rank) {
    for (int file = 0; file < n; ++file) {
      out += pos[Square{file, rank}].to_string();
      if (file + 1 < n) out += ',';
    }
    if (rank > 0) out += '/';
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- Position

Position::Position(int size) : size_(size) {
  const StoneCounts counts = stone_counts(size);
  reserves_.flats = {counts.flats, counts.flats};
  reserves_.capstones = {counts.capstones, counts.capstones};
}

int Position::empty_squares() const noexcept {
  int count = 0;
  for (int i = 0; i < square_count(); ++i) count += at(i).empty() ? 1 : 0;
  return count;
}

std::uint64_t Position::zobrist_of(int idx, const Stack& s) const noexcept {
  const auto& keys = zobrist_keys().piece[static_cast<std::size_t>(idx)];
  std::uint64_t h = 0;
  const int levels = std::min(s.height(), kHashHeightCap);
  for (int i = 0; i < levels; ++i)
    h ^= keys[static_cast<std::size_t>(i)][static_cast<std::size_t>(piece_code_index(s.at(i)))];
  return h;
}

void Position::set_stack(int idx, const Stack& s) noexcept {
  Stack& slot = board_[static_cast<std::size_t>(idx)];
  zobrist_ ^= zobrist_of(idx, slot) ^ zobrist_of(idx, s);
  tall_stacks_ += (s.height() > kHashHeightCap ? 1 : 0) - (slot.height() > kHashHeightCap ? 1 : 0);
  slot = s;
}

std::uint64_t Position::hash() const {
  const auto& keys = zobrist_keys();
  if (tall_stacks_ > 0) {
    std::string text = board_text(*this);
    text += to_move_ == Color::White ? " w" : " b";
    text += phase() == Phase::Swap ? " s" : " n";
    return fnv1a(text);
  }
  std::uint64_t h = zobrist_;
  if (to_move_ == Color::Black) h ^= keys.black_to_move;
  if (phase() == Phase::Swap) h ^= keys.swap_phase;
  return h;
}

std::uint64_t Position::recompute_hash() const {
  Position fresh(size_);
  for (int i = 0; i < square_count(); ++i) fresh.set_stack(i, at(i));
  fresh.to_move_ = to_move_;
  fresh.ply_ = ply_;
  return fresh.hash();
}

bool Position::same_state(const Position& other) const noexcept {
  if (size_ != other.size_ || to_move_ != other.to_move_ || phase() != other.phase() ||
      !(reserves_ == other.reserves_))
    return false;
  for (int i = 0; i < square_count(); ++i)
    if (!(at(i) == other.at(i))) return false;
  return true;
}

Position new_position(int size) { return Position(size); }

std::uint64_t hash(const Position& pos) { return pos.hash(); }

// ---------------------------------------------------------------- outcome

namespace {

struct BoardMasks {
  std::uint64_t all = 0;
  std::uint64_t first_rank = 0;
  std::uint64_t last_rank = 0;
  std::uint64_t first_file = 0;
  std::uint64_t last_file = 0;
};

BoardMasks masks_for(int n) noexcept {
  BoardMasks m;
  for (int i = 0; i < n; ++i) {
    m.first_rank |= 1ULL << i;
    m.last_rank |= 1ULL << ((n - 1) * n + i);
    m.first_file |= 1ULL << (i * n);
    m.last_file |= 1ULL << (i * n + n - 1);
  }
  m.all = n * n == 64 ? ~0ULL : (1ULL << (n * n)) - 1;
  return m;
}

std::uint64_t grow(std::uint64_t x, int n, const BoardMasks& m) noexcept {
  const std::uint64_t spread = x | (x << n) | (x >> n) | ((x << 1) & ~m.first_file) |
                               ((x >> 1) & ~m.last_file);
  return spread & m.all;
}

bool connects(std::uint64_t road, std::uint64_t from, std::uint64_t to, int n,
              const BoardMasks& m) noexcept {
  std::uint64_t reached = road & from;
  while (reached != 0) {
    if (reached & to) return true;
    const std::uint64_t next = grow(reached, n, m) & road;
    if (next == reached) return false;
    reached = next;
  }
  return false;
}

std::uint64_t road_mask(const Position& pos, Color c) noexcept {
  std::uint64_t mask = 0;
  for (int i = 0; i < pos.square_count(); ++i) {
    const Stack& s = pos.at(i);
    if (s.counts_for_road() && s.controller() == c) mask |= 1ULL << i;
  }
  return mask;
}

}  // namespace

bool has_road(const Position& pos, Color c) {
  const int n = pos.size();
  const BoardMasks m = masks_for(n);
  const std::uint64_t road = road_mask(pos, c);
  return connects(road, m.first_rank, m.last_rank, n, m) ||
         connects(road, m.first_file, m.last_file, n, m);
}

int flat_count(const Position& pos, Color c) {
  int count = 0;
  for (int i = 0; i < pos.square_count(); ++i) {
    const Stack& s = pos.at(i);
    if (!s.empty() && s.top().kind == PieceKind::Flat && s.controller() == c) ++count;
  }
  return count;
}

Outcome outcome(const Position& pos, const RuleOptions& rules) {
  const bool white_road = has_road(pos, Color::White);
  const bool black_road = has_road(pos, Color::Black);
  if (white_road && black_road) return Outcome::road(opponent(pos.to_move()));
  if (white_road) return Outcome::road(Color::White);
  if (black_road) return Outcome::road(Color::Black);

  const Reserves& r = pos.reserves();
  if (pos.empty_squares() == 0 || r.total_of(Color::White) == 0 ||
      r.total_of(Color::Black) == 0) {
    const int white = flat_count(pos, Color::White);
    const int black = flat_count(pos, Color::Black);
    if (white > black) return Outcome::flat(Color::White);
    if (black > white) return Outcome::flat(Color::Black);
    return Outcome::draw();
  }
  if (rules.placement_deadline && pos.plies_since_placement() >= *rules.placement_deadline)
    return Outcome::draw();
  return Outcome::ongoing();
}

// ---------------------------------------------------------------- symmetry

Position transform(const Position& pos, Symmetry g) {
  Position out = pos;
  const int n = pos.size();
  for (int i = 0; i < pos.square_count(); ++i) {
    const Square dest = transform(Square::from_index(i, n), g, n);
    detail::PositionAccess::set_stack(out, dest.index(n), pos.at(i));
  }
  return out;
}

std::pair<Position, Symmetry> canonical_form(const Position& pos) {
  Symmetry best_g = Symmetry::Identity;
  std::string best = serialize(pos);
  for (Symmetry g : kSymmetries) {
    if (g == Symmetry::Identity) continue;
    std::string candidate = serialize(transform(pos, g));
    if (candidate < best) {
      best = std::move(candidate);
      best_g = g;
    }
  }
  return {transform(pos, best_g), best_g};
}

// ---------------------------------------------------------------- packing

namespace {

class BitWriter {
 public:
  explicit BitWriter(PackedKey& key) : key_(key) {}

  void put(std::uint64_t bits, int count) noexcept {
    for (int i = count - 1; i >= 0; --i) {
      if ((bits >> i) & 1U) {
        const int word = pos_ / 64;
        key_.words[static_cast<std::size_t>(word)] |= 1ULL << (63 - pos_ % 64);
      }
      ++pos_;
    }
  }

 private:
  PackedKey& key_;
  int pos_ = 0;
};

// source_of[g][size][dest] = square whose stack lands on dest under g.
struct SourceTables {
  std::array<std::array<std::array<std::uint8_t, kMaxSquares>, kMaxSize + 1>, 8> source{};

  SourceTables() {
    for (Symmetry g : kSymmetries)
      for (int n = kMinSize; n <= kMaxSize; ++n)
        for (int i = 0; i < n * n; ++i) {
          const Square dest = transform(Square::from_index(i, n), g, n);
          source[static_cast<std::size_t>(g)][static_cast<std::size_t>(n)]
                [static_cast<std::size_t>(dest.index(n))] = static_cast<std::uint8_t>(i);
        }
  }
};

const SourceTables& source_tables() {
  static const SourceTables tables;
  return tables;
}

}  // namespace

std::uint64_t PackedKey::digest() const noexcept {
  std::uint64_t h = 0x51ed270b27a3c6e1ULL;
  for (std::uint64_t w : words) h = mix64(h ^ w);
  return h;
}

PackedKey pack(const Position& pos, Symmetry g) {
  PackedKey key;
  BitWriter out(key);
  const int n = pos.size();
  const auto& source =
      source_tables().source[static_cast<std::size_t>(g)][static_cast<std::size_t>(n)];
  for (int d = 0; d < n * n; ++d) {
    const Stack& s = pos.at(source[static_cast<std::size_t>(d)]);
    for (int i = 0; i < s.height(); ++i)
      out.put(0b10U | (s.at(i).color == Color::Black ? 1U : 0U), 2);
    out.put(0, 1);
    if (!s.empty()) out.put(static_cast<std::uint64_t>(s.top().kind), 2);
  }
  out.put(pos.to_move() == Color::Black ? 1U : 0U, 1);
  out.put(pos.phase() == Phase::Swap ? 1U : 0U, 1);
  return key;
}

std::pair<PackedKey, Symmetry> canonical_key(const Position& pos) {
  std::pair<PackedKey, Symmetry> best{pack(pos), Symmetry::Identity};
  for (std::size_t i = 1; i < kSymmetries.size(); ++i) {
    PackedKey candidate = pack(pos, kSymmetries[i]);
    if (candidate < best.first) best = {candidate, kSymmetries[i]};
  }
  return best;
}

// ---------------------------------------------------------------- text

std::string serialize(const Position& pos) {
  std::ostringstream out;
  const Reserves& r = pos.reserves();
  out << board_text(pos) << ' ' << (pos.to_move() == Color::White ? 'w' : 'b') << ' '
      << pos.ply() << ' ' << pos.plies_since_placement() << ' '
      << r.flats_of(Color::White) << ',' << r.capstones_of(Color::White) << ' '
      << r.flats_of(Color::Black) << ',' << r.capstones_of(Color::Black);
  return out.str();
}

namespace {

struct Token {
  std::string_view text;
  std::size_t offset;
};

std::vector<Token> split(std::string_view text, char sep, std::size_t base) {
  std::vector<Token> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == sep) {
      out.push_back({text.substr(start, i - start), base + start});
      start = i + 1;
    }
  }
  return out;
}

int parse_int(const Token& t) {
  int value = 0;
  const auto* end = t.text.data() + t.text.size();
  auto [ptr, ec] = std::from_chars(t.text.data(), end, value);
  if (ec != std::errc() || ptr != end || value < 0)
    throw ParseError("expected a non-negative integer, got '" + std::string(t.text) + "'",
                     t.offset);
  return value;
}

Piece parse_piece(std::string_view code, std::size_t offset) {
  if (code.size() == 2 && (code[0] == 'w' || code[0] == 'b')) {
    const Color c = code[0] == 'w' ? Color::White : Color::Black;
    switch (code[1]) {
      case 'F': return {c, PieceKind::Flat};
      case 'S': return {c, PieceKind::Standing};
      case 'C': return {c, PieceKind::Capstone};
      default: break;
    }
  }
  throw ParseError("unknown piece code '" + std::string(code) + "'", offset);
}

}  // namespace

Position parse_position(std::string_view text) {
  std::vector<Token> fields;
  for (const Token& t : split(text, ' ', 0))
    if (!t.text.empty()) fields.push_back(t);
  if (fields.size() != 6)
    throw ParseError("expected 6 space-separated fields, got " + std::to_string(fields.size()),
                     0);

  const std::vector<Token> ranks = split(fields[0].text, '/', fields[0].offset);
  const int n = static_cast<int>(ranks.size());
  if (n < kMinSize || n > kMaxSize)
    throw ParseError("board must have 3..8 ranks", fields[0].offset);

  Position pos(n);
  const StoneCounts counts = stone_counts(n);
  std::array<int, 2> flat_stones{};
  std::array<int, 2> capstones{};
  for (int row = 0; row < n; ++row) {
    const int rank = n - 1 - row;
    const std::vector<Token> squares = split(ranks[static_cast<std::size_t>(row)].text, ',',
                                             ranks[static_cast<std::size_t>(row)].offset);
    if (static_cast<int>(squares.size()) != n)
      throw ParseError("rank " + std::to_string(rank + 1) + " needs " + std::to_string(n) +
                           " squares",
                       ranks[static_cast<std::size_t>(row)].offset);
    for (int file = 0; file < n; ++file) {
      const Token& sq = squares[static_cast<std::size_t>(file)];
      Stack stack;
      if (sq.text != "x") {
        if (sq.text.empty() || sq.text.size() % 2 != 0)
          throw ParseError("malformed square '" + std::string(sq.text) + "'", sq.offset);
        for (std::size_t i = 0; i < sq.text.size(); i += 2) {
          if (!stack.accepts_pieces())
            throw ParseError("piece stacked on a wall or capstone", sq.offset + i);
          const Piece p = parse_piece(sq.text.substr(i, 2), sq.offset + i);
          if (p.kind == PieceKind::Capstone)
            ++capstones[static_cast<std::size_t>(p.color)];
          else
            ++flat_stones[static_cast<std::size_t>(p.color)];
          if (stack.height() >= Stack::kCapacity)
            throw ParseError("stack too tall", sq.offset + i);
          stack.push(p);
        }
      }
      detail::PositionAccess::set_stack(pos, Square{file, rank}.index(n), stack);
    }
  }

  const Token& side = fields[1];
  if (side.text != "w" && side.text != "b")
    throw ParseError("side to move must be 'w' or 'b'", side.offset);
  const int ply = parse_int(fields[2]);
  const int quiet = parse_int(fields[3]);
  const Color to_move = side.text == "w" ? Color::White : Color::Black;
  if ((ply % 2 == 0) != (to_move == Color::White))
    throw ParseError("side to move does not match the ply parity", side.offset);

  Reserves& reserves = detail::PositionAccess::reserves(pos);
  for (int c = 0; c < 2; ++c) {
    const Token& t = fields[static_cast<std::size_t>(4 + c)];
    const std::vector<Token> parts = split(t.text, ',', t.offset);
    if (parts.size() != 2) throw ParseError("reserves must be '<flats>,<caps>'", t.offset);
    const int flats = parse_int(parts[0]);
    const int caps = parse_int(parts[1]);
    const auto ci = static_cast<std::size_t>(c);
    if (flats + flat_stones[ci] != counts.flats || caps + capstones[ci] != counts.capstones)
      throw ParseError("reserves do not match the pieces on the board", t.offset);
    reserves.flats[ci] = flats;
    reserves.capstones[ci] = caps;
  }
  detail::PositionAccess::set_to_move(pos, to_move);
  detail::PositionAccess::set_ply(pos, ply);
  detail::PositionAccess::set_plies_since_placement(pos, quiet);
  return pos;
}

std::string render(const Position& pos) {
  const int n = pos.size();
  std::size_t width = 1;
  for (int i = 0; i < pos.square_count(); ++i)
    width = std::max(width, pos.at(i).to_string().size());
  std::ostringstream out;
  for (int rank = n - 1; rank >= 0; --rank) {
    out << rank + 1 << " ";
    for (int file = 0; file < n; ++file) {
      const Stack& s = pos[Square{file, rank}];
      std::string cell = s.empty() ? "." : s.to_string();
      cell.resize(width, ' ');
      out << ' ' << cell;
    }
    out << '\n';
  }
  out << "  ";
  for (int file = 0; file < n; ++file) {
    std::string label(1, static_cast<char>('a' + file));
    label.resize(width, ' ');
    out << ' ' << label;
  }
  out << '\n';
  const Reserves& r = pos.reserves();
  out << (pos.to_move() == Color::White ? "white" : "black") << " to move, ply " << pos.ply()
      << "; reserves white " << r.flats_of(Color::White) << '+' << r.capstones_of(Color::White)
      << "C, black " << r.flats_of(Color::Black) << '+' << r.capstones_of(Color::Black)
      << "C\n";
  return out.str();
}

}  // namespace tak

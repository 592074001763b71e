#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "tak/board.hpp"
#include "tak/moves.hpp"
#include "tak/types.hpp"

namespace tak {

// Result of a depth-bounded proof search. Only wins and losses are
// certified; anything else means "nothing proven within `bound` plies".
struct GameValue {
  enum class Kind : std::uint8_t { ProvenWin, Unknown, ProvenLoss };

  Kind kind = Kind::Unknown;
  Color color = Color::White;  // the side the value is stated for
  int plies = 0;               // plies to the end for wins and losses
  int bound = 0;               // depth searched

  static GameValue win(Color c, int plies, int bound) { return {Kind::ProvenWin, c, plies, bound}; }
  static GameValue loss(Color c, int plies, int bound) {
    return {Kind::ProvenLoss, c, plies, bound};
  }
  static GameValue unknown(Color c, int bound) { return {Kind::Unknown, c, 0, bound}; }

  bool is_win() const noexcept { return kind == Kind::ProvenWin; }
  // The winning color, if any.
  std::optional<Color> winner() const noexcept {
    if (kind == Kind::ProvenWin) return color;
    if (kind == Kind::ProvenLoss) return opponent(color);
    return std::nullopt;
  }

  friend bool operator==(const GameValue&, const GameValue&) = default;
};

std::string to_string(const GameValue& v);

struct SolveResult {
  GameValue value;
  int depth = 0;          // deepest iteration searched
  std::vector<Move> pv;   // from the root to the end of the game
  std::uint64_t nodes = 0;
  std::uint64_t tt_hits = 0;
};

struct SolverConfig {
  int max_depth = 20;
  int threads = 1;
  std::size_t tt_entries = std::size_t{1} << 20;  // 0 disables the table
  bool use_symmetry = true;
};

// Shared, lossy cache of proof results keyed by packed position. Entries
// are verified by full key comparison; a replaced entry only loses work.
class TranspositionTable {
 public:
  struct Entry {
    PackedKey key{};
    std::int8_t win_depth = 0;    // proven win within this many plies (0: none)
    std::int8_t fail_depth = -1;  // no win within this many plies (-1: none)
    Move best{};                  // in the key's orientation
    bool has_best = false;
    bool used = false;
    Color attacker = Color::White;
  };

  explicit TranspositionTable(std::size_t entries);

  bool enabled() const noexcept { return !slots_.empty(); }
  std::optional<Entry> probe(const PackedKey& key, Color attacker) const;
  // Merges into an existing entry for the same key, otherwise replaces.
  void store(const PackedKey& key, Color attacker, int win_depth, int fail_depth,
             const std::optional<Move>& best);
  void clear();
  std::size_t size() const noexcept { return slots_.size(); }

 private:
  std::size_t index_of(const PackedKey& key, Color attacker) const noexcept;

  std::vector<Entry> slots_;
  mutable std::vector<std::mutex> locks_;
};

class Solver {
 public:
  explicit Solver(SolverConfig config = {});

  const SolverConfig& config() const noexcept { return config_; }

  // Iterative deepening up to max_depth (config value when omitted). Throws
  // ContractError on a finished game.
  SolveResult solve(const Position& pos, std::optional<int> max_depth = std::nullopt);

  // True when `attacker` can force a win within `depth` plies. Works for
  // either side to move; a finished game counts only if attacker won.
  bool proves_win(const Position& pos, Color attacker, int depth);

  // Smallest d <= max_depth with proves_win(pos, attacker, d); 0 when the
  // game is already won by attacker.
  std::optional<int> win_distance(const Position& pos, Color attacker, int max_depth);

  // Shortest forced win when one exists within the configured depth,
  // otherwise the move that delays a proven loss the longest. Ties go to
  // the first move in canonical text order.
  Move best_move(const Position& pos);

  std::uint64_t nodes() const noexcept { return nodes_; }
  std::uint64_t tt_hits() const noexcept { return tt_hits_; }
  void clear_table() { table_.clear(); }

 private:
  friend class ProofSearch;

  std::vector<Move> principal_variation(const Position& pos, Color attacker, int distance);
  bool prove_root(const Position& pos, Color attacker, int depth);

  SolverConfig config_;
  TranspositionTable table_;
  std::uint64_t nodes_ = 0;
  std::uint64_t tt_hits_ = 0;
};

// A reply that wins on the spot for the side moving after `move`, if any.
// Returns nullopt when `move` itself ends the game.
std::optional<Move> refuted_in_two(const Position& pos, const Move& move);

// A move that ends the game in the mover's favour right away, if any; first
// in canonical text order.
std::optional<Move> immediate_win(const Position& pos);

struct AturanEntry {
  Square black;  // square of Black's flat
  Square white;  // square of White's flat
  Position start;
  SolveResult result;
  bool representative = false;  // solved directly rather than by symmetry
};

// The position after Black's and White's opening flats, White to move.
Position aturan_position(Square black, Square white, int size = 3);

// All 72 ordered openings on 3x3, solved once per symmetry class; the other
// members get the representative's value and a transformed pv.
std::vector<AturanEntry> solve_all_aturan(Solver& solver, int max_depth, int size = 3);

}  // namespace tak

#include "tak/solver.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <thread>

#include "tak/errors.hpp"
#include "tak/notation.hpp"

namespace tak {

std::string to_string(const GameValue& v) {
  const std::string color(color_name(v.color));
  switch (v.kind) {
    case GameValue::Kind::ProvenWin:
      return "proven-win " + color + " in " + std::to_string(v.plies);
    case GameValue::Kind::ProvenLoss:
      return "proven-loss " + color + " in " + std::to_string(v.plies);
    case GameValue::Kind::Unknown:
      return "unknown within " + std::to_string(v.bound);
  }
  return "?";
}

// ---------------------------------------------------------------- table

namespace {
constexpr std::size_t kLockStripes = 1024;
}

TranspositionTable::TranspositionTable(std::size_t entries)
    : locks_(entries == 0 ? 0 : kLockStripes) {
  if (entries == 0) return;
  std::size_t size = 1;
  while (size < entries) size <<= 1;
  slots_.resize(size);
}

std::size_t TranspositionTable::index_of(const PackedKey& key, Color attacker) const noexcept {
  const std::uint64_t d = key.digest() ^ (attacker == Color::Black ? 0x9e3779b97f4a7c15ULL : 0);
  return static_cast<std::size_t>(d) & (slots_.size() - 1);
}

std::optional<TranspositionTable::Entry> TranspositionTable::probe(const PackedKey& key,
                                                                   Color attacker) const {
  if (slots_.empty()) return std::nullopt;
  const std::size_t idx = index_of(key, attacker);
  std::lock_guard lock(locks_[idx % locks_.size()]);
  const Entry& e = slots_[idx];
  if (!e.used || e.attacker != attacker || !(e.key == key)) return std::nullopt;
  return e;
}

void TranspositionTable::store(const PackedKey& key, Color attacker, int win_depth,
                               int fail_depth, const std::optional<Move>& best) {
  if (slots_.empty()) return;
  const std::size_t idx = index_of(key, attacker);
  std::lock_guard lock(locks_[idx % locks_.size()]);
  Entry& e = slots_[idx];
  if (!e.used || e.attacker != attacker || !(e.key == key)) {
    e = Entry{};
    e.key = key;
    e.attacker = attacker;
    e.used = true;
  }
  if (win_depth > 0 && (e.win_depth == 0 || win_depth < e.win_depth))
    e.win_depth = static_cast<std::int8_t>(win_depth);
  if (fail_depth > e.fail_depth) e.fail_depth = static_cast<std::int8_t>(fail_depth);
  if (best) {
    e.best = *best;
    e.has_best = true;
  }
}

void TranspositionTable::clear() { std::fill(slots_.begin(), slots_.end(), Entry{}); }

// ---------------------------------------------------------------- search

class ProofSearch {
 public:
  struct Result {
    bool win = false;
    // False when the answer depended on the current path (repetition) or the
    // search was stopped; such failures must not be cached.
    bool complete = true;
  };

  ProofSearch(Solver& solver, Color attacker, const std::atomic<bool>* stop = nullptr)
      : solver_(solver), attacker_(attacker), stop_(stop) {}

  // `pos` must not be a finished game.
  Result search(Position& pos, int depth) {
    if (stop_ != nullptr && stop_->load(std::memory_order_relaxed)) return {false, false};
    ++nodes;
    if (depth <= 0) return {false, true};

    const std::uint64_t h = pos.hash();
    if (std::find(path_.begin(), path_.end(), h) != path_.end()) return {false, false};

    const auto [key, g] = solver_.config_.use_symmetry
                              ? canonical_key(pos)
                              : std::pair<PackedKey, Symmetry>{pack(pos), Symmetry::Identity};
    std::optional<Move> hint;
    TranspositionTable& table = solver_.table_;
    if (table.enabled()) {
      if (auto e = table.probe(key, attacker_)) {
        if (e->win_depth > 0 && e->win_depth <= depth) {
          ++tt_hits;
          return {true, true};
        }
        if (e->fail_depth >= depth) {
          ++tt_hits;
          return {false, true};
        }
        if (e->has_best) hint = transform(e->best, inverse(g), pos.size());
      }
    }

    path_.push_back(h);
    std::optional<Move> best;
    const Result r = pos.to_move() == attacker_ ? attack(pos, depth, hint, best)
                                                : defend(pos, depth, hint, best);
    path_.pop_back();

    if (table.enabled() && (r.win || r.complete)) {
      std::optional<Move> stored;
      if (best) stored = transform(*best, g, pos.size());
      table.store(key, attacker_, r.win ? depth : 0, r.win ? -1 : depth, stored);
    }
    return r;
  }

  std::uint64_t nodes = 0;
  std::uint64_t tt_hits = 0;

 private:
  struct Candidate {
    Move move;
    int score;
  };

  std::vector<Candidate>& buffer() {
    const std::size_t level = path_.size();
    if (buffers_.size() <= level) buffers_.resize(level + 1);
    buffers_[level].clear();
    return buffers_[level];
  }

  // Moves for the side to move with their immediate outcome screened.
  // Returns true if `pick` found a move ending the game in a way `stop_on`
  // accepts; that move is stored in `found`.
  template <typename StopOn>
  bool screen(Position& pos, std::vector<Candidate>& out, StopOn&& stop_on, Move& found) {
    scratch_.clear();
    generate_moves(pos, scratch_);
    for (const Move& m : scratch_) {
      const UndoToken t = apply_unchecked(pos, m);
      const Outcome o = outcome(pos);
      undo(pos, t);
      if (o.terminal()) {
        if (stop_on(o)) {
          found = m;
          return true;
        }
        continue;
      }
      out.push_back({m, 0});
    }
    return false;
  }

  int attack_score(const Position& pos, const Move& m) const {
    const int n = pos.size();
    auto friendly_neighbours = [&](Square sq) {
      int count = 0;
      for (Direction d : kDirections) {
        const Square nb = step(sq, d);
        if (!nb.on_board(n)) continue;
        const Stack& s = pos[nb];
        if (s.counts_for_road() && s.controller() == attacker_) ++count;
      }
      return count;
    };
    if (m.is_place()) {
      const int nb = friendly_neighbours(m.square());
      switch (m.kind()) {
        case PieceKind::Flat: return 100 + 10 * nb;
        case PieceKind::Capstone: return 95 + 10 * nb;
        case PieceKind::Standing: return 30 + 5 * nb;
      }
    }
    const Square last = step(m.square(), m.direction(), m.drop_count());
    return 50 + 10 * friendly_neighbours(last) - m.carried();
  }

  Result attack(Position& pos, int depth, const std::optional<Move>& hint,
                std::optional<Move>& best) {
    auto& moves = buffer();
    Move winning{};
    if (screen(pos, moves, [&](const Outcome& o) { return o.is_win_for(attacker_); }, winning)) {
      best = winning;
      return {true, true};
    }
    if (depth == 1) return {false, true};

    for (Candidate& c : moves) {
      c.score = attack_score(pos, c.move);
      if (hint && c.move == *hint) c.score = 1 << 20;
    }
    std::stable_sort(moves.begin(), moves.end(),
                     [](const Candidate& a, const Candidate& b) { return a.score > b.score; });

    bool complete = true;
    for (std::size_t i = 0; i < moves.size(); ++i) {
      const Move m = moves[i].move;
      const UndoToken t = apply_unchecked(pos, m);
      const Result r = search(pos, depth - 1);
      undo(pos, t);
      if (r.win) {
        best = m;
        return {true, true};
      }
      complete = complete && r.complete;
    }
    return {false, complete};
  }

  Result defend(Position& pos, int depth, const std::optional<Move>& hint,
                std::optional<Move>& best) {
    auto& moves = buffer();
    Move escape{};
    if (screen(pos, moves, [&](const Outcome& o) { return !o.is_win_for(attacker_); }, escape)) {
      best = escape;
      return {false, true};
    }
    if (moves.empty()) return {true, true};
    if (depth == 1) {
      best = moves.front().move;
      return {false, true};
    }

    const std::size_t level = path_.size() - 1;
    if (killers_.size() <= level) killers_.resize(level + 1);
    const std::optional<Move>& killer = killers_[level];
    for (Candidate& c : moves) {
      c.score = 0;
      if (killer && c.move == *killer) c.score = 1;
      if (hint && c.move == *hint) c.score = 2;
    }
    std::stable_sort(moves.begin(), moves.end(),
                     [](const Candidate& a, const Candidate& b) { return a.score > b.score; });

    for (std::size_t i = 0; i < moves.size(); ++i) {
      const Move m = moves[i].move;
      const UndoToken t = apply_unchecked(pos, m);
      const Result r = search(pos, depth - 1);
      undo(pos, t);
      if (!r.win) {
        best = m;
        killers_[level] = m;
        return {false, r.complete};
      }
    }
    return {true, true};
  }

  Solver& solver_;
  Color attacker_;
  const std::atomic<bool>* stop_;
  std::vector<std::uint64_t> path_;
  std::deque<std::vector<Candidate>> buffers_;  // stable references across levels
  std::vector<std::optional<Move>> killers_;
  std::vector<Move> scratch_;
};

// ---------------------------------------------------------------- solver

Solver::Solver(SolverConfig config) : config_(config), table_(config.tt_entries) {}

bool Solver::prove_root(const Position& pos, Color attacker, int depth) {
  const Outcome o = outcome(pos);
  if (o.terminal()) return o.is_win_for(attacker);
  if (depth <= 0) return false;

  if (config_.threads <= 1 || pos.to_move() != attacker || depth < 3) {
    ProofSearch search(*this, attacker);
    Position work = pos;
    const bool win = search.search(work, depth).win;
    nodes_ += search.nodes;
    tt_hits_ += search.tt_hits;
    return win;
  }

  // Root split: workers claim first moves; the first proof stops the rest.
  const std::vector<Move> moves = legal_moves(pos);
  for (const Move& m : moves) {
    const auto [child, token] = applied(pos, m);
    if (outcome(child).is_win_for(attacker)) return true;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> found{false};
  std::mutex stats_lock;
  auto worker = [&] {
    ProofSearch search(*this, attacker, &found);
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= moves.size() || found.load()) break;
      auto [child, token] = applied(pos, moves[i]);
      if (outcome(child).terminal()) continue;
      if (search.search(child, depth - 1).win) found.store(true);
    }
    std::lock_guard lock(stats_lock);
    nodes_ += search.nodes;
    tt_hits_ += search.tt_hits;
  };
  std::vector<std::thread> pool;
  for (int i = 0; i < config_.threads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return found.load();
}

bool Solver::proves_win(const Position& pos, Color attacker, int depth) {
  return prove_root(pos, attacker, depth);
}

std::optional<int> Solver::win_distance(const Position& pos, Color attacker, int max_depth) {
  const Outcome o = outcome(pos);
  if (o.terminal()) return o.is_win_for(attacker) ? std::optional<int>(0) : std::nullopt;
  for (int d = 1; d <= max_depth; ++d)
    if (prove_root(pos, attacker, d)) return d;
  return std::nullopt;
}

std::vector<Move> Solver::principal_variation(const Position& root, Color attacker,
                                              int distance) {
  std::vector<Move> pv;
  Position pos = root;
  int remaining = distance;
  while (!outcome(pos).terminal() && remaining > 0) {
    const std::vector<Move> moves = sorted_by_text(legal_moves(pos));
    std::optional<Move> chosen;
    int chosen_distance = -1;
    for (const Move& m : moves) {
      auto [child, token] = applied(pos, m);
      const std::optional<int> d = win_distance(child, attacker, remaining - 1);
      if (pos.to_move() == attacker) {
        if (d) {
          chosen = m;
          chosen_distance = *d;
          break;
        }
      } else {
        // Every reply is lost; follow the one that lasts longest.
        const int value = d ? *d : remaining;
        if (value > chosen_distance) {
          chosen = m;
          chosen_distance = value;
        }
      }
    }
    if (!chosen) break;
    pv.push_back(*chosen);
    apply(pos, *chosen);
    remaining = chosen_distance;
  }
  return pv;
}

SolveResult Solver::solve(const Position& pos, std::optional<int> max_depth) {
  if (outcome(pos).terminal()) throw ContractError("solve called on a finished game");
  const int limit = max_depth.value_or(config_.max_depth);
  if (limit < 1) throw DomainError("max depth must be >= 1");
  const std::uint64_t nodes_before = nodes_;
  const std::uint64_t hits_before = tt_hits_;
  const Color mover = pos.to_move();

  SolveResult result;
  result.value = GameValue::unknown(mover, limit);
  result.depth = limit;
  // Both sides at each depth, so a lost position does not first pay for a
  // full-depth search of the mover's chances.
  for (int d = 1; d <= limit; ++d) {
    if (prove_root(pos, mover, d)) {
      result.value = GameValue::win(mover, d, limit);
      result.depth = d;
      result.pv = principal_variation(pos, mover, d);
      break;
    }
    if (prove_root(pos, opponent(mover), d)) {
      result.value = GameValue::loss(mover, d, limit);
      result.depth = d;
      result.pv = principal_variation(pos, opponent(mover), d);
      break;
    }
  }
  result.nodes = nodes_ - nodes_before;
  result.tt_hits = tt_hits_ - hits_before;
  return result;
}

Move Solver::best_move(const Position& pos) {
  if (outcome(pos).terminal()) throw ContractError("best_move called on a finished game");
  const Color mover = pos.to_move();
  const int limit = config_.max_depth;
  const std::vector<Move> moves = sorted_by_text(legal_moves(pos));

  if (auto d = win_distance(pos, mover, limit)) {
    for (const Move& m : moves) {
      auto [child, token] = applied(pos, m);
      const Outcome o = outcome(child);
      if (o.is_win_for(mover)) return m;
      if (!o.terminal() && *d > 1 && prove_root(child, mover, *d - 1)) return m;
    }
  }

  // No forced win: keep the opponent's proven win as far away as possible.
  std::optional<Move> chosen;
  int chosen_value = -1;
  for (const Move& m : moves) {
    auto [child, token] = applied(pos, m);
    const Outcome o = outcome(child);
    int value;
    if (o.terminal()) {
      value = o.is_win_for(opponent(mover)) ? 0 : limit + 1;
    } else {
      const std::optional<int> d = win_distance(child, opponent(mover), limit - 1);
      value = d ? *d : limit + 1;
    }
    if (value > chosen_value) {
      chosen = m;
      chosen_value = value;
      if (value > limit) break;
    }
  }
  return *chosen;
}

// ---------------------------------------------------------------- helpers

std::optional<Move> immediate_win(const Position& pos) {
  if (outcome(pos).terminal()) return std::nullopt;
  const Color mover = pos.to_move();
  for (const Move& m : sorted_by_text(legal_moves(pos))) {
    auto [child, token] = applied(pos, m);
    if (outcome(child).is_win_for(mover)) return m;
  }
  return std::nullopt;
}

std::optional<Move> refuted_in_two(const Position& pos, const Move& move) {
  auto [after, token] = applied(pos, move);
  if (outcome(after).terminal()) return std::nullopt;
  return immediate_win(after);
}

Position aturan_position(Square black, Square white, int size) {
  if (black == white) throw IllegalMove("opening flats must be on distinct squares");
  Position pos = new_position(size);
  apply(pos, Move::place(black));  // White places Black's flat
  apply(pos, Move::place(white));  // Black places White's flat
  return pos;
}

std::vector<AturanEntry> solve_all_aturan(Solver& solver, int max_depth, int size) {
  std::vector<AturanEntry> out;
  for (int b = 0; b < size * size; ++b)
    for (int w = 0; w < size * size; ++w) {
      if (b == w) continue;
      AturanEntry e;
      e.black = Square::from_index(b, size);
      e.white = Square::from_index(w, size);
      e.start = aturan_position(e.black, e.white, size);
      out.push_back(std::move(e));
    }

  std::map<PackedKey, std::size_t> solved;  // canonical key -> representative
  for (AturanEntry& e : out) {
    const PackedKey key = canonical_key(e.start).first;
    auto it = solved.find(key);
    if (it == solved.end()) {
      e.result = solver.solve(e.start, max_depth);
      e.representative = true;
      solved.emplace(key, static_cast<std::size_t>(&e - out.data()));
      continue;
    }
    const AturanEntry& rep = out[it->second];
    for (Symmetry g : kSymmetries) {
      if (!transform(rep.start, g).same_state(e.start)) continue;
      e.result = rep.result;
      e.result.nodes = 0;
      e.result.tt_hits = 0;
      for (Move& m : e.result.pv) m = transform(m, g, size);
      break;
    }
  }
  return out;
}

}  // namespace tak

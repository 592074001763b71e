#include "tak/moves.hpp"

#include <algorithm>

#include "position_access.hpp"
#include "tak/errors.hpp"

namespace tak {

namespace {

using Access = detail::PositionAccess;

// Emits every composition of `total` into at most `max_parts` positive parts.
// When exact_parts is set, only compositions with exactly that many parts.
template <typename Emit>
void compositions(int total, int max_parts, bool exact, std::array<int, Move::kMaxDrops>& buf,
                  int used, Emit&& emit) {
  if (total == 0) {
    if (!exact || used == max_parts) emit(std::span<const int>(buf.data(), static_cast<std::size_t>(used)));
    return;
  }
  if (used == max_parts) return;
  for (int part = 1; part <= total; ++part) {
    buf[static_cast<std::size_t>(used)] = part;
    compositions(total - part, max_parts, exact, buf, used + 1, emit);
  }
}

void generate_spreads(const Position& pos, Square origin, std::vector<Move>& out) {
  const int n = pos.size();
  const Stack& stack = pos[origin];
  const int max_take = std::min(n, stack.height());
  const bool capstone_top = stack.top().kind == PieceKind::Capstone;
  std::array<int, Move::kMaxDrops> buf{};

  for (Direction dir : kDirections) {
    const int reach = distance_to_edge(origin, dir, n);
    int open = 0;
    while (open < reach && pos[step(origin, dir, open + 1)].accepts_pieces()) ++open;
    const bool crush = capstone_top && open < reach &&
                       pos[step(origin, dir, open + 1)].top().kind == PieceKind::Standing;

    for (int take = 1; take <= max_take; ++take) {
      compositions(take, open, false, buf, 0, [&](std::span<const int> drops) {
        out.push_back(Move::spread(origin, dir, drops));
      });
      // The capstone alone lands last on the wall; the rest must cover every
      // open square before it.
      if (crush && take - 1 >= open) {
        compositions(take - 1, open, true, buf, 0, [&](std::span<const int> drops) {
          std::array<int, Move::kMaxDrops> with_cap{};
          std::copy(drops.begin(), drops.end(), with_cap.begin());
          with_cap[drops.size()] = 1;
          out.push_back(Move::spread(origin, dir,
                                     std::span<const int>(with_cap.data(), drops.size() + 1)));
        });
      }
    }
  }
}

}  // namespace

void generate_moves(const Position& pos, std::vector<Move>& out) {
  const int n = pos.size();
  const Color mover = pos.to_move();

  if (pos.phase() == Phase::Swap) {
    for (int i = 0; i < pos.square_count(); ++i)
      if (pos.at(i).empty()) out.push_back(Move::place(Square::from_index(i, n)));
    return;
  }

  const bool has_flats = pos.reserves().flats_of(mover) > 0;
  const bool has_caps = pos.reserves().capstones_of(mover) > 0;
  for (int i = 0; i < pos.square_count(); ++i) {
    if (!pos.at(i).empty()) continue;
    const Square sq = Square::from_index(i, n);
    if (has_flats) {
      out.push_back(Move::place(sq, PieceKind::Flat));
      out.push_back(Move::place(sq, PieceKind::Standing));
    }
    if (has_caps) out.push_back(Move::place(sq, PieceKind::Capstone));
  }
  for (int i = 0; i < pos.square_count(); ++i) {
    const Stack& s = pos.at(i);
    if (!s.empty() && s.controller() == mover) generate_spreads(pos, Square::from_index(i, n), out);
  }
}

std::vector<Move> legal_moves(const Position& pos) {
  if (outcome(pos).terminal()) throw ContractError("legal_moves called on a finished game");
  std::vector<Move> out;
  generate_moves(pos, out);
  return out;
}

std::optional<std::string> illegal_reason(const Position& pos, const Move& m) {
  const int n = pos.size();
  const Color mover = pos.to_move();
  if (!m.square().on_board(n)) return "square is off the board";

  if (m.is_place()) {
    if (!pos[m.square()].empty()) return "square is occupied";
    if (pos.phase() == Phase::Swap) {
      if (m.kind() != PieceKind::Flat) return "only flat stones may be placed in the opening";
      return std::nullopt;
    }
    if (m.kind() == PieceKind::Capstone) {
      if (pos.reserves().capstones_of(mover) == 0) return "no capstone left in reserve";
    } else if (pos.reserves().flats_of(mover) == 0) {
      return "no stones left in reserve";
    }
    return std::nullopt;
  }

  if (pos.phase() == Phase::Swap) return "stones cannot be moved during the opening placements";
  const Stack& origin = pos[m.square()];
  if (origin.empty()) return "origin square is empty";
  if (origin.controller() != mover) return "origin stack is controlled by the opponent";
  const int carried = m.carried();
  if (carried > pos.carry_limit()) return "carry limit exceeded";
  if (carried > origin.height()) return "stack is not tall enough";
  if (m.drop_count() > distance_to_edge(m.square(), m.direction(), n))
    return "spread runs off the board";
  for (int i = 0; i < m.drop_count(); ++i) {
    const Stack& target = pos[step(m.square(), m.direction(), i + 1)];
    if (target.accepts_pieces()) continue;
    const bool last = i + 1 == m.drop_count();
    if (target.top().kind == PieceKind::Capstone) return "blocked by a capstone";
    if (!(last && m.drop(i) == 1 && origin.top().kind == PieceKind::Capstone))
      return "blocked by a standing stone";
  }
  return std::nullopt;
}

struct MoveExecutor {
  static UndoToken play(Position& pos, const Move& m) {
    UndoToken t;
    t.reserves_ = pos.reserves();
    t.to_move_ = pos.to_move();
    t.ply_ = pos.ply();
    t.plies_since_placement_ = pos.plies_since_placement();
    t.zobrist_ = Access::zobrist(pos);
    t.tall_stacks_ = Access::tall_stacks(pos);

    const int n = pos.size();
    const Color mover = pos.to_move();
    auto save = [&](int idx) {
      t.saved_[t.saved_count_++] = {static_cast<std::uint8_t>(idx), pos.at(idx)};
    };

    if (m.is_place()) {
      const int idx = m.square().index(n);
      save(idx);
      const Color owner = pos.phase() == Phase::Swap ? opponent(mover) : mover;
      Reserves& r = Access::reserves(pos);
      if (m.kind() == PieceKind::Capstone)
        --r.capstones[static_cast<std::size_t>(owner)];
      else
        --r.flats[static_cast<std::size_t>(owner)];
      Access::set_stack(pos, idx, Stack(Piece{owner, m.kind()}));
      Access::set_plies_since_placement(pos, 0);
    } else {
      const int origin_idx = m.square().index(n);
      save(origin_idx);
      Stack origin = pos.at(origin_idx);
      Stack carried = origin.take_top(m.carried());
      Access::set_stack(pos, origin_idx, origin);
      for (int i = 0; i < m.drop_count(); ++i) {
        const int idx = step(m.square(), m.direction(), i + 1).index(n);
        save(idx);
        Stack target = pos.at(idx);
        if (!target.accepts_pieces()) target.flatten();
        target.drop(carried.take_bottom(m.drop(i)));
        Access::set_stack(pos, idx, target);
      }
      Access::set_plies_since_placement(pos, pos.plies_since_placement() + 1);
    }
    Access::set_ply(pos, pos.ply() + 1);
    Access::set_to_move(pos, opponent(mover));
    return t;
  }

  static void take_back(Position& pos, const UndoToken& t) {
    for (int i = 0; i < t.saved_count_; ++i) {
      const auto& [idx, stack] = t.saved_[static_cast<std::size_t>(i)];
      Access::raw_stack(pos, idx, stack);
    }
    Access::reserves(pos) = t.reserves_;
    Access::set_to_move(pos, t.to_move_);
    Access::set_ply(pos, t.ply_);
    Access::set_plies_since_placement(pos, t.plies_since_placement_);
    Access::restore_hash_state(pos, t.zobrist_, t.tall_stacks_);
  }
};

UndoToken apply_unchecked(Position& pos, const Move& m) { return MoveExecutor::play(pos, m); }

UndoToken apply(Position& pos, const Move& m) {
  if (outcome(pos).terminal()) throw ContractError("the game is already over");
  if (auto reason = illegal_reason(pos, m)) throw IllegalMove(*reason);
  return MoveExecutor::play(pos, m);
}

void undo(Position& pos, const UndoToken& token) { MoveExecutor::take_back(pos, token); }

std::pair<Position, UndoToken> applied(const Position& pos, const Move& m) {
  Position next = pos;
  UndoToken token = apply(next, m);
  return {std::move(next), token};
}

namespace {

std::uint64_t perft_rec(Position& pos, int depth, std::vector<std::vector<Move>>& buffers) {
  if (depth == 0) return 1;
  if (outcome(pos).terminal()) return 0;
  auto& moves = buffers[static_cast<std::size_t>(depth)];
  moves.clear();
  generate_moves(pos, moves);
  if (depth == 1) return moves.size();
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const Move m = moves[i];
    const UndoToken t = apply_unchecked(pos, m);
    total += perft_rec(pos, depth - 1, buffers);
    undo(pos, t);
  }
  return total;
}

}  // namespace

std::uint64_t perft(const Position& pos, int depth) {
  if (depth < 0) throw DomainError("perft depth must be >= 0");
  Position work = pos;
  std::vector<std::vector<Move>> buffers(static_cast<std::size_t>(depth) + 1);
  return perft_rec(work, depth, buffers);
}

}  // namespace tak

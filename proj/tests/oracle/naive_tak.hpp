#pragma once

// Slow, self-contained Tak rules used to cross-check the engine. Shares no
// code with the library: positions come in through the serialized text and
// moves go out as canonical move strings.

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace naive {

struct Stone {
  char color;  // 'w' or 'b'
  char kind;   // 'F', 'S' or 'C'
};

struct State {
  int n = 3;
  std::vector<std::vector<Stone>> cells;  // index rank * n + file, bottom first
  char to_move = 'w';
  int ply = 0;
  int since_placement = 0;
  int flats[2] = {0, 0};  // white, black
  int caps[2] = {0, 0};

  std::vector<Stone>& at(int file, int rank) { return cells[rank * n + file]; }
  const std::vector<Stone>& at(int file, int rank) const { return cells[rank * n + file]; }
};

inline int side(char c) { return c == 'w' ? 0 : 1; }
inline char other(char c) { return c == 'w' ? 'b' : 'w'; }

inline void supply(int n, int& flats, int& caps) {
  switch (n) {
    case 3: flats = 10; caps = 0; return;
    case 4: flats = 15; caps = 0; return;
    case 5: flats = 21; caps = 1; return;
    case 6: flats = 30; caps = 1; return;
    case 7: flats = 40; caps = 2; return;
    case 8: flats = 50; caps = 2; return;
  }
  throw std::invalid_argument("size");
}

inline State empty_state(int n) {
  State s;
  s.n = n;
  s.cells.assign(n * n, {});
  supply(n, s.flats[0], s.caps[0]);
  s.flats[1] = s.flats[0];
  s.caps[1] = s.caps[0];
  return s;
}

inline std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline State from_text(const std::string& text) {
  std::istringstream in(text);
  std::string board, mover, reserve_w, reserve_b;
  State s;
  in >> board >> mover >> s.ply >> s.since_placement >> reserve_w >> reserve_b;
  const std::vector<std::string> ranks = split(board, '/');
  s.n = static_cast<int>(ranks.size());
  s.cells.assign(s.n * s.n, {});
  for (int r = 0; r < s.n; ++r) {
    const std::vector<std::string> squares = split(ranks[s.n - 1 - r], ',');
    for (int f = 0; f < s.n; ++f) {
      const std::string& sq = squares[f];
      if (sq == "x") continue;
      for (std::size_t i = 0; i + 1 < sq.size(); i += 2) s.at(f, r).push_back({sq[i], sq[i + 1]});
    }
  }
  s.to_move = mover[0];
  const auto w = split(reserve_w, ',');
  const auto b = split(reserve_b, ',');
  s.flats[0] = std::stoi(w[0]);
  s.caps[0] = std::stoi(w[1]);
  s.flats[1] = std::stoi(b[0]);
  s.caps[1] = std::stoi(b[1]);
  return s;
}

inline std::string square_name(int file, int rank) {
  return std::string(1, static_cast<char>('a' + file)) + std::to_string(rank + 1);
}

inline bool road_top(const std::vector<Stone>& cell, char color) {
  return !cell.empty() && cell.back().color == color && cell.back().kind != 'S';
}

inline bool road(const State& s, char color) {
  for (int axis = 0; axis < 2; ++axis) {
    std::vector<char> seen(s.n * s.n, 0);
    std::vector<std::pair<int, int>> stack;
    for (int k = 0; k < s.n; ++k) {
      const int f = axis == 0 ? k : 0;
      const int r = axis == 0 ? 0 : k;
      if (road_top(s.at(f, r), color)) {
        seen[r * s.n + f] = 1;
        stack.push_back({f, r});
      }
    }
    while (!stack.empty()) {
      auto [f, r] = stack.back();
      stack.pop_back();
      if ((axis == 0 ? r : f) == s.n - 1) return true;
      const int df[4] = {1, -1, 0, 0};
      const int dr[4] = {0, 0, 1, -1};
      for (int d = 0; d < 4; ++d) {
        const int nf = f + df[d];
        const int nr = r + dr[d];
        if (nf < 0 || nr < 0 || nf >= s.n || nr >= s.n) continue;
        if (seen[nr * s.n + nf] || !road_top(s.at(nf, nr), color)) continue;
        seen[nr * s.n + nf] = 1;
        stack.push_back({nf, nr});
      }
    }
  }
  return false;
}

// "ongoing", "road-win white", "flat-win black" or "draw".
inline std::string result(const State& s) {
  const bool w = road(s, 'w');
  const bool b = road(s, 'b');
  // The side that just moved is the opposite of to_move.
  if (w && b) return std::string("road-win ") + (s.to_move == 'w' ? "black" : "white");
  if (w) return "road-win white";
  if (b) return "road-win black";
  bool full = true;
  int count[2] = {0, 0};
  for (const auto& c : s.cells) {
    if (c.empty()) {
      full = false;
      continue;
    }
    if (c.back().kind == 'F') ++count[side(c.back().color)];
  }
  if (full || s.flats[0] + s.caps[0] == 0 || s.flats[1] + s.caps[1] == 0) {
    if (count[0] > count[1]) return "flat-win white";
    if (count[1] > count[0]) return "flat-win black";
    return "draw";
  }
  return "ongoing";
}

// All ways to split `total` into ordered positive parts, at most `max_parts`.
inline void compositions(int total, int max_parts, std::vector<int>& prefix,
                         std::vector<std::vector<int>>& out) {
  if (total == 0) {
    out.push_back(prefix);
    return;
  }
  if (static_cast<int>(prefix.size()) == max_parts) return;
  for (int first = 1; first <= total; ++first) {
    prefix.push_back(first);
    compositions(total - first, max_parts, prefix, out);
    prefix.pop_back();
  }
}

inline std::set<std::string> moves(const State& s) {
  std::set<std::string> out;
  const int me = side(s.to_move);
  for (int r = 0; r < s.n; ++r)
    for (int f = 0; f < s.n; ++f) {
      if (!s.at(f, r).empty()) continue;
      const std::string sq = square_name(f, r);
      if (s.ply < 2) {
        out.insert(sq);
        continue;
      }
      if (s.flats[me] > 0) {
        out.insert(sq);
        out.insert("S" + sq);
      }
      if (s.caps[me] > 0) out.insert("C" + sq);
    }
  if (s.ply < 2) return out;

  const int df[4] = {0, 0, 1, -1};
  const int dr[4] = {1, -1, 0, 0};
  const char sym[4] = {'+', '-', '>', '<'};
  for (int r = 0; r < s.n; ++r)
    for (int f = 0; f < s.n; ++f) {
      const auto& cell = s.at(f, r);
      if (cell.empty() || cell.back().color != s.to_move) continue;
      const bool cap = cell.back().kind == 'C';
      const int most = std::min<int>(s.n, static_cast<int>(cell.size()));
      for (int d = 0; d < 4; ++d) {
        // Squares the spread may reach, and whether the last one is a wall
        // that only a lone capstone may enter.
        int reach = 0;
        bool wall_end = false;
        for (int k = 1;; ++k) {
          const int nf = f + df[d] * k;
          const int nr = r + dr[d] * k;
          if (nf < 0 || nr < 0 || nf >= s.n || nr >= s.n) break;
          const auto& t = s.at(nf, nr);
          if (!t.empty() && t.back().kind == 'C') break;
          if (!t.empty() && t.back().kind == 'S') {
            if (cap) {
              reach = k;
              wall_end = true;
            }
            break;
          }
          reach = k;
        }
        for (int taken = 1; taken <= most; ++taken) {
          std::vector<std::vector<int>> parts;
          std::vector<int> prefix;
          compositions(taken, reach, prefix, parts);
          for (const auto& p : parts) {
            if (wall_end && static_cast<int>(p.size()) == reach && p.back() != 1) continue;
            std::string m = square_name(f, r) + sym[d];
            for (int x : p) m += static_cast<char>('0' + x);
            out.insert(m);
          }
        }
      }
    }
  return out;
}

// Plays canonical move text assumed to be in moves(s).
inline State play(const State& s, const std::string& m) {
  State t = s;
  const int me = side(s.to_move);
  std::size_t i = 0;
  char kind = 'F';
  if (m[0] == 'S' || m[0] == 'C') {
    kind = m[0];
    i = 1;
  }
  const int f = m[i] - 'a';
  const int r = m[i + 1] - '1';
  if (m.size() == i + 2) {
    char color = s.to_move;
    int owner = me;
    if (s.ply < 2) {
      color = other(s.to_move);
      owner = 1 - me;
    }
    if (kind == 'C')
      --t.caps[owner];
    else
      --t.flats[owner];
    t.at(f, r).push_back({color, kind});
    t.since_placement = 0;
  } else {
    const char dir = m[i + 2];
    const int df = dir == '>' ? 1 : dir == '<' ? -1 : 0;
    const int dr = dir == '+' ? 1 : dir == '-' ? -1 : 0;
    int taken = 0;
    for (std::size_t k = i + 3; k < m.size(); ++k) taken += m[k] - '0';
    auto& origin = t.at(f, r);
    std::vector<Stone> hand(origin.end() - taken, origin.end());
    origin.resize(origin.size() - taken);
    std::size_t next = 0;
    for (std::size_t k = i + 3; k < m.size(); ++k) {
      const int step = static_cast<int>(k - (i + 3)) + 1;
      auto& dest = t.at(f + df * step, r + dr * step);
      if (!dest.empty() && dest.back().kind == 'S') dest.back().kind = 'F';
      for (int c = 0; c < m[k] - '0'; ++c) dest.push_back(hand[next++]);
    }
    ++t.since_placement;
  }
  t.to_move = other(s.to_move);
  ++t.ply;
  return t;
}

inline std::uint64_t perft(const State& s, int depth) {
  if (depth == 0) return 1;
  if (result(s) != "ongoing") return 0;
  std::uint64_t total = 0;
  for (const std::string& m : moves(s)) total += depth == 1 ? 1 : perft(play(s, m), depth - 1);
  return total;
}

}  // namespace naive

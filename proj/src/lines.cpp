#include "tak/lines.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "tak/errors.hpp"
#include "tak/moves.hpp"
#include "tak/notation.hpp"

namespace tak {

namespace detail {
const std::vector<std::pair<std::string_view, std::string_view>>& embedded_line_files();
}

const std::string& LineNode::black_text() const {
  if (anomaly && anomaly->original == black) return anomaly->corrected;
  return black;
}

const std::string& LineNode::white_text() const {
  if (anomaly && anomaly->original == white) return anomaly->corrected;
  return white;
}

namespace {

std::size_t count_nodes(const std::vector<LineNode>& nodes) {
  std::size_t n = 0;
  for (const LineNode& node : nodes) n += 1 + count_nodes(node.children);
  return n;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

class Loader {
 public:
  Loader(std::string_view text, std::string name) : text_(text) { file_.name = std::move(name); }

  LineFile run() {
    collect_directives();
    std::size_t begin = 0;
    int line_no = 0;
    std::vector<LineNode*> stack;
    while (begin <= text_.size()) {
      std::size_t end = text_.find('\n', begin);
      if (end == std::string_view::npos) end = text_.size();
      ++line_no;
      std::string_view line = text_.substr(begin, end - begin);
      begin = end + 1;
      if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
        line = line.substr(0, hash);
      if (trim(line).empty()) continue;
      if (line.front() == '%' || line.front() == '!') continue;
      parse_node(line, line_no, stack);
    }
    if (!opening_seen_) fail(1, 1, "missing %opening header");
    for (const auto& [original, used] : anomaly_used_) {
      if (!used) {
        const Anomaly& a = *anomaly_for(original);
        fail(a.line, 1, "anomaly '" + original + "' matches no malformed entry");
      }
    }
    return std::move(file_);
  }

 private:
  [[noreturn]] void fail(int line, int column, const std::string& what) const {
    throw LineFileError(file_.name, line, column, what);
  }

  // Headers and anomaly directives are read first so nodes can be checked
  // against them regardless of where they appear.
  void collect_directives() {
    std::size_t begin = 0;
    int line_no = 0;
    bool nodes_started = false;
    while (begin <= text_.size()) {
      std::size_t end = text_.find('\n', begin);
      if (end == std::string_view::npos) end = text_.size();
      ++line_no;
      std::string_view line = text_.substr(begin, end - begin);
      begin = end + 1;
      if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
        line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '*') {
        nodes_started = true;
        continue;
      }
      if (line.front() == '!') {
        parse_anomaly(line, line_no);
        continue;
      }
      if (line.front() != '%') continue;
      if (nodes_started) fail(line_no, 1, "headers must come before the tree");
      const std::vector<std::string> words = split_words(line.substr(1));
      if (words.empty()) fail(line_no, 2, "empty header");
      if (words[0] == "size") {
        if (opening_seen_) fail(line_no, 1, "%size must come before %opening");
        if (words.size() != 2) fail(line_no, 1, "%size takes one number");
        try {
          std::size_t used = 0;
          file_.size = std::stoi(words[1], &used);
          if (used != words[1].size()) throw std::invalid_argument("trailing text");
        } catch (const std::exception&) {
          fail(line_no, 7, "bad board size '" + words[1] + "'");
        }
        if (file_.size < kMinSize || file_.size > kMaxSize)
          fail(line_no, 7, "board size must be in 3..8");
      } else if (words[0] == "opening") {
        if (opening_seen_) fail(line_no, 1, "duplicate %opening");
        opening_seen_ = true;
        file_.opening.assign(words.begin() + 1, words.end());
        build_start(line_no);
      } else {
        fail(line_no, 2, "unknown header '%" + words[0] + "'");
      }
    }
  }

  void parse_anomaly(std::string_view line, int line_no) {
    std::string_view body = trim(line.substr(1));
    if (body.substr(0, 7) != "anomaly") fail(line_no, 2, "unknown directive");
    body = trim(body.substr(7));
    const std::size_t arrow = body.find("->");
    if (arrow == std::string_view::npos)
      fail(line_no, 1, "anomaly without correction; write '!anomaly <original> -> <corrected>'");
    Anomaly a;
    a.original = std::string(trim(body.substr(0, arrow)));
    a.corrected = std::string(trim(body.substr(arrow + 2)));
    a.line = line_no;
    if (a.original.empty()) fail(line_no, 10, "anomaly without original text");
    if (a.corrected.empty()) fail(line_no, 1, "anomaly without correction");
    if (anomaly_for(a.original)) fail(line_no, 1, "duplicate anomaly '" + a.original + "'");
    try {
      check_shorthand(a.corrected, file_.size);
    } catch (const ParseError& e) {
      fail(line_no, 1, "correction '" + a.corrected + "' is malformed: " + e.reason());
    }
    anomaly_used_[a.original] = false;
    file_.anomalies.push_back(std::move(a));
  }

  const Anomaly* anomaly_for(const std::string& original) const {
    for (const Anomaly& a : file_.anomalies)
      if (a.original == original) return &a;
    return nullptr;
  }

  void build_start(int line_no) {
    Position pos;
    try {
      pos = opening_position(file_.opening, file_.size);
    } catch (const std::exception& e) {
      fail(line_no, 1, std::string("illegal opening: ") + e.what());
    }
    if (pos.to_move() != Color::Black) fail(line_no, 1, "opening must leave Black to move");
    file_.start = pos;
  }

  // Validates one side of a node, applying a matching correction.
  void check_entry(const std::string& text, LineNode& node, int line_no, int column) {
    try {
      check_shorthand(text, file_.size);
      return;
    } catch (const ParseError& e) {
      const Anomaly* a = anomaly_for(text);
      if (a == nullptr)
        fail(line_no, column + static_cast<int>(std::min(e.offset(), text.size())),
             "malformed entry '" + text + "' (" + e.reason() + "); add '!anomaly " + text +
                 " -> <corrected>'");
      if (node.anomaly && node.anomaly->original != text)
        fail(line_no, column, "two malformed entries on one node");
      node.anomaly = *a;
      anomaly_used_[text] = true;
    }
  }

  void parse_node(std::string_view line, int line_no, std::vector<LineNode*>& stack) {
    std::size_t indent = 0;
    while (indent < line.size() && line[indent] == ' ') ++indent;
    if (indent < line.size() && line[indent] == '\t') fail(line_no, static_cast<int>(indent) + 1, "tab in indentation");
    if (indent % 2 != 0) fail(line_no, 1, "indentation must be a multiple of two spaces");
    const std::size_t depth = indent / 2;
    if (depth > stack.size()) fail(line_no, 1, "node is indented deeper than its parent allows");
    if (line.substr(indent, 2) != "* ") fail(line_no, static_cast<int>(indent) + 1, "expected '* <black> : <white>'");

    const std::string_view body = line.substr(indent + 2);
    const std::size_t colon = body.find(':');
    if (colon == std::string_view::npos)
      fail(line_no, static_cast<int>(indent) + 3, "expected ' : ' between the Black and White moves");
    LineNode node;
    node.black = std::string(trim(body.substr(0, colon)));
    node.white = std::string(trim(body.substr(colon + 1)));
    node.line = line_no;
    const int black_col = static_cast<int>(indent) + 3;
    const int white_col = black_col + static_cast<int>(colon) + 2;
    if (node.black.empty()) fail(line_no, black_col, "missing Black move");
    if (node.white.empty()) fail(line_no, white_col, "missing White move");
    if (node.white.find(' ') != std::string::npos || node.black.find(' ') != std::string::npos)
      fail(line_no, black_col, "one move per side");
    check_entry(node.black, node, line_no, black_col);
    check_entry(node.white, node, line_no, white_col);

    stack.resize(depth);
    std::vector<LineNode>& siblings = depth == 0 ? file_.roots : stack.back()->children;
    siblings.push_back(std::move(node));
    stack.push_back(&siblings.back());
  }

  std::string_view text_;
  LineFile file_;
  bool opening_seen_ = false;
  std::map<std::string, bool> anomaly_used_;
};

}  // namespace

Position opening_position(const std::vector<std::string>& tokens, int size) {
  std::optional<Square> black;
  std::optional<Square> white;
  std::size_t i = 0;
  for (; i < tokens.size() && i < 2; ++i) {
    const std::string& tok = tokens[i];
    if (tok.size() < 3 || tok[1] != ':' || (tok[0] != 'b' && tok[0] != 'w')) break;
    std::optional<Square>& slot = tok[0] == 'b' ? black : white;
    if (slot) throw IllegalMove("flat given twice: '" + tok + "'");
    try {
      slot = parse_square(tok.substr(2), size);
    } catch (const ParseError& e) {
      throw ParseError("bad square in '" + tok + "': " + e.reason(), 2);
    }
  }
  if (black.has_value() != white.has_value()) throw IllegalMove("give both b: and w: flats");
  Position pos = black ? aturan_position(*black, *white, size) : new_position(size);
  for (; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    if (outcome(pos).terminal()) throw IllegalMove("game is over before '" + tok + "'");
    const Move m = parse_move(tok, pos);
    if (auto why = illegal_reason(pos, m)) throw IllegalMove("'" + tok + "': " + *why);
    apply(pos, m);
  }
  if (outcome(pos).terminal()) throw IllegalMove("opening ends the game");
  return pos;
}

std::size_t LineFile::node_count() const { return count_nodes(roots); }

LineFile parse_line_file(std::string_view text, std::string name) {
  return Loader(text, std::move(name)).run();
}

LineFile load_line_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string name = path;
  if (const std::size_t slash = name.find_last_of('/'); slash != std::string::npos)
    name = name.substr(slash + 1);
  if (const std::size_t dot = name.rfind(".lines"); dot != std::string::npos && dot > 0)
    name = name.substr(0, dot);
  return parse_line_file(buf.str(), name);
}

std::vector<LineFile> bundled_dataset() {
  std::vector<LineFile> out;
  for (const auto& [name, text] : detail::embedded_line_files())
    out.push_back(parse_line_file(text, std::string(name)));
  return out;
}

LineFile bundled_line_file(std::string_view name) {
  for (const auto& [file_name, text] : detail::embedded_line_files())
    if (file_name == name) return parse_line_file(text, std::string(file_name));
  throw DomainError("no bundled line file named '" + std::string(name) + "'");
}

// ---------------------------------------------------------------- verify

const char* status_name(LineStatus s) {
  switch (s) {
    case LineStatus::ChildListed: return "ChildListed";
    case LineStatus::WhiteWinsImmediately: return "WhiteWinsImmediately";
    case LineStatus::ProvenWithinLeafDepth: return "ProvenWithinLeafDepth";
    case LineStatus::RefutedInTwo: return "RefutedInTwo";
    case LineStatus::SymmetryCovered: return "SymmetryCovered";
    case LineStatus::Uncovered: return "UNCOVERED";
    case LineStatus::IllegalMove: return "IllegalMove";
    case LineStatus::NotProven: return "NotProven";
    case LineStatus::BlackEscapes: return "BlackEscapes";
  }
  return "?";
}

bool is_failure(LineStatus s) {
  return s == LineStatus::Uncovered || s == LineStatus::IllegalMove ||
         s == LineStatus::NotProven || s == LineStatus::BlackEscapes;
}

namespace {

class Verifier {
 public:
  Verifier(const LineFile& file, const VerifyOptions& options)
      : file_(file),
        options_(options),
        solver_(SolverConfig{std::max(options.leaf_depth, options.refute_depth), 1,
                             options.tt_entries, true}) {}

  VerifyReport run() {
    if (options_.leaf_depth < 0) throw DomainError("leaf depth must be >= 0");
    if (options_.refute_depth < 1) throw DomainError("refute depth must be >= 1");
    report_.name = file_.name;
    report_.options = options_;
    report_.anomalies = file_.anomalies;
    std::vector<std::string> path;
    node_children(file_.start, file_.roots, path);
    return std::move(report_);
  }

 private:
  struct Listed {
    Move move;
    Position after;
  };

  LineEntry& add(const std::vector<std::string>& path, LineStatus status, std::string black,
                 int line) {
    LineEntry e;
    e.path = path;
    e.black = std::move(black);
    e.status = status;
    e.line = line;
    report_.entries.push_back(std::move(e));
    return report_.entries.back();
  }

  // Black is to move in `pos`; `children` are the listed Black moves.
  void node_children(const Position& pos, const std::vector<LineNode>& children,
                     std::vector<std::string>& path) {
    std::vector<Listed> listed;
    for (const LineNode& child : children) {
      std::vector<Move> expansions;
      try {
        expansions = expand_shorthand(child.black_text(), pos);
      } catch (const ParseError& e) {
        add(path, LineStatus::IllegalMove, child.black_text(), child.line).detail = e.reason();
        continue;
      }
      for (const Move& b : expansions) {
        const std::string b_text = format_move(b);
        if (auto why = illegal_reason(pos, b)) {
          add(path, LineStatus::IllegalMove, b_text, child.line).detail = *why;
          continue;
        }
        Position after = applied(pos, b).first;
        listed.push_back({b, after});
        const Outcome o = outcome(after);
        if (o.is_win_for(Color::White)) {
          add(path, LineStatus::WhiteWinsImmediately, b_text, child.line).detail =
              "Black's move ends the game: " + to_string(o);
          continue;
        }
        if (o.terminal()) {
          add(path, LineStatus::BlackEscapes, b_text, child.line).detail = to_string(o);
          continue;
        }
        add(path, LineStatus::ChildListed, b_text, child.line);
        path.push_back(b_text);
        reply(after, child, path);
        path.pop_back();
      }
    }
    coverage(pos, listed, path);
  }

  // White answers in `pos` as the node lists.
  void reply(const Position& pos, const LineNode& node, std::vector<std::string>& path) {
    const std::string& black = path.back();
    std::vector<Move> replies;
    try {
      replies = expand_shorthand(node.white_text(), pos);
    } catch (const ParseError& e) {
      LineEntry& entry = add(path_without_last(path), LineStatus::IllegalMove, black, node.line);
      entry.white = node.white_text();
      entry.detail = e.reason();
      return;
    }
    for (const Move& w : replies) {
      const std::string w_text = format_move(w);
      std::vector<std::string> base = path_without_last(path);
      if (auto why = illegal_reason(pos, w)) {
        LineEntry& entry = add(base, LineStatus::IllegalMove, black, node.line);
        entry.white = w_text;
        entry.detail = *why;
        continue;
      }
      const Position after = applied(pos, w).first;
      const Outcome o = outcome(after);
      if (o.is_win_for(Color::White)) {
        LineEntry& entry = add(base, LineStatus::WhiteWinsImmediately, black, node.line);
        entry.white = w_text;
        entry.detail = to_string(o);
        continue;
      }
      if (o.terminal()) {
        LineEntry& entry = add(base, LineStatus::BlackEscapes, black, node.line);
        entry.white = w_text;
        entry.detail = "White's reply ends the game: " + to_string(o);
        continue;
      }
      if (!node.children.empty()) {
        path.push_back(w_text);
        node_children(after, node.children, path);
        path.pop_back();
        continue;
      }
      const std::optional<int> d = solver_.win_distance(after, Color::White, options_.leaf_depth);
      LineEntry& entry =
          add(base, d ? LineStatus::ProvenWithinLeafDepth : LineStatus::NotProven, black, node.line);
      entry.white = w_text;
      if (d) {
        entry.depth = *d;
      } else {
        entry.detail = "no White win within " + std::to_string(options_.leaf_depth) + " plies";
      }
    }
  }

  static std::vector<std::string> path_without_last(const std::vector<std::string>& path) {
    return {path.begin(), path.end() - 1};
  }

  // Every legal Black move that is not listed must be refuted quickly or be
  // a symmetric image of a listed one.
  void coverage(const Position& pos, const std::vector<Listed>& listed,
                const std::vector<std::string>& path) {
    for (const Move& b : sorted_by_text(legal_moves(pos))) {
      const bool is_listed = std::any_of(listed.begin(), listed.end(),
                                         [&](const Listed& l) { return l.move == b; });
      if (is_listed) continue;
      const std::string b_text = format_move(b);
      const Position after = applied(pos, b).first;
      const Outcome o = outcome(after);
      if (o.is_win_for(Color::White)) {
        add(path, LineStatus::RefutedInTwo, b_text, 0).detail =
            "Black's move ends the game: " + to_string(o);
        continue;
      }
      if (!o.terminal()) {
        if (options_.refute_depth == 2) {
          if (auto w = immediate_win(after)) {
            LineEntry& entry = add(path, LineStatus::RefutedInTwo, b_text, 0);
            entry.white = format_move(*w);
            continue;
          }
        } else if (options_.refute_depth > 2 &&
                   solver_.proves_win(after, Color::White, options_.refute_depth - 1)) {
          add(path, LineStatus::RefutedInTwo, b_text, 0).detail =
              "White wins within " + std::to_string(options_.refute_depth - 1) + " plies";
          continue;
        }
      }
      if (const auto cover = symmetric_cover(after, listed)) {
        LineEntry& entry = add(path, LineStatus::SymmetryCovered, b_text, 0);
        entry.symmetry = cover->second;
        entry.covered_by = format_move(cover->first);
        continue;
      }
      add(path, LineStatus::Uncovered, b_text, 0).detail =
          o.terminal() ? "ends the game: " + to_string(o) : "not listed, refuted or symmetric";
    }
  }

  static std::optional<std::pair<Move, Symmetry>> symmetric_cover(
      const Position& after, const std::vector<Listed>& listed) {
    for (const Listed& l : listed)
      for (Symmetry g : kSymmetries)
        if (g != Symmetry::Identity && transform(after, g).same_state(l.after))
          return std::pair{l.move, g};
    return std::nullopt;
  }

  const LineFile& file_;
  VerifyOptions options_;
  Solver solver_;
  VerifyReport report_;
};

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const std::string& p : parts) {
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

}  // namespace

VerifyReport verify(const LineFile& file, const VerifyOptions& options) {
  return Verifier(file, options).run();
}

VerifyReport verify(const LineFile& file, int leaf_depth, int refute_depth) {
  VerifyOptions options;
  options.leaf_depth = leaf_depth;
  options.refute_depth = refute_depth;
  return verify(file, options);
}

std::map<LineStatus, int> VerifyReport::counts() const {
  std::map<LineStatus, int> out;
  for (const LineEntry& e : entries) ++out[e.status];
  return out;
}

int VerifyReport::failures() const {
  return static_cast<int>(std::count_if(entries.begin(), entries.end(),
                                        [](const LineEntry& e) { return is_failure(e.status); }));
}

std::string VerifyReport::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["passed"] = passed();
  j["leaf_depth"] = options.leaf_depth;
  j["refute_depth"] = options.refute_depth;
  nlohmann::json counts_json = nlohmann::json::object();
  for (const auto& [status, n] : counts()) counts_json[status_name(status)] = n;
  j["counts"] = counts_json;
  j["failures"] = failures();
  j["anomalies"] = nlohmann::json::array();
  for (const Anomaly& a : anomalies)
    j["anomalies"].push_back({{"original", a.original}, {"corrected", a.corrected}, {"line", a.line}});
  j["entries"] = nlohmann::json::array();
  for (const LineEntry& e : entries) {
    nlohmann::json x = {{"path", e.path}, {"black", e.black}, {"status", status_name(e.status)}};
    if (!e.white.empty()) x["white"] = e.white;
    if (e.depth) x["depth"] = *e.depth;
    if (e.symmetry) x["symmetry"] = symmetry_name(*e.symmetry);
    if (!e.covered_by.empty()) x["covered_by"] = e.covered_by;
    if (!e.detail.empty()) x["detail"] = e.detail;
    if (e.line != 0) x["line"] = e.line;
    j["entries"].push_back(std::move(x));
  }
  return j.dump(2);
}

std::string VerifyReport::to_text(bool all) const {
  std::ostringstream out;
  out << name << ": " << (passed() ? "PASS" : "FAIL") << " (leaf depth " << options.leaf_depth
      << ", refute depth " << options.refute_depth << ")\n";
  for (const auto& [status, n] : counts()) out << "  " << status_name(status) << ": " << n << '\n';
  for (const Anomaly& a : anomalies)
    out << "  anomaly line " << a.line << ": " << a.original << " -> " << a.corrected << '\n';
  for (const LineEntry& e : entries) {
    if (!all && !is_failure(e.status)) continue;
    out << "  [" << join(e.path) << "] " << e.black;
    if (!e.white.empty()) out << " : " << e.white;
    out << "  " << status_name(e.status);
    if (e.depth) out << " d=" << *e.depth;
    if (e.symmetry) out << " " << symmetry_name(*e.symmetry) << " of " << e.covered_by;
    if (!e.detail.empty()) out << " (" << e.detail << ")";
    if (e.line != 0) out << " line " << e.line;
    out << '\n';
  }
  return out.str();
}

}  // namespace tak

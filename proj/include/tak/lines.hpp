#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tak/board.hpp"
#include "tak/solver.hpp"
#include "tak/types.hpp"

namespace tak {

// A diagram entry that is not valid move text, with the reading used
// instead. Corrections are hand-written and checked like any other entry.
struct Anomaly {
  std::string original;
  std::string corrected;
  int line = 0;  // of the directive
};

// One Black move of a diagram and White's listed answer. Both sides may use
// diagram shorthand.
struct LineNode {
  std::string black;
  std::string white;
  std::vector<LineNode> children;
  // Set when `black` or `white` is malformed and a directive corrects it.
  std::optional<Anomaly> anomaly;
  int line = 0;

  // The text to play, with any correction applied.
  const std::string& black_text() const;
  const std::string& white_text() const;
};

// A .lines file:
//
//   # comment
//   %size 3
//   %opening b:b1 w:a1 a2
//   !anomaly b-12 -> b3-12
//   * a3 : b3
//     * b1<1 : b2
//
// %opening either names the two opening flats (b:<square> w:<square>,
// White to move) or starts from the empty board; canonical moves follow in
// both forms. The tree starts with Black to move. Children are indented two
// spaces deeper than their parent.
struct LineFile {
  std::string name;
  int size = 3;
  std::vector<std::string> opening;  // tokens as written
  Position start;                    // after the opening, Black to move
  std::vector<LineNode> roots;
  std::vector<Anomaly> anomalies;

  std::size_t node_count() const;
};

// Position after opening tokens: optional "b:<square> w:<square>" flats
// (White to move after them) followed by moves. Throws ParseError or
// IllegalMove, including when the opening ends the game.
Position opening_position(const std::vector<std::string>& tokens, int size);

// Throw LineFileError with line and column on syntax errors, an illegal
// opening, or a malformed entry without a matching !anomaly directive.
LineFile load_line_file(const std::string& path);
LineFile parse_line_file(std::string_view text, std::string name);

// The seven encoded diagrams, in the order game1..game4, gameA..gameC.
std::vector<LineFile> bundled_dataset();
LineFile bundled_line_file(std::string_view name);

enum class LineStatus {
  ChildListed,            // Black move has a listed answer
  WhiteWinsImmediately,   // the position is already won for White
  ProvenWithinLeafDepth,  // leaf: White's win proven within leaf depth
  RefutedInTwo,           // unlisted, but White wins right after it
  SymmetryCovered,        // unlisted, equivalent to a listed move
  Uncovered,              // unlisted and not accounted for
  IllegalMove,            // listed text does not give a legal move
  NotProven,              // leaf without a proof within leaf depth
  BlackEscapes,           // the line ends in a result that is not a White win
};

const char* status_name(LineStatus s);
bool is_failure(LineStatus s);

struct LineEntry {
  std::vector<std::string> path;  // canonical moves from the start
  std::string black;              // canonical Black move (or listed text)
  std::string white;              // canonical White reply, when relevant
  LineStatus status = LineStatus::ChildListed;
  std::optional<int> depth;           // ProvenWithinLeafDepth
  std::optional<Symmetry> symmetry;   // SymmetryCovered: maps this onto `covered_by`
  std::string covered_by;             // SymmetryCovered
  std::string detail;
  int line = 0;  // source line of the node involved, 0 for unlisted moves
};

struct VerifyOptions {
  int leaf_depth = 8;
  int refute_depth = 2;
  std::size_t tt_entries = std::size_t{1} << 20;
};

struct VerifyReport {
  std::string name;
  VerifyOptions options;
  std::vector<LineEntry> entries;
  std::vector<Anomaly> anomalies;

  std::map<LineStatus, int> counts() const;
  int failures() const;  // Uncovered plus failed checks
  bool passed() const { return failures() == 0; }
  std::string to_json() const;
  // Summary and every failure; `all` lists every entry.
  std::string to_text(bool all = false) const;
};

VerifyReport verify(const LineFile& file, const VerifyOptions& options = {});
VerifyReport verify(const LineFile& file, int leaf_depth, int refute_depth = 2);

}  // namespace tak

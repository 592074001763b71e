#pragma once

#include <cstdint>
#include <vector>

namespace tak {

// One way for a tower to fall in a fixed direction: `taken` stones are lifted
// and dropped in the listed amounts, nearest square first.
struct FallPattern {
  int taken = 0;
  std::vector<int> drops;

  friend bool operator==(const FallPattern&, const FallPattern&) = default;
};

// Every (taken, composition) pair for 1 <= taken <= min(carry, height),
// ordered by taken and then lexicographically by drops. Board edges and
// obstacles are not considered. Throws DomainError for height or carry < 1.
std::vector<FallPattern> fall_patterns(int height, int carry);

// 2^min(carry, height) - 1.
std::uint64_t fall_count(int height, int carry);

// Stones per player, flats plus capstones.
int stone_budget(int size);

// Upper bound on the number of plies when a stone must be placed at least
// every k plies: 2 * stone_budget(size) * k. The bound is not sharp, and it
// counts the two opening placements.
std::uint64_t game_length_bound(int size, int k);

}  // namespace tak

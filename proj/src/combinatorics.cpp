#include "tak/combinatorics.hpp"

#include <algorithm>
#include <string>

#include "tak/board.hpp"
#include "tak/errors.hpp"

namespace tak {

namespace {

// Compositions of `remaining` appended to `prefix`, in lexicographic order.
void compose(int taken, int remaining, std::vector<int>& prefix, std::vector<FallPattern>& out) {
  if (remaining == 0) {
    out.push_back(FallPattern{taken, prefix});
    return;
  }
  for (int part = 1; part <= remaining; ++part) {
    prefix.push_back(part);
    compose(taken, remaining - part, prefix, out);
    prefix.pop_back();
  }
}

void check_fall_args(int height, int carry) {
  if (height < 1) throw DomainError("tower height must be >= 1, got " + std::to_string(height));
  if (carry < 1) throw DomainError("carry limit must be >= 1, got " + std::to_string(carry));
}

}  // namespace

std::vector<FallPattern> fall_patterns(int height, int carry) {
  check_fall_args(height, carry);
  const int max_taken = std::min(height, carry);
  if (max_taken > 62) throw DomainError("tower too tall to enumerate");
  std::vector<FallPattern> out;
  out.reserve((std::size_t{1} << max_taken) - 1);
  std::vector<int> prefix;
  for (int taken = 1; taken <= max_taken; ++taken) compose(taken, taken, prefix, out);
  return out;
}

std::uint64_t fall_count(int height, int carry) {
  check_fall_args(height, carry);
  const int m = std::min(height, carry);
  if (m > 63) throw DomainError("count does not fit in 64 bits");
  return (std::uint64_t{1} << m) - 1;
}

int stone_budget(int size) {
  const StoneCounts counts = stone_counts(size);
  return counts.flats + counts.capstones;
}

std::uint64_t game_length_bound(int size, int k) {
  if (k < 1) throw DomainError("k must be >= 1, got " + std::to_string(k));
  return 2ULL * static_cast<std::uint64_t>(stone_budget(size)) * static_cast<std::uint64_t>(k);
}

}  // namespace tak

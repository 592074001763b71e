#pragma once

#include <array>

namespace tak::fixtures {

struct AturanGolden {
  const char* black;
  const char* white;
  int plies;  // length of White's shortest forced win
};

// Produced by the solver and cross-checked on sampled openings with the
// plain search in oracle/plain_search.hpp.
inline constexpr std::array<AturanGolden, 72> kAturanGolden = {{
    {"a1", "b1", 11}, {"a1", "c1", 9}, {"a1", "a2", 11}, {"a1", "b2", 7}, {"a1", "c2", 7}, {"a1", "a3", 9},
    {"a1", "b3", 7}, {"a1", "c3", 13}, {"b1", "a1", 11}, {"b1", "c1", 11}, {"b1", "a2", 9}, {"b1", "b2", 11},
    {"b1", "c2", 9}, {"b1", "a3", 11}, {"b1", "b3", 11}, {"b1", "c3", 11}, {"c1", "a1", 9}, {"c1", "b1", 11},
    {"c1", "a2", 7}, {"c1", "b2", 7}, {"c1", "c2", 11}, {"c1", "a3", 13}, {"c1", "b3", 7}, {"c1", "c3", 9},
    {"a2", "a1", 11}, {"a2", "b1", 9}, {"a2", "c1", 11}, {"a2", "b2", 11}, {"a2", "c2", 11}, {"a2", "a3", 11},
    {"a2", "b3", 9}, {"a2", "c3", 11}, {"b2", "a1", 11}, {"b2", "b1", 11}, {"b2", "c1", 11}, {"b2", "a2", 11},
    {"b2", "c2", 11}, {"b2", "a3", 11}, {"b2", "b3", 11}, {"b2", "c3", 11}, {"c2", "a1", 11}, {"c2", "b1", 9},
    {"c2", "c1", 11}, {"c2", "a2", 11}, {"c2", "b2", 11}, {"c2", "a3", 11}, {"c2", "b3", 9}, {"c2", "c3", 11},
    {"a3", "a1", 9}, {"a3", "b1", 7}, {"a3", "c1", 13}, {"a3", "a2", 11}, {"a3", "b2", 7}, {"a3", "c2", 7},
    {"a3", "b3", 11}, {"a3", "c3", 9}, {"b3", "a1", 11}, {"b3", "b1", 11}, {"b3", "c1", 11}, {"b3", "a2", 9},
    {"b3", "b2", 11}, {"b3", "c2", 9}, {"b3", "a3", 11}, {"b3", "c3", 11}, {"c3", "a1", 13}, {"c3", "b1", 7},
    {"c3", "c1", 9}, {"c3", "a2", 7}, {"c3", "b2", 7}, {"c3", "c2", 11}, {"c3", "a3", 9}, {"c3", "b3", 11},
}};

}  // namespace tak::fixtures

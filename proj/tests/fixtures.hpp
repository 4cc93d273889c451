#pragma once

// Small worked examples shared by the tests.

#include "rankclose/io.hpp"

namespace fixture {

// 4x4 masks at rank 2 with 12 entries each: M1 is 2-closable, M2 is not.
inline const char *const kM1 = "1111\n1111\n1100\n1100\n";
inline const char *const kM2 = "0111\n1011\n1101\n1110\n";

// Rank-one 3x3 matrix [[1,2,3],[2,4,6],[4,8,12]] seen through two masks:
// A1's graph is connected, A2's is not.
inline const char *const kA1 = "1,2,3\n?,4,?\n4,?,?\n";
inline const char *const kA2 = "1,?,3\n?,4,?\n4,?,12\n";

inline rankclose::Mask m1() { return rankclose::parse_mask(kM1); }
inline rankclose::Mask m2() { return rankclose::parse_mask(kM2); }
inline rankclose::MaskedMatrix a1() { return rankclose::parse_masked_matrix(kA1); }
inline rankclose::MaskedMatrix a2() { return rankclose::parse_masked_matrix(kA2); }

} // namespace fixture

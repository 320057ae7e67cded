#pragma once

// Basis of the derivation algebra of the 7-dimensional cross product,
// as columns in so(7) coordinates (L_jk basis, pairs lexicographic).
// Canonical form: reduced column echelon via span_canonical.
// Generated by tools/gen_g2_basis; do not edit by hand.

#include <sstream>
#include <string>

#include "fatlab/matrix.hpp"
#include "fatlab/rational.hpp"

namespace fatlab {

inline Mat g2_committed_basis() {
  static const char* const cols[14] = {
      "1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0",
      "0 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0",
      "0 0 1 0 0 0 0 0 0 0 0 0 0 -1 0 0 0 0 0 0 0",
      "0 0 0 1 0 0 0 0 0 0 0 0 0 0 -1 0 0 0 0 0 0",
      "0 0 0 0 1 0 0 0 0 0 0 1 0 0 0 0 0 0 0 0 0",
      "0 0 0 0 0 1 0 0 0 0 0 0 1 0 0 0 0 0 0 0 0",
      "0 0 0 0 0 0 1 0 0 0 0 0 0 0 0 0 0 0 0 0 1",
      "0 0 0 0 0 0 0 1 0 0 0 0 1 0 0 0 0 0 0 0 0",
      "0 0 0 0 0 0 0 0 1 0 0 -1 0 0 0 0 0 0 0 0 0",
      "0 0 0 0 0 0 0 0 0 1 0 0 0 0 -1 0 0 0 0 0 0",
      "0 0 0 0 0 0 0 0 0 0 1 0 0 1 0 0 0 0 0 0 0",
      "0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 0 1",
      "0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 -1 0",
      "0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 1 0 0",
  };
  Mat m(21, 14);
  for (int c = 0; c < 14; ++c) {
    std::istringstream in(cols[c]);
    std::string tok;
    for (int r = 0; r < 21; ++r) {
      in >> tok;
      m(r, c) = parse_rat(tok);
    }
  }
  return m;
}

}  // namespace fatlab

#pragma once

#include <cstdint>
#include <string>

namespace bspir {

/// Outcome of the three-server worked example check over F_5 with
/// evaluation points (1, 2, 0), K = 2, l = 2, alpha = 1.
struct GoldenCheck {
  bool ok = true;
  std::uint64_t assignments = 0;  // (u, v, a, b, S) tuples checked
  std::uint64_t hash_checks = 0;
  std::string first_failure;
};

/// For every (u, v, a, b, S) in F_5^5: queries are ([u+1, v], [u+2, v], [u, v])
/// for message 1, answers are (X+a, X+2a, X) with X = ua + vb + S, each server
/// computes its answer from its own query, and the answer hash of server n at
/// every nonzero point p is p A_n + p^2 A_n'.
GoldenCheck check_golden_transcript();

}  // namespace bspir

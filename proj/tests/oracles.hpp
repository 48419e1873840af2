#pragma once

// Reference implementations used only by the tests. They avoid the library's
// code paths: plain loops, brute force, and textbook formulas.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
using Grid = std::vector<std::vector<u64>>;

// Double-and-add multiplication; never forms a product wider than 64 bits
// as long as q < 2^63.
// x + y mod q without overflow, for x, y < q.
inline u64 addmod(u64 x, u64 y, u64 q) { return x >= q - y ? x - (q - y) : x + y; }

inline u64 mulmod(u64 a, u64 b, u64 q) {
  a %= q;
  b %= q;
  u64 r = 0;
  while (b) {
    if (b & 1) r = addmod(r, a, q);
    a = addmod(a, a, q);
    b >>= 1;
  }
  return r;
}

inline u64 powmod_slow(u64 base, u64 exp, u64 q) {
  u64 r = 1 % q;
  for (u64 i = 0; i < exp; ++i) r = mulmod(r, base, q);
  return r;
}

inline u64 inverse_by_search(u64 a, u64 q) {
  for (u64 x = 1; x < q; ++x)
    if (mulmod(a, x, q) == 1) return x;
  return 0;
}

inline bool is_prime_trial(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline Grid matmul(const Grid& a, const Grid& b, u64 q) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
  Grid c(n, std::vector<u64>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t t = 0; t < k; ++t) c[i][j] = addmod(c[i][j], mulmod(a[i][t], b[t][j], q), q);
  return c;
}

// Leibniz expansion; fine for n <= 7.
inline u64 determinant(const Grid& m, u64 q) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  u64 total = 0;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    u64 term = 1;
    for (std::size_t i = 0; i < n; ++i) term = mulmod(term, m[i][perm[i]], q);
    total = inversions % 2 ? (total + q - term) % q : (total + term) % q;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline u64 binomial(u64 n, u64 k) {
  if (k > n) return 0;
  u64 r = 1;
  for (u64 i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Exact binomial pmf in doubles, via logs.
inline double binom_pmf(u64 n, u64 k, double p) {
  if (p <= 0) return k == 0 ? 1.0 : 0.0;
  if (p >= 1) return k == n ? 1.0 : 0.0;
  const double lg = std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(k) + 1) -
                    std::lgamma(static_cast<double>(n - k) + 1);
  return std::exp(lg + static_cast<double>(k) * std::log(p) + static_cast<double>(n - k) * std::log1p(-p));
}

}  // namespace oracle

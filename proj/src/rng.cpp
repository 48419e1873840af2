#include "bspir/rng.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace bspir {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: empty range");
  // 2^64 mod bound, computed without 128-bit arithmetic.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = engine_();
    if (x >= threshold) return x % bound;
  }
}

std::vector<Elem> Rng::distinct_nonzero(const Field& f, std::size_t count) {
  if (count > f.modulus() - 1) throw std::invalid_argument("not enough nonzero field elements");
  std::vector<Elem> out;
  std::unordered_set<Elem> seen;
  out.reserve(count);
  while (out.size() < count) {
    const Elem e = uniform_nonzero(f);
    if (seen.insert(e).second) out.push_back(e);
  }
  return out;
}

Matrix Rng::uniform_matrix(const Field& f, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (Elem& e : m.row(r)) e = uniform(f);
  return m;
}

std::vector<std::size_t> Rng::subset(std::size_t n, std::size_t count) {
  if (count > n) throw std::invalid_argument("Rng::subset: count exceeds population");
  // Partial Fisher-Yates.
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace bspir

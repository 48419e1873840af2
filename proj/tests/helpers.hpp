#pragma once

#include "bspir/field.hpp"
#include "bspir/scheme.hpp"
#include "oracles.hpp"

namespace testing {

inline oracle::Grid to_grid(const bspir::Matrix& m) {
  oracle::Grid g(m.rows(), std::vector<oracle::u64>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) g[r][c] = m(r, c);
  return g;
}

inline bspir::Matrix from_grid(const oracle::Grid& g) {
  bspir::Matrix m(g.size(), g.empty() ? 0 : g[0].size());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = g[r][c];
  return m;
}

inline bspir::SchemeConfig secret(std::size_t N, std::size_t T, std::size_t B, std::size_t l, std::size_t alpha,
                                  std::size_t K = 2, std::uint64_t q = 0) {
  bspir::SchemeConfig c;
  c.model = bspir::Model::SecretChannel;
  c.N = N;
  c.T = T;
  c.B = B;
  c.l = l;
  c.alpha = alpha;
  c.K = K;
  c.q = q;
  return c;
}

inline bspir::SchemeConfig untouched(std::size_t N, std::size_t T, std::size_t B, std::size_t E, std::size_t l,
                                     std::size_t beta, std::size_t K = 2, std::uint64_t q = 0) {
  bspir::SchemeConfig c;
  c.model = bspir::Model::UntouchedServer;
  c.N = N;
  c.T = T;
  c.B = B;
  c.E = E;
  c.l = l;
  c.beta = beta;
  c.alpha = (N - T - B) * beta;
  c.K = K;
  c.q = q;
  return c;
}

}  // namespace testing

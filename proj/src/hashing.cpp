#include "bspir/hashing.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace bspir {

Matrix build_p_matrix(const Field& f, std::span<const Elem> points, std::size_t rows) {
  std::set<Elem> seen;
  for (Elem p : points) {
    if (f.reduce(p) == 0) throw ZeroExponentPoint("hash points must be nonzero");
    if (!seen.insert(f.reduce(p)).second) throw DuplicateExponentPoint("hash points must be distinct");
  }
  Matrix P(rows, points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    Elem x = f.reduce(points[j]);
    for (std::size_t i = 0; i < rows; ++i) {
      P(i, j) = x;
      x = f.mul(x, points[j]);
    }
  }
  return P;
}

std::vector<Elem> sample_hash_points(const SchemeParams& params, Rng& hash) {
  return hash.distinct_nonzero(params.field(), params.alpha());
}

std::vector<std::size_t> default_hash_senders(const SchemeParams& params) {
  std::vector<std::size_t> s(params.x_rows());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = i;
  return s;
}

namespace {

Matrix sender_generator(const SchemeParams& params, std::span<const std::size_t> senders) {
  if (senders.size() != params.x_rows()) throw ShapeMismatch("hash sender set must have N-B servers");
  return select_rows(build_generators(params).combined, senders);
}

}  // namespace

HashBundle answer_hashes(const SchemeParams& params, const Matrix& x, std::span<const Elem> points,
                         std::span<const std::size_t> senders) {
  const Field& f = params.field();
  const Matrix P = build_p_matrix(f, points, params.instances());
  HashBundle b;
  b.flavor = HashFlavor::AnswerHash;
  b.points.assign(points.begin(), points.end());
  b.values = multiply(f, multiply(f, sender_generator(params, senders), x), P);
  b.senders.assign(senders.begin(), senders.end());
  b.point_sender = senders.front();
  return b;
}

HashBundle answer_hashes_from_answers(const SchemeParams& params, const Matrix& answers, std::span<const Elem> points,
                                      std::span<const std::size_t> senders) {
  if (senders.size() != params.x_rows()) throw ShapeMismatch("hash sender set must have N-B servers");
  const Field& f = params.field();
  const Matrix P = build_p_matrix(f, points, params.instances());
  HashBundle b;
  b.flavor = HashFlavor::AnswerHash;
  b.points.assign(points.begin(), points.end());
  b.values = multiply(f, select_rows(answers, senders), P);
  b.senders.assign(senders.begin(), senders.end());
  b.point_sender = senders.front();
  return b;
}

Matrix row_hashes(const SchemeParams& params, const HashBundle& bundle) {
  if (bundle.flavor != HashFlavor::AnswerHash) throw std::invalid_argument("row_hashes needs an answer-hash bundle");
  return solve(params.field(), sender_generator(params, bundle.senders), bundle.values);
}

HashBundle message_hashes(const SchemeParams& params, const Dataset& dataset, std::span<const Elem> points) {
  if (params.beta() == 0) throw MissingAppendedRandomness("message hashes need appended padding (beta >= 1)");
  if (dataset.messages.cols() != params.message_length()) throw ShapeMismatch("dataset row length mismatch");
  const Field& f = params.field();
  HashBundle b;
  b.flavor = HashFlavor::MessageHash;
  b.points.assign(points.begin(), points.end());
  b.values = multiply(f, dataset.messages, build_p_matrix(f, points, params.message_length()));
  return b;
}

std::vector<bool> verify_rows(const Field& f, const Matrix& rows, std::span<const Elem> points, const Matrix& expected) {
  if (expected.rows() != rows.rows() || expected.cols() != points.size())
    throw ShapeMismatch("verify: expected hash matrix has the wrong shape");
  const Matrix got = multiply(f, rows, build_p_matrix(f, points, rows.cols()));
  std::vector<bool> ok(rows.rows());
  for (std::size_t r = 0; r < rows.rows(); ++r)
    ok[r] = std::equal(got.row(r).begin(), got.row(r).end(), expected.row(r).begin());
  return ok;
}

std::vector<bool> verify(const SchemeParams& params, const Matrix& candidate_rows, const HashBundle& bundle) {
  if (bundle.flavor == HashFlavor::AnswerHash) {
    if (candidate_rows.rows() != params.x_rows() || candidate_rows.cols() != params.instances())
      throw ShapeMismatch("verify: candidate must be (N-B) x (l+beta)");
    return verify_rows(params.field(), candidate_rows, bundle.points, row_hashes(params, bundle));
  }
  if (candidate_rows.cols() != params.message_length()) throw ShapeMismatch("verify: candidate message length mismatch");
  return verify_rows(params.field(), candidate_rows, bundle.points, bundle.values);
}

Rational forgery_bound(std::uint64_t n, std::uint64_t q) {
  if (n == 0) throw std::invalid_argument("polynomial degree must be at least 1");
  return Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(q));
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

ErrorBound scheme_error_bound(const SchemeParams& params) {
  const double choose = static_cast<double>(binomial(params.N(), params.B()));
  const double q = static_cast<double>(params.field().modulus());
  const double l = static_cast<double>(params.l());
  const double alpha = static_cast<double>(params.alpha());
  ErrorBound b;
  if (params.model() == Model::SecretChannel) {
    b.list_term = choose * std::pow(l / q, alpha);
    b.actual_q = b.list_term;
    b.with_q_l_squared = choose * std::pow(1.0 / l, alpha);
    return b;
  }
  const double degree = static_cast<double>(params.message_length());
  const double N = static_cast<double>(params.N());
  b.list_term = choose * std::pow(degree / q, alpha);
  b.phase1_term = N / std::pow(q, N);
  b.actual_q = b.list_term + b.phase1_term;
  b.with_q_l_squared = choose * std::pow(degree / (l * l), alpha) + N / std::pow(l, 2 * N);
  return b;
}

}  // namespace bspir

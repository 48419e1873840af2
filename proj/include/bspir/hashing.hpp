#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "bspir/field.hpp"
#include "bspir/scheme.hpp"

namespace bspir {

class DuplicateExponentPoint : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ZeroExponentPoint : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MissingAppendedRandomness : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class HashFlavor {
  AnswerHash,   // hashes of answers, sent over the secret channels
  MessageHash,  // hashes of padded messages, sent over the secure broadcast
};

/// Secret hash points and the hash values derived from them.
///
/// AnswerHash: `values` is the (N-B) x alpha matrix A_S * P sent by the
/// servers in `senders` (0-based). MessageHash: `values` is K x alpha, row k-1
/// holding [W_k, S_Wk] * P.
struct HashBundle {
  HashFlavor flavor = HashFlavor::AnswerHash;
  std::vector<Elem> points;
  Matrix values;
  std::vector<std::size_t> senders;
  std::size_t point_sender = 0;
};

/// rows x alpha matrix with entry (i, j) = points[j]^(i+1). No constant term.
Matrix build_p_matrix(const Field& f, std::span<const Elem> points, std::size_t rows);

/// Draw alpha distinct nonzero hash points.
std::vector<Elem> sample_hash_points(const SchemeParams& params, Rng& hash);

/// Servers 0..N-B-1 send hashes; server 0 sends the points.
std::vector<std::size_t> default_hash_senders(const SchemeParams& params);

/// G_S X P, computed by the servers in `senders` from their own answers.
HashBundle answer_hashes(const SchemeParams& params, const Matrix& x, std::span<const Elem> points,
                         std::span<const std::size_t> senders);

/// Same values, computed from the answer rows the senders actually hold.
HashBundle answer_hashes_from_answers(const SchemeParams& params, const Matrix& answers, std::span<const Elem> points,
                                      std::span<const std::size_t> senders);

/// alpha hashes per row of X, i.e. G_S^-1 * values. This is what the user checks against.
Matrix row_hashes(const SchemeParams& params, const HashBundle& bundle);

HashBundle message_hashes(const SchemeParams& params, const Dataset& dataset, std::span<const Elem> points);

/// Row-wise check: (rows * P)[r] == expected[r] exactly.
std::vector<bool> verify_rows(const Field& f, const Matrix& rows, std::span<const Elem> points, const Matrix& expected);

/// AnswerHash: `candidate_rows` are (N-B) rows of a candidate X.
/// MessageHash: `candidate_rows` are K padded messages (or any subset in the
/// bundle's row order).
std::vector<bool> verify(const SchemeParams& params, const Matrix& candidate_rows, const HashBundle& bundle);

/// Forgery bound for one polynomial hash of degree n: n/q.
Rational forgery_bound(std::uint64_t n, std::uint64_t q);

struct ErrorBound {
  double actual_q = 0.0;          // evaluated with the field actually in use
  double with_q_l_squared = 0.0;  // evaluated with q replaced by l^2
  double list_term = 0.0;         // C(N,B) (d/q)^alpha part, actual q
  double phase1_term = 0.0;       // N / q^N part, actual q (untouched only)
};

ErrorBound scheme_error_bound(const SchemeParams& params);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace bspir

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bspir/field.hpp"
#include "bspir/hashing.hpp"
#include "bspir/scheme.hpp"

namespace bspir {

/// One solution of [G B_hat] [x; z] = received for a corruption hypothesis.
struct CandidateSolution {
  std::vector<std::size_t> hypothesis;  // 0-based servers assumed corrupted
  Matrix x_hat;                          // (N-B) x (l+beta)
  Matrix z_hat;                          // B x (l+beta)
};

enum class DecodeStatus { Decoded, Ambiguous, NoCandidate };

std::string to_string(DecodeStatus s);

struct DecodeOutcome {
  DecodeStatus status = DecodeStatus::NoCandidate;
  std::vector<Elem> message;                              // (N-T-B) l symbols when Decoded
  std::size_t instances_used = 0;                         // l when Decoded
  std::vector<std::vector<std::size_t>> passing;          // hypotheses whose candidate passed
  std::optional<bool> true_positive;                      // set by the harness
};

/// Which rows of a candidate X are checked against answer hashes.
enum class HashScope {
  AllRows,      // every row of X
  MessageRows,  // only the N-T-B rows carrying the desired message
};

std::string to_string(HashScope s);
HashScope parse_hash_scope(const std::string& s);

/// Precomputes [G B_hat]^-1 for every size-B hypothesis, in lexicographic order.
class ListDecoder {
 public:
  explicit ListDecoder(const SchemeParams& params);

  std::size_t hypothesis_count() const { return inverses_.size(); }
  std::vector<CandidateSolution> enumerate(const Matrix& received) const;

 private:
  SchemeParams params_;
  std::vector<std::vector<std::size_t>> hypotheses_;
  std::vector<Matrix> inverses_;
};

/// [G B_hat] with a distinct unit column per hypothesised server.
Matrix corrupted_system(const SchemeParams& params, std::span<const std::size_t> hypothesis);

std::vector<CandidateSolution> enumerate_candidates(const SchemeParams& params, const AnswerSet& received);

/// Selects the candidate consistent with the hashes. Candidates decoding to the
/// same padded message count once.
DecodeOutcome filter_by_hashes(const SchemeParams& params, const std::vector<CandidateSolution>& candidates,
                               const HashBundle& bundle, std::size_t k, HashScope scope = HashScope::AllRows);

/// Rows T.. of x_hat laid out as a padded message (instance-major, block-minor).
/// The first (N-T-B) l symbols are the message, the rest the padding.
std::vector<Elem> extract_message(const Matrix& x_hat, const SchemeParams& params);

}  // namespace bspir

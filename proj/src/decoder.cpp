#include "bspir/decoder.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace bspir {

std::string to_string(DecodeStatus s) {
  switch (s) {
    case DecodeStatus::Decoded: return "decoded";
    case DecodeStatus::Ambiguous: return "ambiguous";
    case DecodeStatus::NoCandidate: return "no_candidate";
  }
  return "unknown";
}

std::string to_string(HashScope s) { return s == HashScope::AllRows ? "all_rows" : "message_rows"; }

HashScope parse_hash_scope(const std::string& s) {
  if (s == "all_rows") return HashScope::AllRows;
  if (s == "message_rows") return HashScope::MessageRows;
  throw std::invalid_argument("unknown hash scope '" + s + "'");
}

Matrix corrupted_system(const SchemeParams& params, std::span<const std::size_t> hypothesis) {
  Matrix indicator(params.N(), hypothesis.size());
  for (std::size_t c = 0; c < hypothesis.size(); ++c) indicator(hypothesis[c], c) = 1;
  return hconcat(build_generators(params).combined, indicator);
}

ListDecoder::ListDecoder(const SchemeParams& params) : params_(params), hypotheses_(subsets(params.N(), params.B())) {
  inverses_.reserve(hypotheses_.size());
  for (const auto& h : hypotheses_) inverses_.push_back(invert(params.field(), corrupted_system(params, h)));
}

std::vector<CandidateSolution> ListDecoder::enumerate(const Matrix& received) const {
  const SchemeParams& p = params_;
  if (received.rows() != p.N()) throw ShapeMismatch("received answers must have N rows");
  std::vector<CandidateSolution> out;
  out.reserve(hypotheses_.size());
  for (std::size_t h = 0; h < hypotheses_.size(); ++h) {
    const Matrix solution = multiply(p.field(), inverses_[h], received);
    out.push_back({hypotheses_[h], row_slice(solution, 0, p.x_rows()), row_slice(solution, p.x_rows(), p.B())});
  }
  return out;
}

std::vector<CandidateSolution> enumerate_candidates(const SchemeParams& params, const AnswerSet& received) {
  return ListDecoder(params).enumerate(received.answers);
}

std::vector<Elem> extract_message(const Matrix& x_hat, const SchemeParams& params) {
  if (x_hat.rows() != params.x_rows() || x_hat.cols() != params.instances())
    throw ShapeMismatch("x_hat must be (N-B) x (l+beta)");
  const std::size_t M = params.blocks();
  std::vector<Elem> out(params.message_length());
  for (std::size_t i = 0; i < params.instances(); ++i)
    for (std::size_t j = 0; j < M; ++j) out[i * M + j] = x_hat(params.T() + j, i);
  return out;
}

namespace {

bool passes(const SchemeParams& params, const CandidateSolution& c, const HashBundle& bundle, const Matrix& expected_rows,
            std::size_t k, HashScope scope) {
  const Field& f = params.field();
  if (bundle.flavor == HashFlavor::MessageHash) {
    const std::vector<Elem> msg = extract_message(c.x_hat, params);
    const Matrix row(1, msg.size(), msg);
    return verify_rows(f, row, bundle.points, row_slice(bundle.values, k - 1, 1)).front();
  }
  const std::size_t first = scope == HashScope::AllRows ? 0 : params.T();
  const std::size_t count = params.x_rows() - first;
  const auto ok = verify_rows(f, row_slice(c.x_hat, first, count), bundle.points, row_slice(expected_rows, first, count));
  return std::all_of(ok.begin(), ok.end(), [](bool b) { return b; });
}

}  // namespace

DecodeOutcome filter_by_hashes(const SchemeParams& params, const std::vector<CandidateSolution>& candidates,
                               const HashBundle& bundle, std::size_t k, HashScope scope) {
  const bool want_message_hash = params.model() == Model::UntouchedServer;
  if (want_message_hash != (bundle.flavor == HashFlavor::MessageHash))
    throw std::invalid_argument("hash bundle flavor does not match the adversary model");
  if (k < 1 || k > params.K()) throw std::out_of_range("message index must be in [1, K]");

  // The user turns the sender hashes into per-row hashes of X once.
  const Matrix expected_rows = bundle.flavor == HashFlavor::AnswerHash ? row_hashes(params, bundle) : Matrix();

  DecodeOutcome out;
  std::map<std::vector<Elem>, std::size_t> distinct;
  for (const auto& c : candidates) {
    if (!passes(params, c, bundle, expected_rows, k, scope)) continue;
    out.passing.push_back(c.hypothesis);
    ++distinct[extract_message(c.x_hat, params)];
  }
  if (distinct.empty()) {
    out.status = DecodeStatus::NoCandidate;
  } else if (distinct.size() > 1) {
    out.status = DecodeStatus::Ambiguous;
  } else {
    out.status = DecodeStatus::Decoded;
    const auto& padded = distinct.begin()->first;
    out.message.assign(padded.begin(), padded.begin() + static_cast<std::ptrdiff_t>(params.payload_length()));
    out.instances_used = params.l();
  }
  return out;
}

}  // namespace bspir

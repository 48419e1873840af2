#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bspir/adversary.hpp"
#include "bspir/decoder.hpp"
#include "helpers.hpp"

using namespace bspir;
using testing::secret;
using testing::to_grid;
using testing::untouched;

namespace {

struct Run {
  Dataset dataset;
  Matrix x;
  AnswerSet clean;
  std::vector<Elem> points;
};

Run make_run(const SchemeParams& p, std::uint64_t seed, std::size_t k = 1) {
  Rng data(seed, Stream::Data), user(seed, Stream::User), server(seed, Stream::Server), hash(seed, Stream::Hash);
  Run r;
  r.dataset = generate_dataset(p, data, server);
  const Matrix s = generate_common_randomness(p, server);
  const QueryArtifacts qa = generate_queries(p, k, user);
  r.x = build_x_matrix(p, r.dataset, k, qa.user_secret, s);
  r.clean = generate_answers(p, r.x);
  r.points = sample_hash_points(p, hash);
  return r;
}

HashBundle bundle_for(const SchemeParams& p, const Run& r) {
  if (p.model() == Model::SecretChannel)
    return answer_hashes_from_answers(p, r.clean.answers, r.points, default_hash_senders(p));
  return message_hashes(p, r.dataset, r.points);
}

std::vector<Elem> payload_of(const SchemeParams& p, const Dataset& d, std::size_t k) {
  const auto row = d.messages.row(k - 1);
  return {row.begin(), row.begin() + static_cast<std::ptrdiff_t>(p.payload_length())};
}

}  // namespace

TEST_CASE("B = 0 yields one candidate equal to X") {
  const SchemeParams p(secret(4, 1, 0, 5, 2));
  const Run r = make_run(p, 1);
  const auto cands = enumerate_candidates(p, r.clean);
  REQUIRE(cands.size() == 1);
  CHECK(cands[0].x_hat == r.x);
  CHECK(cands[0].z_hat.rows() == 0);
}

TEST_CASE("uncorrupted N=3, B=1: all candidates agree with X and have zero noise") {
  const SchemeParams p(secret(3, 1, 1, 8, 2));
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Run r = make_run(p, s);
    const auto cands = enumerate_candidates(p, r.clean);
    REQUIRE(cands.size() == 3);
    for (const auto& c : cands) {
      CHECK(c.x_hat == r.x);
      CHECK(c.z_hat.is_zero());
    }
  }
}

TEST_CASE("candidates satisfy [G B] [x; z] = received") {
  for (const auto& cfg : {secret(5, 1, 2, 6, 2), untouched(5, 2, 1, 2, 6, 2)}) {
    const SchemeParams p(cfg);
    const std::uint64_t q = p.field().modulus();
    for (std::uint64_t s = 0; s < 10; ++s) {
      const Run r = make_run(p, s);
      const TargetChoice c = choose_targets(p, Gamma{s});
      const AnswerSet bad = apply_corruption(
          p, r.clean,
          plan_corruption(p, Strategy::RandomOverwrite, Gamma{s}, AdversaryView{}, c.targets));
      const auto cands = enumerate_candidates(p, bad);
      CHECK(cands.size() == oracle::binomial(p.N(), p.B()));
      for (const auto& cand : cands) {
        const Matrix sys = corrupted_system(p, cand.hypothesis);
        CHECK(oracle::matmul(to_grid(sys), to_grid(vconcat(cand.x_hat, cand.z_hat)), q) == to_grid(bad.answers));
        if (cand.hypothesis == c.targets) CHECK(cand.x_hat == r.x);
      }
    }
  }
}

TEST_CASE("N=3, B=1 with server 2 corrupted: that hypothesis recovers X") {
  const SchemeParams p(secret(3, 1, 1, 8, 2));
  const Run r = make_run(p, 8);
  Corruption z;
  z.targets = {1};
  z.mode = CorruptionMode::Overwrite;
  z.values = Matrix(1, p.instances());
  const AnswerSet bad = apply_corruption(p, r.clean, z);
  bool found = false;
  for (const auto& c : enumerate_candidates(p, bad)) {
    if (c.hypothesis == std::vector<std::size_t>{1}) {
      CHECK(c.x_hat == r.x);
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("extract_message examples") {
  auto cfg = secret(3, 1, 1, 1, 1, 2, 5);
  const SchemeParams p(cfg);
  CHECK(extract_message(Matrix{{4}, {3}}, p) == std::vector<Elem>{3});
  CHECK(extract_message(Matrix(2, 1), p) == std::vector<Elem>{0});
  CHECK_THROWS_AS(extract_message(Matrix(3, 1), p), ShapeMismatch);

  for (const auto& c : {secret(6, 2, 1, 5, 2, 3), untouched(5, 1, 1, 2, 4, 2, 3)}) {
    const SchemeParams q(c);
    for (std::uint64_t s = 0; s < 10; ++s) {
      const std::size_t k = 1 + s % q.K();
      const Run r = make_run(q, s, k);
      const auto msg = extract_message(r.x, q);
      const auto row = r.dataset.messages.row(k - 1);
      CHECK(std::equal(msg.begin(), msg.end(), row.begin()));
    }
  }
}

TEST_CASE("uncorrupted runs decode correctly in both models") {
  for (const auto& cfg : {secret(3, 1, 1, 8, 2), secret(5, 2, 1, 4, 1, 3), untouched(4, 1, 1, 2, 8, 2)}) {
    const SchemeParams p(cfg);
    for (std::uint64_t s = 0; s < 20; ++s) {
      const Run r = make_run(p, s);
      const DecodeOutcome o = filter_by_hashes(p, enumerate_candidates(p, r.clean), bundle_for(p, r), 1);
      CHECK(o.status == DecodeStatus::Decoded);
      CHECK(o.message == payload_of(p, r.dataset, 1));
      CHECK(o.message.size() == p.blocks() * p.l());
      CHECK(o.instances_used == p.l());
      CHECK(o.passing.size() == oracle::binomial(p.N(), p.B()));
    }
  }
}

TEST_CASE("flavor mismatch is rejected") {
  const SchemeParams p(secret(3, 1, 1, 8, 2));
  const Run r = make_run(p, 1);
  HashBundle wrong = bundle_for(p, r);
  wrong.flavor = HashFlavor::MessageHash;
  CHECK_THROWS(filter_by_hashes(p, enumerate_candidates(p, r.clean), wrong, 1));
}

TEST_CASE("random overwrite is filtered out") {
  const SchemeParams p(secret(3, 1, 1, 8, 2));
  int correct = 0;
  for (std::uint64_t s = 0; s < 500; ++s) {
    const Run r = make_run(p, s);
    const TargetChoice c = choose_targets(p, Gamma{s});
    const AnswerSet bad = apply_corruption(
        p, r.clean, plan_corruption(p, Strategy::RandomOverwrite, Gamma{s}, AdversaryView{}, c.targets));
    const DecodeOutcome o = filter_by_hashes(p, enumerate_candidates(p, bad), bundle_for(p, r), 1);
    if (o.status == DecodeStatus::Decoded && o.message == payload_of(p, r.dataset, 1)) ++correct;
    // The true candidate always passes.
    CHECK(o.status != DecodeStatus::NoCandidate);
  }
  CHECK(correct >= 495);
}

TEST_CASE("known hash points let a jammer make a wrong candidate pass") {
  const SchemeParams p(secret(3, 1, 1, 8, 1));
  int fooled = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const Run r = make_run(p, s);
    const TargetChoice c = choose_targets(p, Gamma{s});
    const Corruption z =
        plan_known_p_forgery(p, Gamma{s}, AdversaryView{}, c.targets, LeakedSecrets{r.points});
    const DecodeOutcome o = filter_by_hashes(p, enumerate_candidates(p, apply_corruption(p, r.clean, z)),
                                             bundle_for(p, r), 1);
    if (o.status != DecodeStatus::Decoded) ++fooled;
  }
  CHECK(fooled == 200);
}

TEST_CASE("message-row scope checks only the message rows") {
  const SchemeParams p(secret(4, 1, 1, 8, 2));
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Run r = make_run(p, s);
    const auto bundle = bundle_for(p, r);
    const auto cands = enumerate_candidates(p, r.clean);
    const DecodeOutcome all = filter_by_hashes(p, cands, bundle, 1, HashScope::AllRows);
    const DecodeOutcome msg = filter_by_hashes(p, cands, bundle, 1, HashScope::MessageRows);
    CHECK(all.status == DecodeStatus::Decoded);
    CHECK(msg.status == DecodeStatus::Decoded);
    CHECK(all.message == msg.message);
  }
  CHECK(parse_hash_scope(to_string(HashScope::MessageRows)) == HashScope::MessageRows);
}

TEST_CASE("candidates differing only in mask rows count once") {
  const SchemeParams p(secret(3, 1, 1, 4, 1));
  const Run r = make_run(p, 3);
  auto cands = enumerate_candidates(p, r.clean);
  // Alter the mask row of one candidate; the payload rows still agree.
  cands[1].x_hat(0, 0) = p.field().add(cands[1].x_hat(0, 0), 1);
  HashBundle b = bundle_for(p, r);
  const DecodeOutcome o = filter_by_hashes(p, cands, b, 1, HashScope::MessageRows);
  CHECK(o.status == DecodeStatus::Decoded);
  CHECK(o.passing.size() == 3);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bspir/experiment.hpp"
#include "helpers.hpp"

using namespace bspir;
using testing::secret;
using testing::untouched;

TEST_CASE("passive trials always decode correctly") {
  for (const auto& cfg : {secret(3, 1, 1, 8, 2), secret(6, 2, 2, 4, 1, 3), untouched(4, 1, 1, 2, 8, 2),
                          untouched(5, 1, 1, 3, 5, 1, 3)}) {
    const SchemeParams p(cfg);
    const ListDecoder dec(p);
    for (std::uint64_t s = 0; s < 50; ++s) {
      const std::size_t k = 1 + s % p.K();
      const TrialTranscript t = run_trial(p, dec, k, Strategy::Passive, s);
      CHECK(t.classification == ErrorClass::None);
      CHECK(t.outcome.status == DecodeStatus::Decoded);
      REQUIRE(t.outcome.true_positive.has_value());
      CHECK(*t.outcome.true_positive);
      CHECK(t.true_x_listed);
      CHECK(t.received.answers == t.clean.answers);
      const auto row = t.dataset.messages.row(k - 1);
      CHECK(std::equal(t.outcome.message.begin(), t.outcome.message.end(), row.begin()));
    }
  }
}

TEST_CASE("replaying a seed reproduces the transcript") {
  for (Strategy s : {Strategy::RandomOverwrite, Strategy::HashGuess, Strategy::RootStuffing}) {
    for (const auto& cfg : {secret(3, 1, 1, 8, 2), untouched(4, 1, 1, 2, 8, 2)}) {
      const SchemeParams p(cfg);
      for (std::uint64_t seed : {1ull, 99ull, 123456789ull}) {
        const auto a = to_json(run_trial(p, 1, s, seed));
        const auto b = to_json(run_trial(p, 1, s, seed));
        CHECK(a == b);
        CHECK(a != to_json(run_trial(p, 1, s, seed + 1)));
      }
    }
  }
}

TEST_CASE("channel events reconcile with accounting") {
  {
    const SchemeParams p(secret(3, 1, 1, 8, 2));
    const TrialTranscript t = run_trial(p, 1, Strategy::RandomOverwrite, 5);
    const Accounting a = accounting(p);
    std::uint64_t secret_symbols = 0, answer_symbols = 0, query_symbols = 0;
    for (const auto& e : t.events) {
      if (e.kind == ChannelKind::SecretChannel) secret_symbols += e.symbols;
      if (e.kind == ChannelKind::Answer) answer_symbols += e.symbols;
      if (e.kind == ChannelKind::Query) query_symbols += e.symbols;
      if (e.kind == ChannelKind::SecretChannel) CHECK(e.secrecy == Secrecy::Secret);
      if (e.kind == ChannelKind::Answer) CHECK(e.secrecy == Secrecy::Observable);
    }
    CHECK(secret_symbols == a.secret_symbols);
    CHECK(answer_symbols == a.answer_symbols);
    CHECK(query_symbols == p.N() * p.query_length());
    CHECK(Rational(static_cast<std::int64_t>(a.desired_symbols), static_cast<std::int64_t>(answer_symbols)) == a.rate);
  }
  {
    const SchemeParams p(untouched(4, 1, 1, 2, 8, 2));
    const TrialTranscript t = run_trial(p, 2, Strategy::RandomOverwrite, 5);
    const Accounting a = accounting(p);
    std::uint64_t broadcast = 0, answer_symbols = 0, hidden_answers = 0;
    for (const auto& e : t.events) {
      if (e.kind == ChannelKind::SecureBroadcast) broadcast += e.symbols;
      if (e.kind == ChannelKind::Answer) {
        answer_symbols += e.symbols;
        if (e.secrecy == Secrecy::Secret) ++hidden_answers;
      }
    }
    CHECK(broadcast == a.phase1_symbols);
    CHECK(answer_symbols == a.answer_symbols);
    CHECK(hidden_answers == p.N() - p.E());
    CHECK(Rational(static_cast<std::int64_t>(a.desired_symbols),
                   static_cast<std::int64_t>(broadcast + answer_symbols)) == a.rate);
  }
}

TEST_CASE("true X is always among the candidates") {
  for (Strategy s : {Strategy::RandomOverwrite, Strategy::AdditiveNoise, Strategy::HashGuess, Strategy::RootStuffing,
                     Strategy::KnownPForgery}) {
    const SchemeParams p(secret(5, 1, 2, 8, 2));
    const ListDecoder dec(p);
    for (std::uint64_t seed = 0; seed < 100; ++seed) CHECK(run_trial(p, dec, 1, s, seed).true_x_listed);
  }
}

TEST_CASE("zero trials leave the error rate undefined") {
  ExperimentConfig c;
  c.scheme = secret(3, 1, 1, 8, 2);
  c.trials = 0;
  const ExperimentReport r = run_experiment(c);
  CHECK(r.trials == 0);
  CHECK_FALSE(r.err_rate.has_value());
  CHECK(r.errors == 0);
  CHECK(r.accounting.rate == Rational(1, 3));
}

TEST_CASE("counts sum to the trial count and do not depend on threading") {
  ExperimentConfig c;
  c.scheme = secret(3, 1, 1, 8, 2);
  c.strategy = Strategy::RootStuffing;
  c.trials = 3000;
  c.seed = 17;
  c.threads = 1;
  const ExperimentReport one = run_experiment(c);
  c.threads = 4;
  const ExperimentReport four = run_experiment(c);
  std::uint64_t sum = 0;
  for (const auto& [cls, n] : one.counts) sum += n;
  CHECK(sum == c.trials);
  CHECK(one.counts == four.counts);
  CHECK(one.errors == one.trials - one.counts.at(ErrorClass::None));
  CHECK(one.errors > 0);  // root stuffing at l = 8 does land
  CHECK(one.true_x_listed == c.trials);
  REQUIRE(one.err_rate.has_value());
  CHECK(*one.err_rate <= one.analytic_bound.actual_q);
}

TEST_CASE("rate is constant 1/3 across an l sweep") {
  for (std::size_t l : {8u, 16u, 32u, 64u}) {
    ExperimentConfig c;
    c.scheme = secret(3, 1, 1, l, 2);
    c.trials = 10;
    const ExperimentReport r = run_experiment(c);
    CHECK(r.accounting.rate == Rational(1, 3));
    CHECK(r.capacity == Rational(1, 3));
    CHECK(r.omniscient_capacity == Rational(0));
  }
}

TEST_CASE("untouched report carries the phase-1 cost and the combined bound") {
  ExperimentConfig c;
  c.scheme = untouched(4, 1, 1, 2, 16, 2);
  c.trials = 50;
  const ExperimentReport r = run_experiment(c);
  const double q = static_cast<double>(r.resolved.q);
  CHECK(r.accounting.phase1_symbols > 0);
  CHECK(r.analytic_bound.phase1_term == doctest::Approx(4.0 / std::pow(q, 4)));
  CHECK(r.analytic_bound.actual_q ==
        doctest::Approx(4.0 * std::pow(2.0 * 18.0 / q, 4) + 4.0 / std::pow(q, 4)).epsilon(1e-12));
  CHECK(r.errors == 0);
}

TEST_CASE("Wilson bound closed forms") {
  // No errors: upper = z^2 / (n + z^2).
  const double z = 2.5758293035489004;
  for (std::uint64_t n : {1ull, 10ull, 100ull, 100000ull}) {
    const WilsonBound w = wilson_upper_99(0, n);
    CHECK(w.upper == doctest::Approx(z * z / (n + z * z)).epsilon(1e-12));
    REQUIRE(w.rule_of_three.has_value());
    CHECK(*w.rule_of_three == doctest::Approx(4.6 / n));
  }
  CHECK(wilson_upper_99(10, 10).upper == doctest::Approx(1.0));
  CHECK_FALSE(wilson_upper_99(1, 10).rule_of_three.has_value());
  CHECK_THROWS(wilson_upper_99(0, 0));
  CHECK_THROWS(wilson_upper_99(3, 2));
}

TEST_CASE("Wilson bound covers the true probability") {
  // Exact coverage under the binomial law; the one-sided nominal level of the
  // upper end of a two-sided 99% interval is 99.5%.
  for (std::uint64_t n : {50ull, 200ull, 1000ull}) {
    for (double p : {0.001, 0.01, 0.05, 0.2, 0.5}) {
      double coverage = 0;
      for (std::uint64_t e = 0; e <= n; ++e)
        if (wilson_upper_99(e, n).upper >= p) coverage += oracle::binom_pmf(n, e, p);
      CHECK_MESSAGE(coverage >= 0.985, "n=" << n << " p=" << p << " coverage=" << coverage);
    }
  }
}

TEST_CASE("experiment rejects a bad message index") {
  ExperimentConfig c;
  c.scheme = secret(3, 1, 1, 8, 2);
  c.k = 3;
  CHECK_THROWS_AS(run_experiment(c), ConfigError);
}

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bspir/adversary.hpp"
#include "bspir/channels.hpp"
#include "bspir/decoder.hpp"
#include "bspir/hashing.hpp"
#include "bspir/scheme.hpp"

namespace bspir {

enum class ErrorClass { None, WrongMessage, Ambiguous, NoCandidate, Phase1Failure };

std::string to_string(ErrorClass c);
ErrorClass parse_error_class(const std::string& s);
inline constexpr ErrorClass kAllErrorClasses[] = {ErrorClass::None, ErrorClass::WrongMessage, ErrorClass::Ambiguous,
                                                  ErrorClass::NoCandidate, ErrorClass::Phase1Failure};

/// Everything one run of the protocol produced. Replaying the seed reproduces it.
struct TrialTranscript {
  std::uint64_t seed = 0;
  std::size_t k = 1;
  Strategy strategy = Strategy::Passive;
  Dataset dataset;
  Matrix common_s;
  QueryArtifacts queries;
  Matrix x;
  AnswerSet clean;
  TargetChoice choice;
  Corruption corruption;
  AnswerSet received;
  HashBundle hashes;
  std::vector<ChannelEvent> events;
  DecodeOutcome outcome;
  bool true_x_listed = false;
  ErrorClass classification = ErrorClass::None;
};

/// The full pipeline for one seed. `decoder` must be built from `params`.
TrialTranscript run_trial(const SchemeParams& params, const ListDecoder& decoder, std::size_t k, Strategy strategy,
                          std::uint64_t seed, HashScope scope = HashScope::AllRows);
TrialTranscript run_trial(const SchemeParams& params, std::size_t k, Strategy strategy, std::uint64_t seed,
                          HashScope scope = HashScope::AllRows);

nlohmann::json to_json(const TrialTranscript& t);

struct ExperimentConfig {
  SchemeConfig scheme;
  Strategy strategy = Strategy::RandomOverwrite;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::size_t k = 1;
  HashScope scope = HashScope::AllRows;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct WilsonBound {
  double upper = 0.0;
  std::optional<double> rule_of_three;  // 4.6 / n, reported when no errors were seen
};

/// Upper end of the two-sided 99% Wilson score interval.
WilsonBound wilson_upper_99(std::uint64_t errors, std::uint64_t trials);

struct ExperimentReport {
  ExperimentConfig config;
  SchemeConfig resolved;                     // q and lambdas filled in
  std::uint64_t trials = 0;
  std::map<ErrorClass, std::uint64_t> counts;
  std::uint64_t errors = 0;
  std::uint64_t true_x_listed = 0;
  std::optional<double> err_rate;            // undefined with zero trials
  WilsonBound err_ucb99;
  ErrorBound analytic_bound;
  Accounting accounting;
  Rational capacity;
  Rational omniscient_capacity;
  double seconds = 0.0;
};

/// Deterministic given config (apart from `seconds`). Trial t uses
/// trial_seed(config.seed, t).
ExperimentReport run_experiment(const ExperimentConfig& config);

}  // namespace bspir

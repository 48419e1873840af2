#include "bspir/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace bspir {

std::string to_string(ErrorClass c) {
  switch (c) {
    case ErrorClass::None: return "none";
    case ErrorClass::WrongMessage: return "wrong_message";
    case ErrorClass::Ambiguous: return "ambiguous";
    case ErrorClass::NoCandidate: return "no_candidate";
    case ErrorClass::Phase1Failure: return "phase1_failure";
  }
  return "unknown";
}

ErrorClass parse_error_class(const std::string& s) {
  for (ErrorClass c : kAllErrorClasses)
    if (to_string(c) == s) return c;
  throw std::invalid_argument("unknown error class '" + s + "'");
}

namespace {

std::vector<Elem> desired_payload(const SchemeParams& p, const Dataset& d, std::size_t k) {
  const auto row = d.messages.row(k - 1);
  return {row.begin(), row.begin() + static_cast<std::ptrdiff_t>(p.payload_length())};
}

void record_traffic(const SchemeParams& p, const TargetChoice& choice, std::vector<ChannelEvent>& events) {
  for (std::size_t n = 0; n < p.N(); ++n) {
    const bool seen = std::binary_search(choice.observed.begin(), choice.observed.end(), n);
    const Secrecy s = seen ? Secrecy::Observable : Secrecy::Secret;
    events.push_back({ChannelKind::Query, "user -> server " + std::to_string(n + 1), p.query_length(), s});
    events.push_back({ChannelKind::Answer, "server " + std::to_string(n + 1) + " -> user", p.instances(), s});
  }
}

}  // namespace

TrialTranscript run_trial(const SchemeParams& params, const ListDecoder& decoder, std::size_t k, Strategy strategy,
                          std::uint64_t seed, HashScope scope) {
  if (k < 1 || k > params.K()) throw ConfigError("k", "message index must be in [1, K]");
  TrialTranscript t;
  t.seed = seed;
  t.k = k;
  t.strategy = strategy;

  Rng data(seed, Stream::Data), user(seed, Stream::User), server(seed, Stream::Server), hash(seed, Stream::Hash),
      adversary(seed, Stream::Adversary), channel(seed, Stream::Channel);
  const Gamma gamma{adversary.next()};

  t.dataset = generate_dataset(params, data, server);
  t.common_s = generate_common_randomness(params, server);
  const std::vector<Elem> points = sample_hash_points(params, hash);
  t.choice = choose_targets(params, gamma);

  t.queries = generate_queries(params, k, user);
  t.x = build_x_matrix(params, t.dataset, k, t.queries.user_secret, t.common_s);
  t.clean = generate_answers(params, t.x);
  record_traffic(params, t.choice, t.events);

  bool phase1_ok = true;
  if (params.model() == Model::SecretChannel) {
    const HashBundle sent = answer_hashes_from_answers(params, t.clean.answers, points, default_hash_senders(params));
    SecretDelivery delivery = secret_send(params, SecretPayload::from_bundle(sent));
    t.events.insert(t.events.end(), delivery.events.begin(), delivery.events.end());
    t.hashes = delivery.payload.to_bundle();
  } else {
    const HashBundle sent = message_hashes(params, t.dataset, points);
    BroadcastResult br = broadcast_send(sent, params, channel);
    t.events.push_back(br.event);
    phase1_ok = br.delivered;
    t.hashes = br.delivered ? *br.payload : sent;
  }

  const AdversaryView view = observe(t.choice, t.queries.queries, t.clean.answers);
  t.corruption = strategy == Strategy::KnownPForgery
                     ? plan_known_p_forgery(params, gamma, view, t.choice.targets, LeakedSecrets{points})
                     : plan_corruption(params, strategy, gamma, view, t.choice.targets);
  t.received = apply_corruption(params, t.clean, t.corruption);

  const auto candidates = decoder.enumerate(t.received.answers);
  t.true_x_listed = std::any_of(candidates.begin(), candidates.end(), [&](const auto& c) { return c.x_hat == t.x; });

  if (!phase1_ok) {
    // Without the hashes the user has nothing to select with.
    t.outcome.status = DecodeStatus::NoCandidate;
    t.outcome.true_positive = false;
    t.classification = ErrorClass::Phase1Failure;
    return t;
  }

  t.outcome = filter_by_hashes(params, candidates, t.hashes, k, scope);
  switch (t.outcome.status) {
    case DecodeStatus::Decoded: {
      const bool right = t.outcome.message == desired_payload(params, t.dataset, k);
      t.outcome.true_positive = right;
      t.classification = right ? ErrorClass::None : ErrorClass::WrongMessage;
      break;
    }
    case DecodeStatus::Ambiguous:
      t.outcome.true_positive = false;
      t.classification = ErrorClass::Ambiguous;
      break;
    case DecodeStatus::NoCandidate:
      t.outcome.true_positive = false;
      t.classification = ErrorClass::NoCandidate;
      break;
  }
  return t;
}

TrialTranscript run_trial(const SchemeParams& params, std::size_t k, Strategy strategy, std::uint64_t seed,
                          HashScope scope) {
  return run_trial(params, ListDecoder(params), k, strategy, seed, scope);
}

namespace {

nlohmann::json matrix_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    rows.push_back(std::vector<Elem>(row.begin(), row.end()));
  }
  return rows;
}

}  // namespace

nlohmann::json to_json(const TrialTranscript& t) {
  nlohmann::json j;
  j["seed"] = t.seed;
  j["k"] = t.k;
  j["strategy"] = to_string(t.strategy);
  j["messages"] = matrix_json(t.dataset.messages);
  j["common_randomness"] = matrix_json(t.common_s);
  j["user_secret"] = matrix_json(t.queries.user_secret);
  j["queries"] = matrix_json(t.queries.queries);
  j["x"] = matrix_json(t.x);
  j["clean_answers"] = matrix_json(t.clean.answers);
  j["received_answers"] = matrix_json(t.received.answers);
  j["observed"] = t.choice.observed;
  j["targets"] = t.choice.targets;
  j["corruption"] = {{"mode", t.corruption.mode == CorruptionMode::Add ? "add" : "overwrite"},
                     {"values", matrix_json(t.corruption.values)}};
  j["hashes"] = {{"flavor", t.hashes.flavor == HashFlavor::AnswerHash ? "answer" : "message"},
                 {"points", t.hashes.points},
                 {"values", matrix_json(t.hashes.values)},
                 {"senders", t.hashes.senders},
                 {"point_sender", t.hashes.point_sender}};
  nlohmann::json events = nlohmann::json::array();
  for (const auto& e : t.events)
    events.push_back({{"kind", to_string(e.kind)},
                      {"direction", e.direction},
                      {"symbols", e.symbols},
                      {"secrecy", to_string(e.secrecy)}});
  j["events"] = events;
  j["outcome"] = {{"status", to_string(t.outcome.status)},
                  {"message", t.outcome.message},
                  {"instances_used", t.outcome.instances_used},
                  {"passing", t.outcome.passing}};
  if (t.outcome.true_positive) j["outcome"]["true_positive"] = *t.outcome.true_positive;
  j["true_x_listed"] = t.true_x_listed;
  j["classification"] = to_string(t.classification);
  return j;
}

WilsonBound wilson_upper_99(std::uint64_t errors, std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("Wilson bound needs at least one trial");
  if (errors > trials) throw std::invalid_argument("more errors than trials");
  constexpr double z = 2.5758293035489004;  // 99.5% normal quantile
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(errors) / n;
  const double z2 = z * z;
  const double centre = phat + z2 / (2 * n);
  const double spread = z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n));
  WilsonBound w;
  w.upper = std::min(1.0, (centre + spread) / (1 + z2 / n));
  if (errors == 0) w.rule_of_three = 4.6 / n;
  return w;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const SchemeParams params(config.scheme);
  if (config.k < 1 || config.k > params.K()) throw ConfigError("k", "message index must be in [1, K]");

  ExperimentReport report;
  report.config = config;
  report.resolved = params.config();
  report.trials = config.trials;
  for (ErrorClass c : kAllErrorClasses) report.counts[c] = 0;
  report.analytic_bound = scheme_error_bound(params);
  report.accounting = accounting(params);
  const auto N = static_cast<std::int64_t>(params.N());
  const auto T = static_cast<std::int64_t>(params.T());
  const auto B = static_cast<std::int64_t>(params.B());
  report.capacity = capacity(N, T, B, report.accounting.rho);
  report.omniscient_capacity = capacity_omniscient_zero_error(N, T, B);

  if (config.trials > 0) {
    const ListDecoder decoder(params);
    unsigned workers = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, config.trials));

    struct Partial {
      std::map<ErrorClass, std::uint64_t> counts;
      std::uint64_t listed = 0;
      std::exception_ptr error;
    };
    std::vector<Partial> partials(workers);
    auto work = [&](unsigned w) {
      try {
        for (std::size_t t = w; t < config.trials; t += workers) {
          const TrialTranscript tr =
              run_trial(params, decoder, config.k, config.strategy, trial_seed(config.seed, t), config.scope);
          ++partials[w].counts[tr.classification];
          if (tr.true_x_listed) ++partials[w].listed;
        }
      } catch (...) {
        partials[w].error = std::current_exception();
      }
    };
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work, w);
      work(0);
    }
    for (const auto& part : partials) {
      if (part.error) std::rethrow_exception(part.error);
      for (const auto& [c, n] : part.counts) report.counts[c] += n;
      report.true_x_listed += part.listed;
    }
    report.errors = config.trials - report.counts[ErrorClass::None];
    report.err_rate = static_cast<double>(report.errors) / static_cast<double>(config.trials);
    report.err_ucb99 = wilson_upper_99(report.errors, config.trials);
  }

  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace bspir

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "bspir/field.hpp"
#include "bspir/rng.hpp"

namespace bspir {

using Rational = boost::rational<std::int64_t>;

/// How the adversary's knowledge is limited.
enum class Model {
  SecretChannel,    // per-server channels to the user that the adversary cannot see
  UntouchedServer,  // adversary observes E servers, jams B, with E + B < N
};

std::string to_string(Model m);
Model parse_model(const std::string& s);

/// Invalid protocol parameters. Carries the offending field name.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Raw user-facing parameters; zero q and empty lambdas mean "pick the default".
struct SchemeConfig {
  Model model = Model::SecretChannel;
  std::size_t K = 2;
  std::size_t N = 3;
  std::size_t T = 1;
  std::size_t B = 1;
  std::size_t E = 0;
  std::size_t l = 2;
  std::size_t alpha = 1;
  std::size_t beta = 0;
  std::uint64_t q = 0;
  std::vector<Elem> lambdas;
  // The worked three-server example evaluates at 0; everywhere else the
  // evaluation points must be nonzero.
  bool allow_zero_lambda = false;
};

/// Smallest admissible prime for a batch size l and server count N.
std::uint64_t default_modulus(std::size_t l, std::size_t N);

/// Validated protocol parameters. Immutable once built.
class SchemeParams {
 public:
  /// Throws ConfigError when any protocol invariant fails.
  explicit SchemeParams(const SchemeConfig& config);

  Model model() const { return model_; }
  std::size_t K() const { return K_; }
  std::size_t N() const { return N_; }
  std::size_t T() const { return T_; }
  std::size_t B() const { return B_; }
  std::size_t E() const { return E_; }
  std::size_t l() const { return l_; }
  std::size_t alpha() const { return alpha_; }
  std::size_t beta() const { return beta_; }
  const Field& field() const { return field_; }
  const std::vector<Elem>& lambdas() const { return lambdas_; }
  bool zero_lambda_allowed() const { return allow_zero_lambda_; }

  /// N - T - B: message symbols carried per instance.
  std::size_t blocks() const { return N_ - T_ - B_; }
  /// l + beta: instances actually downloaded.
  std::size_t instances() const { return l_ + beta_; }
  /// Rows of the payload matrix X.
  std::size_t x_rows() const { return N_ - B_; }
  /// Symbols per stored message, padding included.
  std::size_t message_length() const { return blocks() * instances(); }
  /// Desired symbols per message (padding excluded).
  std::size_t payload_length() const { return blocks() * l_; }
  /// Length of every query vector.
  std::size_t query_length() const { return K_ * blocks(); }

  SchemeConfig config() const;

 private:
  Model model_;
  std::size_t K_, N_, T_, B_, E_, l_, alpha_, beta_;
  Field field_;
  std::vector<Elem> lambdas_;
  bool allow_zero_lambda_;
};

/// The K stored messages. Row k-1 is message k; symbol (instance i, block j)
/// sits at column i * blocks + j. The last blocks * beta columns are the
/// appended padding S_W.
struct Dataset {
  Matrix messages;
};

Dataset generate_dataset(const SchemeParams& params, Rng& data, Rng& server);

struct Generators {
  Matrix user;     // N x T, columns 0..T-1 of the Vandermonde matrix
  Matrix unit;     // N x (N-T-B), diag(lambda^T) times Vandermonde
  Matrix combined; // N x (N-B) = [user unit]
};

Generators build_generators(const SchemeParams& params);

struct QueryArtifacts {
  std::size_t k = 1;  // 1-indexed desired message
  Matrix user_secret; // T x K(N-T-B)
  Matrix queries;     // N x K(N-T-B), row n goes to server n+1
};

/// The (N-T-B) x K(N-T-B) stack of unit rows selecting message k.
Matrix selection_matrix(const SchemeParams& params, std::size_t k);

/// Queries for an explicit user secret.
QueryArtifacts make_queries(const SchemeParams& params, std::size_t k, Matrix user_secret);
QueryArtifacts generate_queries(const SchemeParams& params, std::size_t k, Rng& user);

/// T x (l + beta) common randomness shared by the servers.
Matrix generate_common_randomness(const SchemeParams& params, Rng& server);

/// The (N-B) x (l+beta) payload: T masked rows U_j W^(i) + S_j^(i) over the
/// desired message's blocks.
Matrix build_x_matrix(const SchemeParams& params, const Dataset& dataset, std::size_t k, const Matrix& user_secret,
                      const Matrix& common_s);

struct AnswerSet {
  Matrix answers;                   // N x (l+beta)
  std::vector<bool> corrupted;      // ground truth, never read by the decoder
};

AnswerSet generate_answers(const SchemeParams& params, const Matrix& x);

/// What server `server` (0-based) computes from its own query alone:
/// Q_n W^(i) + sum_j lambda_n^j S_j^(i) for every instance i.
std::vector<Elem> server_answer(const SchemeParams& params, std::size_t server, std::span<const Elem> query,
                                const Dataset& dataset, const Matrix& common_s);

/// Capacity with limited-knowledge adversaries and vanishing error.
Rational capacity(std::int64_t N, std::int64_t T, std::int64_t B, Rational rho);
/// The minimum randomness ratio T / (N - T - B) for positive capacity.
Rational rho_threshold(std::int64_t N, std::int64_t T, std::int64_t B);
/// Zero-error capacity against an omniscient adversary; comparator only.
Rational capacity_omniscient_zero_error(std::int64_t N, std::int64_t T, std::int64_t B);

struct Accounting {
  Rational rate;
  Rational rho;                            // second-phase (or whole-scheme) common randomness / L
  Rational rate_capacity;                  // 1 - (T+B)/N
  Rational rho_threshold;
  std::uint64_t desired_symbols = 0;       // (N-T-B) l
  std::uint64_t answer_symbols = 0;        // N (l + beta)
  std::uint64_t secret_symbols = 0;        // secret channel: alpha (N-B+1)
  std::uint64_t phase1_symbols = 0;        // untouched: N^2 (N-E) (K+1) alpha ceil(log2 q)
  double phase1_symbols_log_l = 0.0;       // same with log q read as 2 log2 l
  std::uint64_t phase1_randomness = 0;     // p points plus message padding, (K+1) alpha
  Rational phase1_rho;                     // phase1_randomness / L
};

Accounting accounting(const SchemeParams& params);

/// All size-k subsets of [0, n) in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k);

/// Phase-1 broadcast cost for explicit parameters.
std::uint64_t broadcast_cost(std::size_t N, std::size_t E, std::size_t K, std::size_t alpha, std::uint64_t q);

}  // namespace bspir

#include "bspir/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace bspir {

std::string to_string(Model m) { return m == Model::SecretChannel ? "secret" : "untouched"; }

Model parse_model(const std::string& s) {
  if (s == "secret" || s == "secret_channel" || s == "SecretChannel") return Model::SecretChannel;
  if (s == "untouched" || s == "untouched_server" || s == "UntouchedServer") return Model::UntouchedServer;
  throw ConfigError("model", "unknown model '" + s + "' (expected secret or untouched)");
}

std::uint64_t default_modulus(std::size_t l, std::size_t N) {
  if (l > (std::size_t{1} << 31)) throw ConfigError("l", "batch size too large for a 64-bit field");
  const std::uint64_t square = static_cast<std::uint64_t>(l) * l;
  return next_prime(std::max<std::uint64_t>(square, N + 1));
}

namespace {

std::uint64_t checked_modulus(const SchemeConfig& c) {
  if (c.l == 0) throw ConfigError("l", "need at least one instance");
  if (c.q == 0) return default_modulus(c.l, c.N);
  if (!is_prime(c.q)) throw ConfigError("q", std::to_string(c.q) + " is not prime");
  if (c.q < static_cast<std::uint64_t>(c.l) * c.l) throw ConfigError("q", "modulus must be at least l^2");
  // N distinct nonzero points need q > N; with zero admitted, q >= N is enough.
  if (c.allow_zero_lambda ? c.q < c.N : c.q <= c.N) throw ConfigError("q", "field too small for N distinct evaluation points");
  return c.q;
}

}  // namespace

SchemeParams::SchemeParams(const SchemeConfig& c)
    : model_(c.model),
      K_(c.K),
      N_(c.N),
      T_(c.T),
      B_(c.B),
      E_(c.E),
      l_(c.l),
      alpha_(c.alpha),
      beta_(c.beta),
      field_(checked_modulus(c)),
      allow_zero_lambda_(c.allow_zero_lambda) {
  if (K_ == 0) throw ConfigError("k_messages", "need at least one message");
  if (N_ <= T_ + B_) throw ConfigError("n", "N must exceed T + B (capacity is zero otherwise)");
  if (alpha_ == 0) throw ConfigError("alpha", "need at least one hash");
  if (alpha_ > field_.modulus() - 1) throw ConfigError("alpha", "more hash points than nonzero field elements");

  if (model_ == Model::SecretChannel) {
    if (beta_ != 0) throw ConfigError("beta", "padding instances are only used by the untouched-server model");
    if (E_ != 0) throw ConfigError("e", "observation bound only applies to the untouched-server model");
  } else {
    if (E_ + B_ >= N_) throw ConfigError("e", "untouched-server model requires E + B < N");
    if (beta_ == 0) throw ConfigError("beta", "untouched-server model needs padding instances (beta >= 1)");
    if (alpha_ != blocks() * beta_) throw ConfigError("alpha", "untouched-server model requires alpha = (N-T-B) * beta");
  }

  if (c.lambdas.empty()) {
    for (std::size_t n = 1; n <= N_; ++n) lambdas_.push_back(n);
  } else {
    if (c.lambdas.size() != N_) throw ConfigError("lambdas", "need exactly N evaluation points");
    std::set<Elem> seen;
    for (Elem v : c.lambdas) {
      if (v >= field_.modulus()) throw ConfigError("lambdas", "evaluation point outside the field");
      if (v == 0 && !allow_zero_lambda_) throw ConfigError("lambdas", "evaluation points must be nonzero");
      if (!seen.insert(v).second) throw ConfigError("lambdas", "evaluation points must be distinct");
    }
    lambdas_ = c.lambdas;
  }
}

SchemeConfig SchemeParams::config() const {
  SchemeConfig c;
  c.model = model_;
  c.K = K_;
  c.N = N_;
  c.T = T_;
  c.B = B_;
  c.E = E_;
  c.l = l_;
  c.alpha = alpha_;
  c.beta = beta_;
  c.q = field_.modulus();
  c.lambdas = lambdas_;
  c.allow_zero_lambda = allow_zero_lambda_;
  return c;
}

Dataset generate_dataset(const SchemeParams& params, Rng& data, Rng& server) {
  const Field& f = params.field();
  const std::size_t payload = params.payload_length();
  Matrix m(params.K(), params.message_length());
  for (std::size_t k = 0; k < params.K(); ++k)
    for (std::size_t s = 0; s < payload; ++s) m(k, s) = data.uniform(f);
  for (std::size_t k = 0; k < params.K(); ++k)
    for (std::size_t s = payload; s < params.message_length(); ++s) m(k, s) = server.uniform(f);
  return {std::move(m)};
}

Generators build_generators(const SchemeParams& params) {
  const Field& f = params.field();
  const auto& lambdas = params.lambdas();
  Generators g;
  g.combined = vandermonde(f, lambdas, params.x_rows());
  g.user = Matrix(params.N(), params.T());
  g.unit = Matrix(params.N(), params.blocks());
  for (std::size_t n = 0; n < params.N(); ++n) {
    for (std::size_t j = 0; j < params.T(); ++j) g.user(n, j) = g.combined(n, j);
    // diag(lambda^T) * V^(N-T-B) reproduces the trailing columns of V^(N-B).
    const Elem shift = f.pow(lambdas[n], params.T());
    Elem x = 1;
    for (std::size_t j = 0; j < params.blocks(); ++j) {
      g.unit(n, j) = f.mul(shift, x);
      x = f.mul(x, lambdas[n]);
    }
  }
  return g;
}

Matrix selection_matrix(const SchemeParams& params, std::size_t k) {
  if (k < 1 || k > params.K()) throw std::out_of_range("message index must be in [1, K]");
  Matrix e(params.blocks(), params.query_length());
  for (std::size_t j = 0; j < params.blocks(); ++j) e(j, (k - 1) * params.blocks() + j) = 1;
  return e;
}

QueryArtifacts make_queries(const SchemeParams& params, std::size_t k, Matrix user_secret) {
  if (user_secret.rows() != params.T() || user_secret.cols() != params.query_length())
    throw ShapeMismatch("user secret must be T x K(N-T-B)");
  const Field& f = params.field();
  const Generators g = build_generators(params);
  Matrix queries = add(f, multiply(f, g.user, user_secret), multiply(f, g.unit, selection_matrix(params, k)));
  return {k, std::move(user_secret), std::move(queries)};
}

QueryArtifacts generate_queries(const SchemeParams& params, std::size_t k, Rng& user) {
  if (k < 1 || k > params.K()) throw std::out_of_range("message index must be in [1, K]");
  return make_queries(params, k, user.uniform_matrix(params.field(), params.T(), params.query_length()));
}

Matrix generate_common_randomness(const SchemeParams& params, Rng& server) {
  return server.uniform_matrix(params.field(), params.T(), params.instances());
}

namespace {

void check_dataset(const SchemeParams& params, const Dataset& dataset) {
  if (dataset.messages.rows() != params.K() || dataset.messages.cols() != params.message_length())
    throw ShapeMismatch("dataset must be K x (N-T-B)(l+beta)");
}

void check_common(const SchemeParams& params, const Matrix& common_s) {
  if (common_s.rows() != params.T() || common_s.cols() != params.instances())
    throw ShapeMismatch("common randomness must be T x (l+beta)");
}

}  // namespace

Matrix build_x_matrix(const SchemeParams& params, const Dataset& dataset, std::size_t k, const Matrix& user_secret,
                      const Matrix& common_s) {
  check_dataset(params, dataset);
  check_common(params, common_s);
  if (user_secret.rows() != params.T() || user_secret.cols() != params.query_length())
    throw ShapeMismatch("user secret must be T x K(N-T-B)");
  if (k < 1 || k > params.K()) throw std::out_of_range("message index must be in [1, K]");

  const Field& f = params.field();
  const std::size_t M = params.blocks();
  Matrix x(params.x_rows(), params.instances());
  for (std::size_t i = 0; i < params.instances(); ++i) {
    for (std::size_t t = 0; t < params.T(); ++t) {
      Elem acc = common_s(t, i);
      for (std::size_t msg = 0; msg < params.K(); ++msg)
        for (std::size_t j = 0; j < M; ++j)
          acc = f.add(acc, f.mul(user_secret(t, msg * M + j), dataset.messages(msg, i * M + j)));
      x(t, i) = acc;
    }
    for (std::size_t j = 0; j < M; ++j) x(params.T() + j, i) = dataset.messages(k - 1, i * M + j);
  }
  return x;
}

AnswerSet generate_answers(const SchemeParams& params, const Matrix& x) {
  if (x.rows() != params.x_rows() || x.cols() != params.instances()) throw ShapeMismatch("X must be (N-B) x (l+beta)");
  const Generators g = build_generators(params);
  return {multiply(params.field(), g.combined, x), std::vector<bool>(params.N(), false)};
}

std::vector<Elem> server_answer(const SchemeParams& params, std::size_t server, std::span<const Elem> query,
                                const Dataset& dataset, const Matrix& common_s) {
  check_dataset(params, dataset);
  check_common(params, common_s);
  if (query.size() != params.query_length()) throw ShapeMismatch("query length must be K(N-T-B)");
  const Field& f = params.field();
  const std::size_t M = params.blocks();
  const Elem lambda = params.lambdas().at(server);
  std::vector<Elem> out(params.instances());
  for (std::size_t i = 0; i < params.instances(); ++i) {
    Elem acc = 0;
    for (std::size_t msg = 0; msg < params.K(); ++msg)
      for (std::size_t j = 0; j < M; ++j) acc = f.add(acc, f.mul(query[msg * M + j], dataset.messages(msg, i * M + j)));
    Elem power = 1;
    for (std::size_t t = 0; t < params.T(); ++t) {
      acc = f.add(acc, f.mul(power, common_s(t, i)));
      power = f.mul(power, lambda);
    }
    out[i] = acc;
  }
  return out;
}

Rational capacity(std::int64_t N, std::int64_t T, std::int64_t B, Rational rho) {
  if (N <= T + B) return Rational(0);
  if (rho < rho_threshold(N, T, B)) return Rational(0);
  return Rational(N - T - B, N);
}

Rational rho_threshold(std::int64_t N, std::int64_t T, std::int64_t B) {
  if (N <= T + B) throw std::domain_error("rho threshold undefined when N <= T + B");
  return Rational(T, N - T - B);
}

Rational capacity_omniscient_zero_error(std::int64_t N, std::int64_t T, std::int64_t B) {
  if (N <= T + 2 * B) return Rational(0);
  return Rational(N - T - 2 * B, N);
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return out;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
}

std::uint64_t broadcast_cost(std::size_t N, std::size_t E, std::size_t K, std::size_t alpha, std::uint64_t q) {
  return static_cast<std::uint64_t>(N) * N * (N - E) * (K + 1) * alpha * bits_per_symbol(q);
}

Accounting accounting(const SchemeParams& params) {
  const auto N = static_cast<std::int64_t>(params.N());
  const auto T = static_cast<std::int64_t>(params.T());
  const auto B = static_cast<std::int64_t>(params.B());
  const auto l = static_cast<std::int64_t>(params.l());
  const auto M = static_cast<std::int64_t>(params.blocks());
  const auto inst = static_cast<std::int64_t>(params.instances());

  Accounting a;
  a.rate_capacity = Rational(N - T - B, N);
  a.rho_threshold = rho_threshold(N, T, B);
  a.desired_symbols = static_cast<std::uint64_t>(M * l);
  a.answer_symbols = static_cast<std::uint64_t>(N * inst);

  if (params.model() == Model::SecretChannel) {
    a.rate = Rational(M * l, N * l);
    a.rho = Rational(T * l, M * l);
    a.secret_symbols = params.alpha() * (params.N() - params.B() + 1);
    return a;
  }

  a.phase1_symbols = broadcast_cost(params.N(), params.E(), params.K(), params.alpha(), params.field().modulus());
  a.phase1_symbols_log_l = static_cast<double>(N * N * static_cast<std::int64_t>(params.N() - params.E()) *
                                               static_cast<std::int64_t>(params.K() + 1) *
                                               static_cast<std::int64_t>(params.alpha())) *
                           2.0 * std::log2(static_cast<double>(l));
  a.rate = Rational(M * l, static_cast<std::int64_t>(a.phase1_symbols) + N * inst);
  a.rho = Rational(T * inst, M * l);
  a.phase1_randomness = (params.K() + 1) * params.alpha();
  a.phase1_rho = Rational(static_cast<std::int64_t>(a.phase1_randomness), M * l);
  return a;
}

}  // namespace bspir

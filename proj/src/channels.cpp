#include "bspir/channels.hpp"

#include <cmath>
#include <stdexcept>

namespace bspir {

std::string to_string(ChannelKind k) {
  switch (k) {
    case ChannelKind::Query: return "query";
    case ChannelKind::Answer: return "answer";
    case ChannelKind::SecretChannel: return "secret_channel";
    case ChannelKind::SecureBroadcast: return "secure_broadcast";
  }
  return "unknown";
}

std::string to_string(Secrecy s) { return s == Secrecy::Secret ? "secret" : "observable"; }

SecretPayload SecretPayload::from_bundle(const HashBundle& b) {
  if (b.flavor != HashFlavor::AnswerHash) throw std::invalid_argument("secret channels carry answer hashes");
  return {b.points, b.values, b.senders, b.point_sender};
}

HashBundle SecretPayload::to_bundle() const {
  HashBundle b;
  b.flavor = HashFlavor::AnswerHash;
  b.points = points;
  b.values = hashes;
  b.senders = senders;
  b.point_sender = point_sender;
  return b;
}

SecretDelivery secret_send(const SchemeParams& params, SecretPayload payload) {
  if (params.model() != Model::SecretChannel) throw std::logic_error("secret channels exist only in the secret-channel model");
  if (payload.points.empty()) throw std::invalid_argument("secret payload needs at least one hash point");
  if (payload.hashes.rows() != payload.senders.size() || payload.hashes.cols() != payload.points.size())
    throw ShapeMismatch("secret payload hash matrix does not match senders x points");

  SecretDelivery d;
  d.events.push_back({ChannelKind::SecretChannel, "server " + std::to_string(payload.point_sender + 1) + " -> user",
                      payload.points.size(), Secrecy::Secret});
  for (std::size_t r = 0; r < payload.senders.size(); ++r)
    d.events.push_back({ChannelKind::SecretChannel, "server " + std::to_string(payload.senders[r] + 1) + " -> user",
                        payload.hashes.cols(), Secrecy::Secret});
  d.symbols = payload.symbol_count();
  d.normalized_rate = Rational(static_cast<std::int64_t>(d.symbols), static_cast<std::int64_t>(params.payload_length()));
  d.payload = std::move(payload);
  return d;
}

std::uint64_t broadcast_cost_per_bit(const SchemeParams& params) {
  return static_cast<std::uint64_t>(params.N()) * params.N() * (params.N() - params.E());
}

double broadcast_failure_probability(const SchemeParams& params) {
  return static_cast<double>(params.N()) / std::pow(static_cast<double>(params.field().modulus()), params.N());
}

bool broadcast_fails(const SchemeParams& params, Rng& channel) {
  // The event "first N-1 symbols are zero and the last is below N" has
  // probability exactly N / q^N. Every symbol is drawn so the stream position
  // does not depend on the outcome.
  const Field& f = params.field();
  bool leading_zero = true;
  for (std::size_t i = 0; i + 1 < params.N(); ++i) leading_zero = (channel.uniform(f) == 0) && leading_zero;
  const Elem last = channel.uniform(f);
  return leading_zero && last < params.N();
}

BroadcastResult broadcast_send(const HashBundle& payload, const SchemeParams& params, Rng& channel) {
  if (params.model() != Model::UntouchedServer) throw std::logic_error("secure broadcast is used only in the untouched-server model");
  if (payload.flavor != HashFlavor::MessageHash) throw std::invalid_argument("secure broadcast carries message hashes");
  if (payload.values.rows() != params.K() || payload.points.size() != params.alpha())
    throw ShapeMismatch("broadcast payload must hold alpha points and K x alpha hashes");

  BroadcastResult r;
  r.cost = broadcast_cost(params.N(), params.E(), params.K(), params.alpha(), params.field().modulus());
  r.event = {ChannelKind::SecureBroadcast, "servers -> user", r.cost, Secrecy::Secret};
  r.delivered = !broadcast_fails(params, channel);
  if (r.delivered) r.payload = payload;
  return r;
}

}  // namespace bspir

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bspir/hashing.hpp"
#include "bspir/rng.hpp"
#include "bspir/scheme.hpp"

namespace bspir {

enum class ChannelKind { Query, Answer, SecretChannel, SecureBroadcast };

/// Secret: never part of any adversary view.
enum class Secrecy { Observable, Secret };

std::string to_string(ChannelKind k);
std::string to_string(Secrecy s);

/// One transmission, as recorded in a trial transcript.
struct ChannelEvent {
  ChannelKind kind = ChannelKind::Answer;
  std::string direction;
  std::uint64_t symbols = 0;
  Secrecy secrecy = Secrecy::Observable;
};

/// Hash points and answer hashes carried over the per-server secret channels.
struct SecretPayload {
  std::vector<Elem> points;
  Matrix hashes;
  std::vector<std::size_t> senders;
  std::size_t point_sender = 0;

  static SecretPayload from_bundle(const HashBundle& b);
  HashBundle to_bundle() const;
  /// alpha points plus alpha hashes from each of the N-B senders.
  std::uint64_t symbol_count() const { return points.size() + hashes.rows() * hashes.cols(); }
};

struct SecretDelivery {
  SecretPayload payload;
  std::vector<ChannelEvent> events;
  std::uint64_t symbols = 0;
  Rational normalized_rate;  // symbols / desired message length
};

/// Error-free and invisible to the adversary by model.
SecretDelivery secret_send(const SchemeParams& params, SecretPayload payload);

/// Idealized stand-in for the secure network-coded transmission of common
/// information: reproduces its cost and failure probability only.
struct BroadcastResult {
  bool delivered = false;
  std::optional<HashBundle> payload;
  std::uint64_t cost = 0;
  ChannelEvent event;
};

/// Symbols per transmitted bit, N^2 (N - E).
std::uint64_t broadcast_cost_per_bit(const SchemeParams& params);
/// Failure probability N / q^N.
double broadcast_failure_probability(const SchemeParams& params);
/// Exact Bernoulli(N / q^N) from N uniform symbols.
bool broadcast_fails(const SchemeParams& params, Rng& channel);

BroadcastResult broadcast_send(const HashBundle& payload, const SchemeParams& params, Rng& channel);

}  // namespace bspir

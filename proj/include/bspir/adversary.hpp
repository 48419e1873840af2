#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bspir/field.hpp"
#include "bspir/rng.hpp"
#include "bspir/scheme.hpp"

namespace bspir {

enum class Strategy {
  Passive,          // no corruption
  RandomOverwrite,  // replace target answers with uniform symbols
  AdditiveNoise,    // add uniform nonzero symbols to target answers
  HashGuess,        // guess alpha hash points and cancel the hash difference at them
  RootStuffing,     // make the hash difference vanish at as many points as its degree allows
  KnownPForgery,    // ablation: uses the leaked hash points, which no model permits
};

std::string to_string(Strategy s);
Strategy parse_strategy(const std::string& s);

/// The adversary's private randomness gamma. Every adversarial decision is a
/// deterministic function of this seed and the permitted view.
struct Gamma {
  std::uint64_t seed = 0;
};

struct TargetChoice {
  std::vector<std::size_t> observed;  // 0-based; all servers in the secret-channel model
  std::vector<std::size_t> targets;   // the B jammed servers
};

/// Picks observed and jammed servers before the protocol runs.
TargetChoice choose_targets(const SchemeParams& params, Gamma gamma);

/// Queries and answers of the observed servers. Nothing else (in particular no
/// hash point, hash value, broadcast payload or common randomness) can be
/// expressed in this type.
struct AdversaryView {
  std::vector<std::size_t> observed;
  Matrix queries;  // one row per observed server
  Matrix answers;  // one row per observed server
};

AdversaryView observe(const TargetChoice& choice, const Matrix& queries, const Matrix& answers);

/// Hidden protocol secrets, handed over only for the KnownPForgery ablation.
struct LeakedSecrets {
  std::vector<Elem> points;
};

enum class CorruptionMode { Overwrite, Add };

/// What the adversary puts on the jammed links: either replacement rows or
/// an additive jamming signal Z (received = clean + Z on the targets).
struct Corruption {
  std::vector<std::size_t> targets;
  CorruptionMode mode = CorruptionMode::Add;
  Matrix values;  // |targets| x (l+beta)

  bool operator==(const Corruption&) const = default;
};

/// Model-conformant planning: sees only gamma and the view.
Corruption plan_corruption(const SchemeParams& params, Strategy strategy, Gamma gamma, const AdversaryView& view,
                           std::span<const std::size_t> targets);

/// Ablation planning with leaked hash points.
Corruption plan_known_p_forgery(const SchemeParams& params, Gamma gamma, const AdversaryView& view,
                                std::span<const std::size_t> targets, const LeakedSecrets& leak);

/// Received answers; rows outside the targets are untouched.
AnswerSet apply_corruption(const SchemeParams& params, const AnswerSet& clean, const Corruption& c);

/// Row-level forgery: returns r != row with r * P(points) == target_hash.
/// Needs row.size() > points.size().
std::vector<Elem> forge_row(const Field& f, std::span<const Elem> row, std::span<const Elem> points,
                            std::span<const Elem> target_hash, Rng& rng);

/// Coefficients (lowest degree first) of prod (y - r) over `roots`.
std::vector<Elem> poly_from_roots(const Field& f, std::span<const Elem> roots);

}  // namespace bspir

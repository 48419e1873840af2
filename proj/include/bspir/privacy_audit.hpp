#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "bspir/field.hpp"
#include "bspir/scheme.hpp"

namespace bspir {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Which scheme the audit enumerates. The last two are negative controls.
enum class AuditVariant {
  Faithful,
  LeakyQueries,  // U forced to zero, so Q = G_e e exposes k
  UnmaskedS,     // common randomness and message padding forced to zero
};

std::string to_string(AuditVariant v);

struct AuditInstance {
  SchemeParams params;
  std::uint64_t budget = 100'000'000;  // maximum enumerated states
  AuditVariant variant = AuditVariant::Faithful;
};

struct UserPrivacyCertificate {
  bool ok = true;
  std::vector<std::size_t> witness;  // first T-subset whose G_U minor is singular
};

/// Every T x T row-minor of the N x T Vandermonde matrix on `lambdas` is invertible.
UserPrivacyCertificate certify_user_privacy_algebraic(const Field& f, std::span<const Elem> lambdas, std::size_t T);
UserPrivacyCertificate certify_user_privacy_algebraic(const SchemeParams& params);

struct UserPrivacyAudit {
  Rational max_distance;             // exact total-variation distance
  std::vector<std::size_t> worst_subset;
  std::uint64_t states = 0;          // enumerated (U, W, S) per index
};

/// Exact distribution of (Q_T, A_T, W, S) under k1 and k2 for every colluding
/// set of size T; returns the largest total-variation distance.
/// `include_answers = false` drops A_T from the observation, which must not
/// change the result since A_T is a function of (Q_T, W, S).
UserPrivacyAudit audit_user_privacy_exhaustive(const AuditInstance& instance, std::size_t k1, std::size_t k2,
                                               bool include_answers = true);

struct DatabasePrivacyAudit {
  bool independent = true;           // exact: joint == product of marginals
  double mutual_information = 0.0;   // in base-q units
  std::uint64_t states = 0;
};

/// I(other messages ; U, answers, hash points, hash values) by full enumeration
/// of (W, S, U, p) when the user retrieves message k.
DatabasePrivacyAudit audit_database_privacy_exhaustive(const AuditInstance& instance, std::size_t k);

}  // namespace bspir

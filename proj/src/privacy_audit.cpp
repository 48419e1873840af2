#include "bspir/privacy_audit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "bspir/hashing.hpp"

namespace bspir {

std::string to_string(AuditVariant v) {
  switch (v) {
    case AuditVariant::Faithful: return "faithful";
    case AuditVariant::LeakyQueries: return "leaky_queries";
    case AuditVariant::UnmaskedS: return "unmasked_s";
  }
  return "unknown";
}

namespace {

using Key = std::vector<Elem>;

// Mixed-radix counter over a flat list of digits.
class Odometer {
 public:
  explicit Odometer(std::vector<std::uint64_t> radices) : radices_(std::move(radices)), digits_(radices_.size(), 0) {}

  const std::vector<Elem>& digits() const { return digits_; }

  bool advance() {
    for (std::size_t i = 0; i < digits_.size(); ++i) {
      if (++digits_[i] < radices_[i]) return true;
      digits_[i] = 0;
    }
    return false;
  }

 private:
  std::vector<std::uint64_t> radices_;
  std::vector<Elem> digits_;
};

std::uint64_t checked_product(const std::vector<std::uint64_t>& radices, std::uint64_t budget) {
  unsigned __int128 total = 1;
  for (std::uint64_t r : radices) {
    total *= r;
    if (total > budget) throw BudgetExceeded("audit enumeration exceeds the state budget");
  }
  return static_cast<std::uint64_t>(total);
}

// Digit-vector slices into the scheme's random variables.
struct Layout {
  std::size_t user_begin, user_len;
  std::size_t payload_begin, payload_len;
  std::size_t padding_begin, padding_len;
  std::size_t common_begin, common_len;
  std::size_t total;
};

Layout make_layout(const SchemeParams& p) {
  Layout l{};
  l.user_begin = 0;
  l.user_len = p.T() * p.query_length();
  l.payload_begin = l.user_begin + l.user_len;
  l.payload_len = p.K() * p.payload_length();
  l.padding_begin = l.payload_begin + l.payload_len;
  l.padding_len = p.K() * (p.message_length() - p.payload_length());
  l.common_begin = l.padding_begin + l.padding_len;
  l.common_len = p.T() * p.instances();
  l.total = l.common_begin + l.common_len;
  return l;
}

std::vector<std::uint64_t> radices_for(const SchemeParams& p, const Layout& l, AuditVariant v) {
  const std::uint64_t q = p.field().modulus();
  std::vector<std::uint64_t> r(l.total, q);
  if (v == AuditVariant::LeakyQueries)
    for (std::size_t i = 0; i < l.user_len; ++i) r[l.user_begin + i] = 1;
  if (v == AuditVariant::UnmaskedS) {
    for (std::size_t i = 0; i < l.padding_len; ++i) r[l.padding_begin + i] = 1;
    for (std::size_t i = 0; i < l.common_len; ++i) r[l.common_begin + i] = 1;
  }
  return r;
}

struct Draw {
  Matrix user;
  Dataset dataset;
  Matrix common;
};

Draw decode_digits(const SchemeParams& p, const Layout& l, const std::vector<Elem>& d) {
  Draw out;
  out.user = Matrix(p.T(), p.query_length(),
                    std::vector<Elem>(d.begin() + static_cast<std::ptrdiff_t>(l.user_begin),
                                      d.begin() + static_cast<std::ptrdiff_t>(l.user_begin + l.user_len)));
  Matrix m(p.K(), p.message_length());
  const std::size_t pay = p.payload_length();
  const std::size_t pad = p.message_length() - pay;
  for (std::size_t k = 0; k < p.K(); ++k) {
    for (std::size_t s = 0; s < pay; ++s) m(k, s) = d[l.payload_begin + k * pay + s];
    for (std::size_t s = 0; s < pad; ++s) m(k, pay + s) = d[l.padding_begin + k * pad + s];
  }
  out.dataset.messages = std::move(m);
  out.common = Matrix(p.T(), p.instances(),
                      std::vector<Elem>(d.begin() + static_cast<std::ptrdiff_t>(l.common_begin),
                                        d.begin() + static_cast<std::ptrdiff_t>(l.common_begin + l.common_len)));
  return out;
}

void append(Key& key, std::span<const Elem> values) { key.insert(key.end(), values.begin(), values.end()); }

// All ordered alpha-tuples of distinct nonzero elements.
std::vector<std::vector<Elem>> hash_point_tuples(const Field& f, std::size_t alpha) {
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> cur;
  std::set<Elem> used;
  auto rec = [&](auto&& self) -> void {
    if (cur.size() == alpha) {
      out.push_back(cur);
      return;
    }
    for (Elem p = 1; p < f.modulus(); ++p) {
      if (used.count(p)) continue;
      used.insert(p);
      cur.push_back(p);
      self(self);
      cur.pop_back();
      used.erase(p);
    }
  };
  rec(rec);
  return out;
}

}  // namespace

UserPrivacyCertificate certify_user_privacy_algebraic(const Field& f, std::span<const Elem> lambdas, std::size_t T) {
  UserPrivacyCertificate cert;
  if (T == 0) return cert;
  // Built directly rather than through vandermonde() so that repeated points
  // show up as a failing minor instead of an exception.
  Matrix gu(lambdas.size(), T);
  for (std::size_t n = 0; n < lambdas.size(); ++n) {
    Elem x = 1;
    for (std::size_t j = 0; j < T; ++j) {
      gu(n, j) = x;
      x = f.mul(x, f.reduce(lambdas[n]));
    }
  }
  for (const auto& subset : subsets(lambdas.size(), T)) {
    try {
      invert(f, select_rows(gu, subset));
    } catch (const Singular&) {
      cert.ok = false;
      cert.witness = subset;
      return cert;
    }
  }
  return cert;
}

UserPrivacyCertificate certify_user_privacy_algebraic(const SchemeParams& params) {
  return certify_user_privacy_algebraic(params.field(), params.lambdas(), params.T());
}

UserPrivacyAudit audit_user_privacy_exhaustive(const AuditInstance& instance, std::size_t k1, std::size_t k2,
                                               bool include_answers) {
  const SchemeParams& p = instance.params;
  const Field& f = p.field();
  const Layout layout = make_layout(p);
  const auto radices = radices_for(p, layout, instance.variant);
  UserPrivacyAudit result;
  result.states = checked_product(radices, instance.budget / 2);

  const Generators g = build_generators(p);
  const auto colluding = subsets(p.N(), p.T());

  // Each observation is recorded once per draw; sorting turns the lists into
  // histograms that can be compared with a single merge pass.
  auto observations = [&](std::size_t k) {
    std::vector<std::vector<Key>> seen(colluding.size());
    for (auto& v : seen) v.reserve(result.states);
    const Matrix fixed = multiply(f, g.unit, selection_matrix(p, k));
    Odometer odo(radices);
    do {
      const Draw d = decode_digits(p, layout, odo.digits());
      const Matrix queries = add(f, multiply(f, g.user, d.user), fixed);
      for (std::size_t s = 0; s < colluding.size(); ++s) {
        Key key;
        for (std::size_t n : colluding[s]) {
          append(key, queries.row(n));
          if (include_answers) append(key, server_answer(p, n, queries.row(n), d.dataset, d.common));
        }
        append(key, d.dataset.messages.data());
        append(key, d.common.data());
        seen[s].push_back(std::move(key));
      }
    } while (odo.advance());
    for (auto& v : seen) std::sort(v.begin(), v.end());
    return seen;
  };

  const auto first = observations(k1);
  const auto second = observations(k2);
  result.max_distance = Rational(0);
  for (std::size_t s = 0; s < colluding.size(); ++s) {
    // Sum over keys of |count_1 - count_2| equals the size of the symmetric
    // difference of the two sorted multisets.
    const auto& a = first[s];
    const auto& b = second[s];
    std::uint64_t diff = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] < b[j]) {
        ++diff, ++i;
      } else if (b[j] < a[i]) {
        ++diff, ++j;
      } else {
        ++i, ++j;
      }
    }
    diff += (a.size() - i) + (b.size() - j);
    const Rational tv(static_cast<std::int64_t>(diff), static_cast<std::int64_t>(2 * result.states));
    if (tv > result.max_distance || result.worst_subset.empty()) {
      if (tv > result.max_distance) result.max_distance = tv;
      result.worst_subset = colluding[s];
    }
  }
  return result;
}

DatabasePrivacyAudit audit_database_privacy_exhaustive(const AuditInstance& instance, std::size_t k) {
  const SchemeParams& p = instance.params;
  const Field& f = p.field();
  if (k < 1 || k > p.K()) throw std::out_of_range("message index must be in [1, K]");
  const Layout layout = make_layout(p);
  const auto radices = radices_for(p, layout, instance.variant);
  const auto tuples = hash_point_tuples(f, p.alpha());
  DatabasePrivacyAudit result;
  result.states = checked_product(radices, instance.budget / std::max<std::size_t>(tuples.size(), 1)) * tuples.size();
  if (p.K() == 1) return result;

  const auto senders = default_hash_senders(p);
  std::map<std::pair<Key, Key>, std::uint64_t> joint;
  std::map<Key, std::uint64_t> secret_marginal;
  std::map<Key, std::uint64_t> observed_marginal;

  Odometer odo(radices);
  do {
    const Draw d = decode_digits(p, layout, odo.digits());
    const Matrix x = build_x_matrix(p, d.dataset, k, d.user, d.common);
    const AnswerSet answers = generate_answers(p, x);

    Key secret;
    for (std::size_t m = 0; m < p.K(); ++m) {
      if (m + 1 == k) continue;
      const auto row = d.dataset.messages.row(m);
      append(secret, row.first(p.payload_length()));
    }

    for (const auto& points : tuples) {
      Key seen;
      append(seen, d.user.data());
      append(seen, answers.answers.data());
      append(seen, points);
      if (p.model() == Model::SecretChannel) {
        append(seen, answer_hashes_from_answers(p, answers.answers, points, senders).values.data());
      } else {
        append(seen, message_hashes(p, d.dataset, points).values.data());
      }
      ++joint[{secret, seen}];
      ++secret_marginal[secret];
      ++observed_marginal[seen];
    }
  } while (odo.advance());

  const auto total = static_cast<unsigned __int128>(result.states);
  double mi = 0.0;
  for (const auto& [pair, count] : joint) {
    const auto ws = secret_marginal.at(pair.first);
    const auto os = observed_marginal.at(pair.second);
    if (static_cast<unsigned __int128>(count) * total != static_cast<unsigned __int128>(ws) * os) result.independent = false;
    mi += static_cast<double>(count) / static_cast<double>(result.states) *
          std::log(static_cast<double>(count) * static_cast<double>(result.states) /
                   (static_cast<double>(ws) * static_cast<double>(os)));
  }
  // Missing pairs are dependence too.
  if (joint.size() != secret_marginal.size() * observed_marginal.size()) result.independent = false;
  result.mutual_information = mi / std::log(static_cast<double>(f.modulus()));
  return result;
}

}  // namespace bspir

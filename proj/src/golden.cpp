#include "bspir/golden.hpp"

#include <sstream>

#include "bspir/hashing.hpp"
#include "bspir/scheme.hpp"

namespace bspir {

namespace {

constexpr std::uint64_t kQ = 5;

std::uint64_t m5(std::uint64_t x) { return x % kQ; }

}  // namespace

GoldenCheck check_golden_transcript() {
  SchemeConfig cfg;
  cfg.model = Model::SecretChannel;
  cfg.K = 2;
  cfg.N = 3;
  cfg.T = 1;
  cfg.B = 1;
  cfg.l = 2;
  cfg.alpha = 1;
  cfg.q = kQ;
  cfg.lambdas = {1, 2, 0};
  cfg.allow_zero_lambda = true;
  const SchemeParams params(cfg);
  const std::uint64_t lambda[3] = {1, 2, 0};

  GoldenCheck out;
  auto fail = [&](const std::string& what, std::uint64_t u, std::uint64_t v, std::uint64_t a, std::uint64_t b,
                  std::uint64_t s) {
    if (out.ok) {
      std::ostringstream msg;
      msg << what << " at u=" << u << " v=" << v << " a=" << a << " b=" << b << " S=" << s;
      out.first_failure = msg.str();
    }
    out.ok = false;
  };

  for (std::uint64_t u = 0; u < kQ; ++u)
    for (std::uint64_t v = 0; v < kQ; ++v)
      for (std::uint64_t a = 0; a < kQ; ++a)
        for (std::uint64_t b = 0; b < kQ; ++b)
          for (std::uint64_t s = 0; s < kQ; ++s) {
            ++out.assignments;
            // Second instance is a fixed relabelling of the first so that
            // both columns of X vary over the enumeration.
            const std::uint64_t a2 = b, b2 = s, s2 = a;
            Dataset d{Matrix(2, 2, {a, a2, b, b2})};
            const Matrix common(1, 2, {s, s2});
            const QueryArtifacts qa = make_queries(params, 1, Matrix(1, 2, {u, v}));
            const Matrix x = build_x_matrix(params, d, 1, qa.user_secret, common);
            const AnswerSet ans = generate_answers(params, x);

            const std::uint64_t X = m5(u * a + v * b + s);
            const std::uint64_t X2 = m5(u * a2 + v * b2 + s2);
            for (std::size_t n = 0; n < 3; ++n) {
              if (qa.queries(n, 0) != m5(u + lambda[n]) || qa.queries(n, 1) != v) fail("query mismatch", u, v, a, b, s);
              const std::uint64_t want1 = m5(X + lambda[n] * a);
              const std::uint64_t want2 = m5(X2 + lambda[n] * a2);
              if (ans.answers(n, 0) != want1 || ans.answers(n, 1) != want2) fail("answer mismatch", u, v, a, b, s);
              const auto direct = server_answer(params, n, qa.queries.row(n), d, common);
              if (direct.size() != 2 || direct[0] != want1 || direct[1] != want2)
                fail("server-side answer mismatch", u, v, a, b, s);
            }
            // Any two servers may send hashes; these pairs cover all three.
            for (const auto& senders : {std::vector<std::size_t>{0, 1}, std::vector<std::size_t>{1, 2}}) {
              for (std::uint64_t p = 1; p < kQ; ++p) {
                const std::vector<Elem> pts = {p};
                const HashBundle h = answer_hashes_from_answers(params, ans.answers, pts, senders);
                for (std::size_t r = 0; r < senders.size(); ++r) {
                  ++out.hash_checks;
                  const std::size_t n = senders[r];
                  const std::uint64_t want = m5(p * ans.answers(n, 0) + p * p % kQ * ans.answers(n, 1));
                  if (h.values(r, 0) != want) fail("hash mismatch", u, v, a, b, s);
                }
              }
            }
          }
  return out;
}

}  // namespace bspir

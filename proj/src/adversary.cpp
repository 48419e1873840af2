#include "bspir/adversary.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace bspir {

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Passive: return "passive";
    case Strategy::RandomOverwrite: return "random_overwrite";
    case Strategy::AdditiveNoise: return "additive_noise";
    case Strategy::HashGuess: return "hash_guess";
    case Strategy::RootStuffing: return "root_stuffing";
    case Strategy::KnownPForgery: return "known_p_forgery";
  }
  return "unknown";
}

Strategy parse_strategy(const std::string& s) {
  for (Strategy st : {Strategy::Passive, Strategy::RandomOverwrite, Strategy::AdditiveNoise, Strategy::HashGuess,
                      Strategy::RootStuffing, Strategy::KnownPForgery}) {
    if (s == to_string(st)) return st;
  }
  throw ConfigError("strategy", "unknown strategy '" + s + "'");
}

namespace {

constexpr std::uint64_t kTargetTag = 0x7461726765747321ull;
constexpr std::uint64_t kPlanTag = 0x706c616e6e696e67ull;

Rng target_rng(Gamma g) { return Rng(mix64(g.seed ^ kTargetTag)); }
Rng plan_rng(Gamma g) { return Rng(mix64(g.seed ^ kPlanTag)); }

// Exponent spacing between consecutive instances inside one hashed vector:
// answer hashes run over instances directly, message hashes interleave the
// N-T-B blocks of each instance.
std::uint64_t instance_stride(const SchemeParams& params) {
  return params.model() == Model::SecretChannel ? 1 : params.blocks();
}

std::vector<Elem> multiply_poly(const Field& f, std::span<const Elem> a, std::span<const Elem> b) {
  std::vector<Elem> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
  return out;
}

// Jamming rows whose per-instance polynomial g(y) = sum_i z_i y^i vanishes at
// every root. Any linear combination of such rows keeps the property, so
// every wrong decoding hypothesis inherits it.
Matrix rows_vanishing_at(const Field& f, std::vector<Elem> roots, std::size_t rows, std::size_t cols, Rng& rng) {
  if (roots.size() + 1 > cols) roots.resize(cols - 1);
  const std::vector<Elem> base = poly_from_roots(f, roots);
  const std::size_t cofactor_len = cols - roots.size();
  Matrix z(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<Elem> h(cofactor_len);
    for (std::size_t i = 0; i + 1 < cofactor_len; ++i) h[i] = rng.uniform(f);
    h.back() = rng.uniform_nonzero(f);
    const std::vector<Elem> coeffs = multiply_poly(f, base, h);
    std::copy(coeffs.begin(), coeffs.end(), z.row(r).begin());
  }
  return z;
}

std::vector<Elem> stride_powers(const Field& f, std::span<const Elem> points, std::uint64_t stride) {
  std::vector<Elem> out;
  std::set<Elem> seen;
  for (Elem p : points) {
    const Elem y = f.pow(p, stride);
    if (seen.insert(y).second) out.push_back(y);
  }
  return out;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

}  // namespace

TargetChoice choose_targets(const SchemeParams& params, Gamma gamma) {
  Rng rng = target_rng(gamma);
  TargetChoice c;
  if (params.model() == Model::SecretChannel) {
    c.observed.resize(params.N());
    std::iota(c.observed.begin(), c.observed.end(), std::size_t{0});
  } else {
    c.observed = rng.subset(params.N(), params.E());
  }
  c.targets = rng.subset(params.N(), params.B());
  return c;
}

AdversaryView observe(const TargetChoice& choice, const Matrix& queries, const Matrix& answers) {
  return {choice.observed, select_rows(queries, choice.observed), select_rows(answers, choice.observed)};
}

Corruption plan_corruption(const SchemeParams& params, Strategy strategy, Gamma gamma, const AdversaryView& view,
                           std::span<const std::size_t> targets) {
  (void)view;  // none of the implemented strategies need the observed payload
  if (strategy == Strategy::KnownPForgery)
    throw std::invalid_argument("KnownPForgery needs leaked secrets; use plan_known_p_forgery");

  const Field& f = params.field();
  const std::size_t cols = params.instances();
  Rng rng = plan_rng(gamma);
  Corruption c;
  if (strategy == Strategy::Passive) return c;

  c.targets.assign(targets.begin(), targets.end());
  switch (strategy) {
    case Strategy::RandomOverwrite:
      c.mode = CorruptionMode::Overwrite;
      c.values = rng.uniform_matrix(f, targets.size(), cols);
      break;
    case Strategy::AdditiveNoise:
      c.mode = CorruptionMode::Add;
      c.values = Matrix(targets.size(), cols);
      for (std::size_t r = 0; r < targets.size(); ++r)
        for (Elem& e : c.values.row(r)) e = rng.uniform_nonzero(f);
      break;
    case Strategy::HashGuess: {
      const std::vector<Elem> guess = rng.distinct_nonzero(f, params.alpha());
      c.mode = CorruptionMode::Add;
      c.values = rows_vanishing_at(f, stride_powers(f, guess, instance_stride(params)), targets.size(), cols, rng);
      break;
    }
    case Strategy::RootStuffing: {
      const std::uint64_t stride = instance_stride(params);
      // Only stride-th powers can be hit by y = p^stride.
      const std::uint64_t reachable = (f.modulus() - 1) / gcd(stride, f.modulus() - 1);
      const std::size_t wanted = static_cast<std::size_t>(std::min<std::uint64_t>(cols - 1, reachable));
      std::vector<Elem> roots;
      std::set<Elem> seen;
      while (roots.size() < wanted) {
        const Elem y = f.pow(rng.uniform_nonzero(f), stride);
        if (seen.insert(y).second) roots.push_back(y);
      }
      c.mode = CorruptionMode::Add;
      c.values = rows_vanishing_at(f, roots, targets.size(), cols, rng);
      break;
    }
    default:
      break;
  }
  return c;
}

Corruption plan_known_p_forgery(const SchemeParams& params, Gamma gamma, const AdversaryView& view,
                                std::span<const std::size_t> targets, const LeakedSecrets& leak) {
  (void)view;
  Rng rng = plan_rng(gamma);
  const Field& f = params.field();
  Corruption c;
  c.targets.assign(targets.begin(), targets.end());
  c.mode = CorruptionMode::Add;
  c.values = rows_vanishing_at(f, stride_powers(f, leak.points, instance_stride(params)), targets.size(),
                               params.instances(), rng);
  return c;
}

AnswerSet apply_corruption(const SchemeParams& params, const AnswerSet& clean, const Corruption& c) {
  if (c.values.rows() != c.targets.size()) throw ShapeMismatch("corruption rows do not match targets");
  AnswerSet out = clean;
  const Field& f = params.field();
  for (std::size_t r = 0; r < c.targets.size(); ++r) {
    const std::size_t n = c.targets[r];
    if (n >= params.N()) throw std::out_of_range("corruption target outside [0, N)");
    if (c.values.cols() != out.answers.cols()) throw ShapeMismatch("corruption row length differs from answer length");
    for (std::size_t i = 0; i < out.answers.cols(); ++i) {
      out.answers(n, i) = c.mode == CorruptionMode::Overwrite ? c.values(r, i) : f.add(out.answers(n, i), c.values(r, i));
    }
    out.corrupted[n] = true;
  }
  return out;
}

std::vector<Elem> forge_row(const Field& f, std::span<const Elem> row, std::span<const Elem> points,
                            std::span<const Elem> target_hash, Rng& rng) {
  const std::size_t n = row.size();
  const std::size_t a = points.size();
  if (target_hash.size() != a) throw ShapeMismatch("forge_row: one target per hash point");
  if (n <= a) throw std::invalid_argument("forge_row: row too short to leave a free coordinate");

  std::vector<Elem> out(row.begin(), row.end());
  // Perturb one free coordinate so the forged row always differs, then fix the
  // first `a` coordinates by solving the a x a system at the known points.
  const std::size_t free_first = a;
  for (std::size_t i = free_first; i < n; ++i) out[i] = rng.uniform(f);
  const std::size_t pick = free_first + static_cast<std::size_t>(rng.below(n - free_first));
  out[pick] = f.add(row[pick], rng.uniform_nonzero(f));

  Matrix lhs(a, a);
  Matrix rhs(a, 1);
  for (std::size_t j = 0; j < a; ++j) {
    Elem acc = target_hash[j];
    Elem power = points[j];
    for (std::size_t i = 0; i < n; ++i) {
      if (i < a) {
        lhs(j, i) = power;
      } else {
        acc = f.sub(acc, f.mul(out[i], power));
      }
      power = f.mul(power, points[j]);
    }
    rhs(j, 0) = acc;
  }
  const Matrix head = solve(f, lhs, rhs);
  for (std::size_t i = 0; i < a; ++i) out[i] = head(i, 0);
  return out;
}

std::vector<Elem> poly_from_roots(const Field& f, std::span<const Elem> roots) {
  std::vector<Elem> c{1};
  for (Elem r : roots) {
    std::vector<Elem> next(c.size() + 1, 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] = f.add(next[i + 1], c[i]);
      next[i] = f.sub(next[i], f.mul(r, c[i]));
    }
    c = std::move(next);
  }
  return c;
}

}  // namespace bspir

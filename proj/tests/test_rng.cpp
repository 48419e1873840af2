#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "bspir/rng.hpp"

using namespace bspir;

TEST_CASE("mix64 is the SplitMix64 step") {
  // First three outputs of SplitMix64 seeded with 0.
  CHECK(mix64(0) == 0xE220A8397B1DCDAFull);
  CHECK(mix64(0x9E3779B97F4A7C15ull) == 0x6E789E6AA1B965F4ull);
  CHECK(mix64(2 * 0x9E3779B97F4A7C15ull) == 0x06C45D188009454Full);
}

TEST_CASE("trial seeds follow the documented rule") {
  CHECK(trial_seed(42, 0) == mix64(mix64(42)));
  CHECK(trial_seed(42, 7) == mix64(mix64(42) + 7));
  CHECK(trial_seed(42, 1) != trial_seed(42, 2));
}

TEST_CASE("streams are reproducible and distinct") {
  Rng a(99, Stream::User), b(99, Stream::User), c(99, Stream::Hash);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    CHECK(x != c.next());
  }
}

TEST_CASE("below is uniform") {
  Rng r(5);
  std::map<std::uint64_t, int> counts;
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) ++counts[r.below(7)];
  CHECK(counts.size() == 7);
  double chi2 = 0;
  for (const auto& [v, n] : counts) {
    CHECK(v < 7);
    const double e = draws / 7.0;
    chi2 += (n - e) * (n - e) / e;
  }
  CHECK(chi2 < 22.46);  // 0.999 quantile, 6 degrees of freedom
}

TEST_CASE("distinct_nonzero and subset") {
  const Field f(11);
  Rng r(8);
  for (int i = 0; i < 500; ++i) {
    const auto pts = r.distinct_nonzero(f, 4);
    CHECK(pts.size() == 4);
    CHECK(std::set<Elem>(pts.begin(), pts.end()).size() == 4);
    for (Elem p : pts) CHECK((p >= 1 && p < 11));
    const auto s = r.subset(6, 3);
    CHECK(s.size() == 3);
    CHECK(std::is_sorted(s.begin(), s.end()));
    CHECK(s.back() < 6);
  }
  CHECK(r.subset(4, 0).empty());
  CHECK_THROWS(r.distinct_nonzero(f, 11));
}

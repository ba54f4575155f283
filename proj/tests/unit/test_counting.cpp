#include <set>

#include "doctest.h"
#include "ivtest/counting.hpp"
#include "ivtest/errors.hpp"
#include "ivtest/response_model.hpp"

using namespace ivtest;

TEST_CASE("finite differences") {
  CHECK(finite_difference(2, 3) == 6);
  CHECK(finite_difference(0, 0) == 1);
  CHECK(finite_difference(0, 3) == 0);
  CHECK(finite_difference(1, 1) == 1);
  for (std::uint64_t l = 0; l <= 12; ++l) {
    CHECK(finite_difference(l, l) == factorial(l));
    for (std::uint64_t k = l + 1; k <= 12; ++k) CHECK(finite_difference(k, l) == 0);
    for (std::uint64_t k = 0; k <= 12; ++k) {
      CHECK(finite_difference(k, l) == finite_difference_recursive(k, l));
    }
  }
}

TEST_CASE("count_G_k") {
  CHECK(count_G_k(2, 3, 2) == 6);
  for (std::uint64_t n = 1; n <= 5; ++n) CHECK(count_G_k(n, 4, 1) == n);
  BigInt total = 0;
  for (std::uint64_t k = 1; k <= 3; ++k) total += count_G_k(3, 3, k);
  CHECK(total == 27);
  CHECK_THROWS_AS(count_G_k(3, 3, 0), RangeError);
  CHECK_THROWS_AS(count_G_k(3, 3, 4), RangeError);
}

TEST_CASE("count_G_k against enumerating maps") {
  for (std::uint64_t n = 1; n <= 4; ++n) {
    for (std::uint64_t l = 1; l <= 4; ++l) {
      std::vector<std::uint64_t> by_image(n + 1, 0);
      std::vector<std::uint64_t> g(l, 0);
      while (true) {
        by_image[std::set<std::uint64_t>(g.begin(), g.end()).size()]++;
        std::size_t i = l;
        while (i > 0 && ++g[i - 1] == n) g[--i] = 0;
        if (i == 0) break;
      }
      for (std::uint64_t k = 1; k <= n; ++k) CHECK(count_G_k(n, l, k) == by_image[k]);
    }
  }
}

TEST_CASE("extreme counts") {
  CHECK(count_extreme_B(Dims(2, 2, 2)) == 12);
  CHECK(count_extreme_B(Dims(3, 2, 2)) == 28);
  CHECK(count_extreme_F(Dims(2, 2, 2)) == 16);
  CHECK(count_extreme_F(Dims(3, 2, 2)) == 64);
  CHECK(ratio_R(Dims(2, 2, 2)) == Rational(3, 4));
  CHECK(ratio_R(Dims(3, 2, 2)) == Rational(7, 16));
  for (std::size_t m = 1; m <= 5; ++m) {
    for (std::size_t n = 1; n <= 5; ++n) {
      CHECK(count_extreme_B(Dims(1, m, n)) == m * n);
      CHECK(count_extreme_F(Dims(1, m, n)) == m * n);
      CHECK(ratio_R(Dims(1, m, n)) == 1);
    }
  }
  // 40-digit territory stays exact.
  CHECK(count_extreme_F(Dims(20, 10, 10)) == big_pow(100, 20));
}

TEST_CASE("formula agrees with distinct columns while pairs stay small") {
  for (std::size_t l = 1; l <= 5; ++l)
    for (std::size_t m = 1; m <= 5; ++m)
      for (std::size_t n = 1; n <= 5; ++n) {
        const Dims d(l, m, n);
        if (d.pair_count() > 100000) continue;
        CAPTURE(d.str());
        CHECK(count_extreme_B(d) == dedup_columns(d).size());
      }
}

TEST_CASE("R is at most one, and one exactly when l = 1 or m = 1 in the tested range") {
  for (std::size_t l = 1; l <= 6; ++l)
    for (std::size_t m = 1; m <= 6; ++m)
      for (std::size_t n = 1; n <= 6; ++n) {
        const Rational r = ratio_R(Dims(l, m, n));
        CHECK(r > 0);
        CHECK(r <= 1);
        // With a single Y value every X pattern is reachable, so B = F there too.
        CHECK((r == 1) == (l == 1 || m == 1));
      }
}

TEST_CASE("trend reports") {
  const std::vector<std::size_t> range = {2, 3, 4, 5, 6, 7, 8};
  const auto rn = trend_report(Axis::n, Dims(2, 2, 1), range);
  CHECK(rn.trend == Trend::strictly_increasing);
  CHECK(rn.consistent);
  REQUIRE(rn.rows.size() == 7);
  CHECK(rn.rows[0].counts.ratio_R == Rational(3, 4));
  CHECK(rn.rows[0].dims == Dims(2, 2, 2));

  const auto rl = trend_report(Axis::l, Dims(1, 2, 2), range);
  CHECK(rl.trend == Trend::strictly_decreasing);
  CHECK(rl.consistent);

  const auto rm = trend_report(Axis::m, Dims(3, 1, 2), range);
  CHECK(rm.trend == Trend::strictly_decreasing);
  CHECK(rm.expected == Trend::strictly_decreasing);

  const auto rm_wide = trend_report(Axis::m, Dims(2, 1, 3), range);
  CHECK_FALSE(rm_wide.expected.has_value());

  const std::string csv = trend_report(Axis::n, Dims(2, 2, 1), {2, 3}).csv();
  CHECK(csv.rfind("l,m,n,ext_B,ext_F,R,R_approx\n2,2,2,12,16,3/4,", 0) == 0);

  CHECK_THROWS(trend_report(Axis::n, Dims(2, 2, 1), {}));
  CHECK_THROWS(trend_report(Axis::n, Dims(2, 2, 1), {3, 2}));
  CHECK(parse_axis("m") == Axis::m);
  CHECK_THROWS_AS(parse_axis("q"), ParseError);
}

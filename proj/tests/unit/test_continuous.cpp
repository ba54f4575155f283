#include <random>

#include "doctest.h"
#include "ivtest/continuous.hpp"
#include "ivtest/errors.hpp"
#include "ivtest/linear_tests.hpp"
#include "ivtest/response_model.hpp"

using namespace ivtest;

namespace {

PartitionTable two_by_two() {
  PartitionTable t;
  t.x_count = 1;
  t.cells = {"(-inf,0)", "[0,inf)"};
  t.probes = {"z=0", "z=1"};
  t.p = {{{1, 0}}, {{0, 1}}};
  return t;
}

}  // namespace

TEST_CASE("forced rejection") {
  const Theorem8Result r = theorem8_statistic(two_by_two());
  CHECK(r.statistic == 2);
  CHECK(r.with_remainder == 2);
  CHECK(r.argmax_x == 0);
  CHECK(r.argmax_probe[0][0] == 0);
  CHECK(r.argmax_probe[1][0] == 1);
}

TEST_CASE("discrete tables reproduce the Pearl statistic") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 100; ++i) {
    const Dims d(1 + i % 3, 1 + i % 4, 1 + i % 5);
    const CondDist f = i % 2 ? random_cond_dist(d, rng) : sample_compatible(d, random_response_dist(d, rng));
    const PartitionTable t = table_from_dist(f);
    CHECK(t.cells.size() == d.m);
    CHECK(t.probes.size() == d.l);
    CHECK(theorem8_statistic(t).statistic == pearl_statistic(f));
    if (i % 2 == 0) CHECK(theorem8_statistic(t).statistic <= 1);
  }
}

TEST_CASE("partial partitions carry a remainder") {
  PartitionTable t = two_by_two();
  t.p = {{{Rational(1, 2), Rational(1, 4)}}, {{Rational(1, 4), Rational(1, 4)}}};
  t.check();
  CHECK(t.remainder(0) == Rational(1, 4));
  CHECK(t.remainder(1) == Rational(1, 2));
  const Theorem8Result r = theorem8_statistic(t);
  CHECK(r.statistic == Rational(3, 4));
  CHECK(r.with_remainder == Rational(5, 4));
}

TEST_CASE("refinement") {
  std::mt19937_64 rng(59);
  for (int i = 0; i < 100; ++i) {
    const PartitionTable fine = table_from_dist(random_cond_dist(Dims(2 + i % 3, 5, 2), rng));
    const RefinementReport r = refine_partition(fine, {0, 1, 1, 2, 0});
    CHECK(r.monotone);
    CHECK(r.fine >= r.coarse);
    CHECK(r.fine == theorem8_statistic(fine).statistic);
    const RefinementReport single = refine_partition(fine, {0, 0, 0, 0, 0});
    CHECK(single.coarse <= 1);
  }
  for (int i = 0; i < 50; ++i) {
    const Dims d(3, 6, 2);
    const PartitionTable fine = table_from_dist(sample_compatible(d, random_response_dist(d, rng)));
    CHECK(theorem8_statistic(fine).statistic <= 1);
    CHECK(theorem8_statistic(coarsen(fine, {0, 0, 1, 1, 2, 2})).statistic <= 1);
  }
  const PartitionTable fine = table_from_dist(uniform_dist(Dims(2, 3, 2)));
  CHECK_THROWS_AS(refine_partition(fine, {0, 1}), ShapeError);
  CHECK_THROWS_AS(refine_partition(fine, {0, 0, 2}), ShapeError);
  const PartitionTable merged = coarsen(fine, {1, 0, 1});
  CHECK(merged.cells.size() == 2);
  CHECK(merged.p[1][0][0] == Rational(1, 3));
}

TEST_CASE("table validation") {
  PartitionTable t = two_by_two();
  t.probes.clear();
  for (auto& cell : t.p)
    for (auto& row : cell) row.clear();
  CHECK_THROWS_AS(t.check(), ShapeError);
  CHECK_THROWS_AS(theorem8_statistic(t), ShapeError);
  t = two_by_two();
  t.cells.clear();
  t.p.clear();
  CHECK_THROWS_AS(theorem8_statistic(t), ShapeError);
  t = two_by_two();
  t.p[1][0][0] = Rational(1, 2);
  CHECK_THROWS_AS(t.check(), ShapeError);
  t = two_by_two();
  t.p[0][0][0] = Rational(3, 2);
  CHECK_THROWS_AS(t.check(), ShapeError);
}

#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "ivtest/double_description.hpp"
#include "ivtest/errors.hpp"
#include "ivtest/polyhedra.hpp"

using namespace ivtest;

namespace {

CondDist binary_violator() {
  const Dims d(2, 2, 2);
  CondDist f{d, RationalVector(8, 0)};
  f.values[index(d, 0, 0, 0)] = 1;
  f.values[index(d, 0, 1, 1)] = 1;
  return f;
}

HRep standard_simplex(std::size_t k) {
  HRep h;
  h.dim = k;
  h.equalities.push_back({RationalVector(k, 1), 1});
  for (std::size_t i = 0; i < k; ++i) {
    Constraint c{RationalVector(k, 0), 0};
    c.a[i] = -1;
    h.inequalities.push_back(c);
  }
  return h;
}

std::vector<RationalVector> unit_vectors(std::size_t k) {
  std::vector<RationalVector> out;
  for (std::size_t i = 0; i < k; ++i) {
    RationalVector v(k, 0);
    v[i] = 1;
    out.push_back(v);
  }
  return out;
}

bool same_set(std::vector<RationalVector> a, std::vector<RationalVector> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace

TEST_CASE("membership of vertices") {
  for (const Dims& d : {Dims(2, 2, 2), Dims(3, 2, 2)}) {
    const auto pairs = enumerate_pairs(d);
    const VertexSet vs = dedup_columns(d);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const CondDist f = sample_compatible(d, [&] {
        ResponseDist q{d, RationalVector(pairs.size(), 0)};
        q.q[i] = 1;
        return q;
      }());
      const FeasibilityResult r = lp_feasible(vs, f);
      REQUIRE(r.feasible());
      const auto& q = r.witness().q;
      CHECK(std::count_if(q.begin(), q.end(), [](const Rational& v) { return v != 0; }) == 1);
      CHECK(std::count(q.begin(), q.end(), Rational(1)) == 1);
      CHECK(verify_witness(r.witness(), f));
    }
  }
}

TEST_CASE("Pearl violation gives a certificate") {
  const CondDist f = binary_violator();
  const Dims d = f.dims;
  const FeasibilityResult r = lp_feasible(d, f);
  REQUIRE_FALSE(r.feasible());
  const FarkasCertificate& cert = r.certificate();
  CHECK(verify_certificate(dedup_columns(d), cert, f));
  Rational at_f = cert.pi0;
  for (std::size_t i = 0; i < d.dim_f(); ++i) at_f += cert.pi[i] * f.values[i];
  CHECK(at_f > 0);

  const SeparatingInequality sep = farkas_to_test(cert, d);
  Rational lhs = 0;
  for (std::size_t i = 0; i < d.dim_f(); ++i) lhs += sep.coefficients[i] * f.values[i];
  CHECK(lhs > sep.bound);
  CHECK(implied_by({sep.coefficients, sep.bound}, suite_polytope(d, pearl_suite(d))));

  FarkasCertificate doubled = cert;
  doubled.pi0 *= 2;
  for (auto& v : doubled.pi) v *= 2;
  const SeparatingInequality sep2 = farkas_to_test(doubled, d);
  CHECK(sep2.coefficients == sep.coefficients);
  CHECK(sep2.bound == sep.bound);

  FarkasCertificate broken = cert;
  broken.pi0 += 100;
  CHECK_FALSE(verify_certificate(dedup_columns(d), broken, f));
  CHECK_THROWS_AS(farkas_to_test(broken, d), ConsistencyError);
  CHECK_THROWS_AS(farkas_to_test(FarkasCertificate{0, RationalVector(3, 0)}, d), ShapeError);
}

TEST_CASE("witnesses and certificates on random inputs") {
  std::mt19937_64 rng(41);
  for (const Dims& d : {Dims(2, 2, 2), Dims(3, 2, 2), Dims(2, 3, 2), Dims(2, 2, 3), Dims(1, 2, 3)}) {
    const VertexSet vs = dedup_columns(d);
    for (int i = 0; i < 100; ++i) {
      const CondDist f = random_cond_dist(d, rng);
      const FeasibilityResult r = lp_feasible(vs, f);
      if (r.feasible()) {
        CHECK(verify_witness(r.witness(), f));
      } else {
        CHECK(verify_certificate(vs, r.certificate(), f));
      }
      if (d.l == 1) CHECK(r.feasible());
    }
  }
}

TEST_CASE("simplex verdicts agree with enumerated facets") {
  std::mt19937_64 rng(43);
  std::size_t infeasible = 0;
  for (const Dims& d : {Dims(2, 2, 2), Dims(3, 2, 2), Dims(2, 3, 2), Dims(2, 1, 4), Dims(3, 2, 1), Dims(1, 2, 3)}) {
    REQUIRE(d.pair_count() <= 64);
    const VertexSet vs = dedup_columns(d);
    const HRep h = facet_enum(vs.vertices());
    for (int i = 0; i < 150; ++i) {
      const CondDist f = i % 3 ? random_cond_dist(d, rng) : sample_compatible(d, random_response_dist(d, rng));
      const bool lp = lp_feasible(vs, f).feasible();
      CHECK(lp == h.contains(f.values));
      if (!lp) ++infeasible;
    }
  }
  CHECK(infeasible > 0);
}

TEST_CASE("simplex verdicts agree with known sufficient suites") {
  std::mt19937_64 rng(47);
  for (const Dims& d : {Dims(2, 2, 2), Dims(2, 2, 3), Dims(2, 3, 2), Dims(3, 2, 2)}) {
    auto suite = pearl_suite(d);
    if (d == Dims(3, 2, 2)) {
      const auto strong = named_suite("eq11", d);
      suite.insert(suite.end(), strong.begin(), strong.end());
    }
    const VertexSet vs = dedup_columns(d);
    for (int i = 0; i < 150; ++i) {
      const CondDist f = random_cond_dist(d, rng);
      bool pass = true;
      for (const auto& r : eval_suite(suite, f)) pass = pass && r.pass;
      CHECK(lp_feasible(vs, f).feasible() == pass);
    }
  }
}

TEST_CASE("facet enumeration of a simplex") {
  const HRep h = facet_enum(unit_vectors(4));
  REQUIRE(h.equalities.size() == 1);
  const Constraint& e = h.equalities[0];
  for (const auto& a : e.a) CHECK(a * e.b > 0);
  for (const auto& a : e.a) CHECK(a == e.a[0]);
  REQUIRE(h.inequalities.size() == 4);
  std::set<std::size_t> covered;
  for (const auto& c : h.inequalities) {
    // Each facet is x_i >= 0 modulo the hull: zero on the other three vertices.
    std::size_t positive = 0;
    for (const auto& v : unit_vectors(4)) {
      Rational s = 0;
      for (std::size_t i = 0; i < 4; ++i) s += c.a[i] * v[i];
      if (s == c.b) continue;
      ++positive;
    }
    CHECK(positive == 1);
  }
  CHECK(same_set(vertex_enum(h), unit_vectors(4)));
  CHECK(same_set(vertex_enum(standard_simplex(5)), unit_vectors(5)));
  CHECK_THROWS_AS(facet_enum({}), ShapeError);
  const HRep point = facet_enum({{Rational(1, 2), Rational(1, 3)}});
  CHECK(point.equalities.size() == 2);
  CHECK(point.inequalities.empty());
}

TEST_CASE("facets of B(2,2,2) are nonnegativity and four Pearl tests") {
  const Dims d(2, 2, 2);
  const auto facets = nontrivial_facets(d);
  const auto pearl = nontrivial_filter(pearl_suite(d), d);
  REQUIRE(facets.size() == 4);
  for (const auto& f : facets) {
    CHECK(std::any_of(pearl.begin(), pearl.end(), [&](const LinearTest& t) {
      return t.tau == f.tau && t.alpha == f.alpha;
    }));
  }
  const HRep h = facet_enum(dedup_columns(d).vertices());
  CHECK(h.equalities.size() == 2);
  std::size_t trivial = 0;
  for (const auto& c : h.inequalities) {
    const LinearTest t = block_normal_form(d, c);
    if (max_over_simplex_product(t) <= t.alpha) ++trivial;
  }
  CHECK(trivial + 4 == h.inequalities.size());
}

TEST_CASE("facets of B(3,2,2) are Pearl plus the eq11 orbit") {
  const Dims d(3, 2, 2);
  const auto facets = nontrivial_facets(d);
  const auto orbit = regular_variations(eq11_test());
  const auto pearl = nontrivial_filter(pearl_suite(d), d);
  CHECK(facets.size() == pearl.size() + orbit.size());
  std::size_t in_orbit = 0;
  for (const auto& f : facets) {
    for (const auto& t : orbit) in_orbit += f.same_inequality(t);
  }
  CHECK(in_orbit == orbit.size());
}

TEST_CASE("vertex enumeration of Pearl polytopes") {
  const Dims d(2, 2, 2);
  CHECK(same_set(vertex_enum(suite_polytope(d, pearl_suite(d))), dedup_columns(d).vertices()));
  const Dims d3(3, 2, 2);
  const auto pearl_vertices = vertex_enum(suite_polytope(d3, pearl_suite(d3)));
  const auto b_vertices = dedup_columns(d3).vertices();
  CHECK(pearl_vertices.size() > b_vertices.size());
  const std::set<RationalVector> pv(pearl_vertices.begin(), pearl_vertices.end());
  for (const auto& v : b_vertices) CHECK(pv.count(v) == 1);
}

TEST_CASE("representation round trips") {
  for (const Dims& d : {Dims(2, 2, 2), Dims(2, 3, 2), Dims(3, 2, 2)}) {
    const auto vertices = dedup_columns(d).vertices();
    const HRep h = facet_enum(vertices);
    CHECK(same_set(vertex_enum(h), vertices));
    const Polytope p{d.dim_f(), vertices, h};
    CHECK(p.consistent());
  }
  // H -> V -> H on the Pearl polytope: constraint sets imply each other.
  const Dims d(2, 2, 2);
  const HRep h1 = suite_polytope(d, pearl_suite(d));
  const HRep h2 = facet_enum(vertex_enum(h1));
  for (const auto& c : h1.inequalities) CHECK(implied_by(c, h2));
  for (const auto& c : h2.inequalities) CHECK(implied_by(c, h1));
  Polytope wrong{d.dim_f(), unit_vectors(d.dim_f()), h1};
  CHECK_FALSE(wrong.consistent());
}

TEST_CASE("vertex enumeration edge cases") {
  HRep quadrant;
  quadrant.dim = 2;
  quadrant.inequalities = {{{-1, 0}, 0}, {{0, -1}, 0}};
  CHECK_THROWS_AS(vertex_enum(quadrant), UnboundedError);
  HRep strip;
  strip.dim = 2;
  strip.inequalities = {{{1, 0}, 1}, {{-1, 0}, 0}};
  CHECK_THROWS_AS(vertex_enum(strip), UnboundedError);
  HRep empty = standard_simplex(3);
  empty.inequalities.push_back({{1, 1, 1}, Rational(1, 2)});
  CHECK(vertex_enum(empty).empty());
  HRep square;
  square.dim = 2;
  square.inequalities = {{{1, 0}, 1}, {{-1, 0}, 0}, {{0, 1}, 1}, {{0, -1}, 0}, {{1, 1}, 3}};
  CHECK(vertex_enum(square) == std::vector<RationalVector>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  Caps caps;
  caps.max_rays = 3;
  CHECK_THROWS_AS(vertex_enum(standard_simplex(6), caps), CapacityError);
}

TEST_CASE("block normal form") {
  const Dims d(2, 2, 2);
  const auto pearl = pearl_suite(d);
  // pearl#2 shifted by the block equalities and scaled.
  Constraint c{RationalVector(8, 0), 0};
  for (std::size_t i = 0; i < 8; ++i) c.a[i] = 3 * pearl[1].tau[i] - 2;
  c.b = 3 - 4;
  const LinearTest t = block_normal_form(d, c);
  CHECK(t.tau == pearl[1].tau);
  CHECK(t.alpha == 1);
}

TEST_CASE("sufficiency") {
  CHECK(sufficiency_check(Dims(2, 2, 2), pearl_suite(Dims(2, 2, 2))).equal());
  const auto r = sufficiency_check(Dims(3, 2, 2), pearl_suite(Dims(3, 2, 2)));
  CHECK(r.kind == SufficiencyResult::Kind::suite_too_weak);
  REQUIRE(r.counterexample);
  CHECK_FALSE(lp_feasible(Dims(3, 2, 2), CondDist{Dims(3, 2, 2), *r.counterexample}).feasible());

  LinearTest too_strong;
  too_strong.dims = Dims(2, 2, 2);
  too_strong.tau.assign(8, 0);
  too_strong.tau[0] = 2;
  too_strong.alpha = 1;
  too_strong.id = "strong";
  const auto s = sufficiency_check(Dims(2, 2, 2), {too_strong});
  CHECK(s.kind == SufficiencyResult::Kind::suite_not_necessary);
}

TEST_CASE("double description helpers") {
  CHECK(primitive(IntVector{4, -6, 0}) == IntVector{2, -3, 0});
  CHECK(primitive(RationalVector{Rational(1, 2), Rational(1, 3)}) == IntVector{3, 2});
  CHECK(rank({{1, 2}, {2, 4}}) == 1);
  // The positive orthant of R^3.
  const auto rays = cone_extreme_rays({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 3);
  CHECK(rays.size() == 3);
  CHECK_THROWS_AS(cone_extreme_rays({{1, 0, 0}, {0, 1, 0}}, 3), ConsistencyError);
}

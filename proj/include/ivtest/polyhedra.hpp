#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ivtest/core.hpp"
#include "ivtest/linear_tests.hpp"
#include "ivtest/response_model.hpp"

namespace ivtest {

/// a'x = b or a'x <= b, depending on which list of an HRep holds it.
struct Constraint {
  RationalVector a;
  Rational b;
  bool operator==(const Constraint&) const = default;
};

struct HRep {
  std::size_t dim = 0;
  std::vector<Constraint> equalities;
  std::vector<Constraint> inequalities;

  bool contains(const RationalVector& x) const;
};

/// A bounded polyhedron in one or both representations.
struct Polytope {
  std::size_t dim = 0;
  std::optional<std::vector<RationalVector>> vertices;
  std::optional<HRep> hrep;

  /// When both representations are present, checks that every vertex satisfies the
  /// H-representation and that the H-representation has no other vertex.
  bool consistent(const Caps& caps = {}) const;
};

// ---- membership in the compatible set ---------------------------------------------------

/// Proof of infeasibility: pi0 + pi'v <= 0 on every vertex v of B, pi0 + pi'F > 0.
struct FarkasCertificate {
  Rational pi0;
  RationalVector pi;
};

struct Feasible {
  ResponseDist witness;
};
struct Infeasible {
  FarkasCertificate certificate;
};

struct FeasibilityResult {
  std::variant<Feasible, Infeasible> verdict;
  std::size_t pivots = 0;

  bool feasible() const { return std::holds_alternative<Feasible>(verdict); }
  const ResponseDist& witness() const { return std::get<Feasible>(verdict).witness; }
  const FarkasCertificate& certificate() const { return std::get<Infeasible>(verdict).certificate; }
};

/// Decides F in B by exact phase-1 simplex over the distinct columns of A2. The witness or
/// certificate is re-checked by direct arithmetic before returning (ConsistencyError otherwise).
FeasibilityResult lp_feasible(const Dims& dims, const CondDist& dist, const Caps& caps = {});
/// Same, reusing a precomputed vertex set for repeated calls.
FeasibilityResult lp_feasible(const VertexSet& vertices, const CondDist& dist);

/// q >= 0, sum q = 1 and A2 q = F, checked through sample_compatible().
bool verify_witness(const ResponseDist& q, const CondDist& dist);
/// Checks the certificate inequalities on every vertex of B and on the target.
bool verify_certificate(const VertexSet& vertices, const FarkasCertificate& cert,
                        const CondDist& dist);

/// A valid inequality for B, c'F <= bound.
struct SeparatingInequality {
  Dims dims;
  RationalVector coefficients;
  Rational bound;
  std::string expression() const;
};

/// Turns a certificate into pi'F <= -pi0, scaled to coprime integers. Throws
/// ConsistencyError if the inequality is not satisfied by every vertex of B.
SeparatingInequality farkas_to_test(const FarkasCertificate& cert, const Dims& dims,
                                    const Caps& caps = {});

// ---- representation conversion -----------------------------------------------------------

struct FacetOptions {
  Caps caps;
  /// Equalities to report for the affine hull when they hold on every point; the
  /// basis is completed from the computed hull.
  std::vector<Constraint> equality_hints;
  /// Re-enumerate the vertices of the result and compare with the input.
  bool verify_roundtrip = true;
};

/// Facets and affine hull of conv(points) by double description on the polar cone.
/// Facet inequalities have zero coefficients on the coordinates eliminated by the hull.
HRep facet_enum(const std::vector<RationalVector>& points, const FacetOptions& options = {});

/// Vertices of a bounded H-polytope, sorted lexicographically. Empty when infeasible.
/// Throws UnboundedError for unbounded input.
std::vector<RationalVector> vertex_enum(const HRep& h, const Caps& caps = {});

/// Block sums equal to one plus nonnegativity: the ambient set of conditional distributions.
HRep simplex_product_hrep(const Dims& dims);

/// The ambient set cut by every test of a suite.
HRep suite_polytope(const Dims& dims, const std::vector<LinearTest>& suite);

/// The same inequality with the block-sum equalities used to make every coefficient
/// non-negative with a zero in each z-block, then scaled to coprime integers.
/// Equal results mean the inequalities coincide on the ambient set.
LinearTest block_normal_form(const Dims& dims, const Constraint& inequality);

/// True if every point of the polytope satisfies the inequality.
bool implied_by(const Constraint& inequality, const HRep& polytope, const Caps& caps = {});

/// Facets of B(dims) in block normal form, excluding those equivalent to nonnegativity.
std::vector<LinearTest> nontrivial_facets(const Dims& dims, const Caps& caps = {});

struct SufficiencyResult {
  enum class Kind { equal, suite_too_weak, suite_not_necessary };
  Kind kind = Kind::equal;
  /// suite_too_weak: a vertex of the suite polytope outside B.
  /// suite_not_necessary: a vertex of B failing some test of the suite.
  std::optional<RationalVector> counterexample;
  std::size_t suite_vertex_count = 0;
  std::size_t b_vertex_count = 0;

  bool equal() const { return kind == Kind::equal; }
};

/// Decides { F : every test passes } == B(dims) by mutual vertex containment.
SufficiencyResult sufficiency_check(const Dims& dims, const std::vector<LinearTest>& suite,
                                    const Caps& caps = {});

}  // namespace ivtest

#include "ivtest/polyhedra.hpp"

#include <algorithm>
#include <set>

#include "ivtest/double_description.hpp"
#include "ivtest/errors.hpp"
#include "ivtest/lp.hpp"

namespace ivtest {
namespace {

Rational dot(const RationalVector& a, const RationalVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  }
  return s;
}

RationalVector to_rational(const IntVector& v) {
  RationalVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

// Constraint (a, b) scaled to coprime integers by a positive factor.
Constraint primitive_constraint(const Constraint& c) {
  RationalVector joined = c.a;
  joined.push_back(c.b);
  IntVector p = primitive(joined);
  Constraint out;
  out.b = p.back();
  p.pop_back();
  out.a = to_rational(p);
  return out;
}

// Affine rank of a point set: rank of the rows [p, 1], minus one.
std::size_t affine_rank(const std::vector<RationalVector>& points) {
  if (points.empty()) return 0;
  std::vector<RationalVector> rows;
  rows.reserve(points.size());
  for (const auto& p : points) {
    RationalVector r = p;
    r.push_back(1);
    rows.push_back(std::move(r));
  }
  return rank(rows) - 1;
}

}  // namespace

bool HRep::contains(const RationalVector& x) const {
  if (x.size() != dim) throw ShapeError("point dimension does not match the H-representation");
  for (const auto& e : equalities) {
    if (dot(e.a, x) != e.b) return false;
  }
  for (const auto& c : inequalities) {
    if (dot(c.a, x) > c.b) return false;
  }
  return true;
}

bool Polytope::consistent(const Caps& caps) const {
  if (!vertices || !hrep) return true;
  for (const auto& v : *vertices) {
    if (!hrep->contains(v)) return false;
  }
  const auto from_h = vertex_enum(*hrep, caps);
  std::set<RationalVector> mine(vertices->begin(), vertices->end());
  for (const auto& v : from_h) {
    if (!mine.count(v)) return false;
  }
  return true;
}

// ---- membership --------------------------------------------------------------------------

bool verify_witness(const ResponseDist& q, const CondDist& dist) {
  try {
    return sample_compatible(dist.dims, q).values == dist.values;
  } catch (const ShapeError&) {
    return false;
  }
}

bool verify_certificate(const VertexSet& vertices, const FarkasCertificate& cert,
                        const CondDist& dist) {
  if (cert.pi.size() != vertices.dims.dim_f() || dist.values.size() != cert.pi.size()) return false;
  for (const auto& support : vertices.supports) {
    Rational s = cert.pi0;
    for (auto r : support) s += cert.pi[r];
    if (s > 0) return false;
  }
  return cert.pi0 + dot(cert.pi, dist.values) > 0;
}

FeasibilityResult lp_feasible(const VertexSet& vertices, const CondDist& dist) {
  const Dims& dims = vertices.dims;
  if (!(dist.dims == dims)) {
    throw ShapeError("distribution dims " + dist.dims.str() + " do not match " + dims.str());
  }
  require_valid(dist);

  // Row 0: sum of weights is one. Rows 1..: A2 restricted to distinct columns, equal to F.
  std::vector<RationalVector> columns;
  columns.reserve(vertices.size());
  for (const auto& support : vertices.supports) {
    RationalVector col(dims.dim_f() + 1, 0);
    col[0] = 1;
    for (auto r : support) col[r + 1] = 1;
    columns.push_back(std::move(col));
  }
  RationalVector b;
  b.reserve(dims.dim_f() + 1);
  b.push_back(1);
  b.insert(b.end(), dist.values.begin(), dist.values.end());

  const lp::FeasibilityOutcome outcome = lp::solve_feasibility(columns, b);
  FeasibilityResult result{Feasible{}, outcome.pivots};
  if (outcome.feasible) {
    ResponseDist q{dims, RationalVector(vertices.class_of.size(), 0)};
    for (std::size_t v = 0; v < vertices.size(); ++v) q.q[vertices.representative[v]] = outcome.x[v];
    if (!verify_witness(q, dist)) throw ConsistencyError("simplex witness failed re-verification");
    result.verdict = Feasible{std::move(q)};
  } else {
    FarkasCertificate cert{outcome.y[0], RationalVector(outcome.y.begin() + 1, outcome.y.end())};
    if (!verify_certificate(vertices, cert, dist)) {
      throw ConsistencyError("Farkas certificate failed re-verification");
    }
    result.verdict = Infeasible{std::move(cert)};
  }
  return result;
}

FeasibilityResult lp_feasible(const Dims& dims, const CondDist& dist, const Caps& caps) {
  return lp_feasible(dedup_columns(dims, caps), dist);
}

std::string SeparatingInequality::expression() const {
  std::string s;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    const Rational& c = coefficients[i];
    if (c == 0) continue;
    if (s.empty()) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    const Rational mag = abs(c);
    if (mag != 1) s += to_string(mag) + "*";
    s += coordinate_label(dims, i);
  }
  if (s.empty()) s = "0";
  return s + " <= " + to_string(bound);
}

SeparatingInequality farkas_to_test(const FarkasCertificate& cert, const Dims& dims,
                                    const Caps& caps) {
  if (cert.pi.size() != dims.dim_f()) throw ShapeError("certificate length does not match dims");
  const Constraint c = primitive_constraint({cert.pi, -cert.pi0});
  const VertexSet vertices = dedup_columns(dims, caps);
  for (const auto& support : vertices.supports) {
    Rational s = 0;
    for (auto r : support) s += c.a[r];
    if (s > c.b) throw ConsistencyError("certificate inequality cuts off a vertex of B");
  }
  return {dims, c.a, c.b};
}

// ---- representation conversion -----------------------------------------------------------

HRep facet_enum(const std::vector<RationalVector>& points, const FacetOptions& options) {
  if (points.empty()) throw ShapeError("facet enumeration needs at least one point");
  const std::size_t dim = points[0].size();
  for (const auto& p : points) {
    if (p.size() != dim) throw ShapeError("points have different dimensions");
  }

  HRep h;
  h.dim = dim;

  // Affine hull: null space of the rows [p, 1], hints first.
  std::vector<RationalVector> lifted;
  for (const auto& p : points) {
    RationalVector r = p;
    r.push_back(1);
    lifted.push_back(std::move(r));
  }
  std::vector<std::size_t> pivots;
  const auto echelon = reduced_row_echelon(lifted, &pivots);
  const std::size_t hull_dim = pivots.size() - 1;

  std::vector<RationalVector> null_basis;
  {
    std::vector<bool> is_pivot(dim + 1, false);
    for (auto p : pivots) is_pivot[p] = true;
    for (std::size_t f = 0; f <= dim; ++f) {
      if (is_pivot[f]) continue;
      RationalVector u(dim + 1, 0);
      u[f] = 1;
      for (std::size_t i = 0; i < pivots.size(); ++i) u[pivots[i]] = -echelon[i][f];
      null_basis.push_back(std::move(u));
    }
  }
  std::vector<RationalVector> chosen;  // (a, -b) rows
  auto try_add = [&](const RationalVector& u) {
    auto trial = chosen;
    trial.push_back(u);
    if (rank(trial) > chosen.size()) chosen.push_back(u);
  };
  for (const auto& hint : options.equality_hints) {
    if (hint.a.size() != dim) throw ShapeError("equality hint has the wrong dimension");
    bool holds = true;
    for (const auto& p : points) holds = holds && dot(hint.a, p) == hint.b;
    if (!holds) continue;
    RationalVector u = hint.a;
    u.push_back(-hint.b);
    try_add(u);
  }
  for (const auto& u : null_basis) try_add(u);
  for (const auto& u : chosen) {
    Constraint e;
    e.a.assign(u.begin(), u.end() - 1);
    e.b = -u.back();
    h.equalities.push_back(e);
  }

  if (hull_dim == 0) return h;

  // Coordinates left free by the hull parametrize it injectively.
  std::vector<RationalVector> eq_rows;
  for (const auto& e : h.equalities) eq_rows.push_back(e.a);
  std::vector<std::size_t> dependent;
  reduced_row_echelon(eq_rows, &dependent);
  std::vector<std::size_t> free_coords;
  {
    std::vector<bool> dep(dim, false);
    for (auto d : dependent) dep[d] = true;
    for (std::size_t j = 0; j < dim; ++j) {
      if (!dep[j]) free_coords.push_back(j);
    }
  }
  if (free_coords.size() != hull_dim) throw ConsistencyError("affine hull parametrization failed");

  // Polar cone: (b, a) with b - a.p >= 0 for every point.
  std::vector<IntVector> cone_rows;
  std::vector<RationalVector> projected;
  for (const auto& p : points) {
    RationalVector row(hull_dim + 1);
    RationalVector proj(hull_dim);
    row[0] = 1;
    for (std::size_t j = 0; j < hull_dim; ++j) {
      proj[j] = p[free_coords[j]];
      row[j + 1] = -proj[j];
    }
    cone_rows.push_back(primitive(row));
    projected.push_back(std::move(proj));
  }
  const auto rays = cone_extreme_rays(cone_rows, hull_dim + 1, options.caps.max_rays);

  for (const auto& ray : rays) {
    Constraint c;
    c.a.assign(dim, 0);
    c.b = ray[0];
    for (std::size_t j = 0; j < hull_dim; ++j) c.a[free_coords[j]] = ray[j + 1];
    std::vector<RationalVector> tight;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const Rational v = dot(c.a, points[i]);
      if (v > c.b) throw ConsistencyError("facet inequality cuts off an input point");
      if (v == c.b) tight.push_back(projected[i]);
    }
    if (affine_rank(tight) + 1 != hull_dim) {
      throw ConsistencyError("computed inequality does not define a facet");
    }
    h.inequalities.push_back(std::move(c));
  }

  if (options.verify_roundtrip) {
    std::set<RationalVector> input(points.begin(), points.end());
    for (const auto& v : vertex_enum(h, options.caps)) {
      if (!input.count(v)) throw ConsistencyError("H-representation has a vertex outside the input");
    }
  }
  return h;
}

std::vector<RationalVector> vertex_enum(const HRep& h, const Caps& caps) {
  const std::size_t dim = h.dim;
  for (const auto& c : h.equalities) {
    if (c.a.size() != dim) throw ShapeError("equality has the wrong dimension");
  }
  for (const auto& c : h.inequalities) {
    if (c.a.size() != dim) throw ShapeError("inequality has the wrong dimension");
  }

  // Solve the equalities: x_p = rhs_i - sum_f R[i][f] x_f for pivot p of row i.
  std::vector<RationalVector> eq_rows;
  for (const auto& e : h.equalities) {
    RationalVector r = e.a;
    r.push_back(e.b);
    eq_rows.push_back(std::move(r));
  }
  std::vector<std::size_t> pivots;
  const auto echelon = reduced_row_echelon(eq_rows, &pivots);
  if (!pivots.empty() && pivots.back() == dim) return {};  // inconsistent equalities
  std::vector<bool> is_pivot(dim, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_coords;
  for (std::size_t j = 0; j < dim; ++j) {
    if (!is_pivot[j]) free_coords.push_back(j);
  }
  const std::size_t e = free_coords.size();

  auto reconstruct = [&](const RationalVector& t) {
    RationalVector x(dim, 0);
    for (std::size_t j = 0; j < e; ++j) x[free_coords[j]] = t[j];
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      Rational v = echelon[i][dim];
      for (std::size_t j = 0; j < e; ++j) v -= echelon[i][free_coords[j]] * t[j];
      x[pivots[i]] = v;
    }
    return x;
  };

  if (e == 0) {
    RationalVector x = reconstruct({});
    if (h.contains(x)) return {x};
    return {};
  }

  // Homogenized cone over (s, t): (b - k) s - c.t >= 0 per inequality, and s >= 0.
  std::vector<IntVector> cone_rows;
  std::vector<RationalVector> rational_rows;
  for (const auto& c : h.inequalities) {
    RationalVector row(e + 1);
    Rational k = 0;
    for (std::size_t i = 0; i < pivots.size(); ++i) k += c.a[pivots[i]] * echelon[i][dim];
    row[0] = c.b - k;
    for (std::size_t j = 0; j < e; ++j) {
      Rational coef = c.a[free_coords[j]];
      for (std::size_t i = 0; i < pivots.size(); ++i) coef -= c.a[pivots[i]] * echelon[i][free_coords[j]];
      row[j + 1] = -coef;
    }
    rational_rows.push_back(row);
  }
  {
    RationalVector s_row(e + 1, 0);
    s_row[0] = 1;
    rational_rows.push_back(s_row);
  }
  if (rank(rational_rows) < e + 1) throw UnboundedError("polyhedron contains a line");
  for (const auto& r : rational_rows) cone_rows.push_back(primitive(r));

  std::vector<IntVector> rays;
  rays = cone_extreme_rays(cone_rows, e + 1, caps.max_rays);

  std::vector<RationalVector> out;
  bool recession = false;
  for (const auto& ray : rays) {
    if (sgn(ray[0]) == 0) {
      recession = true;
      continue;
    }
    RationalVector t(e);
    for (std::size_t j = 0; j < e; ++j) t[j] = Rational(ray[j + 1], ray[0]);
    for (auto& v : t) v.canonicalize();
    out.push_back(reconstruct(t));
  }
  if (recession && !out.empty()) throw UnboundedError("polyhedron is unbounded");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

HRep simplex_product_hrep(const Dims& dims) {
  HRep h;
  h.dim = dims.dim_f();
  for (std::size_t z = 0; z < dims.l; ++z) {
    Constraint e{RationalVector(h.dim, 0), 1};
    for (std::size_t x = 0; x < dims.n; ++x) {
      for (std::size_t y = 0; y < dims.m; ++y) e.a[index(dims, x, y, z)] = 1;
    }
    h.equalities.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < h.dim; ++i) {
    Constraint c{RationalVector(h.dim, 0), 0};
    c.a[i] = -1;
    h.inequalities.push_back(std::move(c));
  }
  return h;
}

HRep suite_polytope(const Dims& dims, const std::vector<LinearTest>& suite) {
  HRep h = simplex_product_hrep(dims);
  for (const auto& t : suite) {
    if (!(t.dims == dims)) throw ShapeError("test '" + t.id + "' does not match dims " + dims.str());
    t.check();
    Constraint c{RationalVector(h.dim, 0), static_cast<long>(t.alpha)};
    for (std::size_t i = 0; i < h.dim; ++i) c.a[i] = static_cast<long>(t.tau[i]);
    h.inequalities.push_back(std::move(c));
  }
  return h;
}

LinearTest block_normal_form(const Dims& dims, const Constraint& inequality) {
  if (inequality.a.size() != dims.dim_f()) throw ShapeError("inequality length does not match dims");
  Constraint shifted = inequality;
  for (std::size_t z = 0; z < dims.l; ++z) {
    Rational low = shifted.a[index(dims, 0, 0, z)];
    for (std::size_t x = 0; x < dims.n; ++x) {
      for (std::size_t y = 0; y < dims.m; ++y) low = std::min(low, shifted.a[index(dims, x, y, z)]);
    }
    if (low == 0) continue;
    for (std::size_t x = 0; x < dims.n; ++x) {
      for (std::size_t y = 0; y < dims.m; ++y) shifted.a[index(dims, x, y, z)] -= low;
    }
    shifted.b -= low;
  }
  const Constraint p = primitive_constraint(shifted);
  LinearTest t;
  t.dims = dims;
  t.tau.resize(dims.dim_f());
  for (std::size_t i = 0; i < p.a.size(); ++i) {
    if (!p.a[i].get_num().fits_slong_p()) throw CapacityError("facet coefficient exceeds 64 bits");
    t.tau[i] = p.a[i].get_num().get_si();
  }
  if (!p.b.get_num().fits_slong_p()) throw CapacityError("facet bound exceeds 64 bits");
  t.alpha = p.b.get_num().get_si();
  t.id = "facet";
  return t;
}

bool implied_by(const Constraint& inequality, const HRep& polytope, const Caps& caps) {
  for (const auto& v : vertex_enum(polytope, caps)) {
    if (dot(inequality.a, v) > inequality.b) return false;
  }
  return true;
}

std::vector<LinearTest> nontrivial_facets(const Dims& dims, const Caps& caps) {
  const VertexSet vs = dedup_columns(dims, caps);
  FacetOptions options;
  options.caps = caps;
  options.equality_hints = simplex_product_hrep(dims).equalities;
  const HRep h = facet_enum(vs.vertices(), options);
  std::vector<LinearTest> out;
  std::set<std::pair<std::vector<std::int64_t>, std::int64_t>> seen;
  for (const auto& c : h.inequalities) {
    LinearTest t = block_normal_form(dims, c);
    if (max_over_simplex_product(t) <= t.alpha) continue;
    if (!seen.emplace(t.tau, t.alpha).second) continue;
    t.id = "facet#" + std::to_string(out.size() + 1);
    out.push_back(std::move(t));
  }
  return out;
}

SufficiencyResult sufficiency_check(const Dims& dims, const std::vector<LinearTest>& suite,
                                    const Caps& caps) {
  SufficiencyResult result;
  const VertexSet vs = dedup_columns(dims, caps);
  result.b_vertex_count = vs.size();
  for (std::size_t v = 0; v < vs.size(); ++v) {
    const CondDist f{dims, vs.vertex(v)};
    for (const auto& t : suite) {
      if (!eval_test(t, f).pass) {
        result.kind = SufficiencyResult::Kind::suite_not_necessary;
        result.counterexample = f.values;
        return result;
      }
    }
  }

  const auto suite_vertices = vertex_enum(suite_polytope(dims, suite), caps);
  result.suite_vertex_count = suite_vertices.size();
  std::set<std::vector<std::uint32_t>> b_supports(vs.supports.begin(), vs.supports.end());
  for (const auto& v : suite_vertices) {
    bool zero_one = true;
    std::vector<std::uint32_t> support;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 1) {
        support.push_back(static_cast<std::uint32_t>(i));
      } else if (v[i] != 0) {
        zero_one = false;
      }
    }
    const bool inside =
        zero_one ? b_supports.count(support) > 0 : lp_feasible(vs, CondDist{dims, v}).feasible();
    if (!inside) {
      result.kind = SufficiencyResult::Kind::suite_too_weak;
      result.counterexample = v;
      return result;
    }
  }
  return result;
}

}  // namespace ivtest

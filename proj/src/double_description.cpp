#include "ivtest/double_description.hpp"

#include <bit>

#include "ivtest/errors.hpp"

namespace ivtest {
namespace {

class Bitset {
 public:
  explicit Bitset(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  Bitset operator&(const Bitset& o) const {
    Bitset r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
    return r;
  }
  bool contains(const Bitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if ((o.words_[i] & ~words_[i]) != 0) return false;
    }
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct Ray {
  IntVector v;
  Bitset zeros;  // processed rows on which the ray is tight
};

BigInt dot(const IntVector& a, const IntVector& b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  }
  return s;
}

}  // namespace

std::vector<RationalVector> reduced_row_echelon(std::vector<RationalVector> m,
                                                std::vector<std::size_t>* pivots) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    const Rational inv = 1 / m[r][c];
    for (auto& v : m[r]) v *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  m.resize(r);
  return m;
}

IntVector primitive(const IntVector& v) {
  BigInt g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g == 0 || g == 1) return v;
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) mpz_divexact(out[i].get_mpz_t(), v[i].get_mpz_t(), g.get_mpz_t());
  return out;
}

IntVector primitive(const RationalVector& v) {
  BigInt l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].get_num() * (l / v[i].get_den());
  return primitive(out);
}

std::size_t rank(const std::vector<RationalVector>& rows) {
  std::vector<std::size_t> pivots;
  reduced_row_echelon(rows, &pivots);
  return pivots.size();
}

std::vector<IntVector> cone_extreme_rays(const std::vector<IntVector>& rows, std::size_t dim,
                                         std::uint64_t max_rays) {
  if (dim == 0) return {};
  for (const auto& r : rows) {
    if (r.size() != dim) throw ShapeError("cone row length does not match dimension");
  }

  // Greedy choice of dim independent rows, in input order.
  std::vector<std::size_t> basis_rows;
  std::vector<RationalVector> echelon;
  for (std::size_t i = 0; i < rows.size() && basis_rows.size() < dim; ++i) {
    std::vector<RationalVector> trial = echelon;
    RationalVector row(dim);
    for (std::size_t j = 0; j < dim; ++j) row[j] = rows[i][j];
    trial.push_back(row);
    std::vector<std::size_t> pivots;
    auto reduced = reduced_row_echelon(trial, &pivots);
    if (pivots.size() > echelon.size()) {
      echelon = std::move(reduced);
      basis_rows.push_back(i);
    }
  }
  if (basis_rows.size() < dim) throw ConsistencyError("cone is not pointed");

  // Initial simplicial cone: rays are the columns of the inverse of the chosen rows.
  std::vector<RationalVector> aug(dim, RationalVector(2 * dim, 0));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) aug[i][j] = rows[basis_rows[i]][j];
    aug[i][dim + i] = 1;
  }
  std::vector<std::size_t> pivots;
  aug = reduced_row_echelon(std::move(aug), &pivots);

  std::vector<Ray> rays;
  for (std::size_t j = 0; j < dim; ++j) {
    RationalVector col(dim);
    for (std::size_t i = 0; i < dim; ++i) col[i] = aug[i][dim + j];
    Ray ray{primitive(col), Bitset(rows.size())};
    for (std::size_t k = 0; k < dim; ++k) {
      if (k != j) ray.zeros.set(basis_rows[k]);
    }
    rays.push_back(std::move(ray));
  }

  if (rays.size() > max_rays) {
    throw CapacityError("double description exceeded max_rays = " + std::to_string(max_rays));
  }

  std::vector<bool> in_basis(rows.size(), false);
  for (auto i : basis_rows) in_basis[i] = true;

  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (in_basis[i]) continue;
    std::vector<BigInt> values(rays.size());
    std::vector<std::size_t> pos, neg, zero;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      values[r] = dot(rows[i], rays[r].v);
      const int s = sgn(values[r]);
      (s > 0 ? pos : s < 0 ? neg : zero).push_back(r);
    }
    if (neg.empty()) {
      for (auto r : zero) rays[r].zeros.set(i);
      continue;
    }

    std::vector<Ray> next;
    next.reserve(pos.size() + zero.size());
    for (auto r : pos) next.push_back(rays[r]);
    for (auto r : zero) {
      next.push_back(rays[r]);
      next.back().zeros.set(i);
    }
    for (auto p : pos) {
      for (auto n : neg) {
        Bitset common = rays[p].zeros & rays[n].zeros;
        if (common.count() + 2 < dim) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r != p && r != n && rays[r].zeros.contains(common)) adjacent = false;
        }
        if (!adjacent) continue;
        // Positive combination vanishing on row i.
        IntVector v(dim);
        const BigInt a = values[p];
        const BigInt b = -values[n];
        for (std::size_t k = 0; k < dim; ++k) v[k] = a * rays[n].v[k] + b * rays[p].v[k];
        common.set(i);
        next.push_back({primitive(v), std::move(common)});
        if (next.size() > max_rays) {
          throw CapacityError("double description exceeded max_rays = " + std::to_string(max_rays));
        }
      }
    }
    rays = std::move(next);
  }

  std::vector<IntVector> out;
  out.reserve(rays.size());
  for (auto& r : rays) out.push_back(std::move(r.v));
  return out;
}

}  // namespace ivtest

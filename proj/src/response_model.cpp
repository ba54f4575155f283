#include "ivtest/response_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "ivtest/errors.hpp"

namespace ivtest {
namespace {

std::uint64_t checked_pair_count(const Dims& dims, const Caps& caps) {
  const BigInt count = dims.pair_count();
  if (count > BigInt(static_cast<unsigned long>(caps.max_pairs))) {
    throw CapacityError("dims " + dims.str() + " have " + to_string(count) +
                        " response pairs, above max_pairs = " + std::to_string(caps.max_pairs));
  }
  return count.get_ui();
}

std::uint64_t checked_test_count(const Dims& dims, const Caps& caps) {
  const BigInt count = dims.dim_t();
  if (count > BigInt(static_cast<unsigned long>(caps.max_tests))) {
    throw CapacityError("dims " + dims.str() + " have " + to_string(count) +
                        " Pearl inequalities, above max_tests = " + std::to_string(caps.max_tests));
  }
  return count.get_ui();
}

// Mixed-radix increment with the first digit most significant. Returns false on wrap-around.
bool increment(std::vector<std::uint32_t>& digits, std::uint32_t radix) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < radix) return true;
    digits[i] = 0;
  }
  return false;
}

std::string join_1based(const std::vector<std::uint32_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i] + 1);
  }
  return s + ")";
}

// Exp(1) sample from 53 random bits, quantized to a positive integer weight.
unsigned long exponential_weight(std::mt19937_64& rng) {
  const double u = static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
  return static_cast<unsigned long>(std::floor(-std::log(u) * 65536.0)) + 1;
}

}  // namespace

std::string ResponsePair::str() const { return "g=" + join_1based(g) + " h=" + join_1based(h); }

BinaryMatrix::BinaryMatrix(std::size_t rows, std::vector<std::vector<std::uint32_t>> columns)
    : rows_(rows), columns_(std::move(columns)) {
  for (auto& col : columns_) {
    std::sort(col.begin(), col.end());
    if (!col.empty() && col.back() >= rows_) throw ShapeError("binary matrix entry out of range");
  }
}

bool BinaryMatrix::at(std::size_t r, std::size_t c) const {
  const auto& col = columns_.at(c);
  return std::binary_search(col.begin(), col.end(), static_cast<std::uint32_t>(r));
}

std::vector<std::uint32_t> BinaryMatrix::row(std::size_t r) const {
  std::vector<std::uint32_t> out;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (at(r, c)) out.push_back(static_cast<std::uint32_t>(c));
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> BinaryMatrix::row_supports() const {
  std::vector<std::vector<std::uint32_t>> out(rows_);
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    for (auto r : columns_[c]) out[r].push_back(static_cast<std::uint32_t>(c));
  }
  return out;
}

std::string render_grid(const BinaryMatrix& matrix, const std::vector<std::string>& row_labels,
                        const std::vector<std::string>& col_labels) {
  std::size_t width = 0;
  for (const auto& label : row_labels) width = std::max(width, label.size());
  std::ostringstream out;
  if (!col_labels.empty()) {
    for (std::size_t c = 0; c < col_labels.size(); ++c) {
      out << "# col " << c + 1 << ": " << col_labels[c] << '\n';
    }
  }
  const auto rows = matrix.row_supports();
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    std::string label = r < row_labels.size() ? row_labels[r] : std::to_string(r + 1);
    label.resize(width, ' ');
    out << label << ' ';
    std::string line(matrix.cols(), '0');
    for (auto c : rows[r]) line[c] = '1';
    out << line << '\n';
  }
  return out.str();
}

std::vector<ResponsePair> enumerate_pairs(const Dims& dims, const Caps& caps) {
  const std::uint64_t count = checked_pair_count(dims, caps);
  std::vector<ResponsePair> pairs;
  pairs.reserve(count);
  std::vector<std::uint32_t> g(dims.l, 0);
  do {
    std::vector<std::uint32_t> h(dims.n, 0);
    do {
      pairs.push_back({g, h});
    } while (increment(h, static_cast<std::uint32_t>(dims.m)));
  } while (increment(g, static_cast<std::uint32_t>(dims.n)));
  return pairs;
}

std::size_t pair_index(const Dims& dims, const ResponsePair& pair) {
  if (pair.g.size() != dims.l || pair.h.size() != dims.n) throw ShapeError("pair/dims mismatch");
  std::size_t gi = 0;
  for (auto v : pair.g) {
    if (v >= dims.n) throw RangeError("g value out of range");
    gi = gi * dims.n + v;
  }
  std::size_t hi = 0;
  std::size_t h_count = 1;
  for (auto v : pair.h) {
    if (v >= dims.m) throw RangeError("h value out of range");
    hi = hi * dims.m + v;
    h_count *= dims.m;
  }
  return gi * h_count + hi;
}

std::vector<std::uint32_t> pair_support(const Dims& dims, const ResponsePair& pair) {
  std::vector<std::uint32_t> rows;
  rows.reserve(dims.l);
  for (std::size_t z = 0; z < dims.l; ++z) {
    const std::size_t x = pair.g[z];
    rows.push_back(static_cast<std::uint32_t>(index(dims, x, pair.h[x], z)));
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

BinaryMatrix build_A2(const Dims& dims, const Caps& caps) {
  const auto pairs = enumerate_pairs(dims, caps);
  std::vector<std::vector<std::uint32_t>> columns;
  columns.reserve(pairs.size());
  for (const auto& p : pairs) columns.push_back(pair_support(dims, p));
  return BinaryMatrix(dims.dim_f(), std::move(columns));
}

PearlRowLabel pearl_row_label(const Dims& dims, std::size_t row) {
  std::size_t per_x = 1;
  for (std::size_t j = 0; j < dims.m; ++j) per_x *= dims.l;
  if (row >= per_x * dims.n) throw RangeError("Pearl row out of range");
  PearlRowLabel label;
  label.x = row / per_x;
  std::size_t rest = row % per_x;
  label.z_of_y.assign(dims.m, 0);
  for (std::size_t j = dims.m; j-- > 0;) {
    label.z_of_y[j] = rest % dims.l;
    rest /= dims.l;
  }
  return label;
}

BinaryMatrix build_A1(const Dims& dims, const Caps& caps) {
  const std::uint64_t rows = checked_test_count(dims, caps);
  std::vector<std::vector<std::uint32_t>> columns(dims.dim_f());
  for (std::uint64_t r = 0; r < rows; ++r) {
    const PearlRowLabel label = pearl_row_label(dims, r);
    for (std::size_t y = 0; y < dims.m; ++y) {
      columns[index(dims, label.x, y, label.z_of_y[y])].push_back(static_cast<std::uint32_t>(r));
    }
  }
  return BinaryMatrix(rows, std::move(columns));
}

std::vector<std::vector<std::uint8_t>> build_A3(const Dims& dims, const Caps& caps) {
  const BinaryMatrix a1 = build_A1(dims, caps);
  const BinaryMatrix a2 = build_A2(dims, caps);
  std::vector<std::vector<std::uint8_t>> a3(a1.rows(), std::vector<std::uint8_t>(a2.cols(), 0));
  for (std::size_t c = 0; c < a2.cols(); ++c) {
    for (auto f_row : a2.column(c)) {
      for (auto t_row : a1.column(f_row)) {
        if (++a3[t_row][c] > 1) {
          throw ConsistencyError("A1*A2 entry (" + std::to_string(t_row) + "," + std::to_string(c) +
                                 ") exceeds 1: two terms of a Pearl row share a response pair");
        }
      }
    }
  }
  return a3;
}

bool same_column(const ResponsePair& p, const ResponsePair& q) {
  if (p.g != q.g) return false;
  for (auto x : p.g) {
    if (p.h[x] != q.h[x]) return false;
  }
  return true;
}

RationalVector VertexSet::vertex(std::size_t v) const {
  RationalVector out(dims.dim_f(), 0);
  for (auto r : supports.at(v)) out[r] = 1;
  return out;
}

std::vector<RationalVector> VertexSet::vertices() const {
  std::vector<RationalVector> out;
  out.reserve(size());
  for (std::size_t v = 0; v < size(); ++v) out.push_back(vertex(v));
  return out;
}

VertexSet dedup_columns(const Dims& dims, const BinaryMatrix& a2) {
  if (a2.rows() != dims.dim_f()) throw ShapeError("A2 row count does not match dims");
  const auto pairs = enumerate_pairs(dims, Caps{.max_pairs = a2.cols()});
  if (pairs.size() != a2.cols()) throw ShapeError("A2 column count does not match dims");

  VertexSet out;
  out.dims = dims;
  out.class_of.resize(a2.cols());
  std::map<std::vector<std::uint32_t>, std::size_t> by_support;
  // Closed-form key: g together with h restricted to the image of g.
  std::map<std::vector<std::uint32_t>, std::size_t> by_rule;
  std::vector<std::size_t> rule_of_vertex;
  for (std::size_t c = 0; c < a2.cols(); ++c) {
    const auto col = a2.column(c);
    std::vector<std::uint32_t> support(col.begin(), col.end());
    auto [it, inserted] = by_support.emplace(support, out.supports.size());
    if (inserted) {
      out.supports.push_back(std::move(support));
      out.representative.push_back(c);
    }
    out.class_of[c] = it->second;

    const auto& p = pairs[c];
    std::vector<std::uint32_t> key = p.g;
    for (std::size_t x = 0; x < dims.n; ++x) {
      const bool in_image = std::find(p.g.begin(), p.g.end(), x) != p.g.end();
      key.push_back(in_image ? p.h[x] : static_cast<std::uint32_t>(dims.m));
    }
    auto [rit, rule_new] = by_rule.emplace(std::move(key), by_rule.size());
    if (inserted != rule_new) {
      throw ConsistencyError("closed-form duplicate rule disagrees with column equality at pair " +
                             p.str());
    }
    if (inserted) rule_of_vertex.push_back(rit->second);
    if (rule_of_vertex[it->second] != rit->second) {
      throw ConsistencyError("closed-form duplicate rule splits columns differently at pair " +
                             p.str());
    }
  }
  return out;
}

VertexSet dedup_columns(const Dims& dims, const Caps& caps) {
  return dedup_columns(dims, build_A2(dims, caps));
}

void require_valid(const ResponseDist& q) {
  const BigInt count = q.dims.pair_count();
  if (BigInt(static_cast<unsigned long>(q.q.size())) != count) {
    throw ShapeError("response distribution for dims " + q.dims.str() + " needs " +
                     to_string(count) + " entries, got " + std::to_string(q.q.size()));
  }
  Rational sum = 0;
  for (const auto& v : q.q) {
    if (v < 0) throw ShapeError("response distribution has a negative entry");
    sum += v;
  }
  if (sum != 1) throw ShapeError("response distribution sums to " + to_string(sum));
}

CondDist sample_compatible(const Dims& dims, const ResponseDist& q) {
  if (!(q.dims == dims)) throw ShapeError("response distribution dims do not match");
  require_valid(q);
  const auto pairs = enumerate_pairs(dims, Caps{.max_pairs = q.q.size()});
  CondDist f{dims, RationalVector(dims.dim_f(), 0)};
  for (std::size_t c = 0; c < pairs.size(); ++c) {
    if (q.q[c] == 0) continue;
    for (auto r : pair_support(dims, pairs[c])) f.values[r] += q.q[c];
  }
  return f;
}

RationalVector random_simplex_point(std::size_t size, std::mt19937_64& rng) {
  std::vector<unsigned long> weights(size);
  BigInt total = 0;
  for (auto& w : weights) {
    w = exponential_weight(rng);
    total += w;
  }
  RationalVector out;
  out.reserve(size);
  for (auto w : weights) {
    Rational v(BigInt(w), total);
    v.canonicalize();
    out.push_back(std::move(v));
  }
  return out;
}

ResponseDist random_response_dist(const Dims& dims, std::mt19937_64& rng, const Caps& caps) {
  const std::uint64_t count = checked_pair_count(dims, caps);
  return {dims, random_simplex_point(count, rng)};
}

CondDist random_cond_dist(const Dims& dims, std::mt19937_64& rng) {
  CondDist f{dims, RationalVector(dims.dim_f(), 0)};
  for (std::size_t z = 0; z < dims.l; ++z) {
    const auto block = random_simplex_point(dims.n * dims.m, rng);
    for (std::size_t x = 0; x < dims.n; ++x) {
      for (std::size_t y = 0; y < dims.m; ++y) f.values[index(dims, x, y, z)] = block[x * dims.m + y];
    }
  }
  return f;
}

}  // namespace ivtest

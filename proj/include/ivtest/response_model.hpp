#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ivtest/core.hpp"

namespace ivtest {

/// One value of the latent selector: X = g(Z), Y = h(X). Entries are 0-based.
struct ResponsePair {
  std::vector<std::uint32_t> g;  // length l, values in [0, n)
  std::vector<std::uint32_t> h;  // length n, values in [0, m)
  bool operator==(const ResponsePair&) const = default;
  std::string str() const;  // "g=(1,2,1) h=(2,1)", 1-based
};

/// 0/1 matrix stored column by column as sorted lists of the rows holding a one.
class BinaryMatrix {
 public:
  BinaryMatrix(std::size_t rows, std::vector<std::vector<std::uint32_t>> columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  std::span<const std::uint32_t> column(std::size_t c) const { return columns_[c]; }
  const std::vector<std::vector<std::uint32_t>>& columns() const { return columns_; }
  bool at(std::size_t r, std::size_t c) const;
  /// Columns holding a one in row r, ascending.
  std::vector<std::uint32_t> row(std::size_t r) const;
  /// Support of every row, computed in one pass.
  std::vector<std::vector<std::uint32_t>> row_supports() const;

 private:
  std::size_t rows_;
  std::vector<std::vector<std::uint32_t>> columns_;
};

/// Plain-text 0/1 grid with labels, for debugging.
std::string render_grid(const BinaryMatrix& matrix, const std::vector<std::string>& row_labels,
                        const std::vector<std::string>& col_labels);

/// Distribution Q over the response pairs, in enumerate_pairs() order.
struct ResponseDist {
  Dims dims;
  RationalVector q;
};

/// All n^l * m^n pairs in lexicographic order (g major, h minor; first entries most significant).
std::vector<ResponsePair> enumerate_pairs(const Dims& dims, const Caps& caps = {});

/// Position of a pair in enumerate_pairs() order.
std::size_t pair_index(const Dims& dims, const ResponsePair& pair);

/// Row offsets (index order) of the ones in the A2 column of a pair, ascending.
std::vector<std::uint32_t> pair_support(const Dims& dims, const ResponsePair& pair);

/// A2: row (x,y,z), column (g,h), one iff g(z) = x and h(x) = y.
BinaryMatrix build_A2(const Dims& dims, const Caps& caps = {});

/// A1: one row per (x, assignment y -> z_y), with ones at (x, y, z_y) for every y.
/// Rows are ordered by x, then by the assignment read as a base-l number with y1 most significant.
BinaryMatrix build_A1(const Dims& dims, const Caps& caps = {});

/// The z-assignment (one z per y) behind row r of A1, together with its x.
struct PearlRowLabel {
  std::size_t x = 0;
  std::vector<std::size_t> z_of_y;
};
PearlRowLabel pearl_row_label(const Dims& dims, std::size_t row);

/// A3 = A1 * A2, dense. Throws ConsistencyError if any entry exceeds one.
std::vector<std::vector<std::uint8_t>> build_A3(const Dims& dims, const Caps& caps = {});

/// Distinct columns of A2, i.e. the vertices of the compatible set.
struct VertexSet {
  Dims dims;
  std::vector<std::vector<std::uint32_t>> supports;  // one row-support per vertex, first-seen order
  std::vector<std::size_t> representative;            // a pair index producing each vertex
  std::vector<std::size_t> class_of;                  // vertex id of every pair

  std::size_t size() const { return supports.size(); }
  RationalVector vertex(std::size_t v) const;
  std::vector<RationalVector> vertices() const;
};

/// Deduplicates the columns of A2 by raw equality, and cross-checks the partition
/// against the closed-form rule (same g, h agreeing on the image of g).
VertexSet dedup_columns(const Dims& dims, const BinaryMatrix& a2);
VertexSet dedup_columns(const Dims& dims, const Caps& caps = {});

/// Closed-form duplicate test: col(p) == col(q) iff g == g' and h, h' agree on g(Z).
bool same_column(const ResponsePair& p, const ResponsePair& q);

/// F = A2 q. Throws ShapeError on a dimension mismatch.
CondDist sample_compatible(const Dims& dims, const ResponseDist& q);

/// Throws ShapeError unless q is a probability vector of the right length.
void require_valid(const ResponseDist& q);

/// Random Q, uniform over the simplex up to quantization: normalized exponentials drawn
/// from the generator and rounded to integer weights. Deterministic for a given engine state.
ResponseDist random_response_dist(const Dims& dims, std::mt19937_64& rng, const Caps& caps = {});

/// Quantized random point of the probability simplex of the given size.
RationalVector random_simplex_point(std::size_t size, std::mt19937_64& rng);

/// Uniform random conditional distribution: each z-block drawn independently from the simplex.
CondDist random_cond_dist(const Dims& dims, std::mt19937_64& rng);

}  // namespace ivtest

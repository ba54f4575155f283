#pragma once

#include <cstdint>
#include <vector>

#include "ivtest/rational.hpp"

namespace ivtest {

using IntVector = std::vector<BigInt>;

/// Smallest positive multiple of v with coprime integer entries (zero stays zero).
IntVector primitive(const IntVector& v);
/// Clears denominators of a rational vector, then makes it primitive.
IntVector primitive(const RationalVector& v);

/// Reduced row echelon form; zero rows are dropped. Pivot columns are appended to
/// `pivot_columns` when given.
std::vector<RationalVector> reduced_row_echelon(std::vector<RationalVector> rows,
                                                std::vector<std::size_t>* pivot_columns = nullptr);

/// Rank of a rational matrix given row by row.
std::size_t rank(const std::vector<RationalVector>& rows);

/// Extreme rays of the pointed cone { y in R^dim : row . y >= 0 for every row }, by
/// incremental double description with the combinatorial adjacency test. Rows are
/// inserted in the order given. Rays come back primitive.
///
/// Throws ConsistencyError("cone is not pointed") when the rows have rank below dim,
/// and CapacityError when the intermediate ray count exceeds max_rays.
std::vector<IntVector> cone_extreme_rays(const std::vector<IntVector>& rows, std::size_t dim,
                                         std::uint64_t max_rays = 2'000'000);

}  // namespace ivtest

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ivtest/core.hpp"

namespace ivtest {

/// (Δ^k x^l)(0), as the alternating binomial sum. Cross-checked against the recursive
/// difference table in finite_difference_recursive().
BigInt finite_difference(std::uint64_t k, std::uint64_t l);

/// Same value from the recursion Δ^k f(x) = Δ^{k-1} f(x+1) - Δ^{k-1} f(x).
BigInt finite_difference_recursive(std::uint64_t k, std::uint64_t l);

/// Number of maps Z -> X (|Z| = l, |X| = n) whose image has exactly k elements.
BigInt count_G_k(std::uint64_t n, std::uint64_t l, std::uint64_t k);

/// Number of distinct columns of A2. Evaluates the alternating-sum form, the Δ form and
/// the sum over image sizes; throws ConsistencyError if they disagree.
BigInt count_extreme_B(const Dims& dims);

/// (n*m)^l: the vertex count of the product of l simplices.
BigInt count_extreme_F(const Dims& dims);

/// count_extreme_B / count_extreme_F.
Rational ratio_R(const Dims& dims);

struct ExtremeCounts {
  BigInt ext_B;
  BigInt ext_F;
  Rational ratio_R;
};
ExtremeCounts extreme_counts(const Dims& dims);

enum class Axis { l, m, n };
Axis parse_axis(const std::string& name);
std::string axis_name(Axis axis);

struct TrendRow {
  Dims dims;
  ExtremeCounts counts;
};

enum class Trend { strictly_increasing, strictly_decreasing, constant, mixed };
std::string trend_name(Trend trend);

struct TrendReport {
  Axis axis;
  std::vector<TrendRow> rows;
  Trend trend = Trend::mixed;
  /// Direction the limits predict: up towards 1 along n, down towards 0 along l, and down
  /// towards 0 along m when n < l. Along m with n >= l only a constant limit is known.
  std::optional<Trend> expected;
  bool consistent = false;
  std::string csv() const;
};

/// R along one axis with the other two sizes fixed. `fixed` carries the two fixed sizes
/// (its entry for `axis` is ignored); `range` must be nonempty and strictly increasing.
TrendReport trend_report(Axis axis, const Dims& fixed, const std::vector<std::size_t>& range);

}  // namespace ivtest

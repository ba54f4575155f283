#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ivtest/rational.hpp"

namespace ivtest {

/// Size caps guarding the combinatorial constructions. Every operation that
/// could blow up checks the relevant cap up front and throws CapacityError.
struct Caps {
  std::uint64_t max_pairs = 1'000'000;         // n^l * m^n response pairs
  std::uint64_t max_tests = 1'000'000;         // n * l^m Pearl inequalities
  std::uint64_t max_permutations = 1'000'000;  // n! * m! * l! relabelings
  std::uint64_t max_rays = 2'000'000;          // intermediate double-description rays
};

/// Domain sizes: l values of Z (instrument), m values of Y (outcome), n values of X (treatment).
struct Dims {
  std::size_t l = 1;
  std::size_t m = 1;
  std::size_t n = 1;

  Dims() = default;
  /// Throws RangeError unless every size is at least one.
  Dims(std::size_t l, std::size_t m, std::size_t n);

  /// Length m*n*l of a conditional-distribution vector.
  std::size_t dim_f() const { return m * n * l; }
  /// n * l^m, the number of Pearl inequalities.
  BigInt dim_t() const;
  /// n^l * m^n, the number of response-function pairs.
  BigInt pair_count() const;

  bool operator==(const Dims&) const = default;
  std::string str() const;  // "(l,m,n)"
};

/// Offset of P(x, y | z) in the canonical coordinate order: x slowest, then z, y fastest.
/// Arguments are 0-based; throws RangeError when out of range.
std::size_t index(const Dims& dims, std::size_t x, std::size_t y, std::size_t z);

struct Coordinate {
  std::size_t x = 0;
  std::size_t y = 0;
  std::size_t z = 0;
  bool operator==(const Coordinate&) const = default;
};

/// Inverse of index().
Coordinate coordinate(const Dims& dims, std::size_t offset);

/// "P(x1,y2|z3)" with 1-based labels.
std::string coordinate_label(const Dims& dims, std::size_t offset);

/// The conditional-distribution vector F(P) of P(x, y | z), in index() order.
struct CondDist {
  Dims dims;
  RationalVector values;

  const Rational& at(std::size_t x, std::size_t y, std::size_t z) const {
    return values[index(dims, x, y, z)];
  }
};

struct Validation {
  bool ok = true;
  std::string message;               // names the first violated constraint
  std::optional<std::size_t> block;  // 0-based z index, when a block sum is at fault
  explicit operator bool() const { return ok; }
};

/// Accepts iff every entry is in [0,1] and every z-block sums to exactly one.
/// Throws ShapeError when the vector length is not m*n*l.
Validation validate(const CondDist& dist);

/// Same as validate(), but throws ShapeError with the violation message.
void require_valid(const CondDist& dist);

/// Sum over x, y of the entries belonging to z-block z.
Rational block_sum(const CondDist& dist, std::size_t z);

/// Uniform distribution: every entry equals 1/(n*m).
CondDist uniform_dist(const Dims& dims);

/// Point mass P(x, y | z) = 1 for every z.
CondDist point_mass_dist(const Dims& dims, std::size_t x, std::size_t y);

}  // namespace ivtest

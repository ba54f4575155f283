#pragma once

#include <string>
#include <vector>

#include "ivtest/core.hpp"

namespace ivtest {

/// Discretized view of P(Y in B_i, X = x | Z = z) for a finite list of cells B_i and a finite
/// list of probe values z. p[cell][x][probe].
///
/// The cells may cover only part of the line: whatever mass a probe does not place in the
/// listed cells is treated as one implicit remainder cell.
struct PartitionTable {
  std::size_t x_count = 0;
  std::vector<std::string> cells;
  std::vector<std::string> probes;
  std::vector<std::vector<RationalVector>> p;

  /// Entries in [0,1], every probe's listed mass at most 1. Throws ShapeError otherwise,
  /// including for empty cell or probe lists.
  void check() const;
  /// 1 - (mass listed for the probe).
  Rational remainder(std::size_t probe) const;
};

struct Theorem8Result {
  /// max over x of sum over cells of max over probes. A value above 1 rejects the model.
  Rational statistic;
  /// statistic plus the largest remainder: an upper bound for the same sum over any
  /// completion of the partition. Equals `statistic` when the cells carry all the mass.
  Rational with_remainder;
  std::size_t argmax_x = 0;
  /// argmax_probe[cell][x]: probe attaining the inner maximum (first one on ties).
  std::vector<std::vector<std::size_t>> argmax_probe;
  /// per-x sums.
  RationalVector per_x;
};

Theorem8Result theorem8_statistic(const PartitionTable& table);

/// Table with cells = Y values and probes = Z values, read off a discrete distribution.
PartitionTable table_from_dist(const CondDist& dist);

struct RefinementReport {
  Rational coarse;
  Rational fine;
  bool monotone = true;  // fine >= coarse
};

/// `fine_to_coarse[i]` is the coarse cell containing fine cell i; every coarse cell must
/// receive at least one fine cell. Compares the statistic of the coarse table (obtained by
/// summing) with that of `fine`. Throws ShapeError on an invalid mapping.
RefinementReport refine_partition(const PartitionTable& fine,
                                  const std::vector<std::size_t>& fine_to_coarse);

/// Sums fine cells into coarse cells.
PartitionTable coarsen(const PartitionTable& fine, const std::vector<std::size_t>& fine_to_coarse);

}  // namespace ivtest

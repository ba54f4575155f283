#include "ivtest/continuous.hpp"

#include "ivtest/errors.hpp"

namespace ivtest {

void PartitionTable::check() const {
  if (cells.empty()) throw ShapeError("partition table has no cells");
  if (probes.empty()) throw ShapeError("partition table has no probes");
  if (x_count == 0) throw ShapeError("partition table has no x values");
  if (p.size() != cells.size()) throw ShapeError("partition table: one slice per cell expected");
  for (std::size_t c = 0; c < p.size(); ++c) {
    if (p[c].size() != x_count) {
      throw ShapeError("cell '" + cells[c] + "' needs " + std::to_string(x_count) + " rows");
    }
    for (const auto& row : p[c]) {
      if (row.size() != probes.size()) {
        throw ShapeError("cell '" + cells[c] + "' needs one entry per probe");
      }
      for (const auto& v : row) {
        if (v < 0 || v > 1) throw ShapeError("cell '" + cells[c] + "' has an entry outside [0,1]");
      }
    }
  }
  for (std::size_t z = 0; z < probes.size(); ++z) {
    if (remainder(z) < 0) {
      throw ShapeError("probe '" + probes[z] + "' places more than total mass 1 in the cells");
    }
  }
}

Rational PartitionTable::remainder(std::size_t probe) const {
  Rational sum = 0;
  for (const auto& cell : p) {
    for (const auto& row : cell) sum += row.at(probe);
  }
  return 1 - sum;
}

Theorem8Result theorem8_statistic(const PartitionTable& table) {
  table.check();
  Theorem8Result r;
  r.argmax_probe.assign(table.cells.size(), std::vector<std::size_t>(table.x_count, 0));
  r.per_x.assign(table.x_count, 0);
  for (std::size_t x = 0; x < table.x_count; ++x) {
    for (std::size_t c = 0; c < table.cells.size(); ++c) {
      const auto& row = table.p[c][x];
      std::size_t best = 0;
      for (std::size_t z = 1; z < row.size(); ++z) {
        if (row[z] > row[best]) best = z;
      }
      r.argmax_probe[c][x] = best;
      r.per_x[x] += row[best];
    }
  }
  r.statistic = r.per_x[0];
  for (std::size_t x = 1; x < table.x_count; ++x) {
    if (r.per_x[x] > r.statistic) {
      r.statistic = r.per_x[x];
      r.argmax_x = x;
    }
  }
  Rational rest = 0;
  for (std::size_t z = 0; z < table.probes.size(); ++z) rest = std::max(rest, table.remainder(z));
  r.with_remainder = r.statistic + rest;
  return r;
}

PartitionTable table_from_dist(const CondDist& dist) {
  require_valid(dist);
  const Dims& d = dist.dims;
  PartitionTable t;
  t.x_count = d.n;
  for (std::size_t y = 0; y < d.m; ++y) t.cells.push_back("y" + std::to_string(y + 1));
  for (std::size_t z = 0; z < d.l; ++z) t.probes.push_back("z" + std::to_string(z + 1));
  t.p.assign(d.m, std::vector<RationalVector>(d.n, RationalVector(d.l)));
  for (std::size_t y = 0; y < d.m; ++y) {
    for (std::size_t x = 0; x < d.n; ++x) {
      for (std::size_t z = 0; z < d.l; ++z) t.p[y][x][z] = dist.at(x, y, z);
    }
  }
  return t;
}

PartitionTable coarsen(const PartitionTable& fine, const std::vector<std::size_t>& fine_to_coarse) {
  fine.check();
  if (fine_to_coarse.size() != fine.cells.size()) {
    throw ShapeError("refinement mapping needs one entry per fine cell");
  }
  std::size_t coarse_count = 0;
  for (auto c : fine_to_coarse) coarse_count = std::max(coarse_count, c + 1);
  std::vector<bool> hit(coarse_count, false);
  for (auto c : fine_to_coarse) hit[c] = true;
  for (std::size_t c = 0; c < coarse_count; ++c) {
    if (!hit[c]) throw ShapeError("coarse cell " + std::to_string(c) + " receives no fine cell");
  }

  PartitionTable coarse;
  coarse.x_count = fine.x_count;
  coarse.probes = fine.probes;
  coarse.cells.assign(coarse_count, "");
  coarse.p.assign(coarse_count,
                  std::vector<RationalVector>(fine.x_count, RationalVector(fine.probes.size(), 0)));
  for (std::size_t i = 0; i < fine.cells.size(); ++i) {
    const std::size_t c = fine_to_coarse[i];
    coarse.cells[c] += (coarse.cells[c].empty() ? "" : "+") + fine.cells[i];
    for (std::size_t x = 0; x < fine.x_count; ++x) {
      for (std::size_t z = 0; z < fine.probes.size(); ++z) coarse.p[c][x][z] += fine.p[i][x][z];
    }
  }
  return coarse;
}

RefinementReport refine_partition(const PartitionTable& fine,
                                  const std::vector<std::size_t>& fine_to_coarse) {
  RefinementReport r;
  r.coarse = theorem8_statistic(coarsen(fine, fine_to_coarse)).statistic;
  r.fine = theorem8_statistic(fine).statistic;
  r.monotone = r.fine >= r.coarse;
  return r;
}

}  // namespace ivtest

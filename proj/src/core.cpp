#include "ivtest/core.hpp"

#include "ivtest/errors.hpp"

namespace ivtest {

Dims::Dims(std::size_t l_, std::size_t m_, std::size_t n_) : l(l_), m(m_), n(n_) {
  if (l == 0 || m == 0 || n == 0) {
    throw RangeError("domain sizes must be at least 1, got " + str());
  }
}

BigInt Dims::dim_t() const { return BigInt(static_cast<unsigned long>(n)) * big_pow(l, m); }

BigInt Dims::pair_count() const { return big_pow(n, l) * big_pow(m, n); }

std::string Dims::str() const {
  return "(" + std::to_string(l) + "," + std::to_string(m) + "," + std::to_string(n) + ")";
}

std::size_t index(const Dims& dims, std::size_t x, std::size_t y, std::size_t z) {
  if (x >= dims.n || y >= dims.m || z >= dims.l) {
    throw RangeError("coordinate (x=" + std::to_string(x) + ", y=" + std::to_string(y) +
                     ", z=" + std::to_string(z) + ") out of range for dims " + dims.str());
  }
  return x * dims.l * dims.m + z * dims.m + y;
}

Coordinate coordinate(const Dims& dims, std::size_t offset) {
  if (offset >= dims.dim_f()) {
    throw RangeError("offset " + std::to_string(offset) + " out of range for dims " + dims.str());
  }
  Coordinate c;
  c.y = offset % dims.m;
  c.z = (offset / dims.m) % dims.l;
  c.x = offset / (dims.m * dims.l);
  return c;
}

std::string coordinate_label(const Dims& dims, std::size_t offset) {
  const Coordinate c = coordinate(dims, offset);
  return "P(x" + std::to_string(c.x + 1) + ",y" + std::to_string(c.y + 1) + "|z" +
         std::to_string(c.z + 1) + ")";
}

Rational block_sum(const CondDist& dist, std::size_t z) {
  Rational sum = 0;
  for (std::size_t x = 0; x < dist.dims.n; ++x) {
    for (std::size_t y = 0; y < dist.dims.m; ++y) sum += dist.at(x, y, z);
  }
  return sum;
}

Validation validate(const CondDist& dist) {
  const Dims& d = dist.dims;
  if (dist.values.size() != d.dim_f()) {
    throw ShapeError("distribution for dims " + d.str() + " needs " + std::to_string(d.dim_f()) +
                     " entries, got " + std::to_string(dist.values.size()));
  }
  for (std::size_t i = 0; i < dist.values.size(); ++i) {
    const Rational& v = dist.values[i];
    if (v < 0 || v > 1) {
      return {false, coordinate_label(d, i) + " = " + to_string(v) + " is outside [0,1]",
              coordinate(d, i).z};
    }
  }
  for (std::size_t z = 0; z < d.l; ++z) {
    const Rational s = block_sum(dist, z);
    if (s != 1) {
      return {false, "block z" + std::to_string(z + 1) + " sums to " + to_string(s) + ", not 1", z};
    }
  }
  return {};
}

void require_valid(const CondDist& dist) {
  if (auto v = validate(dist); !v) throw ShapeError("invalid distribution: " + v.message);
}

CondDist uniform_dist(const Dims& dims) {
  return {dims, RationalVector(dims.dim_f(), Rational(1, dims.n * dims.m))};
}

CondDist point_mass_dist(const Dims& dims, std::size_t x, std::size_t y) {
  CondDist d{dims, RationalVector(dims.dim_f(), 0)};
  for (std::size_t z = 0; z < dims.l; ++z) d.values[index(dims, x, y, z)] = 1;
  return d;
}

}  // namespace ivtest

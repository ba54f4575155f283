#include "ivtest/counting.hpp"

#include <sstream>

#include "ivtest/errors.hpp"

namespace ivtest {

BigInt finite_difference(std::uint64_t k, std::uint64_t l) {
  BigInt sum = 0;
  for (std::uint64_t j = 0; j <= k; ++j) {
    BigInt term = binomial(k, j) * big_pow(j, l);
    if ((k - j) % 2 == 1) {
      sum -= term;
    } else {
      sum += term;
    }
  }
  return sum;
}

BigInt finite_difference_recursive(std::uint64_t k, std::uint64_t l) {
  // values[x] holds (Δ^d x^l)(x) for the current order d.
  std::vector<BigInt> values;
  values.reserve(k + 1);
  for (std::uint64_t x = 0; x <= k; ++x) values.push_back(big_pow(x, l));
  for (std::uint64_t d = 0; d < k; ++d) {
    for (std::uint64_t x = 0; x + 1 < values.size() - d; ++x) values[x] = values[x + 1] - values[x];
  }
  return values[0];
}

BigInt count_G_k(std::uint64_t n, std::uint64_t l, std::uint64_t k) {
  if (k == 0 || k > n) throw RangeError("image size k must satisfy 1 <= k <= n");
  return binomial(n, k) * finite_difference(k, l);
}

BigInt count_extreme_B(const Dims& dims) {
  const std::uint64_t n = dims.n;
  const std::uint64_t m = dims.m;
  const std::uint64_t l = dims.l;

  // Alternating double sum, written exactly as in the closed form.
  BigInt alternating = 0;
  for (std::uint64_t k = 1; k <= n; ++k) {
    BigInt inner = 0;
    for (std::uint64_t j = 0; j <= k; ++j) {
      BigInt term = binomial(k, j) * big_pow(j, l);
      if (j % 2 == 1) {
        inner -= term;
      } else {
        inner += term;
      }
    }
    BigInt outer = binomial(n, k) * big_pow(m, k) * inner;
    if (k % 2 == 1) {
      alternating -= outer;
    } else {
      alternating += outer;
    }
  }

  // Δ form, truncated at min(n, l) since higher differences of x^l vanish.
  BigInt delta_form = 0;
  for (std::uint64_t k = 1; k <= std::min(n, l); ++k) {
    delta_form += binomial(n, k) * big_pow(m, k) * finite_difference_recursive(k, l);
  }

  // Image-size decomposition: m^k distinct h-restrictions per map with image size k.
  BigInt by_image = 0;
  for (std::uint64_t k = 1; k <= n; ++k) by_image += big_pow(m, k) * count_G_k(n, l, k);

  if (alternating != delta_form || delta_form != by_image) {
    throw ConsistencyError("extreme-point formulas disagree for dims " + dims.str());
  }
  return by_image;
}

BigInt count_extreme_F(const Dims& dims) { return big_pow(dims.n * dims.m, dims.l); }

Rational ratio_R(const Dims& dims) {
  Rational r(count_extreme_B(dims), count_extreme_F(dims));
  r.canonicalize();
  return r;
}

ExtremeCounts extreme_counts(const Dims& dims) {
  ExtremeCounts c{count_extreme_B(dims), count_extreme_F(dims), 0};
  c.ratio_R = Rational(c.ext_B, c.ext_F);
  c.ratio_R.canonicalize();
  return c;
}

Axis parse_axis(const std::string& name) {
  if (name == "l") return Axis::l;
  if (name == "m") return Axis::m;
  if (name == "n") return Axis::n;
  throw ParseError("axis must be one of l, m, n; got '" + name + "'");
}

std::string axis_name(Axis axis) {
  switch (axis) {
    case Axis::l: return "l";
    case Axis::m: return "m";
    case Axis::n: return "n";
  }
  return "?";
}

std::string trend_name(Trend trend) {
  switch (trend) {
    case Trend::strictly_increasing: return "strictly_increasing";
    case Trend::strictly_decreasing: return "strictly_decreasing";
    case Trend::constant: return "constant";
    case Trend::mixed: return "mixed";
  }
  return "?";
}

std::string TrendReport::csv() const {
  std::ostringstream out;
  out << "l,m,n,ext_B,ext_F,R,R_approx\n";
  for (const auto& row : rows) {
    out << row.dims.l << ',' << row.dims.m << ',' << row.dims.n << ',' << to_string(row.counts.ext_B)
        << ',' << to_string(row.counts.ext_F) << ',' << to_string(row.counts.ratio_R) << ','
        << to_double(row.counts.ratio_R) << '\n';
  }
  return out.str();
}

TrendReport trend_report(Axis axis, const Dims& fixed, const std::vector<std::size_t>& range) {
  if (range.empty()) throw RangeError("trend range is empty");
  for (std::size_t i = 1; i < range.size(); ++i) {
    if (range[i] <= range[i - 1]) throw RangeError("trend range must be strictly increasing");
  }
  TrendReport report;
  report.axis = axis;
  for (auto v : range) {
    Dims d = fixed;
    switch (axis) {
      case Axis::l: d = Dims(v, fixed.m, fixed.n); break;
      case Axis::m: d = Dims(fixed.l, v, fixed.n); break;
      case Axis::n: d = Dims(fixed.l, fixed.m, v); break;
    }
    report.rows.push_back({d, extreme_counts(d)});
  }

  bool up = true, down = true, flat = true;
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    const auto& prev = report.rows[i - 1].counts.ratio_R;
    const auto& cur = report.rows[i].counts.ratio_R;
    up = up && cur > prev;
    down = down && cur < prev;
    flat = flat && cur == prev;
  }
  if (report.rows.size() == 1) {
    report.trend = Trend::constant;
  } else if (up) {
    report.trend = Trend::strictly_increasing;
  } else if (down) {
    report.trend = Trend::strictly_decreasing;
  } else if (flat) {
    report.trend = Trend::constant;
  } else {
    report.trend = Trend::mixed;
  }

  switch (axis) {
    case Axis::n: report.expected = Trend::strictly_increasing; break;
    case Axis::l: report.expected = Trend::strictly_decreasing; break;
    case Axis::m:
      if (fixed.n < fixed.l) report.expected = Trend::strictly_decreasing;
      break;
  }
  report.consistent =
      report.rows.size() == 1 || !report.expected || report.trend == *report.expected;
  return report;
}

}  // namespace ivtest

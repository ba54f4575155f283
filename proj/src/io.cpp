#include "ivtest/io.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "ivtest/errors.hpp"
#include "json.hpp"

namespace ivtest::io {
namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

Rational number_from_json(const json& v, const std::string& where) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) {
    return v.is_number_unsigned() ? Rational(BigInt(std::to_string(v.get<std::uint64_t>())))
                                  : Rational(BigInt(std::to_string(v.get<std::int64_t>())));
  }
  if (v.is_number_float()) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v.get<double>());
    return parse_rational(std::string(buf, res.ptr));
  }
  throw ParseError(where + ": expected a number or a numeric string");
}

std::size_t size_field(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  const json& v = doc.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
    throw ParseError(std::string("field '") + key + "' must be a positive integer");
  }
  return v.get<std::size_t>();
}

const json& array_field(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_array()) {
    throw ParseError(std::string("field '") + key + "' must be an array");
  }
  return doc.at(key);
}

void expect_size(const json& v, std::size_t n, const std::string& where) {
  if (!v.is_array() || v.size() != n) {
    throw ShapeError(where + ": expected an array of length " + std::to_string(n));
  }
}

json rational_array(const RationalVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

RationalVector parse_rational_array(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array");
  RationalVector out;
  for (const auto& x : v) out.push_back(number_from_json(x, where));
  return out;
}

}  // namespace

CondDist parse_dist(const std::string& json_text) {
  const json doc = parse_json(json_text);
  if (!doc.is_object()) throw ParseError("distribution must be a JSON object");
  const Dims dims(size_field(doc, "l"), size_field(doc, "m"), size_field(doc, "n"));
  const json& p = array_field(doc, "p");
  expect_size(p, dims.l, "p");
  CondDist dist{dims, RationalVector(dims.dim_f(), 0)};
  for (std::size_t z = 0; z < dims.l; ++z) {
    expect_size(p[z], dims.n, "p[" + std::to_string(z) + "]");
    for (std::size_t x = 0; x < dims.n; ++x) {
      const std::string where = "p[" + std::to_string(z) + "][" + std::to_string(x) + "]";
      expect_size(p[z][x], dims.m, where);
      for (std::size_t y = 0; y < dims.m; ++y) {
        dist.values[index(dims, x, y, z)] = number_from_json(p[z][x][y], where);
      }
    }
  }
  return dist;
}

std::string dist_to_json(const CondDist& dist) {
  const Dims& d = dist.dims;
  json p = json::array();
  for (std::size_t z = 0; z < d.l; ++z) {
    json block = json::array();
    for (std::size_t x = 0; x < d.n; ++x) {
      json row = json::array();
      for (std::size_t y = 0; y < d.m; ++y) row.push_back(to_string(dist.at(x, y, z)));
      block.push_back(std::move(row));
    }
    p.push_back(std::move(block));
  }
  json doc = {{"l", d.l}, {"m", d.m}, {"n", d.n}, {"p", std::move(p)}};
  return doc.dump();
}

PartitionTable parse_table(const std::string& json_text) {
  const json doc = parse_json(json_text);
  if (!doc.is_object()) throw ParseError("partition table must be a JSON object");
  PartitionTable t;
  t.x_count = size_field(doc, "x_count");
  for (const auto& c : array_field(doc, "cells")) {
    t.cells.push_back(c.is_string() ? c.get<std::string>() : c.dump());
  }
  for (const auto& z : array_field(doc, "probes")) {
    t.probes.push_back(z.is_string() ? z.get<std::string>() : z.dump());
  }
  const json& p = array_field(doc, "p");
  expect_size(p, t.cells.size(), "p");
  for (std::size_t c = 0; c < t.cells.size(); ++c) {
    expect_size(p[c], t.x_count, "p[" + std::to_string(c) + "]");
    std::vector<RationalVector> rows;
    for (std::size_t x = 0; x < t.x_count; ++x) {
      const std::string where = "p[" + std::to_string(c) + "][" + std::to_string(x) + "]";
      expect_size(p[c][x], t.probes.size(), where);
      rows.push_back(parse_rational_array(p[c][x], where));
    }
    t.p.push_back(std::move(rows));
  }
  return t;
}

std::string table_to_json(const PartitionTable& table) {
  json p = json::array();
  for (const auto& cell : table.p) {
    json rows = json::array();
    for (const auto& row : cell) rows.push_back(rational_array(row));
    p.push_back(std::move(rows));
  }
  json doc = {{"x_count", table.x_count},
              {"cells", table.cells},
              {"probes", table.probes},
              {"p", std::move(p)}};
  return doc.dump();
}

std::string hrep_to_json(const HRep& h, int indent) {
  auto list = [](const std::vector<Constraint>& cs) {
    json out = json::array();
    for (const auto& c : cs) out.push_back({{"a", rational_array(c.a)}, {"b", to_string(c.b)}});
    return out;
  };
  json doc = {{"dim", h.dim}, {"equalities", list(h.equalities)}, {"inequalities", list(h.inequalities)}};
  return doc.dump(indent);
}

HRep parse_hrep(const std::string& json_text) {
  const json doc = parse_json(json_text);
  if (!doc.is_object()) throw ParseError("H-representation must be a JSON object");
  HRep h;
  h.dim = size_field(doc, "dim");
  auto read = [&](const char* key, std::vector<Constraint>& out) {
    if (!doc.contains(key)) return;
    for (const auto& c : array_field(doc, key)) {
      if (!c.is_object() || !c.contains("a") || !c.contains("b")) {
        throw ParseError(std::string(key) + ": each constraint needs 'a' and 'b'");
      }
      Constraint k{parse_rational_array(c.at("a"), key), number_from_json(c.at("b"), key)};
      if (k.a.size() != h.dim) throw ShapeError(std::string(key) + ": coefficient count != dim");
      out.push_back(std::move(k));
    }
  };
  read("equalities", h.equalities);
  read("inequalities", h.inequalities);
  return h;
}

std::string vectors_to_json(const std::vector<RationalVector>& vectors) {
  json out = json::array();
  for (const auto& v : vectors) out.push_back(rational_array(v));
  return out.dump();
}

std::string read_input(const std::string& path, std::istream& standard_input) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(standard_input), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace ivtest::io

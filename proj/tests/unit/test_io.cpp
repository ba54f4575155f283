#include <sstream>

#include "doctest.h"
#include "ivtest/errors.hpp"
#include "ivtest/io.hpp"

using namespace ivtest;

TEST_CASE("distribution files") {
  const std::string text =
      R"({"l":2,"m":2,"n":2,"p":[[["0.25","1/4"],[0.25,"0.25"]],[["1","0"],["0","0"]]]})";
  const CondDist f = io::parse_dist(text);
  CHECK(f.dims == Dims(2, 2, 2));
  CHECK(f.at(0, 0, 0) == Rational(1, 4));
  CHECK(f.at(1, 0, 0) == Rational(1, 4));
  CHECK(f.at(0, 0, 1) == 1);
  CHECK(validate(f).ok);
  CHECK(io::parse_dist(io::dist_to_json(f)).values == f.values);
  CHECK(io::dist_to_json(f) ==
        R"({"l":2,"m":2,"n":2,"p":[[["1/4","1/4"],["1/4","1/4"]],[["1","0"],["0","0"]]]})");
  // JSON numbers are read from their shortest decimal form.
  CHECK(io::parse_dist(R"({"l":1,"m":1,"n":2,"p":[[[0.1],[0.9]]]})").values[0] == Rational(1, 10));
}

TEST_CASE("malformed distribution files") {
  CHECK_THROWS_AS(io::parse_dist("{"), ParseError);
  CHECK_THROWS_AS(io::parse_dist("[]"), ParseError);
  CHECK_THROWS_AS(io::parse_dist(R"({"l":2,"m":2,"p":[]})"), ParseError);
  CHECK_THROWS_AS(io::parse_dist(R"({"l":0,"m":2,"n":2,"p":[]})"), ParseError);
  CHECK_THROWS_AS(io::parse_dist(R"({"l":1,"m":1,"n":1,"p":[[["x"]]]})"), ParseError);
  CHECK_THROWS_AS(io::parse_dist(R"({"l":1,"m":1,"n":1,"p":[[[true]]]})"), ParseError);
  CHECK_THROWS_AS(io::parse_dist(R"({"l":2,"m":1,"n":1,"p":[[["1"]]]})"), ShapeError);
  CHECK_THROWS_AS(io::parse_dist(R"({"l":1,"m":2,"n":1,"p":[[["1"]]]})"), ShapeError);
  CHECK_THROWS_AS(io::read_input("/nonexistent/file.json"), ParseError);
}

TEST_CASE("partition tables") {
  const std::string text =
      R"({"x_count":1,"cells":["a","b"],"probes":["0",1.5],"p":[[["1","0"]],[["0","1"]]]})";
  const PartitionTable t = io::parse_table(text);
  CHECK(t.cells.size() == 2);
  CHECK(t.probes[1] == "1.5");
  CHECK(t.p[1][0][1] == 1);
  CHECK(io::parse_table(io::table_to_json(t)).p == t.p);
  CHECK_THROWS_AS(io::parse_table(R"({"x_count":1,"cells":["a"],"probes":["0"],"p":[[["1","0"]]]})"),
                  ShapeError);
}

TEST_CASE("H-representations") {
  HRep h;
  h.dim = 2;
  h.equalities = {{{1, 1}, 1}};
  h.inequalities = {{{-1, 0}, 0}, {{0, Rational(-1, 2)}, 0}};
  const HRep back = io::parse_hrep(io::hrep_to_json(h));
  CHECK(back.dim == 2);
  CHECK(back.equalities == h.equalities);
  CHECK(back.inequalities == h.inequalities);
  CHECK_THROWS_AS(io::parse_hrep(R"({"dim":2,"inequalities":[{"a":["1"],"b":"0"}]})"), ShapeError);
  CHECK_THROWS_AS(io::parse_hrep(R"({"dim":2,"inequalities":[{"a":["1","1"]}]})"), ParseError);
  CHECK(io::vectors_to_json({{Rational(1, 2), 0}}) == R"([["1/2","0"]])");
}

TEST_CASE("standard input") {
  std::istringstream in("hello");
  CHECK(io::read_input("-", in) == "hello");
}

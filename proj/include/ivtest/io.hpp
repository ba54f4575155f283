#pragma once

#include <iostream>
#include <string>
#include <vector>

#include "ivtest/continuous.hpp"
#include "ivtest/core.hpp"
#include "ivtest/polyhedra.hpp"

namespace ivtest::io {

/// {"l":L,"m":M,"n":N,"p":[[[...]]]} with p[z][x][y] = P(x,y|z). Entries are rational or
/// decimal strings (JSON numbers are accepted and read from their shortest decimal form).
/// Parsing is exact. Throws ParseError or ShapeError; the result is not validated.
CondDist parse_dist(const std::string& json_text);
std::string dist_to_json(const CondDist& dist);

/// {"x_count":N,"cells":[...],"probes":[...],"p":[[[...]]]} with p[cell][x][probe].
PartitionTable parse_table(const std::string& json_text);
std::string table_to_json(const PartitionTable& table);

/// {"dim":D,"equalities":[{"a":[...],"b":"..."}],"inequalities":[...]} with rational strings.
std::string hrep_to_json(const HRep& h, int indent = -1);
HRep parse_hrep(const std::string& json_text);

/// JSON array of rational-string vectors.
std::string vectors_to_json(const std::vector<RationalVector>& vectors);

/// Reads a whole file, or standard input for "-".
std::string read_input(const std::string& path, std::istream& standard_input = std::cin);

}  // namespace ivtest::io

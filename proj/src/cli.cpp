#include "ivtest/cli.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "ivtest/continuous.hpp"
#include "ivtest/counting.hpp"
#include "ivtest/errors.hpp"
#include "ivtest/io.hpp"
#include "ivtest/linear_tests.hpp"
#include "ivtest/polyhedra.hpp"
#include "ivtest/response_model.hpp"
#include "json.hpp"

namespace ivtest::cli {
namespace {

using nlohmann::json;

struct DimsArgs {
  std::size_t l = 0, m = 0, n = 0;
  Dims get() const { return Dims(l, m, n); }
};

void add_dims(CLI::App* cmd, DimsArgs& d, bool required = true) {
  auto* l = cmd->add_option("--l", d.l, "number of Z (instrument) values");
  auto* m = cmd->add_option("--m", d.m, "number of Y (outcome) values");
  auto* n = cmd->add_option("--n", d.n, "number of X (treatment) values");
  if (required) {
    l->required();
    m->required();
    n->required();
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

json rational_json(const RationalVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

std::vector<LinearTest> suites_for(const std::string& spec, const Dims& dims, const Caps& caps) {
  std::vector<LinearTest> all;
  for (const auto& name : split(spec, ',')) {
    auto suite = named_suite(name, dims, caps);
    all.insert(all.end(), suite.begin(), suite.end());
  }
  if (all.empty()) throw ParseError("no suite named");
  return all;
}

// ---- subcommands ------------------------------------------------------------------------

int cmd_count(const Dims& dims, const std::string& format, const std::string& trend_axis,
              const std::string& range, bool decimal, std::ostream& out) {
  const ExtremeCounts c = extreme_counts(dims);
  if (format == "json") {
    json doc = {{"l", dims.l}, {"m", dims.m}, {"n", dims.n}, {"ext_B", to_string(c.ext_B)},
                {"ext_F", to_string(c.ext_F)}, {"R", to_string(c.ratio_R)}};
    out << doc.dump() << '\n';
  } else {
    out << "ext_B=" << to_string(c.ext_B) << '\n'
        << "ext_F=" << to_string(c.ext_F) << '\n'
        << "R=" << to_string(c.ratio_R) << '\n';
    if (decimal) out << "R~" << to_double(c.ratio_R) << " (approximate)\n";
  }
  if (!trend_axis.empty()) {
    const auto bounds = split(range, ':');
    if (bounds.size() != 2) throw ParseError("--range expects FROM:TO");
    std::vector<std::size_t> values;
    for (std::size_t v = std::stoul(bounds[0]); v <= std::stoul(bounds[1]); ++v) values.push_back(v);
    out << trend_report(parse_axis(trend_axis), dims, values).csv();
  }
  return kPass;
}

int cmd_trend(const std::string& axis_text, const DimsArgs& fixed_args, std::size_t from,
              std::size_t to, const std::string& format, std::ostream& out) {
  const Axis axis = parse_axis(axis_text);
  DimsArgs f = fixed_args;
  // The swept size is ignored; give it a placeholder so Dims validates.
  if (axis == Axis::l) f.l = 1;
  if (axis == Axis::m) f.m = 1;
  if (axis == Axis::n) f.n = 1;
  std::vector<std::size_t> values;
  for (std::size_t v = from; v <= to; ++v) values.push_back(v);
  const TrendReport report = trend_report(axis, f.get(), values);
  if (format == "csv") {
    out << report.csv();
  } else if (format == "json") {
    json rows = json::array();
    for (const auto& r : report.rows) {
      rows.push_back({{"l", r.dims.l}, {"m", r.dims.m}, {"n", r.dims.n},
                      {"ext_B", to_string(r.counts.ext_B)}, {"ext_F", to_string(r.counts.ext_F)},
                      {"R", to_string(r.counts.ratio_R)}});
    }
    json doc = {{"axis", axis_name(axis)},
                {"rows", rows},
                {"trend", trend_name(report.trend)},
                {"expected", report.expected ? trend_name(*report.expected) : "unknown"},
                {"consistent", report.consistent}};
    out << doc.dump() << '\n';
  } else {
    out << report.csv();
    out << "trend=" << trend_name(report.trend) << '\n'
        << "expected=" << (report.expected ? trend_name(*report.expected) : "unknown") << '\n'
        << "consistent=" << (report.consistent ? "yes" : "no") << '\n';
  }
  return report.consistent ? kPass : kFail;
}

void print_report_line(const LinearTest& t, const TestReport& r, std::ostream& out) {
  out << (r.pass ? "pass " : "FAIL ") << r.id << ": " << t.expression() << "  (lhs=" << to_string(r.lhs)
      << ", margin=" << to_string(r.margin) << ")\n";
}

int cmd_pearl(const CondDist& dist, const std::string& format, bool decimal, std::ostream& out) {
  const Rational stat = pearl_statistic(dist);
  const auto suite = pearl_suite(dist.dims);
  const auto reports = eval_suite(suite, dist);
  const bool pass = stat <= 1;
  if (format == "json") {
    json failing = json::array();
    for (std::size_t i = 0; i < suite.size(); ++i) {
      if (!reports[i].pass) {
        failing.push_back({{"id", reports[i].id}, {"expression", suite[i].expression()},
                           {"lhs", to_string(reports[i].lhs)}, {"margin", to_string(reports[i].margin)}});
      }
    }
    json doc = {{"statistic", to_string(stat)}, {"pass", pass}, {"failing", failing}};
    out << doc.dump() << '\n';
  } else {
    out << "statistic=" << to_string(stat) << '\n';
    if (decimal) out << "statistic~" << to_double(stat) << " (approximate)\n";
    out << "verdict=" << (pass ? "pass" : "fail") << '\n';
    for (std::size_t i = 0; i < suite.size(); ++i) {
      if (!reports[i].pass) print_report_line(suite[i], reports[i], out);
    }
  }
  return pass ? kPass : kFail;
}

int cmd_test(const CondDist& dist, const std::string& suite_spec, const std::string& format,
             bool verbose, const Caps& caps, std::ostream& out) {
  require_valid(dist);
  const auto suite = suites_for(suite_spec, dist.dims, caps);
  const auto reports = eval_suite(suite, dist);
  const std::size_t failed = static_cast<std::size_t>(
      std::count_if(reports.begin(), reports.end(), [](const TestReport& r) { return !r.pass; }));
  if (format == "json") {
    json tests = json::array();
    for (std::size_t i = 0; i < suite.size(); ++i) {
      tests.push_back({{"id", reports[i].id}, {"expression", suite[i].expression()},
                       {"pass", reports[i].pass}, {"lhs", to_string(reports[i].lhs)},
                       {"margin", to_string(reports[i].margin)}});
    }
    json doc = {{"suite", suite_spec}, {"tests", suite.size()}, {"failed", failed},
                {"pass", failed == 0}, {"results", tests}};
    out << doc.dump() << '\n';
  } else {
    out << "suite=" << suite_spec << " tests=" << suite.size() << " failed=" << failed << '\n';
    for (std::size_t i = 0; i < suite.size(); ++i) {
      if (verbose || !reports[i].pass) print_report_line(suite[i], reports[i], out);
    }
    out << "verdict=" << (failed == 0 ? "pass" : "fail") << '\n';
  }
  return failed == 0 ? kPass : kFail;
}

int cmd_feasible(const CondDist& dist, bool certificate, bool witness, const Caps& caps,
                 std::ostream& out) {
  const FeasibilityResult result = lp_feasible(dist.dims, dist, caps);
  out << "verdict=" << (result.feasible() ? "feasible" : "infeasible") << '\n';
  if (result.feasible() && witness) {
    const auto pairs = enumerate_pairs(dist.dims, caps);
    json support = json::array();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const Rational& w = result.witness().q[i];
      if (w != 0) support.push_back({{"pair", pairs[i].str()}, {"q", to_string(w)}});
    }
    out << json{{"witness", support}}.dump() << '\n';
  }
  if (!result.feasible() && certificate) {
    const FarkasCertificate& cert = result.certificate();
    const SeparatingInequality ineq = farkas_to_test(cert, dist.dims, caps);
    json doc = {{"pi0", to_string(cert.pi0)},
                {"pi", rational_json(cert.pi)},
                {"inequality",
                 {{"coefficients", rational_json(ineq.coefficients)},
                  {"bound", to_string(ineq.bound)},
                  {"expression", ineq.expression()}}}};
    out << doc.dump() << '\n';
  }
  return result.feasible() ? kPass : kFail;
}

int cmd_facets(const Dims& dims, const std::string& out_path, bool nontrivial, const Caps& caps,
               std::ostream& out) {
  const VertexSet vs = dedup_columns(dims, caps);
  FacetOptions options;
  options.caps = caps;
  options.equality_hints = simplex_product_hrep(dims).equalities;
  const HRep h = facet_enum(vs.vertices(), options);
  const auto classes = nontrivial_facets(dims, caps);
  if (out_path.empty()) {
    out << io::hrep_to_json(h, 1) << '\n';
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw ParseError("cannot write '" + out_path + "'");
    file << io::hrep_to_json(h, 1) << '\n';
    out << "vertices=" << vs.size() << '\n'
        << "equalities=" << h.equalities.size() << '\n'
        << "facets=" << h.inequalities.size() << '\n'
        << "nontrivial=" << classes.size() << '\n';
  }
  if (nontrivial) {
    for (const auto& t : classes) out << t.id << ": " << t.expression() << '\n';
  }
  return kPass;
}

int cmd_suffcheck(const Dims& dims, const std::string& suite_spec, const Caps& caps,
                  std::ostream& out) {
  const auto suite = suites_for(suite_spec, dims, caps);
  const SufficiencyResult r = sufficiency_check(dims, suite, caps);
  out << "suite=" << suite_spec << " tests=" << suite.size() << " B_vertices=" << r.b_vertex_count
      << " suite_vertices=" << r.suite_vertex_count << '\n';
  switch (r.kind) {
    case SufficiencyResult::Kind::equal:
      out << "verdict=equal\n";
      return kPass;
    case SufficiencyResult::Kind::suite_too_weak:
      out << "verdict=counterexample\n"
          << "reason=suite polytope has a vertex outside B\n";
      break;
    case SufficiencyResult::Kind::suite_not_necessary:
      out << "verdict=counterexample\n"
          << "reason=a vertex of B fails the suite\n";
      break;
  }
  out << io::dist_to_json(CondDist{dims, *r.counterexample}) << '\n';
  return kFail;
}

int cmd_variations(const std::string& test_spec, const DimsArgs& target, const Caps& caps,
                   std::ostream& out) {
  LinearTest base;
  if (test_spec == "eq11") {
    base = eq11_test();
  } else if (test_spec.rfind("pearl:", 0) == 0) {
    if (target.l == 0 || target.m == 0 || target.n == 0) {
      throw ParseError("pearl:K needs --l --m --n");
    }
    const auto suite = pearl_suite(target.get(), caps);
    const std::size_t k = std::stoul(test_spec.substr(6));
    if (k == 0 || k > suite.size()) throw RangeError("Pearl test index out of range");
    base = suite[k - 1];
  } else {
    throw ParseError("--test expects eq11 or pearl:K");
  }
  if (target.l != 0 || target.m != 0 || target.n != 0) {
    base = extend_test(base, Dims(std::max(target.l, base.dims.l), std::max(target.m, base.dims.m),
                                  std::max(target.n, base.dims.n)));
  }
  const auto vars = regular_variations(base, caps);
  out << "test=" << base.id << " dims=" << base.dims.str() << " variations=" << vars.size() << '\n';
  for (const auto& v : vars) out << v.id << ": " << v.expression() << '\n';
  return kPass;
}

int cmd_sample(const Dims& dims, std::uint64_t seed, std::size_t count, std::size_t vertex,
               const Caps& caps, std::ostream& out) {
  if (vertex != 0) {
    const VertexSet vs = dedup_columns(dims, caps);
    if (vertex > vs.size()) {
      throw RangeError("--vertex " + std::to_string(vertex) + " exceeds the " +
                       std::to_string(vs.size()) + " vertices of B" + dims.str());
    }
    out << io::dist_to_json(CondDist{dims, vs.vertex(vertex - 1)}) << '\n';
    return kPass;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const ResponseDist q = random_response_dist(dims, rng, caps);
    out << io::dist_to_json(sample_compatible(dims, q)) << '\n';
  }
  return kPass;
}

int cmd_continuous(const PartitionTable& table, const std::string& refine, const std::string& format,
                   std::ostream& out) {
  const Theorem8Result r = theorem8_statistic(table);
  std::optional<RefinementReport> ref;
  if (!refine.empty()) {
    std::vector<std::size_t> mapping;
    for (const auto& item : split(refine, ',')) mapping.push_back(std::stoul(item));
    ref = refine_partition(table, mapping);
  }
  const bool reject = r.statistic > 1;
  if (format == "json") {
    json doc = {{"statistic", to_string(r.statistic)},
                {"with_remainder", to_string(r.with_remainder)},
                {"argmax_x", r.argmax_x + 1},
                {"reject", reject}};
    if (ref) {
      doc["refinement"] = {{"coarse", to_string(ref->coarse)},
                           {"fine", to_string(ref->fine)},
                           {"monotone", ref->monotone}};
    }
    out << doc.dump() << '\n';
  } else {
    out << "statistic=" << to_string(r.statistic) << '\n'
        << "with_remainder=" << to_string(r.with_remainder) << '\n'
        << "argmax_x=x" << r.argmax_x + 1 << '\n';
    for (std::size_t c = 0; c < table.cells.size(); ++c) {
      out << "cell " << table.cells[c] << ": best probe "
          << table.probes[r.argmax_probe[c][r.argmax_x]] << '\n';
    }
    if (ref) {
      out << "coarse_statistic=" << to_string(ref->coarse) << '\n'
          << "fine_statistic=" << to_string(ref->fine) << '\n'
          << "monotone=" << (ref->monotone ? "yes" : "no") << '\n';
    }
    out << "note: the supremum over z is taken over the listed probes only, so a pass is not\n"
           "      evidence of compatibility; a value above 1 does reject the model.\n"
        << "verdict=" << (reject ? "reject" : "no rejection") << '\n';
  }
  return reject ? kFail : kPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Exact tests of the instrumental-variable model for discrete distributions"};
  app.name("ivtest");
  app.require_subcommand(1);

  Caps caps;
  app.add_option("--max-pairs", caps.max_pairs, "cap on n^l*m^n response pairs");
  app.add_option("--max-tests", caps.max_tests, "cap on n*l^m Pearl tests");
  app.add_option("--max-permutations", caps.max_permutations, "cap on n!*m!*l! relabelings");
  app.add_option("--max-rays", caps.max_rays, "cap on double-description rays");

  DimsArgs dims;
  std::string dist_path, table_path, format = "text", suite = "pearl", out_path, test_spec = "eq11";
  std::string trend_axis, range = "2:8", refine, axis;
  std::uint64_t seed = 0;
  std::size_t count = 1, vertex = 0, from = 2, to = 8;
  bool certificate = false, witness = false, nontrivial = false, verbose = false, decimal = false;

  auto* count_cmd = app.add_subcommand("count", "extreme-point counts of B and F and their ratio R");
  add_dims(count_cmd, dims);
  count_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  count_cmd->add_option("--trend", trend_axis, "also print R along this axis (l, m or n) as CSV");
  count_cmd->add_option("--range", range, "FROM:TO for --trend");
  count_cmd->add_flag("--decimal", decimal, "also print R as an approximate decimal");

  auto* trend_cmd = app.add_subcommand("trend", "R along one axis with the other sizes fixed");
  add_dims(trend_cmd, dims, false);
  trend_cmd->add_option("--axis", axis)->required()->check(CLI::IsMember({"l", "m", "n"}));
  trend_cmd->add_option("--from", from);
  trend_cmd->add_option("--to", to);
  trend_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "csv", "json"}));

  auto* pearl_cmd = app.add_subcommand("pearl", "instrumental inequality on a distribution");
  pearl_cmd->add_option("--dist", dist_path, "distribution JSON, or - for stdin")->required();
  pearl_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  pearl_cmd->add_flag("--decimal", decimal, "also print the statistic as an approximate decimal");

  auto* test_cmd = app.add_subcommand("test", "evaluate named test suites");
  test_cmd->add_option("--dist", dist_path)->required();
  test_cmd->add_option("--suite", suite, "comma-separated: pearl, eq11");
  test_cmd->add_option("--report", format)->check(CLI::IsMember({"text", "json"}));
  test_cmd->add_flag("--verbose", verbose, "list passing tests too");

  auto* feasible_cmd = app.add_subcommand("feasible", "exact membership in the compatible set");
  feasible_cmd->add_option("--dist", dist_path)->required();
  feasible_cmd->add_flag("--certificate", certificate, "print the Farkas certificate when infeasible");
  feasible_cmd->add_flag("--witness", witness, "print the response distribution when feasible");

  auto* facets_cmd = app.add_subcommand("facets", "H-representation of the compatible set");
  add_dims(facets_cmd, dims);
  facets_cmd->add_option("--out", out_path, "write the H-representation here instead of stdout");
  facets_cmd->add_flag("--nontrivial", nontrivial, "list facets beyond nonnegativity");

  auto* suff_cmd = app.add_subcommand("suffcheck", "does a suite characterize the compatible set?");
  add_dims(suff_cmd, dims);
  suff_cmd->add_option("--suite", suite, "comma-separated: pearl, eq11");

  auto* var_cmd = app.add_subcommand("variations", "regular variations of a test");
  add_dims(var_cmd, dims, false);
  var_cmd->add_option("--test", test_spec, "eq11 or pearl:K");

  auto* sample_cmd = app.add_subcommand("sample", "distributions generated by the model");
  add_dims(sample_cmd, dims);
  sample_cmd->add_option("--seed", seed);
  sample_cmd->add_option("--count", count);
  sample_cmd->add_option("--vertex", vertex, "emit the K-th vertex of B (1-based) instead");

  auto* cont_cmd = app.add_subcommand("continuous", "partition statistic for continuous Y and Z");
  cont_cmd->add_option("--table", table_path)->required();
  cont_cmd->add_option("--refine", refine, "fine-to-coarse cell map, e.g. 0,0,1,1");
  cont_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kError;
  }

  try {
    auto load_dist = [&] { return io::parse_dist(io::read_input(dist_path, in)); };
    if (count_cmd->parsed()) return cmd_count(dims.get(), format, trend_axis, range, decimal, out);
    if (trend_cmd->parsed()) return cmd_trend(axis, dims, from, to, format, out);
    if (pearl_cmd->parsed()) return cmd_pearl(load_dist(), format, decimal, out);
    if (test_cmd->parsed()) return cmd_test(load_dist(), suite, format, verbose, caps, out);
    if (feasible_cmd->parsed()) return cmd_feasible(load_dist(), certificate, witness, caps, out);
    if (facets_cmd->parsed()) return cmd_facets(dims.get(), out_path, nontrivial, caps, out);
    if (suff_cmd->parsed()) return cmd_suffcheck(dims.get(), suite, caps, out);
    if (var_cmd->parsed()) return cmd_variations(test_spec, dims, caps, out);
    if (sample_cmd->parsed()) return cmd_sample(dims.get(), seed, count, vertex, caps, out);
    if (cont_cmd->parsed()) {
      return cmd_continuous(io::parse_table(io::read_input(table_path, in)), refine, format, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  } catch (const std::invalid_argument& e) {
    err << "error: bad numeric argument (" << e.what() << ")\n";
    return kError;
  } catch (const std::out_of_range& e) {
    err << "error: numeric argument out of range (" << e.what() << ")\n";
    return kError;
  }
  return kError;
}

}  // namespace ivtest::cli

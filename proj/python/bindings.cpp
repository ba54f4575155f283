#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>
#include <sstream>

#include "ivtest/continuous.hpp"
#include "ivtest/counting.hpp"
#include "ivtest/errors.hpp"
#include "ivtest/io.hpp"
#include "ivtest/linear_tests.hpp"
#include "ivtest/polyhedra.hpp"
#include "ivtest/response_model.hpp"

namespace py = pybind11;
using namespace ivtest;

namespace {

py::object fraction(const Rational& r) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(py::str(to_string(r)));
}

py::object big_int(const BigInt& v) { return py::module_::import("builtins").attr("int")(py::str(to_string(v))); }

py::list fractions(const RationalVector& v) {
  py::list out;
  for (const auto& r : v) out.append(fraction(r));
  return out;
}

// Accepts int, str, Fraction or float (read from its repr).
Rational to_rational(const py::handle& h) { return parse_rational(py::str(h).cast<std::string>()); }

RationalVector to_rationals(const py::iterable& values) {
  RationalVector out;
  for (auto v : values) out.push_back(to_rational(v));
  return out;
}

CondDist make_dist(std::size_t l, std::size_t m, std::size_t n, const py::iterable& values) {
  CondDist f{Dims(l, m, n), to_rationals(values)};
  if (f.values.size() != f.dims.dim_f()) {
    throw ShapeError("expected " + std::to_string(f.dims.dim_f()) + " values, got " +
                     std::to_string(f.values.size()));
  }
  return f;
}

py::dict test_dict(const LinearTest& t) {
  py::dict d;
  d["id"] = t.id;
  d["tau"] = t.tau;
  d["alpha"] = t.alpha;
  d["expression"] = t.expression();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact tests of the instrumental-variable model";

  auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<ShapeError>(m, "ShapeError", base);
  py::register_exception<RangeError>(m, "RangeError", base);
  py::register_exception<CapacityError>(m, "CapacityError", base);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", base);
  py::register_exception<UnboundedError>(m, "UnboundedError", base);
  py::register_exception<ParseError>(m, "ParseError", base);

  py::class_<CondDist>(m, "CondDist")
      .def(py::init(&make_dist), py::arg("l"), py::arg("m"), py::arg("n"), py::arg("values"),
           "Values in canonical order: x slowest, then z, then y.")
      .def_static("from_json", &io::parse_dist)
      .def("to_json", &io::dist_to_json)
      .def_property_readonly("l", [](const CondDist& f) { return f.dims.l; })
      .def_property_readonly("m", [](const CondDist& f) { return f.dims.m; })
      .def_property_readonly("n", [](const CondDist& f) { return f.dims.n; })
      .def_property_readonly("values", [](const CondDist& f) { return fractions(f.values); })
      .def("at", [](const CondDist& f, std::size_t x, std::size_t y, std::size_t z) { return fraction(f.at(x, y, z)); })
      .def("validate", [](const CondDist& f) {
        const Validation v = validate(f);
        return py::make_tuple(v.ok, v.message);
      })
      .def("__repr__", [](const CondDist& f) { return "CondDist(" + io::dist_to_json(f) + ")"; });

  m.def("index", [](std::size_t l, std::size_t mm, std::size_t n, std::size_t x, std::size_t y, std::size_t z) {
    return index(Dims(l, mm, n), x, y, z);
  });

  m.def("count", [](std::size_t l, std::size_t mm, std::size_t n) {
    const ExtremeCounts c = extreme_counts(Dims(l, mm, n));
    py::dict d;
    d["ext_B"] = big_int(c.ext_B);
    d["ext_F"] = big_int(c.ext_F);
    d["R"] = fraction(c.ratio_R);
    return d;
  });
  m.def("finite_difference", [](std::uint64_t k, std::uint64_t l) { return big_int(finite_difference(k, l)); });

  m.def("pearl_statistic", [](const CondDist& f) { return fraction(pearl_statistic(f)); });
  m.def("pearl_suite", [](std::size_t l, std::size_t mm, std::size_t n) {
    py::list out;
    for (const auto& t : pearl_suite(Dims(l, mm, n))) out.append(test_dict(t));
    return out;
  });
  m.def("variations", [](const std::string& name) {
    if (name != "eq11") throw ParseError("only eq11 is named");
    py::list out;
    for (const auto& t : regular_variations(eq11_test())) out.append(test_dict(t));
    return out;
  });
  m.def(
      "run_suite",
      [](const std::string& names, const CondDist& f) {
        std::vector<LinearTest> suite;
        std::stringstream parts(names);
        std::string part;
        while (std::getline(parts, part, ',')) {
          const auto s = named_suite(part, f.dims);
          suite.insert(suite.end(), s.begin(), s.end());
        }
        py::list out;
        for (const auto& r : eval_suite(suite, f)) {
          py::dict d;
          d["id"] = r.id;
          d["pass"] = r.pass;
          d["lhs"] = fraction(r.lhs);
          d["margin"] = fraction(r.margin);
          out.append(d);
        }
        return out;
      },
      py::arg("suite"), py::arg("dist"));

  m.def("lp_feasible", [](const CondDist& f) {
    const FeasibilityResult r = lp_feasible(f.dims, f);
    py::dict d;
    d["feasible"] = r.feasible();
    if (r.feasible()) {
      d["witness"] = fractions(r.witness().q);
    } else {
      const auto& c = r.certificate();
      d["pi0"] = fraction(c.pi0);
      d["pi"] = fractions(c.pi);
      const SeparatingInequality s = farkas_to_test(c, f.dims);
      d["inequality"] = s.expression();
    }
    return d;
  });

  m.def(
      "sample",
      [](std::size_t l, std::size_t mm, std::size_t n, std::uint64_t seed, std::size_t count) {
        const Dims d(l, mm, n);
        std::mt19937_64 rng(seed);
        std::vector<CondDist> out;
        for (std::size_t i = 0; i < count; ++i) out.push_back(sample_compatible(d, random_response_dist(d, rng)));
        return out;
      },
      py::arg("l"), py::arg("m"), py::arg("n"), py::arg("seed") = 0, py::arg("count") = 1);

  m.def("vertices", [](std::size_t l, std::size_t mm, std::size_t n) {
    py::list out;
    for (const auto& v : dedup_columns(Dims(l, mm, n)).vertices()) out.append(fractions(v));
    return out;
  });
  m.def("nontrivial_facets", [](std::size_t l, std::size_t mm, std::size_t n) {
    py::list out;
    for (const auto& t : nontrivial_facets(Dims(l, mm, n))) out.append(test_dict(t));
    return out;
  });
  m.def(
      "sufficiency_check",
      [](std::size_t l, std::size_t mm, std::size_t n, const std::string& suite_name) {
        const Dims d(l, mm, n);
        std::vector<LinearTest> suite = pearl_suite(d);
        if (suite_name == "pearl,eq11") {
          const auto s = named_suite("eq11", d);
          suite.insert(suite.end(), s.begin(), s.end());
        } else if (suite_name != "pearl") {
          throw ParseError("suite must be 'pearl' or 'pearl,eq11'");
        }
        const SufficiencyResult r = sufficiency_check(d, suite);
        py::dict out;
        out["equal"] = r.equal();
        out["counterexample"] = r.counterexample ? py::object(fractions(*r.counterexample)) : py::none();
        return out;
      },
      py::arg("l"), py::arg("m"), py::arg("n"), py::arg("suite") = "pearl");

  m.def("theorem8_statistic", [](const std::string& table_json) {
    const Theorem8Result r = theorem8_statistic(io::parse_table(table_json));
    py::dict d;
    d["statistic"] = fraction(r.statistic);
    d["with_remainder"] = fraction(r.with_remainder);
    d["argmax_x"] = r.argmax_x;
    return d;
  });
}

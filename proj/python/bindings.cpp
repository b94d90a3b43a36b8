// Thin pybind11 layer. Rationals cross the boundary as "p/q" strings; the
// Python package turns them into fractions.Fraction.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cardvote/bounds.hpp"
#include "cardvote/cli.hpp"
#include "cardvote/errors.hpp"
#include "cardvote/generators.hpp"
#include "cardvote/io.hpp"
#include "cardvote/mechanism_spec.hpp"
#include "cardvote/properties.hpp"

namespace py = pybind11;
using namespace cardvote;

namespace {

using Rows = std::vector<std::vector<std::string>>;

Profile to_profile(const Rows& rows, bool relaxed) {
  std::vector<Preference> prefs;
  for (const auto& row : rows) {
    std::vector<Rational> values;
    for (const auto& cell : row) values.push_back(parse_rational(cell));
    prefs.push_back(relaxed ? Preference::relaxed(std::move(values)) : Preference::normalized(std::move(values)));
  }
  return Profile(std::move(prefs));
}

Rows from_profile(const Profile& u) {
  Rows rows;
  for (const auto& p : u.prefs()) {
    std::vector<std::string> row;
    for (const auto& v : p.values()) row.push_back(to_string(v));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> strings(std::span<const Rational> xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(to_string(x));
  return out;
}

std::string verify(const std::string& property, const std::string& spec, int m, int n, int k, bool tie_free,
                   std::uint64_t budget) {
  Mechanism mech = parse_mechanism(spec, m, n);
  Grid grid{m, n, k, tie_free};
  CheckOptions options{.budget = budget, .threads = 1};
  WitnessReport report;
  if (property == "truthful") report = check_truthful(mech, grid, options);
  else if (property == "ordinal") report = check_ordinal(mech, grid, options);
  else if (property == "neutral") report = check_neutral(mech, grid, options);
  else if (property == "anonymous") report = check_anonymous(mech, grid, options);
  else throw ParseError("unknown property '" + property + "'");
  return report_to_json(report).dump();
}

}  // namespace

PYBIND11_MODULE(_cardvote, mod) {
  mod.doc() = "Exact evaluation of randomized cardinal voting schemes";
  py::register_exception<Error>(mod, "CardvoteError", PyExc_ValueError);

  mod.def(
      "evaluate",
      [](const std::string& spec, const Rows& rows, bool relaxed) {
        Profile u = to_profile(rows, relaxed);
        return strings(parse_mechanism(spec, u.m(), u.n()).evaluate(u).probs());
      },
      py::arg("spec"), py::arg("profile"), py::arg("relaxed") = false);
  mod.def(
      "ratio",
      [](const std::string& spec, const Rows& rows, bool relaxed) {
        Profile u = to_profile(rows, relaxed);
        return to_string(ratio(parse_mechanism(spec, u.m(), u.n()), u));
      },
      py::arg("spec"), py::arg("profile"), py::arg("relaxed") = false);
  mod.def(
      "welfares", [](const Rows& rows, bool relaxed) { return strings(welfares(to_profile(rows, relaxed))); },
      py::arg("profile"), py::arg("relaxed") = false);
  mod.def(
      "sample",
      [](const std::string& spec, const Rows& rows, std::uint64_t seed, int draws) {
        Profile u = to_profile(rows, false);
        Sampler sampler(parse_mechanism(spec, u.m(), u.n()).evaluate(u), seed);
        std::vector<int> out;
        for (int t = 0; t < draws; ++t) out.push_back(sampler.draw());
        return out;
      },
      py::arg("spec"), py::arg("profile"), py::arg("seed"), py::arg("draws") = 1);
  mod.def("verify", &verify, py::arg("property"), py::arg("spec"), py::arg("m"), py::arg("n"), py::arg("k"),
          py::arg("tie_free") = false, py::arg("budget") = CheckOptions{}.budget);

  mod.def(
      "gen_negative", [](int m, int repeat) { return from_profile(gen_negative(m, repeat)); }, py::arg("m"),
      py::arg("repeat") = 1);
  mod.def(
      "gen_dk",
      [](int m, int k, int a, int b, int c, std::uint64_t seed) {
        return from_profile(gen_Dk({.m = m, .k = k, .a = a, .b = b, .c = c, .shapes = {}}, seed));
      },
      py::arg("m"), py::arg("k"), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("seed") = 0);
  mod.def(
      "gen_cyclic",
      [](int m, int star, const std::string& eps) { return from_profile(gen_cyclic(m, star, parse_rational(eps))); },
      py::arg("m"), py::arg("star"), py::arg("eps"));
  mod.def(
      "discretize", [](const Rows& rows, int k) { return from_profile(discretize(to_profile(rows, true), k)); },
      py::arg("profile"), py::arg("k"));

  mod.def("g_value", [](const Rows& rows) { return to_string(g_value(to_profile(rows, false))); });
  mod.def("gbar_value", [](const Rows& rows) { return to_string(gbar_value(to_profile(rows, false))); });
  mod.def("lower_bound_formula", [](int a, int b, int c, int n, int m) {
    return to_string(lower_bound_formula(a, b, c, n, m));
  });

  mod.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "teamhyper/errors.hpp"
#include "teamhyper/eval_classic.hpp"
#include "teamhyper/eval_team.hpp"
#include "teamhyper/formula.hpp"
#include "teamhyper/harness.hpp"
#include "teamhyper/syntax.hpp"
#include "teamhyper/transform.hpp"

namespace py = pybind11;
using namespace teamhyper;

namespace {

Logic parse_logic(const std::string& s) {
  if (s == "ltl") return Logic::Ltl;
  if (s == "team") return Logic::Team;
  if (s == "hyper") return Logic::Hyper;
  throw InvalidArgument("logic must be ltl, team or hyper");
}

Team make_team(const std::vector<std::string>& traces) {
  Team team;
  for (const auto& t : traces) team.insert(parse_trace(t));
  return team;
}

std::vector<std::string> team_strings(const Team& team) {
  std::vector<std::string> out;
  for (const auto& t : team) out.push_back(print_trace(t));
  return out;
}

TransformLimits transform_limits(std::size_t max_disjuncts) {
  TransformLimits l;
  l.max_disjuncts = max_disjuncts;
  return l;
}

}  // namespace

PYBIND11_MODULE(_teamhyper, m) {
  m.doc() = "Team semantics for LTL and its HyperLTL counterparts";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<FragmentError>(m, "FragmentError", base.ptr());
  py::register_exception<LimitError>(m, "LimitError", base.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());

  py::class_<Formula>(m, "Formula")
      .def("__str__", [](const Formula& f) { return print(f); })
      .def("__repr__", [](const Formula& f) { return "Formula('" + print(f) + "')"; })
      .def("__eq__", [](const Formula& a, const Formula& b) { return a == b; })
      .def_property_readonly("depth", &Formula::depth)
      .def("fragments", [](const Formula& f) {
        std::vector<std::string> out;
        for (auto t : classify(f).tags()) out.emplace_back(to_string(t));
        return out;
      });

  m.def(
      "parse", [](const std::string& text, const std::string& logic) { return parse_formula(text, parse_logic(logic)); },
      py::arg("text"), py::arg("logic") = "team", "Parse a formula; logic is ltl, team or hyper.");
  m.def("canonical_trace", [](const std::string& t) { return print_trace(parse_trace(t)); }, py::arg("trace"));
  m.def(
      "parse_team", [](const std::string& text) { return team_strings(parse_team_file(text).team); }, py::arg("text"),
      "Parse a team file into canonical trace strings.");

  m.def(
      "eval_ltl", [](const std::string& trace, const Formula& f) { return eval_ltl(parse_trace(trace), f); },
      py::arg("trace"), py::arg("formula"));
  m.def(
      "eval_team",
      [](const std::vector<std::string>& team, const Formula& f, std::size_t max_disjuncts) {
        return eval_team_nf(make_team(team), f, transform_limits(max_disjuncts));
      },
      py::arg("team"), py::arg("formula"), py::arg("max_disjuncts") = TransformLimits{}.max_disjuncts,
      "Evaluate a TeamLTL(⩔) or left-downward-closed formula through its normal form.");
  m.def(
      "oracle_eval",
      [](const std::vector<std::string>& team, const Formula& f, std::size_t max_team, std::size_t max_lasso,
         int max_depth) {
        OracleLimits l;
        l.max_team = max_team;
        l.max_lasso = max_lasso;
        l.max_depth = max_depth;
        return oracle_eval(make_team(team), f, l);
      },
      py::arg("team"), py::arg("formula"), py::arg("max_team") = OracleLimits{}.max_team,
      py::arg("max_lasso") = OracleLimits{}.max_lasso, py::arg("max_depth") = OracleLimits{}.max_depth,
      "Evaluate by exhaustive search over suffix choices on small inputs.");
  m.def(
      "eval_hyper",
      [](const std::vector<std::string>& team, const Formula& s) { return eval_hyper(make_team(team), s); },
      py::arg("team"), py::arg("sentence"));

  m.def(
      "to_ov_dnf",
      [](const Formula& f, std::size_t max_disjuncts) {
        return to_ov_dnf(f, transform_limits(max_disjuncts)).disjuncts;
      },
      py::arg("formula"), py::arg("max_disjuncts") = TransformLimits{}.max_disjuncts);
  m.def(
      "to_quasi_flat",
      [](const Formula& f, std::size_t max_disjuncts) {
        std::vector<std::pair<Formula, std::vector<Formula>>> out;
        for (auto& c : to_quasi_flat(f, transform_limits(max_disjuncts)).conjuncts) out.emplace_back(c.alpha, c.betas);
        return out;
      },
      py::arg("formula"), py::arg("max_disjuncts") = TransformLimits{}.max_disjuncts,
      "Quasi-flat form as a list of (alpha, betas) pairs.");
  m.def("dual", &dual, py::arg("formula"));
  m.def("negate_prenex", &negate_prenex, py::arg("sentence"));
  m.def(
      "prenex_pbc", [](const Formula& s) { return prenex_pbc(s); }, py::arg("sentence"));
  m.def(
      "prenex_bc", [](const Formula& s) { return prenex_bc(s); }, py::arg("sentence"));
  m.def(
      "teamov_to_pbc", [](const Formula& f) { return teamov_to_pbc(f); }, py::arg("formula"));
  m.def(
      "pbc_to_teamov", [](const Formula& s) { return pbc_to_teamov(s); }, py::arg("sentence"));
  m.def(
      "leftdc_to_bc", [](const Formula& f, bool forall_only) { return leftdc_to_bc(f, forall_only); },
      py::arg("formula"), py::arg("forall_only") = false);
  m.def(
      "bc_to_leftdc", [](const Formula& s) { return bc_to_leftdc(s); }, py::arg("sentence"));

  m.def("suites", [] {
    std::vector<std::string> out;
    for (auto s : all_suites()) out.emplace_back(to_string(s));
    return out;
  });
  m.def(
      "difftest",
      [](const std::string& suite, std::size_t cases, std::uint64_t seed, std::size_t max_team, std::size_t max_stem,
         std::size_t max_period, int max_depth, std::size_t ap_size) {
        auto s = parse_suite(suite);
        if (!s) throw InvalidArgument("unknown suite: " + suite);
        GenConfig cfg;
        cfg.max_team = max_team;
        cfg.max_stem = max_stem;
        cfg.max_period = max_period;
        cfg.max_depth = max_depth;
        cfg.ap_size = ap_size;
        std::string json;
        {
          py::gil_scoped_release release;
          json = run_suite(*s, cfg, cases, seed).to_json();
        }
        return py::module_::import("json").attr("loads")(json);
      },
      py::arg("suite"), py::arg("cases") = 100, py::arg("seed") = 0, py::arg("max_team") = GenConfig{}.max_team,
      py::arg("max_stem") = GenConfig{}.max_stem, py::arg("max_period") = GenConfig{}.max_period,
      py::arg("max_depth") = GenConfig{}.max_depth, py::arg("ap_size") = GenConfig{}.ap_size,
      "Run a differential suite and return its report as a dict.");
}

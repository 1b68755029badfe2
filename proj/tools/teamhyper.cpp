#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "teamhyper/errors.hpp"
#include "teamhyper/eval_classic.hpp"
#include "teamhyper/eval_team.hpp"
#include "teamhyper/harness.hpp"
#include "teamhyper/syntax.hpp"
#include "teamhyper/transform.hpp"

namespace th = teamhyper;

namespace {

enum Exit { kOk = 0, kError = 1, kParse = 2, kFragment = 3, kLimit = 4, kDiff = 5 };

th::Logic logic_of(const std::string& s) {
  if (s == "ltl") return th::Logic::Ltl;
  if (s == "team") return th::Logic::Team;
  return th::Logic::Hyper;
}

std::string op_name(th::Op op) {
  switch (op) {
    case th::Op::True: return "True";
    case th::Op::False: return "False";
    case th::Op::Atom: return "Atom";
    case th::Op::NegAtom: return "NegAtom";
    case th::Op::And: return "And";
    case th::Op::Or: return "Or";
    case th::Op::OvOr: return "OvOr";
    case th::Op::Sim: return "Sim";
    case th::Op::Not: return "Not";
    case th::Op::Next: return "Next";
    case th::Op::Globally: return "Globally";
    case th::Op::Until: return "Until";
    case th::Op::Release: return "Release";
    case th::Op::Forall: return "Forall";
    case th::Op::Exists: return "Exists";
  }
  return "?";
}

void dump(const th::Formula& f, int indent, std::ostream& out) {
  out << std::string(static_cast<std::size_t>(indent) * 2, ' ') << op_name(f.op());
  if (!f.prop().empty()) out << ' ' << f.prop();
  if (!f.var().empty()) out << (f.is(th::Op::Forall) || f.is(th::Op::Exists) ? " " : "@") << f.var();
  out << '\n';
  for (const auto& c : f.children()) dump(c, indent + 1, out);
}

th::Team read_team(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw th::InvalidArgument("cannot open team file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  th::TeamFile file = th::parse_team_file(buf.str());
  for (const auto& w : file.warnings) std::cerr << "warning: " << w << '\n';
  return file.team;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Team semantics and HyperLTL toolkit"};
  app.require_subcommand(1);

  std::string logic = "team";
  std::string formula_text;
  std::string team_path;
  std::string method = "nf";
  std::string form;
  std::string direction;
  bool forall_only = false;
  th::OracleLimits limits;

  auto* parse_cmd = app.add_subcommand("parse", "Parse a formula and print its tree and fragments");
  parse_cmd->add_option("--logic", logic)->check(CLI::IsMember({"ltl", "team", "hyper"}))->required();
  parse_cmd->add_option("formula", formula_text)->required();

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a team formula or HyperLTL sentence on a team");
  eval_cmd->add_option("--team", team_path)->required();
  eval_cmd->add_option("--logic", logic)->check(CLI::IsMember({"ltl", "team", "hyper"}));
  eval_cmd->add_option("--method", method)->check(CLI::IsMember({"nf", "oracle"}));
  eval_cmd->add_option("--max-team", limits.max_team, "Oracle team size limit");
  eval_cmd->add_option("--max-lasso", limits.max_lasso, "Oracle limit on |stem|+|loop|");
  eval_cmd->add_option("--max-depth", limits.max_depth, "Oracle formula depth limit");
  eval_cmd->add_option("formula", formula_text)->required();

  auto* norm_cmd = app.add_subcommand("normalize", "Print the ⩔-DNF or quasi-flat form");
  norm_cmd->add_option("--form", form)->check(CLI::IsMember({"ovdnf", "quasiflat"}))->required();
  norm_cmd->add_option("formula", formula_text)->required();

  auto* tr_cmd = app.add_subcommand("translate", "Translate between team logics and HyperLTL");
  tr_cmd
      ->add_option("--dir", direction)
      ->check(CLI::IsMember(
          {"teamov-to-pbc", "pbc-to-teamov", "leftdc-to-bc", "bc-to-leftdc", "prenex-pbc", "prenex-bc"}))
      ->required();
  tr_cmd->add_flag("--forall-only", forall_only, "Express ∃ as ¬∀ in leftdc-to-bc");
  tr_cmd->add_option("input", formula_text)->required();

  std::string suite_name;
  std::size_t cases = 100;
  std::uint64_t seed = 1;
  std::string out_path;
  bool with_duration = false;
  th::GenConfig cfg;
  auto* diff_cmd = app.add_subcommand("difftest", "Run a differential test suite");
  diff_cmd->add_option("--suite", suite_name)->required();
  diff_cmd->add_option("--cases", cases);
  diff_cmd->add_option("--seed", seed);
  diff_cmd->add_option("--max-team", cfg.max_team);
  diff_cmd->add_option("--max-stem", cfg.max_stem);
  diff_cmd->add_option("--max-period", cfg.max_period);
  diff_cmd->add_option("--max-depth", cfg.max_depth);
  diff_cmd->add_option("--ap-size", cfg.ap_size);
  diff_cmd->add_option("--out", out_path, "Write the JSON report here");
  diff_cmd->add_flag("--with-duration", with_duration, "Include wall-clock time in the report");

  CLI11_PARSE(app, argc, argv);

  try {
    if (parse_cmd->parsed()) {
      th::Formula f = th::parse_formula(formula_text, logic_of(logic));
      std::cout << th::print(f) << '\n';
      dump(f, 0, std::cout);
      std::cout << "fragments:";
      for (auto tag : th::classify(f).tags()) std::cout << ' ' << th::to_string(tag);
      std::cout << '\n';
    } else if (eval_cmd->parsed()) {
      th::Team team = read_team(team_path);
      th::Formula f = th::parse_formula(formula_text, logic_of(logic));
      bool v = false;
      if (logic == "hyper") {
        v = th::eval_hyper(team, f);
      } else if (method == "oracle") {
        v = th::oracle_eval(team, f, limits);
      } else {
        v = th::eval_team_nf(team, f);
      }
      std::cout << (v ? "true" : "false") << '\n';
    } else if (norm_cmd->parsed()) {
      th::Formula f = th::parse_formula(formula_text, th::Logic::Team);
      if (form == "ovdnf") {
        std::cout << th::print(th::to_formula(th::to_ov_dnf(f))) << '\n';
      } else {
        std::cout << th::print(th::to_formula(th::to_quasi_flat(f))) << '\n';
      }
    } else if (tr_cmd->parsed()) {
      const bool from_team = direction == "teamov-to-pbc" || direction == "leftdc-to-bc";
      th::Formula f = th::parse_formula(formula_text, from_team ? th::Logic::Team : th::Logic::Hyper);
      th::Formula out;
      if (direction == "teamov-to-pbc") out = th::teamov_to_pbc(f);
      if (direction == "pbc-to-teamov") out = th::pbc_to_teamov(f);
      if (direction == "leftdc-to-bc") out = th::leftdc_to_bc(f, forall_only);
      if (direction == "bc-to-leftdc") out = th::bc_to_leftdc(f);
      if (direction == "prenex-pbc") out = th::prenex_pbc(f);
      if (direction == "prenex-bc") out = th::prenex_bc(f);
      std::cout << th::print(out) << '\n';
    } else if (diff_cmd->parsed()) {
      auto suite = th::parse_suite(suite_name);
      if (!suite) throw th::InvalidArgument("unknown suite '" + suite_name + "'");
      th::DiffReport report = th::run_suite(*suite, cfg, cases, seed);
      const std::string json = report.to_json(with_duration);
      if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw th::InvalidArgument("cannot write '" + out_path + "'");
        out << json << '\n';
      }
      std::cout << report.suite << ": " << report.cases << " cases, " << report.failures.size() << " failures\n";
      std::cerr << "duration: " << report.duration_ms << " ms\n";
      return report.ok() ? kOk : kDiff;
    }
  } catch (const th::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const th::FragmentError& e) {
    std::cerr << "fragment error: " << e.what() << '\n';
    return kFragment;
  } catch (const th::LimitError& e) {
    std::cerr << "limit exceeded: " << e.what() << '\n';
    return kLimit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kOk;
}

#include <doctest.h>

#include "random_ast.hpp"
#include "teamhyper/errors.hpp"
#include "teamhyper/syntax.hpp"

using namespace teamhyper;
using namespace teamhyper::testing;

namespace {

std::string parse_error(std::string_view text, Logic logic) {
  try {
    parse_formula(text, logic);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse: examples") {
  CHECK(parse_formula("p U (q OR ~r)", Logic::Team) == until(atom("p"), ovor(atom("q"), sim(atom("r")))));
  CHECK(parse_formula("forall pi. exists tau. p@pi U q@tau", Logic::Hyper) ==
        forall("pi", exists("tau", until(hyper_atom("p", "pi"), hyper_atom("q", "tau")))));
  CHECK(parse_error("!(p & q)", Logic::Team).find("NNF violation") != std::string::npos);
}

TEST_CASE("parse: precedence and associativity") {
  auto T = [](const char* s) { return parse_formula(s, Logic::Team); };
  const Formula p = atom("p"), q = atom("q"), r = atom("r");
  CHECK(T("p & q | r") == disj(conj(p, q), r));
  CHECK(T("p | q OR r") == ovor(disj(p, q), r));
  CHECK(T("p U q U r") == until(p, until(q, r)));
  CHECK(T("p U q & r") == conj(until(p, q), r));
  CHECK(T("X p U q") == until(next(p), q));
  CHECK(T("~p & q") == conj(sim(p), q));
  CHECK(T("G F p") == globally(eventually(p)));
  CHECK(T("p ⩔ ∼q") == ovor(p, sim(q)));
  CHECK(T("p R q") == release(p, q));
  CHECK(parse_formula("!p@pi & q@pi", Logic::Hyper) == conj(negation(hyper_atom("p", "pi")), hyper_atom("q", "pi")));
  CHECK(parse_formula("G p@pi", Logic::Hyper) == hyper_globally(hyper_atom("p", "pi")));
}

TEST_CASE("parse: errors carry spans") {
  try {
    parse_formula("p & (q", Logic::Team);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.span().start <= e.span().end);
    CHECK(e.span().end <= 6);
  }
  CHECK_FALSE(parse_error("p OR q", Logic::Ltl).empty());
  CHECK_FALSE(parse_error("~p", Logic::Ltl).empty());
  CHECK_FALSE(parse_error("p@pi", Logic::Team).empty());
  CHECK_FALSE(parse_error("forall pi. p", Logic::Hyper).empty());
  CHECK(parse_error("forall pi. X (exists tau. q@tau)", Logic::Hyper).find("non-prefix") != std::string::npos);
  CHECK_FALSE(parse_error("forall pi. q@tau", Logic::Hyper).empty());
  CHECK_FALSE(parse_error("forall pi. forall pi. p@pi", Logic::Hyper).empty());
  CHECK_FALSE(parse_error("P", Logic::Team).empty());
  CHECK_FALSE(parse_error("p $ q", Logic::Team).empty());
  CHECK_FALSE(parse_error("p &", Logic::Team).empty());
  CHECK_FALSE(parse_error("", Logic::Team).empty());
}

TEST_CASE("print: examples") {
  CHECK(print(until(atom("p"), atom("q"))) == "p U q");
  CHECK(print(ovor(conj(atom("p"), atom("q")), atom("r"))) == "(p & q) OR r");
  CHECK(print(forall("pi", hyper_atom("p", "pi"))) == "forall pi. p@pi");
  CHECK(print(eventually(atom("p"))) == "F p");
  CHECK(print(hyper_globally(hyper_atom("p", "pi"))) == "G p@pi");
}

TEST_CASE("print/parse round trip on random trees") {
  Rng rng(2024);
  for (int i = 0; i < 10000; ++i) {
    Formula f = random_team_ast(rng, 6, false);
    Formula g = parse_formula(print(f), Logic::Ltl);
    REQUIRE_MESSAGE(g == f, print(f));
  }
  for (int i = 0; i < 10000; ++i) {
    Formula f = random_team_ast(rng, 6, true);
    Formula g = parse_formula(print(f), Logic::Team);
    REQUIRE_MESSAGE(g == f, print(f));
  }
  for (int i = 0; i < 10000; ++i) {
    Formula f = random_hyper_ast(rng, 4);
    Formula g = parse_formula(print(f), Logic::Hyper);
    REQUIRE_MESSAGE(g == f, print(f));
  }
}

TEST_CASE("team files") {
  auto file = parse_team_file("# comment\nt1 = {p}({q})\n\n");
  REQUIRE(file.team.size() == 1);
  const auto& t = *file.team.begin();
  CHECK(t.stem() == std::vector<Letter>{make_letter({"p"})});
  CHECK(t.loop() == std::vector<Letter>{make_letter({"q"})});

  auto same = parse_team_file("a = ({p})\nb = ({p}{p})\n");
  CHECK(same.team.size() == 1);
  CHECK(same.names == std::vector<std::string>{"a", "b"});

  auto dup = parse_team_file("a = ({p})\na = ({q})\n");
  CHECK(dup.team.size() == 2);
  CHECK(dup.warnings.size() == 1);

  try {
    parse_team_file("c = ()");
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("empty loop") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_team_file("t = {p}({q)"), ParseError);
  CHECK_THROWS_AS(parse_team_file("t = {p}({q}) junk"), ParseError);
  CHECK(parse_team_file("t = {p, q}({})").team.begin()->stem().front() == make_letter({"p", "q"}));

  const Team team{parse_trace("{p}({q})"), parse_trace("({})")};
  CHECK(parse_team_file(print_team(team)).team == team);
}

#include <doctest.h>

#include "random_ast.hpp"
#include "teamhyper/errors.hpp"
#include "teamhyper/eval_classic.hpp"
#include "teamhyper/syntax.hpp"

using namespace teamhyper;
using namespace teamhyper::testing;

namespace {

Formula L(const char* s) { return parse_formula(s, Logic::Ltl); }
Formula H(const char* s) { return parse_formula(s, Logic::Hyper); }

}  // namespace

TEST_CASE("eval_ltl: examples") {
  const auto t = parse_trace("{p}{}({q})");
  CHECK(eval_ltl(t, L("F q")));
  CHECK_FALSE(eval_ltl(t, L("G q")));
  CHECK(eval_ltl(t, L("1")));
  CHECK(eval_ltl(t, L("X X G q")));
  CHECK_FALSE(eval_ltl(t, L("p U q")));
  CHECK(eval_ltl(t, L("p U X q")));
  CHECK(eval_ltl(t, L("!q R !p")) == !eval_ltl(t, L("q U p")));
  CHECK_THROWS_AS(eval_ltl(t, parse_formula("p OR q", Logic::Team)), FragmentError);
}

TEST_CASE("eval_ltl agrees with direct unrolling, including Release") {
  Rng rng(99);
  GenConfig cfg;
  cfg.max_stem = 3;
  cfg.max_period = 3;
  cfg.ap_size = 3;
  for (int i = 0; i < 3000; ++i) {
    Formula a = random_team_ast(rng, 5, false);
    LassoTrace t = gen_trace(cfg, rng);
    REQUIRE_MESSAGE(eval_ltl(t, a) == brute_ltl(t, a, 0), (print(a) + " on " + print_trace(t)));
    const auto col = ltl_positions(t, a);
    for (std::size_t k = 0; k < t.length(); ++k) CHECK(col[k] == brute_ltl(t, a, k));
  }
}

TEST_CASE("eval_ltl is stable under non-canonical representations") {
  Rng rng(7);
  GenConfig cfg;
  cfg.max_stem = 2;
  cfg.max_period = 3;
  for (int i = 0; i < 1000; ++i) {
    Formula a = random_team_ast(rng, 5, false);
    LassoTrace t = gen_trace(cfg, rng);
    const bool v = eval_ltl(t, a);
    // Unfold one loop iteration into the stem, and double the loop.
    std::vector<Letter> stem = t.stem();
    stem.insert(stem.end(), t.loop().begin(), t.loop().end());
    std::vector<Letter> loop = t.loop();
    std::rotate(loop.begin(), loop.begin() + 1, loop.end());
    stem.push_back(t.loop().front());
    CHECK(eval_ltl(stem, loop, a) == v);
    std::vector<Letter> twice = t.loop();
    twice.insert(twice.end(), t.loop().begin(), t.loop().end());
    CHECK(eval_ltl(t.stem(), twice, a) == v);
  }
}

TEST_CASE("eval_hyper: examples") {
  const Team pq{parse_trace("({p})"), parse_trace("({q})")};
  CHECK(eval_hyper(pq, H("forall pi. exists tau. (p@pi | q@tau)")));
  CHECK_FALSE(eval_hyper(pq, H("exists pi. forall tau. (p@pi & q@tau)")));
  CHECK(eval_hyper(Team{}, H("forall pi. 0")));
  CHECK_FALSE(eval_hyper(Team{}, H("exists pi. 1")));
  CHECK(eval_hyper(Team{parse_trace("({p})")}, H("forall pi. G p@pi")));
  CHECK(eval_hyper(pq, H("(exists pi. p@pi) & !(forall pi. p@pi)")));
  // Traces are compared position-wise with their own clocks aligned.
  const Team shifted{parse_trace("{p}({})"), parse_trace("{}{p}({})")};
  CHECK_FALSE(eval_hyper(shifted, H("forall pi. forall tau. F (p@pi & p@tau)")));
  CHECK(eval_hyper(shifted, H("forall pi. forall tau. F p@pi & F p@tau")));
  CHECK_THROWS_AS(eval_hyper(pq, H("p@pi")), InvalidArgument);
}

TEST_CASE("eval_hyper: quantifier duality") {
  Rng rng(41);
  GenConfig cfg;
  cfg.max_depth = 4;
  cfg.max_team = 3;
  for (int i = 0; i < 1000; ++i) {
    const Team team = gen_team(cfg, rng);
    Formula s = gen_formula(GenKind::HyperBc, cfg, rng);
    // Take the first prenex literal and keep single-quantifier ones.
    while (!(s.is(Op::Forall) || s.is(Op::Exists))) s = s.child(0);
    Formula body = s.child(0);
    if (has_quantifier(body)) continue;
    Formula dual_q = s.is(Op::Forall) ? exists(s.var(), negation(body)) : forall(s.var(), negation(body));
    CHECK(eval_hyper(team, negation(s)) == eval_hyper(team, dual_q));
  }
}

TEST_CASE("eval_hyper: hyperification adequacy") {
  Rng rng(43);
  GenConfig cfg;
  cfg.max_depth = 5;
  for (int i = 0; i < 1000; ++i) {
    Formula a = gen_formula(GenKind::Ltl, cfg, rng);
    LassoTrace t = gen_trace(cfg, rng);
    CHECK(eval_ltl(t, a) == eval_hyper(Team{t}, forall("pi", hyperify(a, "pi"))));
  }
}

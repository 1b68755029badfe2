#include <doctest.h>

#include "rule_check.hpp"
#include "support.hpp"
#include "teamhyper/errors.hpp"
#include "teamhyper/eval_classic.hpp"
#include "teamhyper/eval_team.hpp"
#include "teamhyper/harness.hpp"
#include "teamhyper/syntax.hpp"

using namespace teamhyper;
using namespace teamhyper::testing;

namespace {

Formula T(const char* s) { return parse_formula(s, Logic::Team); }
LassoTrace tr(const char* s) { return parse_trace(s); }

}  // namespace

TEST_CASE("oracle: examples") {
  const Team pq{tr("({p})"), tr("({q})")};
  CHECK_FALSE(oracle_eval(pq, T("p OR q")));
  CHECK(oracle_eval(pq, T("p | q")));
  CHECK_FALSE(oracle_eval(pq, T("G (p OR q)")));
  CHECK(oracle_eval(Team{tr("({p})")}, T("G (p OR q)")));
  CHECK(oracle_eval(Team{tr("{p}({q})"), tr("({r})")}, T("~(G r)")));
  CHECK(oracle_eval(Team{}, T("G (p OR q) & X (p | 0)")));
  CHECK_FALSE(oracle_eval(Team{}, T("~(p OR q)")));
  CHECK(oracle_eval(Team{}, T("0")));
  CHECK_FALSE(oracle_eval(pq, T("0")));
  CHECK(oracle_eval(pq, T("F (p | q)")));
  // Suffix choices are asynchronous: terminate at different positions.
  CHECK(oracle_eval(Team{tr("{t}({})"), tr("{}{}{t}({})")}, T("F t")));
  CHECK_FALSE(oracle_eval(Team{tr("{t}({})"), tr("{}{}{t}({})")}, T("~(F t)")));
}

TEST_CASE("normal-form evaluation: examples") {
  const Team pq{tr("({p})"), tr("({q})")};
  CHECK_FALSE(eval_team_nf(pq, T("G(p OR q)")));
  CHECK(eval_team_nf(Team{tr("({p})")}, T("G(p OR q)")));
  CHECK(eval_team_nf(Team{tr("{p}({q})"), tr("({r})")}, T("~(G r)")));
  CHECK_THROWS_AS(eval_team_nf(pq, T("G ~p")), FragmentError);
  CHECK_THROWS_AS(eval_team_nf(pq, T("(~p) U q")), FragmentError);
}

TEST_CASE("oracle limits are enforced") {
  const Team four{tr("({p})"), tr("({q})"), tr("({})"), tr("({p,q})")};
  CHECK_THROWS_AS(oracle_eval(four, T("p")), LimitError);
  CHECK_THROWS_AS(oracle_eval(Team{tr("{}{}{}{}({p})")}, T("p")), LimitError);
  CHECK_THROWS_AS(oracle_eval(Team{tr("({p})")}, T("X X X X p")), LimitError);
  CHECK_THROWS_AS(oracle_eval(Team{tr("({p})")}, parse_formula("forall pi. p@pi", Logic::Hyper)), FragmentError);
  OracleLimits wide;
  wide.max_team = 4;
  CHECK(oracle_eval(four, T("1"), wide));
}

TEST_CASE("oracle: flatness and singleton agreement with LTL") {
  Rng rng(5);
  GenConfig cfg;
  cfg.max_depth = 4;
  for (int i = 0; i < 500; ++i) {
    Formula a = gen_formula(GenKind::Ltl, cfg, rng);
    Team team = gen_team(cfg, rng);
    bool all = true;
    for (const auto& t : team) {
      const bool v = eval_ltl(t, a);
      all = all && v;
      CHECK(oracle_eval(Team{t}, a) == v);
    }
    CHECK(oracle_eval(team, a) == all);
  }
}

TEST_CASE("oracle: the position bound loses no witnesses") {
  // Positions beyond |stem|+|loop|-1 repeat suffixes with larger min/max;
  // allowing extra positions must not change any verdict.
  Rng rng(77);
  GenConfig cfg;
  cfg.max_depth = 3;
  cfg.max_team = 2;
  cfg.max_stem = 1;
  cfg.max_period = 2;
  OracleLimits slack;
  slack.position_slack = 3;
  std::size_t compared = 0;
  for (int i = 0; i < 600; ++i) {
    Formula f = gen_formula(i % 2 == 0 ? GenKind::TeamOv : GenKind::LeftDc, cfg, rng);
    Team team = gen_team(cfg, rng);
    CHECK_MESSAGE(oracle_eval(team, f) == oracle_eval(team, f, slack), (print(f) + " on " + print_team(team)));
    ++compared;
  }
  // The full-~ fragment too, on the exhaustive small formulas with U and G.
  const auto formulas = enumerate_team_formulas(3);
  const auto lassos = small_lassos(1, 2);
  for (std::size_t k = 0; k < formulas.size(); k += 7) {
    const Formula& f = formulas[k];
    const Team team{lassos[k % lassos.size()], lassos[(k * 5 + 1) % lassos.size()]};
    CHECK_MESSAGE(oracle_eval(team, f) == oracle_eval(team, f, slack), (print(f) + " on " + print_team(team)));
    ++compared;
  }
  CHECK(compared > 1000);
}

TEST_CASE("oracle: evaluation on subteams and downward closure") {
  const Team team{tr("{p}({q})"), tr("({p})"), tr("({q}{p})")};
  TeamOracle oracle(team);
  CHECK(oracle.universe_size() == 5);
  CHECK(oracle.eval(T("X q"), Team{tr("{p}({q})")}));
  CHECK_FALSE(oracle.eval(T("X q"), team));
  CHECK_THROWS_AS(oracle.eval(T("p"), Team{tr("({r})")}), InvalidArgument);

  Rng rng(9);
  GenConfig cfg;
  cfg.max_depth = 4;
  for (int i = 0; i < 100; ++i) {
    Formula f = gen_formula(GenKind::TeamOv, cfg, rng);
    Team t = gen_team(cfg, rng);
    TeamOracle o(t);
    if (!o.eval(f)) continue;
    std::vector<LassoTrace> traces(t.begin(), t.end());
    for (std::size_t m = 0; m < (std::size_t{1} << traces.size()); ++m) {
      Team sub;
      for (std::size_t j = 0; j < traces.size(); ++j) {
        if ((m >> j) & 1U) sub.insert(traces[j]);
      }
      CHECK(o.eval(f, sub));
    }
  }
}

TEST_CASE("empty team satisfies every TeamLTL(⩔) formula") {
  Rng rng(13);
  GenConfig cfg;
  cfg.max_depth = 5;
  for (int i = 0; i < 500; ++i) {
    Formula f = gen_formula(GenKind::TeamOv, cfg, rng);
    CHECK(eval_team_nf(Team{}, f));
    if (f.depth() <= 4) CHECK(oracle_eval(Team{}, f));
  }
}

TEST_CASE("rewrite rules are oracle-equivalent on small teams") {
  const auto teams = small_teams(small_lassos(1, 1));
  OracleLimits limits;
  limits.max_team = 2;
  auto ov = check_equivalences(instantiate(ov_rules(), ov_rule_domain()), teams, limits);
  CHECK_MESSAGE(ov.failures == 0, ov.first_failure);
  limits.max_depth = 12;
  auto qf = check_equivalences(instantiate(quasi_rules(), quasi_rule_domain()), teams, limits);
  CHECK_MESSAGE(qf.failures == 0, qf.first_failure);
  CHECK(qf.instances > 100);
}

TEST_CASE("a broken rewrite rule is caught by the same check") {
  RewriteRule broken = ov_rules()[5];
  REQUIRE(broken.name == "globally");
  broken.apply = [](const Formula& f) -> std::optional<Formula> {
    if (!f.is(Op::Globally) || !f.child(0).is(Op::OvOr)) return std::nullopt;
    return globally(disj(f.child(0).lhs(), f.child(0).rhs()));
  };
  const auto teams = small_teams(small_lassos(1, 2));
  OracleLimits limits;
  limits.max_team = 2;
  auto r = check_equivalences(instantiate(std::vector<RewriteRule>{broken}, ov_rule_domain()), teams, limits);
  CHECK(r.failures > 0);
}

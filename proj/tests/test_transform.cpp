#include <doctest.h>

#include "teamhyper/errors.hpp"
#include "teamhyper/eval_classic.hpp"
#include "teamhyper/eval_team.hpp"
#include "teamhyper/harness.hpp"
#include "teamhyper/syntax.hpp"
#include "teamhyper/transform.hpp"

using namespace teamhyper;

namespace {

Formula T(const char* s) { return parse_formula(s, Logic::Team); }
Formula H(const char* s) { return parse_formula(s, Logic::Hyper); }

std::vector<Formula> Ts(std::initializer_list<const char*> xs) {
  std::vector<Formula> out;
  for (auto x : xs) out.push_back(T(x));
  return out;
}

QuasiConjunct QC(const char* alpha, std::initializer_list<const char*> betas) {
  return {T(alpha), Ts(betas)};
}

bool same(const QuasiFlat& a, const std::vector<QuasiConjunct>& b) {
  if (a.conjuncts.size() != b.size()) return false;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!(a.conjuncts[i].alpha == b[i].alpha) || a.conjuncts[i].betas != b[i].betas) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("to_ov_dnf: examples") {
  CHECK(to_ov_dnf(T("G(p OR q)")).disjuncts == Ts({"G p", "G q"}));
  CHECK(to_ov_dnf(T("p & q")).disjuncts == Ts({"p & q"}));
  CHECK(to_ov_dnf(T("(p OR q) U r")).disjuncts == Ts({"p U r", "q U r"}));
  CHECK(to_ov_dnf(T("(p OR q) & (r OR s)")).disjuncts == Ts({"p & r", "p & s", "q & r", "q & s"}));
  CHECK(to_ov_dnf(T("X (p OR q) | r")).disjuncts == Ts({"X p | r", "X q | r"}));
  CHECK_THROWS_AS(to_ov_dnf(T("~p")), FragmentError);
}

TEST_CASE("to_ov_dnf: blow-up is capped") {
  Formula f = T("p OR q");
  for (int i = 0; i < 13; ++i) f = conj(f, T("p OR q"));
  CHECK_THROWS_AS(to_ov_dnf(f), LimitError);
  TransformLimits big;
  big.max_disjuncts = 1 << 15;
  CHECK(to_ov_dnf(f, big).disjuncts.size() == 1 << 14);
}

TEST_CASE("to_quasi_flat: examples") {
  CHECK(same(to_quasi_flat(T("~p")), {QC("1", {"!p"})}));
  CHECK(same(to_quasi_flat(T("G p & ~(G q)")), {QC("G p", {"F !q"})}));
  CHECK(same(to_quasi_flat(T("p U (q & ~(X r))")), {QC("p U q", {"p U (q & X !r)"})}));
  CHECK(same(to_quasi_flat(T("~~p")), {QC("p", {})}));
  CHECK(same(to_quasi_flat(T("~(p OR q)")), {QC("1", {"!p", "!q"})}));
  CHECK_THROWS_AS(to_quasi_flat(T("G ~p")), FragmentError);
}

TEST_CASE("normal forms agree with the oracle on random formulas") {
  Rng rng(31);
  GenConfig cfg;
  cfg.max_depth = 4;
  for (int i = 0; i < 1500; ++i) {
    const bool ov = i % 2 == 0;
    Formula f = gen_formula(ov ? GenKind::TeamOv : GenKind::LeftDc, cfg, rng);
    Team team = gen_team(cfg, rng);
    const bool expected = oracle_eval(team, f);
    CHECK_MESSAGE(eval_team_nf(team, f) == expected, (print(f) + " on " + print_team(team)));
    CHECK(eval_quasi_flat(team, to_quasi_flat(f)) == expected);
    if (ov) CHECK(oracle_eval(team, to_formula(to_ov_dnf(f)), OracleLimits{3, 4, 64, 0}) == expected);
  }
}

TEST_CASE("bool_closure_dnf") {
  const Formula A = H("forall pi. p@pi");
  const Formula B = H("exists pi. q@pi");
  const Formula C = H("forall pi. forall tau. p@pi U q@tau");
  auto dnf = bool_closure_dnf(conj(A, disj(B, C)));
  REQUIRE(dnf.size() == 2);
  CHECK(dnf[0].size() == 2);
  CHECK(dnf[0][0].sentence == A);
  CHECK(dnf[0][1].sentence == B);
  CHECK(dnf[1][1].sentence == C);

  auto neg = bool_closure_dnf(negation(disj(A, B)));
  REQUIRE(neg.size() == 1);
  CHECK_FALSE(neg[0][0].positive);
  CHECK_FALSE(neg[0][1].positive);

  auto single = bool_closure_dnf(A);
  CHECK((single.size() == 1 && single[0].size() == 1 && single[0][0].positive));
}

TEST_CASE("negate_prenex") {
  CHECK(negate_prenex(H("forall pi. G p@pi")) == H("exists pi. F !p@pi"));
  CHECK(negate_prenex(H("exists pi. p@pi")) == H("forall pi. !p@pi"));
  const Formula s = H("forall pi. exists tau. X (p@pi & !q@tau) U q@pi");
  CHECK(negate_prenex(negate_prenex(s)) == s);
  CHECK_THROWS_AS(negate_prenex(H("(forall pi. p@pi) & (forall pi. q@pi)")), FragmentError);
}

TEST_CASE("prenex_pbc and prenex_bc: examples") {
  CHECK(prenex_pbc(H("(forall pi. p@pi) | (forall pi. q@pi)")) == H("forall pi1. forall pi2. (p@pi1 | q@pi2)"));
  CHECK(prenex_pbc(H("(forall pi. p@pi) & (forall pi. q@pi)")) == H("forall pi. (p@pi & q@pi)"));
  CHECK(prenex_pbc(H("forall pi. forall tau. p@pi U q@tau")) == H("forall pi. forall tau. p@pi U q@tau"));
  CHECK_THROWS_AS(prenex_pbc(H("exists pi. p@pi")), FragmentError);
  CHECK_THROWS_AS(prenex_pbc(H("!(forall pi. p@pi)")), FragmentError);

  CHECK(prenex_bc(H("!(forall pi. G p@pi)")) == H("exists pi. F !p@pi"));
  // Holds on no empty team, so the prefix must start with ∃.
  CHECK(prenex_bc(H("(forall pi. p@pi) & !(forall pi. q@pi)")) ==
        H("exists pi2. forall pi1. (p@pi1 & !q@pi2)"));
  const Formula dup = prenex_bc(H("(exists pi. p@pi) | (exists pi. p@pi)"));
  CHECK(dup == H("exists pi1. exists pi2. (p@pi1 | p@pi2)"));
  // Closed quantifier-free literals fold away.
  CHECK(prenex_bc(H("(forall pi. p@pi) & !0")) == H("forall pi. p@pi"));
  CHECK(prenex_bc(H("(forall pi. p@pi) & 0")) == bottom());
}

TEST_CASE("prenex forms are equivalent, including on the empty team") {
  Rng rng(37);
  GenConfig cfg;
  cfg.max_depth = 3;
  cfg.max_team = 3;
  for (int i = 0; i < 800; ++i) {
    const bool positive = i % 2 == 0;
    Formula s = gen_formula(positive ? GenKind::HyperPbc : GenKind::HyperBc, cfg, rng);
    Team team = i % 5 == 0 ? Team{} : gen_team(cfg, rng);
    const bool v = eval_hyper(team, s);
    if (positive) {
      Formula p = prenex_pbc(s);
      CHECK(classify(p).contains(FragmentTag::ForallStar));
      CHECK(eval_hyper(team, p) == v);
    }
    Formula p = prenex_bc(s);
    CHECK(eval_hyper(team, p) == v);
    if (has_quantifier(p)) CHECK(eval_hyper(team, negate_prenex(p)) == !v);
  }
}

TEST_CASE("teamov_to_pbc and pbc_to_teamov: examples") {
  CHECK(teamov_to_pbc(T("p OR G q")) == H("(forall pi. p@pi) | (forall pi. G q@pi)"));
  CHECK(teamov_to_pbc(T("p & q")) == H("forall pi. (p@pi & q@pi)"));
  CHECK(teamov_to_pbc(T("G(p OR q)")) == H("(forall pi. G p@pi) | (forall pi. G q@pi)"));
  CHECK(pbc_to_teamov(H("(forall pi. p@pi) | (forall pi. q@pi)")) == T("p OR q"));
  CHECK(pbc_to_teamov(H("(forall pi. p@pi) & (forall pi. q@pi)")) == T("p & q"));
  CHECK(pbc_to_teamov(H("forall pi. !(p@pi)")) == T("!p"));
  CHECK_THROWS_AS(pbc_to_teamov(H("exists pi. p@pi")), FragmentError);
  CHECK_THROWS_AS(pbc_to_teamov(H("forall pi. forall tau. p@pi & q@tau")), FragmentError);
  CHECK_THROWS_AS(teamov_to_pbc(T("~p")), FragmentError);
}

TEST_CASE("leftdc_to_bc and bc_to_leftdc: examples") {
  CHECK(leftdc_to_bc(T("G p & ~(G q)")) == H("(forall pi. G p@pi) & (exists pi. F !q@pi)"));
  CHECK(leftdc_to_bc(T("p")) == H("forall pi. p@pi"));
  CHECK(leftdc_to_bc(T("G p & ~(G q)"), true) == H("(forall pi. G p@pi) & !(forall pi. G q@pi)"));
  CHECK(bc_to_leftdc(H("(forall pi. G p@pi) & !(forall pi. G q@pi)")) == T("G p & ~(G q)"));
  CHECK(bc_to_leftdc(H("exists pi. p@pi")) == T("~(!p)"));
  CHECK(bc_to_leftdc(H("!(exists pi. F p@pi)")) == T("G !p"));
  CHECK_THROWS_AS(bc_to_leftdc(H("forall pi. forall tau. p@pi & q@tau")), FragmentError);
  CHECK_THROWS_AS(leftdc_to_bc(T("G ~p")), FragmentError);
}

TEST_CASE("rename_variables") {
  const Formula s = H("forall pi. exists tau. p@pi U q@tau");
  auto r = rename_variables(s, [](const std::string& v) { return v == "pi" ? std::string("x") : v; });
  CHECK(r == H("forall x. exists tau. p@x U q@tau"));
}

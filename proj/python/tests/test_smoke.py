import pytest

import teamhyper as th


def test_parse_and_print_round_trip():
    f = th.parse("p U (q OR ~r)")
    assert str(f) == "p U (q OR ~r)"
    assert th.parse(str(f)) == f
    assert "TeamLeftDcSim" in th.parse("G p & ~(G q)").fragments()


def test_parse_errors_are_typed():
    with pytest.raises(th.ParseError):
        th.parse("!(p & q)")
    with pytest.raises(th.Error):
        th.parse("p OR q", "ltl")


def test_team_semantics_examples():
    team = ["({p})", "({q})"]
    assert not th.eval_team(team, th.parse("p OR q"))
    assert th.eval_team(team, th.parse("p | q"))
    assert not th.eval_team(team, th.parse("G(p OR q)"))
    assert th.eval_team(["({p})"], th.parse("G(p OR q)"))
    assert th.eval_team(["{p}({q})", "({r})"], th.parse("~(G r)"))
    assert th.oracle_eval(["{p}({q})", "({r})"], th.parse("~(G r)"))
    with pytest.raises(th.FragmentError):
        th.eval_team(team, th.parse("G ~p"))
    with pytest.raises(th.LimitError):
        th.oracle_eval(["({p})", "({q})", "({})", "({p,q})"], th.parse("p"))


def test_classic_evaluation():
    assert th.eval_ltl("{p}{}({q})", th.parse("F q", "ltl"))
    assert th.eval_hyper(["({p})", "({q})"], th.parse("forall pi. exists tau. (p@pi | q@tau)", "hyper"))
    assert th.canonical_trace("{p}({q}{q})") == "{p}({q})"
    assert th.parse_team("a = ({p})\nb = ({p}{p})\n") == ["({p})"]


def test_normal_forms_and_translations():
    assert [str(d) for d in th.to_ov_dnf(th.parse("G(p OR q)"))] == ["G p", "G q"]
    [(alpha, betas)] = th.to_quasi_flat(th.parse("G p & ~(G q)"))
    assert str(alpha) == "G p" and [str(b) for b in betas] == ["F !q"]
    s = th.teamov_to_pbc(th.parse("p OR G q"))
    assert str(s) == "(forall pi. p@pi) | (forall pi. G q@pi)"
    assert th.pbc_to_teamov(s) == th.parse("p OR G q")
    bc = th.leftdc_to_bc(th.parse("G p & ~(G q)"), forall_only=True)
    assert th.bc_to_leftdc(bc) == th.parse("G p & ~(G q)")
    sentence = th.parse("forall pi. exists tau. p@pi U q@tau", "hyper")
    assert th.negate_prenex(th.negate_prenex(sentence)) == sentence
    assert str(th.prenex_pbc(th.parse("(forall pi. p@pi) | (forall pi. q@pi)", "hyper"))) == (
        "forall pi1. forall pi2. p@pi1 | q@pi2"
    )


def test_difftest_is_deterministic():
    assert "thm-ov" in th.suites()
    a = th.difftest("thm-ov", cases=50, seed=3)
    b = th.difftest("thm-ov", cases=50, seed=3)
    assert a == b
    assert a["ok"] and a["cases"] == 50 and a["failures"] == []
    with pytest.raises(th.InvalidArgument):
        th.difftest("nope")

"""Team semantics for LTL and its HyperLTL counterparts."""

from ._teamhyper import (
    Error,
    Formula,
    FragmentError,
    InvalidArgument,
    LimitError,
    ParseError,
    bc_to_leftdc,
    canonical_trace,
    difftest,
    dual,
    eval_hyper,
    eval_ltl,
    eval_team,
    leftdc_to_bc,
    negate_prenex,
    oracle_eval,
    parse,
    parse_team,
    pbc_to_teamov,
    prenex_bc,
    prenex_pbc,
    suites,
    teamov_to_pbc,
    to_ov_dnf,
    to_quasi_flat,
)

__all__ = [name for name in dir() if not name.startswith("_")]

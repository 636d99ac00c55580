"""Exact-arithmetic bisimilarity and Zhou-ordinal chains for finite and
symbolic labelled Markov processes."""

from .core import (
    EqRelation,
    FiniteLMP,
    SetAlgebra,
    SymRelation,
    is_in_algebra,
    measure_of,
    restrict_algebra,
    restrict_relation,
    sigma_generate,
    sum_with_space,
    validate_lmp,
)
from .logic import (
    And,
    Diamond,
    Formula,
    Top,
    distinguishing_formula,
    eval_formula,
    logic_sigma,
    parse_formula,
)
from .operators import (
    ZhouChain,
    brute_smallest_stable,
    brute_state_bisim,
    closed_sets,
    event_bisim,
    is_stable,
    is_state_bisim,
    op_G,
    op_O,
    rel_T,
    rel_of_family,
    state_bisim,
    test_set,
    zhou_iterate,
)
from .ordinal import (
    Ordinal,
    alpha_n,
    fund_seq,
    ord_cmp,
    ord_is_limit,
    ord_parse,
    ord_print,
    ord_succ,
)

__version__ = "0.1.0"

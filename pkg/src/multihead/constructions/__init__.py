"""Turing machines, VALC acceptors and hierarchy witness builders."""

from .predicates import (
    copy,
    fibonacci_blocks,
    l1,
    l2,
    ln_member,
    lnm_member,
    lrc,
    marked_palindrome,
    mirror,
    reference_predicates,
)
from .turing import (
    Outcome,
    TmRun,
    TuringMachine,
    check_tm,
    ensure_conforming,
    fixture_tm,
    reference_valc_member,
    small_tm,
    tm_run,
    tm_step,
    valc_string,
)
from .valc import build_valc_acceptor
from .witnesses import (
    build_l2_acceptor,
    build_ln_acceptor,
    build_lnm_acceptor,
    lnm_alphabet,
    pair_symbol,
)

__all__ = [
    "Outcome",
    "TmRun",
    "TuringMachine",
    "build_l2_acceptor",
    "build_ln_acceptor",
    "build_lnm_acceptor",
    "build_valc_acceptor",
    "check_tm",
    "copy",
    "ensure_conforming",
    "fibonacci_blocks",
    "fixture_tm",
    "l1",
    "l2",
    "ln_member",
    "lnm_alphabet",
    "lnm_member",
    "lrc",
    "marked_palindrome",
    "mirror",
    "pair_symbol",
    "reference_predicates",
    "reference_valc_member",
    "small_tm",
    "tm_run",
    "tm_step",
    "valc_string",
]

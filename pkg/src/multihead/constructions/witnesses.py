"""Builders for the hierarchy witness languages L_n, L_{n,M} and L2."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from ..core import RIGHT_END, MultiHeadAutomaton
from ..errors import UsageError
from ._program import ACCEPT, materialize, readable
from .turing import SEPARATOR, TuringMachine, ensure_conforming
from .valc import END, ValcChecker

LN_ALPHABET = ("a", "b", SEPARATOR)
LETTERS = ("a", "b")


@dataclass(frozen=True)
class Move:
    """Advance ``head`` until it has passed ``count`` more separators."""

    head: int
    count: int


@dataclass(frozen=True)
class Compare:
    """Check the blocks under ``lead`` and ``other`` for equality.

    ``lead_term`` is the symbol expected right after the lead's block; on
    ``$`` the lead steps past it, the other head stays on its own ``$``.
    """

    lead: int
    other: int
    lead_term: str


def mirror_schedule(active, lo, hi, passed, total):
    """Comparison rounds verifying ``w_i = w_{total+1-i}`` for blocks ``lo..`` and ``..hi``.

    ``passed`` maps each head to the separators it has already crossed and is
    updated in place.  Returns the instruction list, the first block left
    unverified and the heads still active.
    """
    prog = []
    active = list(active)
    while len(active) >= 2:
        h = len(active)
        lead, parked = active[0], active[1:]
        start = hi - h + 2
        prog.append(Move(lead, start - 1 - passed[lead]))
        passed[lead] = start - 1
        for j, head in enumerate(parked):
            prog.append(Move(head, lo + j - 1 - passed[head]))
            passed[head] = lo + j - 1
        for c in range(h - 1):
            block = start + c
            term = RIGHT_END if block == total else SEPARATOR
            prog.append(Compare(lead, parked[h - 2 - c], term))
            if term == SEPARATOR:
                passed[lead] = block
        lo, hi, active = lo + h - 1, hi - (h - 1), parked
    return prog, lo, active


def _scheduled_step(instr, sym, letters):
    """Move vector fragment and continuation for one instruction; ``None`` rejects."""
    if isinstance(instr, Move):
        s = sym[instr.head]
        if s == SEPARATOR:
            return {instr.head: 1}, instr.count - 1
        if s in letters:
            return {instr.head: 1}, instr.count
        return None
    x, y = sym[instr.lead], sym[instr.other]
    if x in letters and x == y:
        return {instr.lead: 1, instr.other: 1}, False
    if y == SEPARATOR and x == instr.lead_term:
        return ({instr.lead: 1} if x == SEPARATOR else {}), True
    return None


class _Schedule:
    """Runs a list of Move/Compare instructions on heads ``1..k``."""

    def __init__(self, prog, letters):
        self.prog = prog
        self.letters = letters

    def normalize(self, pc):
        # drop moves that have nothing left to do
        while pc < len(self.prog) and isinstance(self.prog[pc], Move) and self.prog[pc].count == 0:
            pc += 1
        return pc

    def state(self, pc, remaining=None):
        pc = self.normalize(pc)
        if pc == len(self.prog):
            return ACCEPT
        instr = self.prog[pc]
        if isinstance(instr, Move):
            return ("run", pc, instr.count if remaining is None else remaining)
        return ("run", pc, None)

    def step(self, state, sym):
        _, pc, remaining = state
        instr = self.prog[pc]
        if isinstance(instr, Move):
            r = _scheduled_step(instr, sym, self.letters)
            if r is None or remaining == 0:
                return None
            moves, _ = r
            left = remaining - 1 if sym[instr.head] == SEPARATOR else remaining
            return moves, (self.state(pc + 1) if left == 0 else ("run", pc, left))
        r = _scheduled_step(instr, sym, self.letters)
        if r is None:
            return None
        moves, done = r
        return moves, (self.state(pc + 1) if done else state)


def _vector(k, moves):
    return tuple(moves.get(i, 0) for i in range(1, k + 1))


def _schedule_program(k, alphabet, sched):
    scanned = readable(alphabet)

    def expand(state):
        for symbols in itertools.product(scanned, repeat=k):
            r = sched.step(state, dict(zip(range(1, k + 1), symbols)))
            if r is not None:
                moves, nxt = r
                yield symbols, nxt, _vector(k, moves)

    return expand


def ln_block_count(k):
    return comb(k, 2)


def build_ln_acceptor(k: int):
    """Deterministic one-way k-head automaton for L_n with ``n = C(k, 2)``."""
    if not isinstance(k, int) or k < 2:
        raise UsageError("the L_n acceptor needs k >= 2 heads")
    n = ln_block_count(k)
    passed = {h: 0 for h in range(1, k + 1)}
    prog, _, _ = mirror_schedule(range(1, k + 1), 1, 2 * n, passed, 2 * n)
    sched = _Schedule(prog, LETTERS)
    return materialize(k, LN_ALPHABET, sched.state(0), _schedule_program(k, LN_ALPHABET, sched))


# --------------------------------------------------------------------------- #
# L_{n,M}: two-track blocks whose lower tracks are valid computations


def pair_symbol(upper, lower):
    return f"{upper}/{lower}"


def lnm_alphabet(tm: TuringMachine):
    return tuple(pair_symbol(u, v) for u in LETTERS for v in tm.valc_alphabet) + (SEPARATOR,)


def build_lnm_acceptor(k: int, tm: TuringMachine):
    """Deterministic one-way (k+1)-head automaton for L_{n,M}, ``n = C(k, 2) + 1``.

    Heads 1 and k+1 verify the lower tracks of ``w_1 .. w_n`` and stop at the
    start of ``w_{n+1}``.  Heads 1..k then run the mirror rounds, and the head
    left at ``w_n`` finally meets head k+1 for the middle pair.
    """
    if not isinstance(k, int) or k < 2:
        raise UsageError("the L_{n,M} acceptor needs k >= 2")
    ensure_conforming(tm)
    n = comb(k, 2) + 1
    heads = k + 1
    alphabet = lnm_alphabet(tm)
    scanned = readable(alphabet)
    pairs = alphabet[:-1]
    lower = {p: p.split("/", 1)[1] for p in pairs}
    checker = ValcChecker(tm)

    def proj(sym):
        if sym == SEPARATOR:
            return END
        return lower.get(sym, RIGHT_END)

    passed = {h: 0 for h in range(1, k + 1)}
    passed[1] = n
    prog, last, (final,) = mirror_schedule(range(1, k + 1), 1, 2 * n, passed, 2 * n)
    assert last == n
    prog.append(Move(final, n - 1 - passed[final]))
    prog.append(Compare(final, heads, SEPARATOR))
    sched = _Schedule(prog, set(pairs))

    start = ("valc", 1, checker.initial, None)

    def expand(state):
        if state[0] == "valc":
            _, block, cstate, first = state
            if first is None:
                # all heads share square 1
                for s in scanned:
                    r = checker.step(cstate, proj(s), proj(s))
                    if r is not None:
                        (nxt, (d1, d2)) = r
                        yield (s,) * heads, ("valc", block, nxt, s), (d1,) + (0,) * (k - 1) + (d2,)
                return
            for x in scanned:
                for y in scanned:
                    r = checker.step(cstate, proj(x), proj(y))
                    if r is None:
                        continue
                    symbols = (x,) + (first,) * (k - 1) + (y,)
                    nxt, (d1, d2) = r
                    if nxt == ACCEPT:
                        yield symbols, ("align", block, first), (0,) * heads
                    else:
                        yield symbols, ("valc", block, nxt, first), (d1,) + (0,) * (k - 1) + (d2,)
            return
        if state[0] == "align":
            _, block, first = state
            for x in scanned:
                symbols = (x,) + (first,) * (k - 1) + (SEPARATOR,)
                if x in lower:
                    yield symbols, state, (1,) + (0,) * k
                elif x == SEPARATOR:
                    nxt = ("valc", block + 1, checker.initial, first) if block < n else sched.state(0)
                    yield symbols, nxt, (1,) + (0,) * (k - 1) + (1,)
            return
        for symbols in itertools.product(scanned, repeat=heads):
            r = sched.step(state, dict(zip(range(1, heads + 1), symbols)))
            if r is not None:
                moves, nxt = r
                yield symbols, nxt, _vector(heads, moves)

    return materialize(heads, alphabet, start, expand)


# --------------------------------------------------------------------------- #
# L2 = { a b a^2 b ... a^n b : n >= 1 }


def build_l2_acceptor():
    """Two heads: the trailing head walks block i while the leading head walks block i+1."""
    a, b, end = "a", "b", RIGHT_END
    table = {
        ("S0", (a, a)): ("S1", (0, 1)),
        ("S1", (a, b)): ("NEXT", (0, 1)),
        ("NEXT", (a, end)): ("ACC", (0, 0)),
        ("NEXT", (a, a)): ("CMP", (1, 1)),
        ("CMP", (a, a)): ("CMP", (1, 1)),
        ("CMP", (b, a)): ("EXTRA", (0, 1)),
        ("EXTRA", (b, b)): ("NEXT", (1, 1)),
    }
    return MultiHeadAutomaton(
        states=("S0", "S1", "NEXT", "CMP", "EXTRA", "ACC"),
        input_alphabet=(a, b),
        head_count=2,
        transitions={key: {val} for key, val in table.items()},
        initial_state="S0",
        accepting_states={"ACC"},
    )

"""Two-head one-way deterministic acceptor for VALC(M).

Head 2 first skips the initial configuration.  From then on the heads scan
``w_i`` and ``w_{i+1}`` in lockstep and feed symbol pairs to a small
deterministic "successor" automaton.  Once ``w_i`` is exhausted, head 1 waits
on its ``$`` while head 2 reads the (at most two) extra cells of ``w_{i+1}``;
the padding symbol ``#`` marks these positions.
"""

from __future__ import annotations

from ..core import RIGHT_END
from ._program import ACCEPT, materialize, readable
from .turing import LEFT, RIGHT, SEPARATOR, STAY, TuringMachine, ensure_conforming

PAD = "#"
END = object()  # the projected block terminator

PRE, SUF, DONE = "PRE", "SUF", "END"
ODD, EVEN = 3, 4  # saturated pair counts: odd >= 3, even >= 4


class SuccessorAutomaton:
    """Deterministic automaton over pairs ``(x, y)`` accepting ``{(u #^j, v) : v = tmStep(u)}``."""

    def __init__(self, tm: TuringMachine):
        self.tm = tm
        self.states = set(tm.states)
        self.tape = set(tm.tape_alphabet)
        self.rules = {}
        for (s, t), (s2, t2, d) in tm.transitions.items():
            self.rules.setdefault((s, d), []).append((t, s2, t2))

    def _delta(self, s, t):
        return self.tm.transitions.get((s, t))

    def step(self, d, x, y):
        S, T, blank = self.states, self.tape, self.tm.blank
        if d == PRE:
            if x in T and x == y:
                return PRE
            if x in S and y in S:
                return ("ST", x, y)
            if x in S and y in T:
                return ("RT", x, y)
            if x in T and y in S:
                return ("LF1", x, y)
            return None
        if d in (SUF, "R2"):
            if x in T and x == y:
                return SUF
            if d == "R2" and x == PAD and y == blank:
                return DONE
            return None
        if d == "R2B":
            return DONE if x == PAD and y == blank else None
        if d == DONE:
            return None
        kind = d[0]
        if kind == "ST":
            _, s, s2 = d
            t = blank if x == PAD else x
            if t in T and y in T and self._delta(s, t) == (s2, y, STAY):
                return DONE if x == PAD else SUF
            return None
        if kind == "RT":
            _, s, t2 = d
            t = blank if x == PAD else x
            if t in T and y in S and self._delta(s, t) == (y, t2, RIGHT):
                return "R2B" if x == PAD else "R2"
            return None
        if kind == "LF1":
            _, c, s2 = d
            return ("LF2", x, s2) if x in S and y == c else None
        if kind == "LF2":
            _, s, s2 = d
            t = blank if x == PAD else x
            if t in T and y in T and self._delta(s, t) == (s2, y, LEFT):
                return DONE if x == PAD else SUF
            return None
        raise AssertionError(d)

    @staticmethod
    def accepting(d):
        return d in (SUF, DONE)


def _bump(count):
    return {0: 1, 1: 2, 2: ODD, ODD: EVEN, EVEN: ODD}[count]


class ValcChecker:
    """Control logic shared by the VALC acceptor and the L_{n,M} acceptor.

    ``step(state, x, y)`` takes the projected symbols under the two checking
    heads and returns ``(next_state, (d1, d2))``, ``(ACCEPT, (0, 0))`` on
    success, or ``None`` to reject.
    """

    def __init__(self, tm: TuringMachine):
        self.tm = tm
        self.pairs = SuccessorAutomaton(tm)
        self.inner = set(tm.states) | set(tm.tape_alphabet)

    initial = ("vstart",)

    def step(self, state, x, y):
        tm = self.tm
        kind = state[0]
        if kind == "vstart":
            if x == SEPARATOR and y == SEPARATOR:
                return ("vinit", False), (1, 1)
            return None
        if kind == "vinit":
            seen_s0 = state[1]
            if not seen_s0:
                return (("vinit", True), (0, 1)) if y == tm.initial_state and x == y else None
            if x != tm.initial_state:
                return None
            if y in tm.input_alphabet:
                return ("vinit", True), (0, 1)
            if y == SEPARATOR:
                return ("vcmp", PRE, 0, False), (0, 1)
            return None
        if kind == "vnext":
            _, count, final = state
            if y is END:
                return (ACCEPT, (0, 0)) if count == ODD and final else None
            return self.step(("vcmp", PRE, count, False), x, y)
        if kind == "vcmp":
            _, d, count, final = state
            if x == SEPARATOR and y == SEPARATOR:
                return (("vnext", _bump(count), final), (1, 1)) if self.pairs.accepting(d) else None
            if y not in self.inner:
                return None
            if x == SEPARATOR:
                x, move = PAD, (0, 1)
            elif x in self.inner:
                move = (1, 1)
            else:
                return None
            d2 = self.pairs.step(d, x, y)
            if d2 is None:
                return None
            return ("vcmp", d2, count, final or y in tm.accepting_states), move
        raise AssertionError(state)


def build_valc_acceptor(tm: TuringMachine):
    """Deterministic one-way 2-head automaton for VALC(tm) over ``{$} u T u S``."""
    ensure_conforming(tm)
    checker = ValcChecker(tm)
    alphabet = tm.valc_alphabet
    scanned = readable(alphabet)

    def proj(sym):
        return END if sym == RIGHT_END else sym

    def expand(state):
        for a in scanned:
            for b in scanned:
                r = checker.step(state, proj(a), proj(b))
                if r is not None:
                    yield (a, b), r[0], r[1]

    return materialize(2, alphabet, checker.initial, expand)

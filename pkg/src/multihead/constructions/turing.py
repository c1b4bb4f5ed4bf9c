"""Deterministic single-tape Turing machines and their valid computations."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from types import MappingProxyType
from typing import Mapping, Optional

from ..core import RESERVED_TOKENS, Diagnostic
from ..errors import ConformanceError, UsageError, ValidationError

SEPARATOR = "$"
LEFT, STAY, RIGHT = -1, 0, 1


@dataclass(frozen=True)
class TuringMachine:
    """``transitions`` maps ``(state, read)`` to ``(state, write, move)`` with move in {-1, 0, 1}."""

    states: tuple
    tape_alphabet: tuple
    blank: str
    input_alphabet: tuple
    transitions: Mapping
    initial_state: str
    accepting_states: frozenset

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(dict.fromkeys(self.states)))
        object.__setattr__(self, "tape_alphabet", tuple(dict.fromkeys(self.tape_alphabet)))
        object.__setattr__(self, "input_alphabet", tuple(dict.fromkeys(self.input_alphabet)))
        object.__setattr__(self, "accepting_states", frozenset(self.accepting_states))
        table = {tuple(k): tuple(v) for k, v in self.transitions.items()}
        object.__setattr__(self, "transitions", MappingProxyType(table))

    @property
    def valc_alphabet(self):
        """Symbols of valid-computation words: ``$``, then tape symbols, then states."""
        return (SEPARATOR,) + self.tape_alphabet + self.states


def _bad_token(sym):
    return sym in RESERVED_TOKENS or sym == SEPARATOR or any(c in sym for c in "/,#") or not sym or any(
        c.isspace() for c in sym
    )


def check_tm(tm: TuringMachine) -> list:
    """Static conformance diagnostics (empty when the machine may be used for VALC)."""
    diags = []
    states, tape = set(tm.states), set(tm.tape_alphabet)
    for sym in sorted(states & tape):
        diags.append(Diagnostic("disjoint", f"{sym!r} is both a state and a tape symbol"))
    for sym in tm.states + tm.tape_alphabet:
        if _bad_token(sym):
            diags.append(Diagnostic("token", f"{sym!r} cannot be used as a state or tape symbol"))
    if tm.blank not in tape:
        diags.append(Diagnostic("blank", f"blank {tm.blank!r} is not a tape symbol"))
    if tm.blank in tm.input_alphabet:
        diags.append(Diagnostic("blank", "the blank is an input symbol"))
    for sym in tm.input_alphabet:
        if sym not in tape:
            diags.append(Diagnostic("alphabet", f"input symbol {sym!r} is not a tape symbol"))
    if tm.initial_state not in states:
        diags.append(Diagnostic("states", f"initial state {tm.initial_state!r} unknown"))
    for s in sorted(tm.accepting_states - states):
        diags.append(Diagnostic("states", f"accepting state {s!r} unknown"))
    for key, (target, write, move) in tm.transitions.items():
        state, read = key
        if state not in states or target not in states:
            diags.append(Diagnostic("states", "transition mentions an unknown state", key))
        if read not in tape or write not in tape:
            diags.append(Diagnostic("alphabet", "transition mentions an unknown tape symbol", key))
        if write == tm.blank:
            diags.append(Diagnostic("blank", "transition writes the blank", key))
        if move not in (LEFT, STAY, RIGHT):
            diags.append(Diagnostic("moves", f"move {move!r} not in {{-1,0,1}}", key))
        if state in tm.accepting_states:
            diags.append(Diagnostic("halting", "accepting state has an outgoing transition", key))
    return diags


def ensure_conforming(tm):
    diags = check_tm(tm)
    if diags:
        raise ValidationError("; ".join(map(str, diags)), diags)
    return tm


def _state_index(tm, conf):
    idx = [i for i, sym in enumerate(conf) if sym in tm.states]
    if len(idx) != 1:
        raise UsageError(f"configuration must contain exactly one state symbol: {conf!r}")
    return idx[0]


def tm_step(tm: TuringMachine, conf) -> Optional[tuple]:
    """Successor configuration word, or ``None`` when the machine halts.

    A state symbol at the right end scans a fresh blank.  Right moves that
    leave the state last append one blank so the scanned cell always exists.
    """
    conf = tuple(conf)
    i = _state_index(tm, conf)
    if i == len(conf) - 1:
        conf = conf + (tm.blank,)
    s, t = conf[i], conf[i + 1]
    rule = tm.transitions.get((s, t))
    if rule is None:
        return None
    s2, t2, move = rule
    head, tail = conf[:i], conf[i + 2 :]
    if move == STAY:
        return head + (s2, t2) + tail
    if move == RIGHT:
        out = head + (t2, s2) + tail
        return out + (tm.blank,) if not tail else out
    if i == 0:
        raise ConformanceError(f"left move off the tape edge from {''.join(conf)!r}")
    return head[:-1] + (s2, head[-1], t2) + tail


class Outcome(str, Enum):
    ACCEPTED = "accepted"
    REJECTED = "rejected"
    BOUND_EXCEEDED = "bound-exceeded"


@dataclass(frozen=True)
class TmRun:
    outcome: Outcome
    history: tuple
    violations: tuple = ()

    @property
    def moves(self):
        return len(self.history) - 1


def tm_run(tm: TuringMachine, word, max_steps: int) -> TmRun:
    """Simulate from ``s0 word``.  Accepted runs are checked for the move-count conventions."""
    word = tuple(word)
    for sym in word:
        if sym not in tm.input_alphabet:
            raise UsageError(f"{sym!r} is not an input symbol")
    conf = (tm.initial_state,) + word
    history = [conf]
    violations = []
    for _ in range(max_steps):
        try:
            nxt = tm_step(tm, conf)
        except ConformanceError as exc:
            return TmRun(Outcome.REJECTED, tuple(history), (f"left-edge: {exc}",))
        if nxt is None:
            break
        conf = nxt
        history.append(conf)
    else:
        if tm_step(tm, conf) is not None:
            return TmRun(Outcome.BOUND_EXCEEDED, tuple(history))
    state = conf[_state_index(tm, conf)]
    if state not in tm.accepting_states:
        return TmRun(Outcome.REJECTED, tuple(history))
    moves = len(history) - 1
    if moves < 3:
        violations.append(f"too-few-moves: accepted after {moves} moves")
    if moves % 2 == 0:
        violations.append(f"even-moves: accepted after {moves} moves")
    return TmRun(Outcome.ACCEPTED, tuple(history), tuple(violations))


def valc_string(history) -> tuple:
    """``$ w1 $ w2 $ ... $ w2n $`` as a tuple of symbols."""
    history = [tuple(c) for c in history]
    if len(history) < 4:
        raise ConformanceError(f"a valid computation needs at least 3 moves, got {max(len(history) - 1, 0)}")
    if len(history) % 2:
        raise ConformanceError(f"a valid computation has an even number of configurations, got {len(history)}")
    out = [SEPARATOR]
    for conf in history:
        out.extend(conf)
        out.append(SEPARATOR)
    return tuple(out)


def split_blocks(word, sep=SEPARATOR):
    blocks, cur = [], []
    for sym in word:
        if sym == sep:
            blocks.append(tuple(cur))
            cur = []
        else:
            cur.append(sym)
    blocks.append(tuple(cur))
    return blocks


def reference_valc_member(tm: TuringMachine, word) -> bool:
    """Parse-and-simulate membership test for VALC(tm); no automaton involved."""
    word = tuple(word)
    if len(word) < 2 or word[0] != SEPARATOR or word[-1] != SEPARATOR:
        return False
    blocks = split_blocks(word[1:-1])
    if len(blocks) < 4 or len(blocks) % 2:
        return False
    states, tape = set(tm.states), set(tm.tape_alphabet)
    for b in blocks:
        if sum(sym in states for sym in b) != 1 or any(sym not in states and sym not in tape for sym in b):
            return False
    first = blocks[0]
    if first[0] != tm.initial_state or any(sym not in tm.input_alphabet for sym in first[1:]):
        return False
    if not any(sym in tm.accepting_states for sym in blocks[-1]):
        return False
    try:
        return all(tm_step(tm, u) == v for u, v in zip(blocks, blocks[1:]))
    except ConformanceError:
        return False


# --------------------------------------------------------------------------- #
# fixtures


def fixture_tm() -> TuringMachine:
    """Three-state machine accepting inputs of length <= 1 after exactly three moves.

    On ``aa`` and longer it cycles forever in ``q``.
    """
    return TuringMachine(
        states=("p", "q", "f"),
        tape_alphabet=("a", "b", "B"),
        blank="B",
        input_alphabet=("a",),
        transitions={
            ("p", "B"): ("q", "b", STAY),
            ("p", "a"): ("q", "b", STAY),
            ("q", "b"): ("q", "b", RIGHT),
            ("q", "B"): ("f", "a", LEFT),
            ("q", "a"): ("q", "a", STAY),
        },
        initial_state="p",
        accepting_states={"f"},
    )


def small_tm() -> TuringMachine:
    """Two-state machine: three stay-moves on the empty input, two on ``a``."""
    return TuringMachine(
        states=("p", "f"),
        tape_alphabet=("a", "b", "B"),
        blank="B",
        input_alphabet=("a",),
        transitions={
            ("p", "B"): ("p", "a", STAY),
            ("p", "a"): ("p", "b", STAY),
            ("p", "b"): ("f", "b", STAY),
        },
        initial_state="p",
        accepting_states={"f"},
    )

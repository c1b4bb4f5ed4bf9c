"""Execution semantics and bounded decision procedures for k-head finite automata.

A machine reads a single input tape ``< w1 ... wn >`` with ``k`` read-only heads.
Position 0 holds the left endmarker, position ``n + 1`` the right endmarker, and
every head starts on position 1.  A word is accepted when some computation
halts (no transition applies) in an accepting state.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence

from .errors import UsageError, ValidationError

LEFT_END = "<"
RIGHT_END = ">"
LAMBDA = "@"
RESERVED_TOKENS = frozenset({LEFT_END, RIGHT_END, LAMBDA})

ONE_WAY = "one-way"
TWO_WAY = "two-way"

PLAIN = "plain"
SENSING = "sensing"
PARTIALLY_BLIND = "partially-blind"

Word = tuple
Moves = tuple


class Configuration(NamedTuple):
    state: str
    positions: tuple


class Termination(str, Enum):
    HALTED = "halted"
    LOOP_DETECTED = "loop-detected"
    BOUND_EXCEEDED = "bound-exceeded"


@dataclass(frozen=True)
class RunTrace:
    configurations: tuple
    termination: Termination

    def __len__(self):
        return len(self.configurations)


@dataclass(frozen=True)
class Diagnostic:
    rule: str
    message: str
    transition: Optional[tuple] = None

    def __str__(self):
        return f"[{self.rule}] {self.message}"


@dataclass(frozen=True)
class MultiHeadAutomaton:
    """A k-head finite automaton.

    ``transitions`` maps ``(state, symbols)`` to a set of ``(state, moves)`` pairs,
    where ``symbols`` is the k-tuple of scanned symbols (endmarkers included) and
    ``moves`` is a k-tuple over ``{-1, 0, 1}``.  Sensing machines key their
    transitions on ``(state, symbols, partition)`` instead; see
    :mod:`multihead.variants`.
    """

    states: tuple
    input_alphabet: tuple
    head_count: int
    transitions: Mapping
    initial_state: str
    accepting_states: frozenset
    direction: str = ONE_WAY
    flavor: str = PLAIN
    designated_head: Optional[int] = None
    _state_set: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        states = tuple(dict.fromkeys(self.states))
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "input_alphabet", tuple(dict.fromkeys(self.input_alphabet)))
        object.__setattr__(self, "accepting_states", frozenset(self.accepting_states))
        table = {}
        for key, images in self.transitions.items():
            key = (key[0], tuple(key[1])) + tuple(key[2:])
            table[key] = frozenset((s, tuple(d)) for s, d in images)
        object.__setattr__(self, "transitions", MappingProxyType(table))
        object.__setattr__(self, "_state_set", frozenset(states))

    @property
    def is_one_way(self):
        return self.direction == ONE_WAY

    def accepts(self, word):
        return accepts(self, word)


# --------------------------------------------------------------------------- #
# validation


def validate(m: MultiHeadAutomaton) -> list:
    """Return the list of violated well-formedness rules (empty when valid)."""
    diags = []
    k = m.head_count
    if not isinstance(k, int) or k < 1:
        diags.append(Diagnostic("heads", f"head count must be >= 1, got {k!r}"))
        return diags
    if m.direction not in (ONE_WAY, TWO_WAY):
        diags.append(Diagnostic("direction", f"unknown direction {m.direction!r}"))
    if m.flavor not in (PLAIN, SENSING, PARTIALLY_BLIND):
        diags.append(Diagnostic("flavor", f"unknown flavor {m.flavor!r}"))
    for sym in m.input_alphabet:
        if sym in RESERVED_TOKENS:
            diags.append(Diagnostic("alphabet", f"reserved token {sym!r} used as input symbol"))
    if m.initial_state not in m._state_set:
        diags.append(Diagnostic("states", f"initial state {m.initial_state!r} is not a state"))
    for s in sorted(m.accepting_states - m._state_set):
        diags.append(Diagnostic("states", f"accepting state {s!r} is not a state"))

    readable = set(m.input_alphabet) | {LEFT_END, RIGHT_END}
    for key, images in m.transitions.items():
        state, symbols = key[0], key[1]
        if state not in m._state_set:
            diags.append(Diagnostic("states", f"transition source {state!r} is not a state", key))
        if len(symbols) != k:
            diags.append(Diagnostic("arity", f"{len(symbols)} scanned symbols for {k} heads", key))
            continue
        for sym in symbols:
            if sym not in readable:
                diags.append(Diagnostic("alphabet", f"unknown symbol {sym!r}", key))
        if m.flavor == SENSING:
            if len(key) != 3 or not _is_partition(key[2], k):
                diags.append(Diagnostic("sensing", "sensing transition lacks a valid head partition", key))
        elif len(key) != 2:
            diags.append(Diagnostic("sensing", "partition key on a non-sensing machine", key))
        for target, moves in sorted(images, key=repr):
            if target not in m._state_set:
                diags.append(Diagnostic("states", f"transition target {target!r} is not a state", key))
            if len(moves) != k:
                diags.append(Diagnostic("arity", f"{len(moves)} moves for {k} heads", key))
                continue
            for i, (sym, d) in enumerate(zip(symbols, moves), start=1):
                if d not in (-1, 0, 1):
                    diags.append(Diagnostic("moves", f"head {i} move {d!r} not in {{-1,0,1}}", key))
                elif sym == LEFT_END and d == -1:
                    diags.append(Diagnostic("endmarker", f"head {i} moves left off the left endmarker", key))
                elif sym == RIGHT_END and d == 1:
                    diags.append(Diagnostic("endmarker", f"head {i} moves right off the right endmarker", key))
                elif m.direction == ONE_WAY and d == -1:
                    diags.append(Diagnostic("direction", f"one-way machine moves head {i} left", key))
    if m.flavor == PARTIALLY_BLIND:
        from .variants import validate_partially_blind

        h = m.designated_head
        if not isinstance(h, int) or not 1 <= h <= k:
            diags.append(Diagnostic("partially-blind", f"designated head {h!r} out of range"))
        elif not validate_partially_blind(m, h):
            diags.append(Diagnostic("partially-blind", "non-designated heads distinguish input symbols"))
    return diags


def _is_partition(part, k):
    try:
        heads = sorted(h for block in part for h in block)
    except TypeError:
        return False
    return heads == list(range(1, k + 1)) and all(block for block in part)


def ensure_valid(m):
    diags = validate(m)
    if diags:
        raise ValidationError("; ".join(map(str, diags)), diags)
    return m


def is_deterministic(m: MultiHeadAutomaton) -> bool:
    return all(len(images) <= 1 for images in m.transitions.values())


# --------------------------------------------------------------------------- #
# single steps


def coincidence_partition(positions) -> tuple:
    """Group 1-based head indices by equal position, ordered by smallest member."""
    blocks = {}
    for i, p in enumerate(positions, start=1):
        blocks.setdefault(p, []).append(i)
    return tuple(sorted(tuple(b) for b in blocks.values()))


def tape(word) -> tuple:
    return (LEFT_END,) + tuple(word) + (RIGHT_END,)


def _successors(m, padded, state, positions):
    key = (state, tuple(padded[p] for p in positions))
    if m.flavor == SENSING:
        key = key + (coincidence_partition(positions),)
    images = m.transitions.get(key)
    if not images:
        return ()
    return [(s, tuple(p + d for p, d in zip(positions, moves))) for s, moves in images]


def check_word(m, word) -> tuple:
    word = tuple(word)
    alphabet = set(m.input_alphabet)
    for sym in word:
        if sym in RESERVED_TOKENS:
            raise UsageError(f"endmarker or reserved token {sym!r} inside input word")
        if sym not in alphabet:
            raise UsageError(f"symbol {sym!r} is not in the input alphabet")
    return word


def initial_configuration(m) -> Configuration:
    return Configuration(m.initial_state, (1,) * m.head_count)


def step(m: MultiHeadAutomaton, word, c: Configuration) -> set:
    """All successor configurations of ``c`` on ``word``; empty when the machine halts."""
    word = check_word(m, word)
    state, positions = c
    positions = tuple(positions)
    if state not in m._state_set:
        raise UsageError(f"unknown state {state!r}")
    if len(positions) != m.head_count or any(
        not isinstance(p, int) or not 0 <= p <= len(word) + 1 for p in positions
    ):
        raise UsageError(f"malformed head positions {positions!r} for input of length {len(word)}")
    return {Configuration(s, p) for s, p in _successors(m, tape(word), state, positions)}


# --------------------------------------------------------------------------- #
# acceptance and runs


def accepts(m: MultiHeadAutomaton, word) -> bool:
    """Breadth-first reachability over the (finite) configuration graph."""
    padded = tape(check_word(m, word))
    start = (m.initial_state, (1,) * m.head_count)
    seen = {start}
    queue = deque([start])
    accepting = m.accepting_states
    while queue:
        state, positions = queue.popleft()
        succ = _successors(m, padded, state, positions)
        if not succ:
            if state in accepting:
                return True
            continue
        for nxt in succ:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return False


def reachable_configurations(m, word) -> set:
    padded = tape(check_word(m, word))
    start = (m.initial_state, (1,) * m.head_count)
    seen = {start}
    stack = [start]
    while stack:
        state, positions = stack.pop()
        for nxt in _successors(m, padded, state, positions):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return {Configuration(*c) for c in seen}


def run_deterministic(m: MultiHeadAutomaton, word, max_steps: int) -> RunTrace:
    if not is_deterministic(m):
        raise UsageError("run_deterministic requires a deterministic machine")
    padded = tape(check_word(m, word))
    current = (m.initial_state, (1,) * m.head_count)
    trace = [Configuration(*current)]
    seen = {current}
    for _ in range(max_steps):
        succ = _successors(m, padded, *current)
        if not succ:
            return RunTrace(tuple(trace), Termination.HALTED)
        current = succ[0]
        trace.append(Configuration(*current))
        if current in seen:
            return RunTrace(tuple(trace), Termination.LOOP_DETECTED)
        seen.add(current)
    if _successors(m, padded, *current):
        return RunTrace(tuple(trace), Termination.BOUND_EXCEEDED)
    return RunTrace(tuple(trace), Termination.HALTED)


def count_reversals(trace) -> tuple:
    configs = trace.configurations if isinstance(trace, RunTrace) else tuple(trace)
    if not configs:
        raise UsageError("cannot count reversals of an empty trace")
    k = len(configs[0][1])
    counts = [0] * k
    last = [0] * k
    for before, after in zip(configs, configs[1:]):
        for i in range(k):
            d = after[1][i] - before[1][i]
            if d == 0:
                continue
            if last[i] and d != last[i]:
                counts[i] += 1
            last[i] = d
    return tuple(counts)


# --------------------------------------------------------------------------- #
# bounded languages


def word_sort_key(order):
    rank = {sym: i for i, sym in enumerate(order)}
    return lambda w: (len(w), [rank[s] for s in w])


def all_words(alphabet, max_len):
    """Every word of length <= max_len in length-lexicographic order."""
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


def enumerate_words(acceptor, max_len: int, alphabet: Optional[Sequence] = None) -> list:
    """Accepted words of length <= ``max_len`` in length-lexicographic order.

    For multi-head automata the search assigns input symbols lazily: a symbol is
    chosen only when some head first scans its square, and a prefix is abandoned
    once no configuration can make progress.  Other acceptors (anything with
    ``accepts`` and ``input_alphabet``) are decided word by word.  ``alphabet``
    restricts candidates to a subset of the input alphabet.
    """
    order = tuple(acceptor.input_alphabet)
    symbols = order if alphabet is None else tuple(alphabet)
    unknown = set(symbols) - set(order)
    if unknown:
        raise UsageError(f"symbols {sorted(unknown)} are not in the input alphabet")
    if isinstance(acceptor, MultiHeadAutomaton):
        found = _lazy_language(acceptor, max_len, symbols)
    else:
        found = [w for w in all_words(symbols, max_len) if acceptor.accepts(w)]
    return sorted(set(found), key=word_sort_key(order))


def _lazy_language(m, max_len, symbols):
    accepting = m.accepting_states
    results = []

    def extensions(prefix):
        for n in range(len(prefix), max_len + 1):
            for tail in itertools.product(symbols, repeat=n - len(prefix)):
                results.append(prefix + tail)

    def explore(prefix, frontier, seen, ended):
        n = len(prefix)
        padded = (LEFT_END,) + prefix + (RIGHT_END,)
        stack = list(frontier)
        blocked = []
        while stack:
            conf = stack.pop()
            state, positions = conf
            if not ended and any(p > n for p in positions):
                blocked.append(conf)
                continue
            succ = _successors(m, padded, state, positions)
            if not succ:
                if state in accepting:
                    if ended:
                        results.append(prefix)
                    else:
                        extensions(prefix)
                    return
                continue
            for nxt in succ:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        if ended or not blocked:
            return
        explore(prefix, blocked, set(seen), True)
        if n < max_len:
            for sym in symbols:
                explore(prefix + (sym,), blocked, set(seen), False)

    start = (m.initial_state, (1,) * m.head_count)
    explore((), [start], {start}, False)
    return results


def equivalent_up_to(m1, m2, max_len: int) -> Optional[tuple]:
    """``None`` when both acceptors agree on every word up to ``max_len``,
    otherwise the length-lexicographically first word accepted by exactly one."""
    if set(m1.input_alphabet) != set(m2.input_alphabet):
        raise UsageError("acceptors have different input alphabets")
    l1 = set(enumerate_words(m1, max_len))
    l2 = set(enumerate_words(m2, max_len))
    diff = l1 ^ l2
    if not diff:
        return None
    return min(diff, key=word_sort_key(m1.input_alphabet))


def format_word(word) -> str:
    word = tuple(word)
    if all(len(s) == 1 for s in word):
        return "".join(word)
    return " ".join(word)


def parse_word(text: str, alphabet: Iterable = ()) -> tuple:
    """Split a command-line word: whitespace-separated tokens, else one symbol per character."""
    text = text.strip()
    if any(ch.isspace() for ch in text):
        return tuple(text.split())
    return tuple(text)

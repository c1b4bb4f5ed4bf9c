"""Oblivious (data-independent), sensing-head and partially blind machines."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .core import (
    LEFT_END,
    PLAIN,
    RIGHT_END,
    SENSING,
    TWO_WAY,
    Configuration,
    MultiHeadAutomaton,
    _successors,
    all_words,
    check_word,
    ensure_valid,
    tape,
)
from .errors import ObliviousnessViolation, UsageError


@dataclass(frozen=True)
class IndependenceViolation:
    """Two computations of the same length whose head ``head`` differs at ``time``."""

    words: tuple
    head: int
    time: int
    positions: tuple

    def __str__(self):
        (w1, w2), (p1, p2) = self.words, self.positions
        return (
            f"head {self.head} at time {self.time}: position {p1} on {''.join(w1)!r} "
            f"but {p2} on {''.join(w2)!r}"
        )


def _configs_by_time(m, word, max_steps):
    """Yield the set of configurations present at each time step t = 0, 1, ..."""
    padded = tape(word)
    frontier = {(m.initial_state, (1,) * m.head_count)}
    for t in range(max_steps + 1):
        if not frontier:
            return
        yield t, frontier
        nxt = set()
        for state, positions in frontier:
            nxt.update(_successors(m, padded, state, positions))
        frontier = nxt


def trajectory_table(m: MultiHeadAutomaton, max_len: int, max_steps: int) -> dict:
    """Map ``(n, i, t)`` to the head position observed on inputs of length ``n``.

    Raises :class:`ObliviousnessViolation` if two computations disagree.
    """
    violation, table = _scan_trajectories(m, max_len, max_steps)
    if violation is not None:
        raise ObliviousnessViolation(str(violation), violation)
    return table


def check_data_independent(m: MultiHeadAutomaton, max_len: int, max_steps: int) -> Optional[IndependenceViolation]:
    """``None`` if every computation (all branches, all inputs of each length
    ``n <= max_len``) follows one head trajectory up to ``max_steps`` steps;
    otherwise the first discrepancy found."""
    ensure_valid(m)
    return _scan_trajectories(m, max_len, max_steps)[0]


def _scan_trajectories(m, max_len, max_steps):
    table = {}
    for n in range(max_len + 1):
        owner = {}
        for word in itertools.product(m.input_alphabet, repeat=n):
            for t, frontier in _configs_by_time(m, word, max_steps):
                for _, positions in sorted(frontier):
                    seen = owner.get(t)
                    if seen is None:
                        owner[t] = (word, positions)
                        for i, p in enumerate(positions, start=1):
                            table[(n, i, t)] = p
                    elif seen[1] != positions:
                        head = next(i for i, (a, b) in enumerate(zip(seen[1], positions), 1) if a != b)
                        return (
                            IndependenceViolation(
                                (seen[0], word), head, t, (seen[1][head - 1], positions[head - 1])
                            ),
                            table,
                        )
    return None, table


def default_step_budget(m, max_len):
    return len(m.states) * (max_len + 2) * m.head_count + 2


# --------------------------------------------------------------------------- #
# power-set determinization


ACCEPT_SINK = "accept"


def _subset_label(states, order, flag):
    names = ",".join(sorted(states, key=order.index))
    return "{" + names + "}" + ("+" if flag else "")


def determinize_oblivious(m: MultiHeadAutomaton, max_len: int, max_steps: Optional[int] = None) -> MultiHeadAutomaton:
    """Deterministic machine equivalent to a data-independent one.

    Because every branch shares one head trajectory, the construction tracks the
    set of live source states together with a flag recording whether some
    branch already halted in an accepting state.  When the last branches halt
    and one of them accepts, a single stationary step moves into a halting
    accepting sink.
    """
    ensure_valid(m)
    if m.flavor != PLAIN:
        raise UsageError("only plain machines can be determinized")
    if max_steps is None:
        max_steps = default_step_budget(m, max_len)
    violation = check_data_independent(m, max_len, max_steps)
    if violation is not None:
        raise ObliviousnessViolation(f"machine is not data-independent: {violation}", violation)

    k = m.head_count
    readable = list(m.input_alphabet) + [RIGHT_END]
    if m.direction == TWO_WAY:
        readable = [LEFT_END] + readable
    order = list(m.states)
    accepting = m.accepting_states
    zero = (0,) * k

    start = (frozenset([m.initial_state]), False)
    labels = {start: _subset_label(*start[:1], order, False)}
    queue = [start]
    transitions = {}
    conflicts = {}
    sink_used = False
    while queue:
        current = queue.pop(0)
        live, flag = current
        for symbols in itertools.product(readable, repeat=k):
            targets = set()
            halted_accepting = False
            for s in live:
                images = m.transitions.get((s, symbols))
                if images:
                    targets.update(images)
                elif s in accepting:
                    halted_accepting = True
            moves = {d for _, d in targets}
            if len(moves) > 1:
                conflicts[(labels[current], symbols)] = sorted(moves)
                continue
            if moves:
                nxt = (frozenset(s for s, _ in targets), flag or halted_accepting)
                if nxt not in labels:
                    labels[nxt] = _subset_label(nxt[0], order, nxt[1])
                    queue.append(nxt)
                transitions[(labels[current], symbols)] = {(labels[nxt], moves.pop())}
            elif halted_accepting and not flag:
                transitions[(labels[current], symbols)] = {(ACCEPT_SINK, zero)}
                sink_used = True

    states = list(labels.values())
    final = {labels[c] for c in labels if c[1]}
    if sink_used:
        states.append(ACCEPT_SINK)
        final.add(ACCEPT_SINK)
    result = MultiHeadAutomaton(
        states=tuple(states),
        input_alphabet=m.input_alphabet,
        head_count=k,
        transitions=transitions,
        initial_state=labels[start],
        accepting_states=frozenset(final),
        direction=m.direction,
    )
    if conflicts:
        _check_conflicts_unreachable(result, conflicts, max_len, max_steps)
    return result


def _check_conflicts_unreachable(dfa, conflicts, max_len, max_steps):
    # Disagreeing move vectors are harmless only for scanned tuples no input reaches.
    keys = set(conflicts)
    for word in all_words(dfa.input_alphabet, max_len):
        padded = tape(word)
        state, positions = dfa.initial_state, (1,) * dfa.head_count
        for _ in range(max_steps + 1):
            scanned = tuple(padded[p] for p in positions)
            if (state, scanned) in keys:
                raise ObliviousnessViolation(
                    f"co-reachable states propose different moves {conflicts[(state, scanned)]} "
                    f"on input {''.join(word)!r}",
                    (word, state, scanned),
                )
            succ = _successors(dfa, padded, state, positions)
            if not succ:
                break
            state, positions = succ[0]


# --------------------------------------------------------------------------- #
# sensing heads


def sensing_step(m: MultiHeadAutomaton, word, c: Configuration) -> set:
    """Successors of ``c`` where the lookup also sees which heads share a square."""
    if m.flavor != SENSING:
        raise UsageError("sensing_step requires a sensing machine")
    word = check_word(m, word)
    state, positions = c
    positions = tuple(positions)
    if len(positions) != m.head_count or any(not 0 <= p <= len(word) + 1 for p in positions):
        raise UsageError(f"malformed head positions {positions!r}")
    return {Configuration(s, p) for s, p in _successors(m, tape(word), state, positions)}


def sensing_from_plain(m: MultiHeadAutomaton) -> MultiHeadAutomaton:
    """Copy a plain machine into a sensing one whose table ignores the partition."""
    k = m.head_count
    partitions = list(all_partitions(k))
    table = {}
    for (state, symbols), images in m.transitions.items():
        for part in partitions:
            table[(state, symbols, part)] = images
    return MultiHeadAutomaton(
        states=m.states,
        input_alphabet=m.input_alphabet,
        head_count=k,
        transitions=table,
        initial_state=m.initial_state,
        accepting_states=m.accepting_states,
        direction=m.direction,
        flavor=SENSING,
    )


def all_partitions(k):
    """Every set partition of heads 1..k in canonical form."""

    def rec(items):
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for smaller in rec(rest):
            for i in range(len(smaller)):
                yield smaller[:i] + [[first] + smaller[i]] + smaller[i + 1 :]
            yield [[first]] + smaller

    for blocks in rec(list(range(1, k + 1))):
        yield tuple(sorted(tuple(sorted(b)) for b in blocks))


# --------------------------------------------------------------------------- #
# partially blind heads

INPUT_CLASS = "input"


def blind_view(symbol):
    return RIGHT_END if symbol == RIGHT_END else INPUT_CLASS


def validate_partially_blind(m: MultiHeadAutomaton, designated_head: int) -> bool:
    """True iff only ``designated_head`` can tell input symbols apart.

    Every other head sees just "input symbol" versus the right endmarker (the
    left endmarker, reachable only by two-way heads, counts as an input square).  Two scanned tuples that look
    the same under this view must have identical images, undefined included.
    """
    k = m.head_count
    if not 1 <= designated_head <= k:
        raise UsageError(f"designated head {designated_head} out of range 1..{k}")
    d = designated_head - 1
    input_class = list(m.input_alphabet)
    if m.direction == TWO_WAY:
        input_class.append(LEFT_END)
    groups = {}
    for key, images in m.transitions.items():
        state, symbols = key[0], key[1]
        view = (state, symbols[d], tuple(blind_view(s) for j, s in enumerate(symbols) if j != d)) + tuple(key[2:])
        groups.setdefault(view, []).append((symbols, images))
    for view, members in groups.items():
        images = {imgs for _, imgs in members}
        if len(images) > 1:
            return False
        # every concrete tuple in the group must be defined, else it differs from the defined ones
        choices = []
        for j in range(k):
            if j == d:
                choices.append([view[1]])
            else:
                choices.append([RIGHT_END] if members[0][0][j] == RIGHT_END else input_class)
        if len(members) != _product_size(choices):
            return False
    return True


def _product_size(choices):
    size = 1
    for c in choices:
        size *= len(c)
    return size

"""Turn a finite-control program into an explicit multi-head transition table."""

from __future__ import annotations

from collections import deque

from ..core import ONE_WAY, RIGHT_END, MultiHeadAutomaton

ACCEPT = "accept"


def _tag(state):
    head = state[0] if isinstance(state, tuple) and state else state
    return str(head) if isinstance(head, str) and head.isidentifier() else "c"


def materialize(k, alphabet, initial, expand, prefix=""):
    """Explore a deterministic control program breadth-first.

    ``expand(state)`` yields ``(symbols, next_state, moves)`` for every scanned
    tuple on which the program continues; omitted tuples halt and reject.
    ``next_state`` may be :data:`ACCEPT`, a halting accepting state.  Control
    states are renamed ``<tag><index>`` in discovery order.
    """
    names = {initial: f"{prefix}{_tag(initial)}0"}
    counters = {}
    queue = deque([initial])
    transitions = {}
    accept_used = False
    while queue:
        state = queue.popleft()
        src = names[state]
        for symbols, nxt, moves in expand(state):
            key = (src, tuple(symbols))
            if key in transitions:
                raise AssertionError(f"program is not deterministic at {state!r}, {symbols!r}")
            if nxt == ACCEPT:
                accept_used = True
                target = ACCEPT
            else:
                if nxt not in names:
                    tag = _tag(nxt)
                    counters[tag] = counters.get(tag, 0) + 1
                    names[nxt] = f"{prefix}{tag}{counters[tag] if nxt != initial else 0}"
                    queue.append(nxt)
                target = names[nxt]
            transitions[key] = {(target, tuple(moves))}
    states = list(names.values()) + ([ACCEPT] if accept_used else [])
    if len(set(states)) != len(states):
        raise AssertionError("state naming collision")
    return MultiHeadAutomaton(
        states=tuple(states),
        input_alphabet=tuple(alphabet),
        head_count=k,
        transitions=transitions,
        initial_state=names[initial],
        accepting_states=frozenset({ACCEPT}) if accept_used else frozenset(),
        direction=ONE_WAY,
    )


def readable(alphabet):
    return tuple(alphabet) + (RIGHT_END,)

"""Parallel communicating finite automata (PCFA) systems.

``k`` finite automata share one one-way input tape and move in lockstep.  A
component entering query state ``q_j`` receives the current state of component
``j``; in returning mode the answering component is reset to its initial state.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, NamedTuple

from .core import (
    LAMBDA,
    ONE_WAY,
    RESERVED_TOKENS,
    RIGHT_END,
    Diagnostic,
    MultiHeadAutomaton,
    Termination,
    check_word,
)
from .errors import UsageError, ValidationError

RETURNING = "returning"
NON_RETURNING = "non-returning"


def query_state_names(k):
    return tuple(f"q{i}" for i in range(1, k + 1))


@dataclass(frozen=True)
class PcfaComponent:
    states: tuple
    transitions: Mapping
    initial_state: str
    accepting_states: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(dict.fromkeys(self.states)))
        object.__setattr__(self, "accepting_states", frozenset(self.accepting_states))
        table = {tuple(key): frozenset(images) for key, images in self.transitions.items()}
        object.__setattr__(self, "transitions", MappingProxyType(table))

    def options(self, state, symbol):
        """Transitions applicable on ``symbol``: ``(target, consumed)`` pairs, lambda moves included."""
        opts = [(p, symbol != RIGHT_END) for p in self.transitions.get((state, symbol), ())]
        opts += [(p, False) for p in self.transitions.get((state, LAMBDA), ())]
        return opts


@dataclass(frozen=True)
class PcfaSystem:
    input_alphabet: tuple
    components: tuple
    mode: str = NON_RETURNING
    centralized: bool = False
    query_states: tuple = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "input_alphabet", tuple(dict.fromkeys(self.input_alphabet)))
        object.__setattr__(self, "components", tuple(self.components))
        if self.query_states is None:
            object.__setattr__(self, "query_states", query_state_names(len(self.components)))
        else:
            object.__setattr__(self, "query_states", tuple(self.query_states))

    @property
    def degree(self):
        return len(self.components)

    def accepts(self, word):
        return pcfa_accepts(self, word)


class PcfaConfiguration(NamedTuple):
    states: tuple
    positions: tuple
    word: tuple


# --------------------------------------------------------------------------- #


def validate_system(sys: PcfaSystem) -> list:
    diags = []
    k = sys.degree
    if k < 1:
        return [Diagnostic("degree", "a system needs at least one component")]
    if sys.mode not in (RETURNING, NON_RETURNING):
        diags.append(Diagnostic("mode", f"unknown mode {sys.mode!r}"))
    queries = sys.query_states
    if len(queries) != k:
        diags.append(Diagnostic("query", f"{len(queries)} query states for {k} components"))
    if len(set(queries)) != len(queries):
        diags.append(Diagnostic("query", "query states are not pairwise distinct"))
    all_states = set().union(*(c.states for c in sys.components))
    for q in queries if k > 1 else ():  # a lone component has nobody to ask
        if q not in all_states:
            diags.append(Diagnostic("query", f"query state {q!r} belongs to no component"))
    for sym in sys.input_alphabet:
        if sym in RESERVED_TOKENS or sym in queries:
            diags.append(Diagnostic("alphabet", f"reserved token {sym!r} used as input symbol"))
    qset = set(queries)
    readable = set(sys.input_alphabet) | {LAMBDA, RIGHT_END}
    for i, comp in enumerate(sys.components, start=1):
        sset = set(comp.states)
        if comp.initial_state not in sset:
            diags.append(Diagnostic("states", f"component {i}: initial state {comp.initial_state!r} unknown"))
        for s in sorted(comp.accepting_states - sset):
            diags.append(Diagnostic("states", f"component {i}: accepting state {s!r} unknown"))
        if sys.centralized and i > 1:
            for q in sorted(sset & qset):
                diags.append(Diagnostic("centralized", f"component {i} has query state {q!r}"))
        for key, images in comp.transitions.items():
            state, sym = key
            if state not in sset:
                diags.append(Diagnostic("states", f"component {i}: source {state!r} unknown", key))
            if sym not in readable:
                diags.append(Diagnostic("alphabet", f"component {i}: unknown symbol {sym!r}", key))
            for p in sorted(images):
                if p not in sset:
                    diags.append(Diagnostic("states", f"component {i}: target {p!r} unknown", key))
                if sys.centralized and i > 1 and p in qset:
                    diags.append(Diagnostic("centralized", f"component {i} enters query state {p!r}", key))
            if sys.centralized and i > 1 and state in qset:
                diags.append(Diagnostic("centralized", f"component {i} reads in query state {state!r}", key))
        # a component that may query j must be able to hold every state j can send
        for j, q in enumerate(queries, start=1):
            if q in sset and j <= k:
                sendable = set(sys.components[j - 1].states) - qset
                missing = sorted(sendable - sset)
                if missing:
                    diags.append(
                        Diagnostic("communication", f"component {i} may query {j} but lacks states {missing}")
                    )
    return diags


def ensure_valid_system(sys):
    diags = validate_system(sys)
    if diags:
        raise ValidationError("; ".join(map(str, diags)), diags)
    return sys


def is_deterministic_system(sys: PcfaSystem) -> bool:
    for comp in sys.components:
        lam_states = set()
        other_states = set()
        for (state, sym), images in comp.transitions.items():
            if len(images) > 1:
                return False
            if not images:
                continue
            (lam_states if sym == LAMBDA else other_states).add(state)
        if lam_states & other_states:
            return False
    return True


# --------------------------------------------------------------------------- #
# semantics


def initial_pcfa_configuration(sys, word) -> PcfaConfiguration:
    word = check_word(sys, word)
    k = sys.degree
    return PcfaConfiguration(tuple(c.initial_state for c in sys.components), (1,) * k, word)


def _scanned(word, pos):
    return word[pos - 1] if pos <= len(word) else RIGHT_END


def _communicate(sys, states):
    """One communication round, or ``None`` when no pending query can be served."""
    index = {q: j for j, q in enumerate(sys.query_states)}
    new = list(states)
    changed = False
    for i, s in enumerate(states):
        j = index.get(s)
        if j is None or states[j] in index:
            continue
        new[i] = states[j]
        changed = True
        if sys.mode == RETURNING:
            new[j] = sys.components[j].initial_state
    return tuple(new) if changed else None


def _successor_tuples(sys, word, states, positions):
    qset = set(sys.query_states)
    if any(s in qset for s in states):
        new = _communicate(sys, states)
        return [] if new is None else [(new, positions)]
    per_component = []
    for comp, s, pos in zip(sys.components, states, positions):
        opts = comp.options(s, _scanned(word, pos))
        if not opts:
            return []
        per_component.append([(p, pos + consumed) for p, consumed in opts])
    return [tuple(zip(*choice)) for choice in itertools.product(*per_component)]


def pcfa_step(sys: PcfaSystem, c: PcfaConfiguration) -> set:
    """Every successor of ``c``: either one read step or one communication round."""
    states, positions, word = c
    return {PcfaConfiguration(s, p, word) for s, p in _successor_tuples(sys, word, states, positions)}


def _accepting_halt(sys, word, states, positions):
    qset = set(sys.query_states)
    for comp, s, pos in zip(sys.components, states, positions):
        if s in qset or s not in comp.accepting_states:
            continue
        if not comp.options(s, _scanned(word, pos)):
            return True
    return False


def pcfa_accepts(sys: PcfaSystem, word) -> bool:
    c0 = initial_pcfa_configuration(sys, word)
    word = c0.word
    start = (c0.states, c0.positions)
    seen = {start}
    queue = deque([start])
    while queue:
        states, positions = queue.popleft()
        succ = _successor_tuples(sys, word, states, positions)
        if not succ:
            if _accepting_halt(sys, word, states, positions):
                return True
            continue
        for nxt in succ:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return False


def pcfa_run_deterministic(sys: PcfaSystem, word, max_steps: int):
    """The unique run of a deterministic system as ``(configurations, termination)``."""
    if not is_deterministic_system(sys):
        raise UsageError("pcfa_run_deterministic requires a deterministic system")
    c = initial_pcfa_configuration(sys, word)
    trace = [c]
    seen = {c}
    for _ in range(max_steps):
        succ = _successor_tuples(sys, c.word, c.states, c.positions)
        if not succ:
            return tuple(trace), Termination.HALTED
        c = PcfaConfiguration(*succ[0], c.word)
        trace.append(c)
        if c in seen:
            return tuple(trace), Termination.LOOP_DETECTED
        seen.add(c)
    if _successor_tuples(sys, c.word, c.states, c.positions):
        return tuple(trace), Termination.BOUND_EXCEEDED
    return tuple(trace), Termination.HALTED


# --------------------------------------------------------------------------- #
# the two-component example system for { w$w : w in {a,b}+ }


def builtin_fixture() -> PcfaSystem:
    """Centralized, non-returning, deterministic system accepting ``{w$w | w in {a,b}+}``.

    The master repeatedly queries the other component, which reads the input
    one symbol per round.  Once the other component is past ``$`` (primed
    states), the master compares its own symbol against the one reported.
    """
    second = {
        ("s0_2", "a"): {"s_a"},
        ("s0_2", "b"): {"s_b"},
        ("s_a", "a"): {"s_a"},
        ("s_a", "b"): {"s_b"},
        ("s_a", "$"): {"s_$"},
        ("s_b", "a"): {"s_a"},
        ("s_b", "b"): {"s_b"},
        ("s_b", "$"): {"s_$"},
        ("s_$", "a"): {"s'_a"},
        ("s_$", "b"): {"s'_b"},
        ("s_end", RIGHT_END): {"s_end"},
        ("s'_a", "a"): {"s'_a"},
        ("s'_a", "b"): {"s'_b"},
        ("s'_a", RIGHT_END): {"s_end"},
        ("s'_b", "a"): {"s'_a"},
        ("s'_b", "b"): {"s'_b"},
        ("s'_b", RIGHT_END): {"s_end"},
    }
    master = {
        ("s0_1", LAMBDA): {"q2"},
        ("s_a", LAMBDA): {"q2"},
        ("s_b", LAMBDA): {"q2"},
        ("s_$", LAMBDA): {"q2"},
        ("s'_a", "a"): {"q2"},
        ("s'_b", "b"): {"q2"},
        ("s_end", "$"): {"accept"},
    }
    shared = ("s_a", "s_b", "s_$", "s'_a", "s'_b", "s_end")
    return PcfaSystem(
        input_alphabet=("a", "b", "$"),
        components=(
            PcfaComponent(
                states=("s0_1", "q1", "q2", "s0_2") + shared + ("accept",),
                transitions=master,
                initial_state="s0_1",
                accepting_states={"accept"},
            ),
            PcfaComponent(
                states=("s0_2",) + shared,
                transitions=second,
                initial_state="s0_2",
                accepting_states=set(),
            ),
        ),
        mode=NON_RETURNING,
        centralized=True,
    )


# --------------------------------------------------------------------------- #
# compilation into a one-way k-head automaton

COMPILED_ACCEPT = "accept"


def _tuple_label(states):
    return "(" + ",".join(states) + ")"


def compile_pcfa_to_mhfa(sys: PcfaSystem) -> MultiHeadAutomaton:
    """One-way k-head automaton whose control tracks every component's state.

    Head ``i`` follows component ``i``'s input position.  Read steps become
    transitions moving each head by 0 (lambda or end of input) or +1;
    communication rounds become stationary transitions.  Because acceptance of
    the system depends on the scanned symbols of a halted configuration, an
    accepting halt is signalled by one extra stationary step into a halting
    accepting state.
    """
    ensure_valid_system(sys)
    k = sys.degree
    readable = list(sys.input_alphabet) + [RIGHT_END]
    zero = (0,) * k
    start = tuple(c.initial_state for c in sys.components)
    labels = {start: _tuple_label(start)}
    queue = deque([start])
    transitions = {}
    accept_used = False
    while queue:
        states = queue.popleft()
        for symbols in itertools.product(readable, repeat=k):
            # positions 1..k stand in for distinct squares carrying ``symbols``
            word = symbols
            positions = tuple(range(1, k + 1))
            succ = _successor_tuples(sys, word, states, positions)
            key = (labels[states], symbols)
            if not succ:
                if _accepting_halt(sys, word, states, positions):
                    transitions[key] = {(COMPILED_ACCEPT, zero)}
                    accept_used = True
                continue
            images = set()
            for new_states, new_positions in succ:
                moves = tuple(b - a for a, b in zip(positions, new_positions))
                if new_states not in labels:
                    labels[new_states] = _tuple_label(new_states)
                    queue.append(new_states)
                images.add((labels[new_states], moves))
            transitions[key] = images
    state_names = list(labels.values())
    if accept_used:
        state_names.append(COMPILED_ACCEPT)
    return MultiHeadAutomaton(
        states=tuple(state_names),
        input_alphabet=sys.input_alphabet,
        head_count=k,
        transitions=transitions,
        initial_state=labels[start],
        accepting_states=frozenset({COMPILED_ACCEPT}) if accept_used else frozenset(),
        direction=ONE_WAY,
    )

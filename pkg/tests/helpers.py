"""Small hand-built machines and independent oracles shared by the tests."""

from __future__ import annotations

import random
from itertools import product

from multihead.constructions.turing import SEPARATOR, reference_valc_member, split_blocks, tm_step
from multihead.core import LEFT_END, ONE_WAY, RIGHT_END, TWO_WAY, MultiHeadAutomaton, all_words
from multihead.errors import ConformanceError
from multihead.pcfa import PcfaComponent, PcfaSystem


def mhfa(transitions, states, alphabet, accepting, k=1, initial=None, **kw):
    table = {}
    for key, images in transitions.items():
        table[key] = set(images) if isinstance(images, (set, list)) else {images}
    return MultiHeadAutomaton(
        states=tuple(states),
        input_alphabet=tuple(alphabet),
        head_count=k,
        transitions=table,
        initial_state=initial or states[0],
        accepting_states=frozenset(accepting),
        **kw,
    )


def dfa_a_star():
    return mhfa({("s", ("a",)): ("s", (1,))}, ["s"], "a", {"s"})


def dfa_a_plus():
    return mhfa({("s0", ("a",)): ("s1", (1,)), ("s1", ("a",)): ("s1", (1,))}, ["s0", "s1"], "a", {"s1"})


def dfa_a_star_b_star():
    # acceptance waits for the right endmarker; halting early on "ba" must reject
    return mhfa(
        {
            ("A", ("a",)): ("A", (1,)),
            ("A", ("b",)): ("B", (1,)),
            ("B", ("b",)): ("B", (1,)),
            ("A", (RIGHT_END,)): ("F", (0,)),
            ("B", (RIGHT_END,)): ("F", (0,)),
        },
        ["A", "B", "F"],
        "ab",
        {"F"},
    )


def empty_language(alphabet="ab"):
    return mhfa({("s", (x,)): ("s", (1,)) for x in alphabet}, ["s"], alphabet, set())


def right_mover(alphabet="ab"):
    return mhfa({("s", (x,)): ("s", (1,)) for x in alphabet}, ["s"], alphabet, {"s"})


# --------------------------------------------------------------------------- #
# data-independent NFAs


def unary_even_or_triple():
    """a^n with n even or divisible by 3; the branch is guessed on the first symbol."""
    t = {
        ("s", ("a",)): [("e1", (1,)), ("t1", (1,))],
        ("e0", ("a",)): ("e1", (1,)),
        ("e1", ("a",)): ("e0", (1,)),
        ("t0", ("a",)): ("t1", (1,)),
        ("t1", ("a",)): ("t2", (1,)),
        ("t2", ("a",)): ("t0", (1,)),
    }
    return mhfa(t, ["s", "e0", "e1", "t0", "t1", "t2"], "a", {"s", "e0", "t0"})


def two_head_repeat():
    """Words over {a,b} containing aa or bb; head 2 runs one square ahead."""
    t = {}
    for x in "ab":
        for y in "ab":
            t[("init", (x, y))] = ("scan", (0, 1))
            t[("scan", (x, y))] = [("scan", (1, 1))] + ([("found", (1, 1))] if x == y else [])
            t[("found", (x, y))] = ("found", (1, 1))
    return mhfa(t, ["init", "scan", "found"], "ab", {"found"}, k=2)


def two_way_contains_b():
    """Sweep right guessing a b, turn on >, sweep back to <."""
    t = {
        ("r", ("a",)): ("r", (1,)),
        ("r", ("b",)): [("r", (1,)), ("rs", (1,))],
        ("rs", ("a",)): ("rs", (1,)),
        ("rs", ("b",)): ("rs", (1,)),
        ("r", (RIGHT_END,)): ("l", (-1,)),
        ("rs", (RIGHT_END,)): ("ls", (-1,)),
    }
    for x in "ab":
        t[("l", (x,))] = ("l", (-1,))
        t[("ls", (x,))] = ("ls", (-1,))
    return mhfa(t, ["r", "rs", "l", "ls"], "ab", {"ls"}, direction=TWO_WAY)


def moves_on_a_only():
    """Head 2 moves only when head 1 reads a: not data-independent."""
    t = {}
    for x in "ab":
        for y in "ab" + RIGHT_END:
            t[("s", (x, y))] = ("s", (1, 1 if x == "a" and y != RIGHT_END else 0))
    return mhfa(t, ["s"], "ab", {"s"}, k=2)


# --------------------------------------------------------------------------- #
# random machines


def random_mhfa(rng: random.Random, k=None, n_states=None, direction=None, density=0.5, branching=2):
    k = k or rng.randint(1, 3)
    n_states = n_states or rng.randint(1, 5)
    direction = direction or rng.choice([ONE_WAY, TWO_WAY])
    states = [f"s{i}" for i in range(n_states)]
    alphabet = ("a", "b")
    readable = list(alphabet) + [RIGHT_END] + ([LEFT_END] if direction == TWO_WAY else [])
    table = {}
    for s in states:
        for symbols in product(readable, repeat=k):
            if rng.random() > density:
                continue
            images = set()
            for _ in range(rng.randint(1, branching)):
                moves = []
                for sym in symbols:
                    opts = [0, 1] if direction == ONE_WAY else [-1, 0, 1]
                    if sym == RIGHT_END:
                        opts = [d for d in opts if d != 1]
                    if sym == LEFT_END:
                        opts = [d for d in opts if d != -1]
                    moves.append(rng.choice(opts))
                images.add((rng.choice(states), tuple(moves)))
            table[(s, symbols)] = images
    accepting = {s for s in states if rng.random() < 0.5}
    return MultiHeadAutomaton(
        states=tuple(states),
        input_alphabet=alphabet,
        head_count=k,
        transitions=table,
        initial_state=states[0],
        accepting_states=frozenset(accepting),
        direction=direction,
    )


def random_word(rng, alphabet="ab", max_len=6):
    return tuple(rng.choice(alphabet) for _ in range(rng.randint(0, max_len)))


# --------------------------------------------------------------------------- #
# PCFA systems for communication tests


def pcfa_system(components, alphabet="a", mode="non-returning", centralized=False):
    comps = []
    for states, trans, initial, accepting in components:
        table = {}
        for key, tgt in trans.items():
            table[key] = set(tgt) if isinstance(tgt, (set, list)) else {tgt}
        comps.append(PcfaComponent(tuple(states), table, initial, frozenset(accepting)))
    return PcfaSystem(tuple(alphabet), tuple(comps), mode, centralized)


# --------------------------------------------------------------------------- #
# oracles


def copy_predicate(word):
    blocks = split_blocks(tuple(word))
    return len(blocks) == 2 and blocks[0] == blocks[1] and all(s in "ab" for s in blocks[0])


def w_dollar_w(word):
    """{ w$w : w in {a,b}+ } decided by string slicing."""
    s = "".join(word)
    if s.count("$") != 1:
        return False
    u, v = s.split("$")
    return u != "" and u == v and set(u) <= {"a", "b"}


def l2_blocks(word):
    """Increasing-block check by counting runs of a."""
    s = "".join(word)
    if not s.endswith("b"):
        return False
    runs = s[:-1].split("b")
    return [len(r) for r in runs] == list(range(1, len(runs) + 1)) and set(s) <= {"a", "b"}


def valc_members_up_to(tm, max_len):
    """All members of VALC(tm) of length <= max_len.

    Depth-first over words with pruning of prefixes that cannot be extended to
    a member (each completed block must be the successor of the previous one,
    the open block a prefix of it); survivors are filtered by the reference
    predicate.
    """
    alphabet = tm.valc_alphabet
    first_ok = set(tm.input_alphabet)

    def feasible(prefix):
        if not prefix:
            return True
        if prefix[0] != SEPARATOR:
            return False
        blocks = split_blocks(prefix[1:])
        done, open_block = blocks[:-1], blocks[-1]
        expected = None
        for i, b in enumerate(done):
            if i == 0:
                if not b or b[0] != tm.initial_state or any(x not in first_ok for x in b[1:]):
                    return False
            elif b != expected:
                return False
            try:
                expected = tm_step(tm, b)
            except ConformanceError:
                return False
        if not done:
            return open_block[:1] in ((), (tm.initial_state,)) and all(x in first_ok for x in open_block[1:])
        if expected is None:
            return not open_block
        return open_block == expected[: len(open_block)]

    out = []
    stack = [()]
    while stack:
        w = stack.pop()
        if reference_valc_member(tm, w):
            out.append(w)
        if len(w) < max_len:
            for x in alphabet:
                nxt = w + (x,)
                if feasible(nxt):
                    stack.append(nxt)
    return set(out)


def brute_force(predicate, alphabet, max_len):
    return {w for w in all_words(alphabet, max_len) if predicate(w)}

"""Parikh vectors, linear and semilinear sets, and bounded-language probes."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .core import enumerate_words, word_sort_key
from .errors import UsageError


def parikh(word, alphabet: Sequence) -> tuple:
    """Occurrence counts of each symbol of ``alphabet``, in order."""
    index = {sym: i for i, sym in enumerate(alphabet)}
    counts = [0] * len(index)
    for sym in word:
        if sym not in index:
            raise UsageError(f"symbol {sym!r} is not in the alphabet")
        counts[index[sym]] += 1
    return tuple(counts)


def _vector(v, dim=None):
    v = tuple(v)
    if any(not isinstance(x, int) or x < 0 for x in v):
        raise UsageError(f"{v!r} is not a vector of non-negative integers")
    if dim is not None and len(v) != dim:
        raise UsageError(f"dimension mismatch: {v!r} is not {dim}-dimensional")
    return v


@dataclass(frozen=True)
class LinearSet:
    """``{ base + sum c_i * periods[i] : c_i >= 0 }``; zero periods are dropped."""

    base: tuple
    periods: tuple = ()

    def __post_init__(self):
        base = _vector(self.base)
        periods = tuple(_vector(p, len(base)) for p in self.periods)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "periods", tuple(dict.fromkeys(p for p in periods if any(p))))

    @property
    def dimension(self):
        return len(self.base)

    def __contains__(self, v):
        return linear_member(v, self)


@dataclass(frozen=True)
class SemilinearSet:
    dimension: int
    components: tuple = ()

    def __post_init__(self):
        comps = tuple(self.components)
        for c in comps:
            if c.dimension != self.dimension:
                raise UsageError(f"linear set of dimension {c.dimension} in a {self.dimension}-dimensional union")
        object.__setattr__(self, "components", comps)

    def __contains__(self, v):
        return semilinear_member(v, self)


def linear_member(v, lin: LinearSet) -> bool:
    """Exhaustive search for non-negative coefficients.

    Each coefficient is bounded by ``max(v)`` because every stored period has
    a positive coordinate.
    """
    v = _vector(v, lin.dimension)
    rest = tuple(a - b for a, b in zip(v, lin.base))
    if any(x < 0 for x in rest):
        return False
    return _solvable(rest, lin.periods)


@lru_cache(maxsize=None)
def _solvable(rest, periods):
    if not any(rest):
        return True
    if not periods:
        return False
    p, others = periods[0], periods[1:]
    bound = max(rest)
    c = 0
    r = rest
    while c <= bound and all(x >= 0 for x in r):
        if _solvable(r, others):
            return True
        c += 1
        r = tuple(a - b for a, b in zip(r, p))
    return False


def semilinear_member(v, s: SemilinearSet) -> bool:
    return any(linear_member(v, c) for c in s.components)


def members_up_to_weight(lin: LinearSet, max_weight: int) -> set:
    """Every member of total weight <= ``max_weight``, generated by adding periods."""
    if sum(lin.base) > max_weight:
        return set()
    seen = {lin.base}
    frontier = [lin.base]
    while frontier:
        nxt = []
        for v in frontier:
            for p in lin.periods:
                w = tuple(a + b for a, b in zip(v, p))
                if sum(w) <= max_weight and w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def semilinear_members_up_to_weight(s: SemilinearSet, max_weight: int) -> set:
    out = set()
    for c in s.components:
        out |= members_up_to_weight(c, max_weight)
    return out


def parikh_image(m, max_len: int, alphabet: Optional[Sequence] = None) -> list:
    """Sorted, deduplicated Parikh vectors of accepted words up to ``max_len``."""
    order = tuple(alphabet) if alphabet is not None else tuple(m.input_alphabet)
    return sorted({parikh(w, order) for w in enumerate_words(m, max_len)})


@dataclass(frozen=True)
class Counterexample:
    vector: tuple
    reason: str

    def __str__(self):
        return f"({','.join(map(str, self.vector))}) {self.reason}"


def compare_semilinear(m, s: SemilinearSet, max_len: int) -> Optional[Counterexample]:
    """``None`` when the bounded image of ``m`` and the weight-bounded part of ``s`` agree."""
    if s.dimension != len(m.input_alphabet):
        raise UsageError(f"set dimension {s.dimension} differs from alphabet size {len(m.input_alphabet)}")
    image = parikh_image(m, max_len)
    for v in image:
        if not semilinear_member(v, s):
            return Counterexample(v, "accepted but not in the set")
    realized = set(image)
    for v in sorted(semilinear_members_up_to_weight(s, max_len)):
        if v not in realized:
            return Counterexample(v, "in the set but not realized")
    return None


def _sorted_blocks(word, order):
    rank = {sym: i for i, sym in enumerate(order)}
    ranks = [rank[s] for s in word]
    return all(a <= b for a, b in zip(ranks, ranks[1:]))


def is_bounded_up_to(m, alphabet: Sequence, max_len: int) -> Optional[tuple]:
    """First accepted word outside ``a1* a2* ... an*``, or ``None``."""
    order = tuple(alphabet)
    if set(order) != set(m.input_alphabet):
        raise UsageError("the ordered alphabet must list exactly the machine's input symbols")
    words = sorted(enumerate_words(m, max_len), key=word_sort_key(m.input_alphabet))
    for w in words:
        if not _sorted_blocks(w, order):
            return w
    return None

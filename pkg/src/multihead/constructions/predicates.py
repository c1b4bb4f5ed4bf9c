"""Membership predicates used as test oracles.  None of them builds an automaton."""

from __future__ import annotations

from math import comb

from .turing import SEPARATOR, reference_valc_member, split_blocks

AB = frozenset("ab")


def _w(word):
    return tuple(word)


def _over(word, letters=AB):
    return all(s in letters for s in word)


def mirror(word):
    word = _w(word)
    return _over(word) and word == word[::-1]


def marked_palindrome(word):
    """``w $ w^R`` with ``w`` nonempty over {a,b}."""
    word = _w(word)
    if word.count(SEPARATOR) != 1:
        return False
    u, v = split_blocks(word)
    return bool(u) and _over(u) and v == u[::-1]


def copy(word):
    """``w $ w`` with ``w`` over {a,b} (possibly empty)."""
    return ln_member(1, word)


def lrc(word):
    """``u c^x v $ u v`` with ``u, v`` over {a,b} and ``x >= 0``."""
    word = _w(word)
    if word.count(SEPARATOR) != 1:
        return False
    left, right = split_blocks(word)
    if not _over(right) or not _over(left, AB | {"c"}):
        return False
    # the c-run (possibly empty) splits left into u and v; right must equal u + v
    letters = tuple(s for s in left if s != "c")
    if letters != right:
        return False
    cs = [i for i, s in enumerate(left) if s == "c"]
    return not cs or cs == list(range(cs[0], cs[-1] + 1))


def fibonacci(j):
    a, b = 0, 1
    for _ in range(j):
        a, b = b, a + b
    return a


def fibonacci_blocks(n):
    """Predicate for ``a^{i F(2)} $ a^{i F(3)} $ ... $ a^{i F(n+1)}``, ``i >= 1``."""

    def member(word):
        word = _w(word)
        blocks = split_blocks(word)
        if len(blocks) != n or not all(_over(b, {"a"}) for b in blocks):
            return False
        i = len(blocks[0])
        return i >= 1 and all(len(b) == i * fibonacci(j + 2) for j, b in enumerate(blocks))

    return member


def l1(word):
    """``a^(2^n)`` for ``n >= 1``."""
    word = _w(word)
    m = len(word)
    return _over(word, {"a"}) and m >= 2 and m & (m - 1) == 0


def l2(word):
    """``a b a^2 b ... a^n b`` for ``n >= 1``."""
    word = _w(word)
    if not word or word[-1] != "b" or not _over(word):
        return False
    runs = split_blocks(word[:-1], sep="b")
    return all(r == ("a",) * (i + 1) for i, r in enumerate(runs))


def ln_member(n, word):
    """``w_1 $ ... $ w_{2n}`` over {a,b} with ``w_i = w_{2n+1-i}``."""
    blocks = split_blocks(_w(word))
    if len(blocks) != 2 * n or not all(_over(b) for b in blocks):
        return False
    return all(blocks[i] == blocks[2 * n - 1 - i] for i in range(n))


def lnm_member(k, tm, word):
    """L_{n,M} with ``n = C(k, 2) + 1`` over the pair alphabet ``u/v``."""
    n = comb(k, 2) + 1
    blocks = split_blocks(_w(word))
    if len(blocks) != 2 * n:
        return False
    for b in blocks:
        cells = [s.split("/") for s in b]
        if any(len(c) != 2 or c[0] not in AB for c in cells):
            return False
        if not reference_valc_member(tm, [c[1] for c in cells]):
            return False
    return all(blocks[i] == blocks[2 * n - 1 - i] for i in range(n))


def reference_predicates():
    return {
        "mirror": mirror,
        "markedPalindrome": marked_palindrome,
        "copy": copy,
        "lrc": lrc,
        "fibonacciBlocks": fibonacci_blocks,
        "l1": l1,
        "l2": l2,
    }

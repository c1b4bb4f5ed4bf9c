import random

import pytest

from helpers import brute_force, l2_blocks, valc_members_up_to
from multihead.constructions import (
    Outcome,
    TuringMachine,
    build_l2_acceptor,
    build_ln_acceptor,
    build_lnm_acceptor,
    build_valc_acceptor,
    check_tm,
    copy,
    fibonacci_blocks,
    fixture_tm,
    l1,
    l2,
    ln_member,
    lnm_alphabet,
    lnm_member,
    lrc,
    marked_palindrome,
    mirror,
    pair_symbol,
    reference_valc_member,
    small_tm,
    tm_run,
    tm_step,
    valc_string,
)
from multihead.constructions.turing import LEFT, RIGHT, STAY, split_blocks
from multihead.constructions.witnesses import Compare, Move, mirror_schedule
from multihead.core import enumerate_words, is_deterministic
from multihead.errors import ConformanceError


def one_rule_tm(rule):
    """A machine with the single transition ``rule`` over states s, t and tape a, b, c, B."""
    (s, r), (s2, w, d) = rule
    return TuringMachine(
        states=("s", "t"),
        tape_alphabet=("a", "b", "c", "B"),
        blank="B",
        input_alphabet=("a", "b", "c"),
        transitions={(s, r): (s2, w, d)},
        initial_state="s",
        accepting_states={"t"},
    )


class TestTmStep:
    def test_stay(self):
        tm = one_rule_tm((("s", "a"), ("t", "b", STAY)))
        assert tm_step(tm, ("s", "a")) == ("t", "b")

    def test_right(self):
        tm = one_rule_tm((("s", "a"), ("t", "b", RIGHT)))
        assert tm_step(tm, ("s", "a", "c")) == ("b", "t", "c")

    def test_left(self):
        tm = one_rule_tm((("s", "a"), ("t", "b", LEFT)))
        assert tm_step(tm, ("c", "s", "a")) == ("t", "c", "b")

    def test_left_edge(self):
        tm = one_rule_tm((("s", "a"), ("t", "b", LEFT)))
        with pytest.raises(ConformanceError):
            tm_step(tm, ("s", "a"))

    def test_scans_blank_past_the_end(self):
        tm = one_rule_tm((("s", "B"), ("t", "a", STAY)))
        assert tm_step(tm, ("a", "s")) == ("a", "t", "a")

    def test_right_move_appends_blank(self):
        tm = one_rule_tm((("s", "a"), ("t", "b", RIGHT)))
        assert tm_step(tm, ("s", "a")) == ("b", "t", "B")

    def test_halt(self):
        tm = one_rule_tm((("s", "a"), ("t", "b", STAY)))
        assert tm_step(tm, ("s", "b")) is None


class TestTmConformance:
    def test_fixtures_conform(self):
        assert check_tm(fixture_tm()) == []
        assert check_tm(small_tm()) == []

    def test_blank_write(self):
        tm = one_rule_tm((("s", "a"), ("t", "B", STAY)))
        assert len(check_tm(tm)) == 1

    def test_overlap(self):
        tm = TuringMachine(("s", "a"), ("a", "B"), "B", ("a",), {}, "s", {"s"})
        assert check_tm(tm)

    def test_accepting_state_must_halt(self):
        tm = one_rule_tm((("t", "a"), ("s", "b", STAY)))
        assert len(check_tm(tm)) == 1


class TestTmRun:
    def test_accepts_empty_in_three_moves(self):
        run = tm_run(fixture_tm(), (), 100)
        assert run.outcome == Outcome.ACCEPTED
        assert len(run.history) == 4 and run.violations == ()

    def test_loop(self):
        run = tm_run(fixture_tm(), ("a", "a"), 100)
        assert run.outcome == Outcome.BOUND_EXCEEDED

    def test_rejected(self):
        tm = one_rule_tm((("s", "a"), ("s", "b", STAY)))
        assert tm_run(tm, ("a",), 10).outcome == Outcome.REJECTED

    def test_even_move_count_reported(self):
        run = tm_run(small_tm(), ("a",), 10)
        assert run.outcome == Outcome.ACCEPTED
        assert any(v.startswith("even-moves") for v in run.violations)


class TestValcString:
    def test_format(self):
        history = [("p",), ("q", "b"), ("b", "q", "B"), ("f", "b", "a")]
        assert valc_string(history) == tuple("$p$qb$bqB$fba$")

    def test_too_short(self):
        with pytest.raises(ConformanceError):
            valc_string([("p",), ("q",)])
        with pytest.raises(ConformanceError):
            valc_string([])

    def test_odd(self):
        with pytest.raises(ConformanceError):
            valc_string([("p",)] * 5)


class TestReferenceValc:
    def test_accepted_run_and_mutations(self):
        tm = fixture_tm()
        for x in [(), ("a",)]:
            word = valc_string(tm_run(tm, x, 100).history)
            assert reference_valc_member(tm, word)
            for i in range(len(word)):
                for sym in tm.valc_alphabet:
                    if sym != word[i]:
                        assert not reference_valc_member(tm, word[:i] + (sym,) + word[i + 1 :])

    def test_empty(self):
        assert not reference_valc_member(fixture_tm(), ())


class TestValcAcceptor:
    def test_small_tm_enumeration(self):
        tm = small_tm()
        m = build_valc_acceptor(tm)
        assert set(enumerate_words(m, 14)) == valc_members_up_to(tm, 14)
        assert is_deterministic(m)

    def test_shortest_run(self):
        tm = fixture_tm()
        m = build_valc_acceptor(tm)
        word = valc_string(tm_run(tm, (), 100).history)
        assert m.accepts(word)

    def test_wrong_final_state(self):
        m = build_valc_acceptor(fixture_tm())
        assert not m.accepts(tuple("$p$qb$bqB$qba$"))


class TestPredicates:
    def test_ln(self):
        assert ln_member(3, "ab$b$a$a$b$ab")
        assert not ln_member(3, "ab$b$a$a$b$ba")
        assert ln_member(1, "ab$ab")

    def test_l2(self):
        assert l2("ab")
        assert l2("abaabaaab")
        assert not l2("abab")
        assert brute_force(l2, "ab", 10) == brute_force(l2_blocks, "ab", 10)

    def test_misc(self):
        assert mirror("abba")
        assert lrc("abccb$abb")
        assert not lrc("acbcb$abb")
        assert l1("aaaa") and not l1("aaa")
        assert marked_palindrome("ab$ba") and not marked_palindrome("$")
        assert copy("$") and copy("ab$ab")
        assert fibonacci_blocks(4)("a$aa$aaa$aaaaa")
        assert fibonacci_blocks(4)("$".join("a" * (2 * f) for f in (1, 2, 3, 5)))
        assert not fibonacci_blocks(4)("a$a$a$a")


class TestLn:
    def test_k2_is_copy(self):
        m = build_ln_acceptor(2)
        assert m.accepts(tuple("ab$ab"))
        assert not m.accepts(tuple("ab$ba"))

    def test_k3_up_to_12(self):
        m = build_ln_acceptor(3)
        assert set(enumerate_words(m, 12)) == brute_force(lambda w: ln_member(3, w), "ab$", 12)

    def test_k3_block_count(self):
        assert not build_ln_acceptor(3).accepts(tuple("a$a$a$a$a$a$a"))

    def test_k4_samples(self):
        # k=4 needs 2*C(4,2) = 12 blocks
        m = build_ln_acceptor(4)
        rng = random.Random(4)
        for _ in range(40):
            half = ["".join(rng.choice("ab") for _ in range(rng.randint(0, 2))) for _ in range(6)]
            word = tuple("$".join(half + half[::-1]))
            assert m.accepts(word)
            i = rng.randrange(len(word))
            bad = word[:i] + ({"a": "b", "b": "a", "$": "a"}[word[i]],) + word[i + 1 :]
            assert m.accepts(bad) == ln_member(6, bad)


class TestMirrorSchedule:
    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_pairs_are_mirrors(self, k):
        n = k * (k - 1) // 2
        total = 2 * n
        prog, _, active = mirror_schedule(range(1, k + 1), 1, total, {h: 0 for h in range(1, k + 1)}, total)
        assert len(active) == 1
        # replay separator counts to learn which blocks each Compare reads
        crossed = {h: 0 for h in range(1, k + 1)}
        pairs = []
        for ins in prog:
            assert isinstance(ins, (Move, Compare))
            if isinstance(ins, Move):
                crossed[ins.head] += ins.count
                continue
            lead_block, other_block = crossed[ins.lead] + 1, crossed[ins.other] + 1
            pairs.append((other_block, lead_block))
            assert ins.lead_term == (">" if lead_block == total else "$")
            if ins.lead_term == "$":
                crossed[ins.lead] += 1
        assert sorted(pairs) == [(i, total + 1 - i) for i in range(1, n + 1)]


class TestLnm:
    """Differential test against the predicate on members and their one-symbol edits.

    Exhaustive enumeration is out of reach here: the shortest member already
    has four blocks of VALC words.
    """

    def members(self, k, tm, count, seed):
        n = k * (k - 1) // 2 + 1
        lowers = sorted(valc_members_up_to(tm, 15))
        rng = random.Random(seed)
        out = []
        for _ in range(count):
            half = []
            for _ in range(n):
                low = rng.choice(lowers)
                half.append(tuple(pair_symbol(rng.choice("ab"), v) for v in low))
            blocks = half + half[::-1]
            word = []
            for i, b in enumerate(blocks):
                word += list(b) + (["$"] if i < len(blocks) - 1 else [])
            out.append(tuple(word))
        return out

    def test_k2_mutations(self):
        tm = small_tm()
        m = build_lnm_acceptor(2, tm)
        assert is_deterministic(m)
        alphabet = lnm_alphabet(tm)
        checked = 0
        for word in self.members(2, tm, 3, seed=1):
            assert m.accepts(word) and lnm_member(2, tm, word)
            for i in range(len(word)):
                assert m.accepts(word[:i] + word[i + 1 :]) == lnm_member(2, tm, word[:i] + word[i + 1 :])
                for sym in alphabet:
                    if sym != word[i]:
                        bad = word[:i] + (sym,) + word[i + 1 :]
                        assert m.accepts(bad) == lnm_member(2, tm, bad), bad
                        checked += 1
        assert checked > 1000

    def test_k2_fixture_tm(self):
        tm = fixture_tm()
        m = build_lnm_acceptor(2, tm)
        for word in self.members(2, tm, 4, seed=2):
            assert m.accepts(word)
            blocks = split_blocks(word)
            swapped = blocks[1:2] + blocks[:1] + blocks[2:]
            flat = []
            for i, b in enumerate(swapped):
                flat += list(b) + (["$"] if i < len(swapped) - 1 else [])
            assert m.accepts(tuple(flat)) == lnm_member(2, tm, tuple(flat))

    def test_k3_samples(self):
        tm = small_tm()
        m = build_lnm_acceptor(3, tm)
        for word in self.members(3, tm, 2, seed=3):
            assert m.accepts(word)
            assert not m.accepts(word[:-1])
            # lower track of the last cell no longer a VALC word
            bad = word[:-1] + (pair_symbol(word[-1].split("/")[0], "p"),)
            assert not m.accepts(bad) and not lnm_member(3, tm, bad)

    def test_malformed_pair(self):
        tm = small_tm()
        m = build_lnm_acceptor(2, tm)
        word = self.members(2, tm, 1, seed=5)[0]
        assert not m.accepts(word[1:])


class TestL2:
    def test_examples(self):
        m = build_l2_acceptor()
        assert m.accepts(tuple("ab")) and m.accepts(tuple("abaabaaab"))
        assert not m.accepts(tuple("abab"))

    def test_up_to_12(self):
        m = build_l2_acceptor()
        assert set(enumerate_words(m, 12)) == brute_force(l2_blocks, "ab", 12)

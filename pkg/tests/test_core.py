import pytest

from helpers import brute_force, copy_predicate, dfa_a_plus, dfa_a_star, empty_language, mhfa, right_mover
from multihead.constructions import build_l2_acceptor, build_ln_acceptor
from multihead.core import (
    LEFT_END,
    RIGHT_END,
    TWO_WAY,
    Configuration,
    Termination,
    accepts,
    coincidence_partition,
    count_reversals,
    enumerate_words,
    equivalent_up_to,
    format_word,
    is_deterministic,
    parse_word,
    run_deterministic,
    step,
    validate,
)
from multihead.errors import UsageError


def rules(m):
    return [d.rule for d in validate(m)]


class TestValidate:
    def test_well_formed_dfa(self):
        assert validate(dfa_a_star()) == []

    def test_left_move_on_left_endmarker(self):
        m = mhfa(
            {("s", ("a",)): ("s", (-1,)), ("s", (LEFT_END,)): ("s", (-1,))},
            ["s"],
            "a",
            {"s"},
            direction=TWO_WAY,
        )
        assert rules(m) == ["endmarker"]

    def test_right_move_on_right_endmarker(self):
        m = mhfa({("s", (RIGHT_END,)): ("s", (1,))}, ["s"], "a", {"s"})
        assert rules(m) == ["endmarker"]

    def test_one_way_left_move(self):
        m = mhfa({("s", ("a",)): ("s", (-1,))}, ["s"], "a", {"s"})
        assert rules(m) == ["direction"]

    def test_endpoints_and_alphabet(self):
        m = mhfa({("s", ("a",)): ("t", (1,))}, ["s"], "a", {"u"})
        assert rules(m) == ["states", "states"]
        bad = mhfa({}, ["s"], ["a", RIGHT_END], set())
        assert rules(bad) == ["alphabet"]

    def test_arity(self):
        m = mhfa({("s", ("a", "a")): ("s", (1, 1))}, ["s"], "a", {"s"})
        assert set(rules(m)) == {"arity"}


class TestDeterminism:
    def test_two_images(self):
        m = mhfa({("s", ("a",)): [("s", (1,)), ("t", (1,))]}, ["s", "t"], "a", set())
        assert not is_deterministic(m)

    def test_singletons(self):
        assert is_deterministic(dfa_a_star_b())

    def test_no_transitions(self):
        assert is_deterministic(mhfa({}, ["s"], "a", set()))


def dfa_a_star_b():
    return mhfa({("s", ("a",)): ("s", (1,)), ("s", ("b",)): ("t", (1,))}, ["s", "t"], "ab", {"t"})


class TestStep:
    def test_direct(self):
        assert step(dfa_a_star(), "aa", Configuration("s", (1,))) == {Configuration("s", (2,))}

    def test_halt_on_right_end(self):
        assert step(dfa_a_star(), "aa", Configuration("s", (3,))) == set()

    def test_nondeterministic(self):
        m = mhfa({("s", ("a",)): [("s", (1,)), ("t", (0,))]}, ["s", "t"], "a", set())
        assert len(step(m, "a", Configuration("s", (1,)))) == 2

    def test_rejects_reserved_token_in_word(self):
        with pytest.raises(UsageError):
            step(dfa_a_star(), ("a", RIGHT_END), Configuration("s", (1,)))

    def test_rejects_bad_position(self):
        with pytest.raises(UsageError):
            step(dfa_a_star(), "a", Configuration("s", (5,)))


class TestAccepts:
    def test_a_star(self):
        assert accepts(dfa_a_star(), "aaa")
        assert accepts(dfa_a_star(), "")

    def test_l2(self):
        m = build_l2_acceptor()
        assert accepts(m, "abaab")
        assert not accepts(m, "abab")

    def test_halting_required(self):
        # accepting state that keeps looping never halts, so no acceptance
        m = mhfa({("s", ("a",)): ("s", (0,))}, ["s"], "a", {"s"})
        assert not accepts(m, "a")
        assert accepts(m, "")


class TestRunDeterministic:
    def test_right_mover(self):
        trace = run_deterministic(right_mover(), "ab", 100)
        assert len(trace) == 3
        assert trace.termination == Termination.HALTED
        assert [c.positions for c in trace.configurations] == [(1,), (2,), (3,)]

    def test_loop(self):
        m = mhfa({("s", ("a",)): ("s", (0,))}, ["s"], "a", set())
        trace = run_deterministic(m, "a", 100)
        assert trace.termination == Termination.LOOP_DETECTED
        assert len(trace) == 2

    def test_bound(self):
        trace = run_deterministic(right_mover(), "abab", 1)
        assert trace.termination == Termination.BOUND_EXCEEDED
        assert len(trace) == 2

    def test_nondeterministic_rejected(self):
        m = mhfa({("s", ("a",)): [("s", (1,)), ("t", (1,))]}, ["s", "t"], "a", set())
        with pytest.raises(UsageError):
            run_deterministic(m, "a", 10)


class TestEnumerate:
    def test_a_star(self):
        assert enumerate_words(dfa_a_star(), 2) == [(), ("a",), ("a", "a")]

    def test_empty(self):
        assert enumerate_words(empty_language(), 4) == []

    def test_copy_language(self):
        got = enumerate_words(build_ln_acceptor(2), 3)
        assert got == [("$",), ("a", "$", "a"), ("b", "$", "b")]
        assert set(got) == brute_force(copy_predicate, "ab$", 3)

    def test_alphabet_restriction(self):
        # halting in t after the first b accepts whatever follows
        assert enumerate_words(dfa_a_star_b(), 2, ["b"]) == [("b",), ("b", "b")]
        assert enumerate_words(dfa_a_plus(), 2, ["a"]) == [("a",), ("a", "a")]

    def test_length_lex_order(self):
        got = enumerate_words(right_mover(), 2)
        assert got == [(), ("a",), ("b",), ("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")]


class TestEquivalence:
    def test_reflexive(self):
        m = build_l2_acceptor()
        assert equivalent_up_to(m, m, 8) is None

    def test_counterexample(self):
        assert equivalent_up_to(dfa_a_star(), dfa_a_plus(), 1) == ()


class TestReversals:
    def trace(self, moves):
        pos, out = 1, [Configuration("s", (1,))]
        for d in moves:
            pos += d
            out.append(Configuration("s", (pos,)))
        return out

    def test_two_sign_changes(self):
        assert count_reversals(self.trace([1, 1, -1, 1])) == (2,)

    def test_stationary(self):
        assert count_reversals(self.trace([0, 0, 0])) == (0,)

    def test_zero_moves_do_not_break_direction(self):
        assert count_reversals(self.trace([1, 0, 1, 0, -1])) == (1,)


def test_coincidence_partition():
    assert coincidence_partition((1, 1)) == ((1, 2),)
    assert coincidence_partition((1, 2)) == ((1,), (2,))
    assert coincidence_partition((3, 1, 3)) == ((1, 3), (2,))


def test_word_round_trip():
    assert parse_word("ab$ab") == ("a", "b", "$", "a", "b")
    assert parse_word("a b/c", ["a", "b/c"]) == ("a", "b/c")
    assert format_word(("a", "b/c")) == "a b/c"
    assert format_word(("a", "b")) == "ab"

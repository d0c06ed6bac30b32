"""Rhythm ADT: step counting, compilation to patterns, s-expression form."""

import logging
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from riptide import (
    Atom,
    Patterning,
    Silence,
    Span,
    StackCycles,
    StackSteps,
    Step,
    Subsequence,
    fast,
    fastcat,
    pure,
    rev,
    silence,
    slow,
    stack,
    step_count,
    to_pattern,
    to_sexpr,
)
from helpers import assert_observed_equal, query_triples


def seq(*values):
    return Subsequence([Step(1, Atom(v)) for v in values])


class TestStepCount:
    def test_atoms_and_silence(self):
        assert step_count(Atom("x")) == 1
        assert step_count(Silence()) == 1

    def test_unit_sequence(self):
        assert step_count(seq("a", "b", "c")) == 3

    def test_weighted_sequence(self):
        r = Subsequence([Step(2, Atom("a")), Step(1, Atom("b"))])
        assert step_count(r) == 3

    def test_fractional_weights(self):
        r = Subsequence([Step(F(1, 2), Atom("a")), Step(1, Atom("b"))])
        assert step_count(r) == F(3, 2)

    def test_stacks_use_first_member(self):
        assert step_count(StackCycles([seq("a", "b"), seq("c", "d", "e")])) == 2
        assert step_count(StackSteps(2, [seq("c", "d", "e"), seq("a")])) == 3
        assert step_count(StackCycles([])) == 0

    def test_patterning_passes_through(self):
        assert step_count(Patterning(rev, seq("a", "b"), tag="rev")) == 2


class TestToPattern:
    def test_atom(self):
        assert_observed_equal(to_pattern(Atom("bd")), pure("bd"), msg="atom")

    def test_silence(self):
        assert to_pattern(Silence()).query(Span(0, 4)) == []

    def test_empty_subsequence_is_silence(self):
        assert to_pattern(Subsequence([])).query(Span(0, 4)) == []

    def test_two_step_sequence(self):
        assert_observed_equal(
            to_pattern(seq("a", "b")), fastcat([pure("a"), pure("b")]), msg="seq"
        )

    def test_weighted_ratio_golden(self):
        r = Subsequence([Step(2, Atom("a")), Step(1, Atom("b"))])
        assert query_triples(to_pattern(r), 0, 1) == [
            ((F(0), F(2, 3)), (F(0), F(2, 3)), "a"),
            ((F(2, 3), F(1)), (F(2, 3), F(1)), "b"),
        ]

    def test_stack_cycles(self):
        r = StackCycles([seq("a", "b"), seq("c", "d", "e")])
        assert_observed_equal(
            to_pattern(r),
            stack([to_pattern(seq("a", "b")), to_pattern(seq("c", "d", "e"))]),
            msg="stack-cycles",
        )

    def test_stack_steps_polymeter_unrolling(self):
        r = StackSteps(2, [seq("a", "b"), seq("c", "d", "e")])
        by_cycle = []
        for c in range(3):
            evs = to_pattern(r).query(Span(c, c + 1))
            by_cycle.append([e.value for e in evs])
        assert by_cycle == [["a", "c", "b", "d"], ["a", "e", "b", "c"], ["a", "d", "b", "e"]]

    def test_stack_steps_single_lane(self):
        inner = seq("c", "d", "e")
        r = StackSteps(2, [inner])
        assert_observed_equal(
            to_pattern(r), fast(F(2, 3), to_pattern(inner)), msg="stack-steps single"
        )

    def test_stack_steps_zero_count_member_is_silence(self, caplog):
        r = StackSteps(2, [seq("a"), StackCycles([])])
        with caplog.at_level(logging.WARNING, logger="riptide"):
            evs = to_pattern(r).query(Span(0, 1))
        assert [e.value for e in evs] == ["a", "a"]
        assert any("no steps" in r_.message for r_ in caplog.records)

    def test_patterning_applies_function(self):
        r = Patterning(rev, seq("a", "b"), tag="rev")
        assert_observed_equal(
            to_pattern(r), rev(fastcat([pure("a"), pure("b")])), msg="patterning"
        )

    def test_alternation_encoding_is_slowcat(self):
        steps = seq("a", "b")
        r = Patterning(lambda p: slow(2, p), steps, tag="alt 2")
        got = [e.value for e in to_pattern(r).query(Span(0, 2))]
        assert got == ["a", "b"]


@given(st.lists(st.sampled_from(["a", "b", "c", "d"]), min_size=1, max_size=8))
@settings(max_examples=200, deadline=None, derandomize=True)
def test_unit_subsequence_is_fastcat(values):
    assert_observed_equal(
        to_pattern(seq(*values)),
        fastcat([pure(v) for v in values]),
        msg="seq vs fastcat",
    )


@given(
    st.lists(
        st.tuples(st.sampled_from([1, 2, 3, F(1, 2)]), st.sampled_from(["a", "b", "c"])),
        min_size=2,
        max_size=5,
    )
)
@settings(max_examples=200, deadline=None, derandomize=True)
def test_weighted_lengths_in_ratio(pairs):
    r = Subsequence([Step(w, Atom(v)) for w, v in pairs])
    evs = to_pattern(r).query(Span(0, 1))
    total = sum(w for w, _ in pairs)
    assert [e.whole.length for e in evs] == [F(w) / total for w, _ in pairs]


class TestValidation:
    def test_step_weight_positive(self):
        with pytest.raises(ValueError):
            Step(0, Atom("a"))
        with pytest.raises(ValueError):
            Step(-1, Atom("a"))

    def test_stack_steps_per_cycle_positive(self):
        with pytest.raises(ValueError):
            StackSteps(0, [seq("a")])


class TestEquality:
    def test_structural(self):
        assert seq("a", "b") == seq("a", "b")
        assert seq("a") != seq("b")
        assert Atom("x") == Atom("x")
        assert Silence() == Silence()

    def test_patterning_compares_by_tag(self):
        a = Patterning(rev, seq("a"), tag="rev")
        b = Patterning(lambda p: rev(p), seq("a"), tag="rev")
        c = Patterning(rev, seq("a"), tag="other")
        assert a == b
        assert a != c


class TestSexpr:
    def test_atom_and_silence(self):
        assert to_sexpr(Atom("bd")) == "(atom bd)"
        assert to_sexpr(Silence()) == "(silence)"

    def test_sequence_with_weights(self):
        r = Subsequence([Step(2, Atom("bd")), Step(1, Atom("sn"))])
        assert to_sexpr(r) == "(seq (weight 2 (atom bd)) (atom sn))"

    def test_fractional_weight(self):
        r = Subsequence([Step(F(3, 2), Atom("bd"))])
        assert to_sexpr(r) == "(seq (weight 3/2 (atom bd)))"

    def test_stacks(self):
        r = StackCycles([seq("a"), seq("b")])
        assert to_sexpr(r) == "(stack-cycles (seq (atom a)) (seq (atom b)))"
        r2 = StackSteps(2, [seq("a")])
        assert to_sexpr(r2) == "(stack-steps 2 (seq (atom a)))"

    def test_patterning(self):
        r = Patterning(rev, seq("a"), tag="rev")
        assert to_sexpr(r) == '(patterning "rev" (seq (atom a)))'

"""Time core: exact rationals, spans, intersection, cycle splitting."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from riptide import Span, cycle_pos, frac, frac_str, maybe_sect, next_sam, sam, sect, span_cycles

fractions_st = st.fractions(min_value=-100, max_value=100, max_denominator=64)


class TestFrac:
    def test_accepts_int_str_fraction(self):
        assert frac(3) == F(3)
        assert frac("3/2") == F(3, 2)
        assert frac(F(1, 4)) == F(1, 4)

    def test_rejects_float_and_bool(self):
        with pytest.raises(TypeError):
            frac(0.5)
        with pytest.raises(TypeError):
            frac(True)

    def test_frac_str_always_writes_denominator(self):
        assert frac_str(F(1)) == "1/1"
        assert frac_str(F(0)) == "0/1"
        assert frac_str(F(-2)) == "-2/1"
        assert frac_str(F(1, 3)) == "1/3"


class TestCycleArithmetic:
    @pytest.mark.parametrize(
        "t,expected",
        [(F(0), F(0)), (F(1, 2), F(0)), (F(7, 3), F(2)), (F(-1, 4), F(-1)), (F(-2), F(-2))],
    )
    def test_sam_floors_toward_minus_infinity(self, t, expected):
        assert sam(t) == expected

    def test_cycle_pos(self):
        assert cycle_pos(F(7, 3)) == F(1, 3)
        assert cycle_pos(F(-1, 4)) == F(3, 4)

    def test_next_sam(self):
        assert next_sam(F(1, 2)) == F(1)
        assert next_sam(F(2)) == F(3)

    @given(fractions_st)
    @settings(max_examples=200, deadline=None, derandomize=True)
    def test_sam_brackets_t(self, t):
        assert sam(t) <= t < next_sam(t)
        assert 0 <= cycle_pos(t) < 1


class TestSpan:
    def test_coerces_and_validates(self):
        s = Span(0, "3/2")
        assert s.begin == F(0) and s.end == F(3, 2)
        with pytest.raises(ValueError):
            Span(1, 0)
        with pytest.raises(TypeError):
            Span(0.25, 1)

    def test_length_instant_shift(self):
        s = Span(F(1, 4), F(3, 4))
        assert s.length == F(1, 2)
        assert not s.is_instant
        assert Span(1, 1).is_instant
        assert s.shift(F(1, 4)) == Span(F(1, 2), F(1))

    def test_json_round_trip(self):
        s = Span(F(-1, 3), F(5, 2))
        assert s.to_json() == {"begin": "-1/3", "end": "5/2"}
        assert Span.from_json(s.to_json()) == s


class TestSect:
    def test_plain_overlap(self):
        assert sect(Span(0, 2), Span(1, 3)) == Span(1, 2)
        assert maybe_sect(Span(0, 2), Span(1, 3)) == Span(1, 2)

    def test_disjoint_is_none(self):
        assert maybe_sect(Span(0, 1), Span(2, 3)) is None

    def test_adjacent_spans_do_not_overlap(self):
        # Half-open: [0,1) and [1,2) share no point.
        assert maybe_sect(Span(0, 1), Span(1, 2)) is None

    def test_instant_inside_span(self):
        assert maybe_sect(Span(F(1, 2), F(1, 2)), Span(0, 1)) == Span(F(1, 2), F(1, 2))

    def test_instant_at_begin_counts(self):
        assert maybe_sect(Span(0, 0), Span(0, 1)) == Span(0, 0)

    def test_instant_at_end_does_not_count(self):
        assert maybe_sect(Span(1, 1), Span(0, 1)) is None

    def test_equal_instants(self):
        assert maybe_sect(Span(1, 1), Span(1, 1)) == Span(1, 1)

    def test_distinct_instants(self):
        assert maybe_sect(Span(0, 0), Span(1, 1)) is None

    @given(fractions_st, fractions_st, fractions_st, fractions_st)
    @settings(max_examples=200, deadline=None, derandomize=True)
    def test_commutative(self, a, b, c, d):
        s1 = Span(min(a, b), max(a, b))
        s2 = Span(min(c, d), max(c, d))
        assert maybe_sect(s1, s2) == maybe_sect(s2, s1)


class TestSpanCycles:
    def test_splits_at_cycle_boundaries(self):
        assert span_cycles(Span(F(1, 2), F(5, 2))) == [
            Span(F(1, 2), F(1)),
            Span(F(1), F(2)),
            Span(F(2), F(5, 2)),
        ]

    def test_within_one_cycle(self):
        assert span_cycles(Span(F(1, 4), F(3, 4))) == [Span(F(1, 4), F(3, 4))]

    def test_instant_yields_itself(self):
        assert span_cycles(Span(1, 1)) == [Span(1, 1)]

    @given(fractions_st, fractions_st)
    @settings(max_examples=200, deadline=None, derandomize=True)
    def test_pieces_concatenate_exactly(self, a, b):
        s = Span(min(a, b), max(a, b))
        pieces = span_cycles(s)
        assert pieces[0].begin == s.begin
        assert pieces[-1].end == s.end
        for left, right in zip(pieces, pieces[1:]):
            assert left.end == right.begin
            assert sam(right.begin) == right.begin  # interior cuts on cycle lines

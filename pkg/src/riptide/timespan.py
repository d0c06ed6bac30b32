"""Exact rational time: cycle arithmetic and half-open time spans.

All pattern time is measured in cycles and kept as ``fractions.Fraction``
so that repeated tempo changes never accumulate rounding error. Floats are
rejected at this boundary on purpose; they only appear downstream in
wall-clock conversion and OSC payloads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

Time = Fraction
TimeLike = Union[Fraction, int, str]


def frac(x: TimeLike) -> Fraction:
    """Coerce an int, "n/d" string, or Fraction to exact cycle time."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"cycle time must be exact, got {x!r}")
    return Fraction(x)


def frac_str(x: Fraction) -> str:
    """Serialize a Fraction as "n/d" with the denominator always written."""
    return f"{x.numerator}/{x.denominator}"


def frac_from_str(s: str) -> Fraction:
    return Fraction(s)


def sam(t: Fraction) -> Fraction:
    """Start of the cycle containing t: floor toward -infinity."""
    return Fraction(math.floor(t))


def cycle_pos(t: Fraction) -> Fraction:
    """Position of t within its cycle, in [0, 1)."""
    return t - sam(t)


def next_sam(t: Fraction) -> Fraction:
    return sam(t) + 1


@dataclass(frozen=True, order=True)
class Span:
    """Half-open interval [begin, end) of cycle time.

    Zero-width spans are instants: they are queries that sample a single
    point rather than denoting an empty set.
    """

    begin: Fraction
    end: Fraction

    def __post_init__(self):
        object.__setattr__(self, "begin", frac(self.begin))
        object.__setattr__(self, "end", frac(self.end))
        if self.begin > self.end:
            raise ValueError(f"span begin {self.begin} > end {self.end}")

    @property
    def length(self) -> Fraction:
        return self.end - self.begin

    @property
    def is_instant(self) -> bool:
        return self.begin == self.end

    def shift(self, t: TimeLike) -> "Span":
        t = frac(t)
        return Span(self.begin + t, self.end + t)

    def to_json(self) -> dict:
        return {"begin": frac_str(self.begin), "end": frac_str(self.end)}

    @staticmethod
    def from_json(d: dict) -> "Span":
        return Span(Fraction(d["begin"]), Fraction(d["end"]))

    def __repr__(self):
        return f"Span({self.begin}, {self.end})"


def sect(a: Span, b: Span) -> Span:
    """Intersection of two overlapping spans. Callers check maybe_sect first."""
    return Span(max(a.begin, b.begin), min(a.end, b.end))


def maybe_sect(a: Span, b: Span) -> Optional[Span]:
    """Intersection of a and b, or None when they do not overlap.

    Overlap means a positive-length intersection, or one span is an
    instant lying inside the other (closed at the begin boundary only, so
    adjacent spans never both claim their shared edge).
    """
    begin = max(a.begin, b.begin)
    end = min(a.end, b.end)
    if begin < end:
        return Span(begin, end)
    if begin > end:
        return None
    # Zero-width intersection: only real instants count.
    if a.is_instant and b.is_instant:
        return Span(begin, end) if a.begin == b.begin else None
    if a.is_instant and b.begin <= a.begin < b.end:
        return Span(begin, end)
    if b.is_instant and a.begin <= b.begin < a.end:
        return Span(begin, end)
    return None


def span_cycles(s: Span) -> list[Span]:
    """Split a span at integer cycle boundaries into per-cycle pieces.

    The pieces are adjacent, ordered, and concatenate back to s. An
    instant yields itself.
    """
    if s.is_instant:
        return [s]
    out = []
    begin = s.begin
    while begin < s.end:
        end = min(next_sam(begin), s.end)
        out.append(Span(begin, end))
        begin = end
    return out

"""The pattern representation: queries as pure functions of a time span.

A pattern maps any query span to the events overlapping it. Events carry
an ``active`` span (the queried fragment) and, for discrete events, the
``whole`` span they are a fragment of; continuous signals have no whole.
Everything here is immutable and safe to share between threads.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Optional

from .timespan import (
    Span,
    TimeLike,
    frac,
    frac_str,
    maybe_sect,
    next_sam,
    sam,
    span_cycles,
)

log = logging.getLogger("riptide")


@dataclass(frozen=True)
class Event:
    """A value occupying a fragment of cycle time.

    When ``whole`` is present the event is a fragment of that larger span
    and ``active`` lies within it; a fragment beginning exactly at its
    whole's begin carries the onset.
    """

    whole: Optional[Span]
    active: Span
    value: Any

    @property
    def has_onset(self) -> bool:
        return self.whole is not None and self.whole.begin == self.active.begin

    def with_value(self, value) -> "Event":
        return Event(self.whole, self.active, value)

    def map_spans(self, f: Callable[[Fraction], Fraction]) -> "Event":
        """Apply a monotone increasing time map to both spans."""
        whole = Span(f(self.whole.begin), f(self.whole.end)) if self.whole else None
        return Event(whole, Span(f(self.active.begin), f(self.active.end)), self.value)

    def to_json(self) -> dict:
        return {
            "whole": self.whole.to_json() if self.whole else None,
            "active": self.active.to_json(),
            "value": value_to_json(self.value),
        }

    def __repr__(self):
        w = f"{self.whole.begin}..{self.whole.end}" if self.whole else "~"
        return f"Event({w} @ {self.active.begin}..{self.active.end}: {self.value!r})"


def value_to_json(v):
    if isinstance(v, Fraction):
        return frac_str(v)
    if isinstance(v, dict):
        return {k: value_to_json(x) for k, x in v.items()}
    if isinstance(v, (bool, int, float, str)) or v is None:
        return v
    return str(v)


def _sort(events: list[Event]) -> list[Event]:
    # Stable sort: ties keep the constituent patterns' insertion order.
    return sorted(events, key=lambda e: (e.active.begin, e.active.end))


class Pattern:
    """A pure function from a query span to a sorted list of events."""

    __slots__ = ("query",)

    def __init__(self, query: Callable[[Span], list[Event]]):
        self.query = query


def _per_cycle(piece_query: Callable[[Span], list[Event]]) -> Pattern:
    """Build a pattern whose query runs once per cycle piece of the span."""

    def q(s: Span) -> list[Event]:
        out = []
        for piece in span_cycles(s):
            out.extend(piece_query(piece))
        return _sort(out)

    return Pattern(q)


def silence() -> Pattern:
    return Pattern(lambda s: [])


def pure(value) -> Pattern:
    """Repeat a value once per cycle, aligned to cycle boundaries."""

    def q(s: Span) -> list[Event]:
        out = []
        for piece in span_cycles(s):
            whole = Span(sam(piece.begin), next_sam(piece.begin))
            out.append(Event(whole, piece, value))
        return out

    return Pattern(q)


def signal(f: Callable[[Fraction], Any]) -> Pattern:
    """Continuous pattern sampled at the midpoint of each query span."""

    def q(s: Span) -> list[Event]:
        mid = (s.begin + s.end) / 2
        return [Event(None, s, f(mid))]

    return Pattern(q)


sine = signal(lambda t: (math.sin(2 * math.pi * t) + 1) / 2)


def with_value(p: Pattern, f: Callable[[Any], Any]) -> Pattern:
    """Functor map over event values; spans are untouched."""
    return Pattern(lambda s: [e.with_value(f(e.value)) for e in p.query(s)])


def filter_events(p: Pattern, keep: Callable[[Event], bool]) -> Pattern:
    return Pattern(lambda s: [e for e in p.query(s) if keep(e)])


def stack(patterns: list[Pattern]) -> Pattern:
    ps = list(patterns)

    def q(s: Span) -> list[Event]:
        out = []
        for p in ps:
            out.extend(p.query(s))
        return _sort(out)

    return Pattern(q)


def fast(factor: TimeLike, p: Pattern) -> Pattern:
    """Speed a pattern up by an exact factor."""
    factor = frac(factor)
    if factor == 0:
        log.warning("fast by zero yields silence")
        return silence()
    if factor < 0:
        return rev(fast(-factor, p))

    def q(s: Span) -> list[Event]:
        evs = p.query(Span(s.begin * factor, s.end * factor))
        return [e.map_spans(lambda t: t / factor) for e in evs]

    return Pattern(q)


def slow(factor: TimeLike, p: Pattern) -> Pattern:
    factor = frac(factor)
    if factor == 0:
        log.warning("slow by zero yields silence")
        return silence()
    return fast(1 / factor, p)


def early(t: TimeLike, p: Pattern) -> Pattern:
    """Shift a pattern t cycles earlier (events move toward -infinity)."""
    t = frac(t)

    def q(s: Span) -> list[Event]:
        return [e.map_spans(lambda x: x - t) for e in p.query(s.shift(t))]

    return Pattern(q)


def late(t: TimeLike, p: Pattern) -> Pattern:
    return early(-frac(t), p)


def slowcat(patterns: list[Pattern]) -> Pattern:
    """Play one constituent per cycle, each perceiving its own consecutive cycles."""
    ps = list(patterns)
    if not ps:
        return silence()
    n = len(ps)

    def piece_query(piece: Span) -> list[Event]:
        cyc = int(sam(piece.begin))
        i = cyc % n
        # Constituent i sees its own cycle floor(cyc / n).
        offset = cyc - (cyc - i) // n
        evs = ps[i].query(piece.shift(-offset))
        return [e.map_spans(lambda t: t + offset) for e in evs]

    return _per_cycle(piece_query)


def fastcat(patterns: list[Pattern]) -> Pattern:
    """All constituents squeezed into a single cycle, in order."""
    ps = list(patterns)
    if not ps:
        return silence()
    return fast(len(ps), slowcat(ps))


def _compress(begin: Fraction, end: Fraction, p: Pattern) -> Pattern:
    """Squeeze each cycle of p into the slice [begin, end) of the same cycle."""
    width = end - begin

    def piece_query(piece: Span) -> list[Event]:
        cyc = sam(piece.begin)
        window = maybe_sect(piece, Span(cyc + begin, cyc + end))
        if window is None:
            return []
        to_source = lambda t: cyc + (t - cyc - begin) / width
        from_source = lambda t: cyc + begin + (t - cyc) * width
        evs = p.query(Span(to_source(window.begin), to_source(window.end)))
        return [e.map_spans(from_source) for e in evs]

    return _per_cycle(piece_query)


def timecat(weighted: list[tuple[TimeLike, Pattern]]) -> Pattern:
    """Divide each cycle proportionally to weights, one slice per constituent."""
    pairs = [(frac(w), p) for w, p in weighted]
    if not pairs:
        return silence()
    for w, _ in pairs:
        if w <= 0:
            raise ValueError(f"timecat weight must be positive, got {w}")
    total = sum(w for w, _ in pairs)
    slices = []
    begin = Fraction(0)
    for w, p in pairs:
        end = begin + w / total
        slices.append(_compress(begin, end, p))
        begin = end
    return stack(slices)


def rev(p: Pattern) -> Pattern:
    """Reflect each cycle around its midpoint."""

    def piece_query(piece: Span) -> list[Event]:
        pivot = 2 * sam(piece.begin) + 1
        evs = p.query(Span(pivot - piece.end, pivot - piece.begin))
        out = []
        for e in evs:
            active = Span(pivot - e.active.end, pivot - e.active.begin)
            whole = Span(pivot - e.whole.end, pivot - e.whole.begin) if e.whole else None
            out.append(Event(whole, active, e.value))
        return out

    return _per_cycle(piece_query)


def _whole_int(n, where: str) -> int:
    if isinstance(n, bool):
        raise ValueError(f"{where} expects a positive integer, got {n!r}")
    if isinstance(n, Fraction) and n.denominator == 1:
        n = int(n)
    if not isinstance(n, int) or n <= 0:
        raise ValueError(f"{where} expects a positive integer, got {n!r}")
    return n


def every(n: int, f: Callable[[Pattern], Pattern], p: Pattern) -> Pattern:
    """Apply f on cycles whose index is divisible by n, leave others alone."""
    n = _whole_int(n, "every")
    fp = f(p)

    def piece_query(piece: Span) -> list[Event]:
        cyc = int(sam(piece.begin))
        return (fp if cyc % n == 0 else p).query(piece)

    return _per_cycle(piece_query)


def iter_(n: int, p: Pattern) -> Pattern:
    """Rotate the pattern one nth earlier each cycle, through n phases."""
    n = _whole_int(n, "iter")

    def piece_query(piece: Span) -> list[Event]:
        cyc = int(sam(piece.begin))
        return early(Fraction(cyc, n), p).query(piece)

    return _per_cycle(piece_query)


def onsets_only(events: list[Event]) -> list[Event]:
    """Keep exactly the fragments that carry their whole's onset."""
    return [e for e in events if e.has_onset]

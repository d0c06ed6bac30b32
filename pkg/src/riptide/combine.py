"""Combining patterns: the applicative family, binds, and patternification."""

from __future__ import annotations

from typing import Any, Callable, Optional

from . import pattern as _p
from .pattern import Event, Pattern, _sort
from .timespan import Span, maybe_sect, sect

WholeChoice = Callable[[Optional[Span], Optional[Span]], Optional[Span]]


def whole_both(a: Optional[Span], b: Optional[Span]) -> Optional[Span]:
    """Intersection of wholes; discrete only if both sides are."""
    if a is None or b is None:
        return None
    return sect(a, b)


def whole_left(a: Optional[Span], b: Optional[Span]) -> Optional[Span]:
    return a


def whole_right(a: Optional[Span], b: Optional[Span]) -> Optional[Span]:
    return b


def app(choose: WholeChoice, pf: Pattern, pv: Pattern) -> Pattern:
    """Pair up function and value events wherever their actives overlap.

    The result's active is the overlap; its whole comes from ``choose``.
    """

    def q(s: Span) -> list[Event]:
        out = []
        fs = pf.query(s)
        vs = pv.query(s)
        for ef in fs:
            for ev in vs:
                active = maybe_sect(ef.active, ev.active)
                if active is None:
                    continue
                whole = choose(ef.whole, ev.whole)
                out.append(Event(whole, active, ef.value(ev.value)))
        return _sort(out)

    return Pattern(q)


def app_both(pf: Pattern, pv: Pattern) -> Pattern:
    return app(whole_both, pf, pv)


def app_left(pf: Pattern, pv: Pattern) -> Pattern:
    """Structure from the function pattern."""
    return app(whole_left, pf, pv)


def app_right(pf: Pattern, pv: Pattern) -> Pattern:
    """Structure from the value pattern."""
    return app(whole_right, pf, pv)


def bind_whole(choose: WholeChoice, pv: Pattern, f: Callable[[Any], Pattern]) -> Pattern:
    """Monadic bind: query f(value) within each outer event's active."""

    def q(s: Span) -> list[Event]:
        out = []
        for outer in pv.query(s):
            for inner in f(outer.value).query(outer.active):
                whole = choose(outer.whole, inner.whole)
                out.append(Event(whole, inner.active, inner.value))
        return _sort(out)

    return Pattern(q)


def bind(pv: Pattern, f: Callable[[Any], Pattern]) -> Pattern:
    return bind_whole(whole_both, pv, f)


def inner_bind(pv: Pattern, f: Callable[[Any], Pattern]) -> Pattern:
    """Bind keeping the inner pattern's wholes (structure from f's results)."""
    return bind_whole(whole_right, pv, f)


def outer_bind(pv: Pattern, f: Callable[[Any], Pattern]) -> Pattern:
    """Bind keeping the outer pattern's wholes (structure from pv)."""
    return bind_whole(whole_left, pv, f)


def patternify1(f: Callable) -> Callable:
    """Lift f's first argument to a pattern, one inner bind per value.

    Plain (non-pattern) first arguments fall through to f unchanged, so the
    lifted function can replace the original everywhere.
    """

    def patterned(pa, *args):
        if not isinstance(pa, Pattern):
            return f(pa, *args)
        return inner_bind(pa, lambda a: f(a, *args))

    return patterned


# Public time transforms with a patternable first argument. The raw
# single-value versions live in pattern.py; these are what the package
# exports, and they fall through for plain numbers.
fast = patternify1(_p.fast)
slow = patternify1(_p.slow)
early = patternify1(_p.early)
late = patternify1(_p.late)
every = patternify1(_p.every)
for _g, _raw in ((fast, _p.fast), (slow, _p.slow), (early, _p.early), (late, _p.late), (every, _p.every)):
    _g.__name__ = _raw.__name__
    _g.__qualname__ = _raw.__name__
    _g.__doc__ = _raw.__doc__
del _g, _raw

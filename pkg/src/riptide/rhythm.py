"""An inspectable sequence representation, compiled to patterns on demand.

Rhythm is a small algebraic type. Unlike Pattern (a bare function), a
Rhythm can be examined, compared and printed, which is what the
mini-notation parser and its golden tests work with.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from . import pattern as P
from .pattern import Pattern
from .timespan import frac

log = logging.getLogger("riptide")


class Rhythm:
    """Base class; concrete forms below."""

    __slots__ = ()


@dataclass(frozen=True)
class Atom(Rhythm):
    value: Any


@dataclass(frozen=True)
class Silence(Rhythm):
    pass


@dataclass(frozen=True)
class Step:
    """One slot of a subsequence; weight is its relative duration."""

    weight: Fraction
    rhythm: Rhythm

    def __post_init__(self):
        object.__setattr__(self, "weight", frac(self.weight))
        if self.weight <= 0:
            raise ValueError(f"step weight must be positive, got {self.weight}")


@dataclass(frozen=True)
class Subsequence(Rhythm):
    steps: tuple[Step, ...]

    def __init__(self, steps):
        object.__setattr__(self, "steps", tuple(steps))


@dataclass(frozen=True)
class StackCycles(Rhythm):
    rhythms: tuple[Rhythm, ...]

    def __init__(self, rhythms):
        object.__setattr__(self, "rhythms", tuple(rhythms))


@dataclass(frozen=True)
class StackSteps(Rhythm):
    per_cycle: Fraction
    rhythms: tuple[Rhythm, ...]

    def __init__(self, per_cycle, rhythms):
        per_cycle = frac(per_cycle)
        if per_cycle <= 0:
            raise ValueError(f"perCycle must be positive, got {per_cycle}")
        object.__setattr__(self, "per_cycle", per_cycle)
        object.__setattr__(self, "rhythms", tuple(rhythms))


@dataclass(frozen=True)
class Patterning(Rhythm):
    """A pattern-level function applied after compilation.

    The function itself is opaque, so equality goes through the tag: two
    Patternings are equal when their tags and wrapped rhythms are.
    """

    function: Callable[[Pattern], Pattern] = field(compare=False)
    rhythm: Rhythm
    tag: str


def step_count(r: Rhythm) -> Fraction:
    """How many steps (by weight) one cycle of r holds."""
    if isinstance(r, (Atom, Silence)):
        return Fraction(1)
    if isinstance(r, Subsequence):
        return sum((s.weight for s in r.steps), Fraction(0))
    if isinstance(r, (StackCycles, StackSteps)):
        return step_count(r.rhythms[0]) if r.rhythms else Fraction(0)
    if isinstance(r, Patterning):
        return step_count(r.rhythm)
    raise TypeError(f"not a Rhythm: {r!r}")


def to_pattern(r: Rhythm) -> Pattern:
    if isinstance(r, Atom):
        return P.pure(r.value)
    if isinstance(r, Silence):
        return P.silence()
    if isinstance(r, Subsequence):
        if not r.steps:
            return P.silence()
        return P.timecat([(s.weight, to_pattern(s.rhythm)) for s in r.steps])
    if isinstance(r, StackCycles):
        return P.stack([to_pattern(x) for x in r.rhythms])
    if isinstance(r, StackSteps):
        lanes = []
        for x in r.rhythms:
            k = step_count(x)
            if k == 0:
                log.warning("step-wise stack member has no steps; treating as silence")
                lanes.append(P.silence())
            else:
                lanes.append(P.fast(r.per_cycle / k, to_pattern(x)))
        return P.stack(lanes)
    if isinstance(r, Patterning):
        return r.function(to_pattern(r.rhythm))
    raise TypeError(f"not a Rhythm: {r!r}")


def _num(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def to_sexpr(r: Rhythm) -> str:
    """Debug serialization, stable enough for golden tests."""
    if isinstance(r, Atom):
        return f"(atom {r.value})"
    if isinstance(r, Silence):
        return "(silence)"
    if isinstance(r, Subsequence):
        parts = []
        for s in r.steps:
            inner = to_sexpr(s.rhythm)
            parts.append(inner if s.weight == 1 else f"(weight {_num(s.weight)} {inner})")
        return "(seq" + "".join(" " + p for p in parts) + ")"
    if isinstance(r, StackCycles):
        return "(stack-cycles" + "".join(" " + to_sexpr(x) for x in r.rhythms) + ")"
    if isinstance(r, StackSteps):
        inner = "".join(" " + to_sexpr(x) for x in r.rhythms)
        return f"(stack-steps {_num(r.per_cycle)}{inner})"
    if isinstance(r, Patterning):
        return f"(patterning \"{r.tag}\" {to_sexpr(r.rhythm)})"
    raise TypeError(f"not a Rhythm: {r!r}")

"""Control maps (synth parameter dictionaries) and the operator family.

A control event's value is a plain dict: parameter name to str | int | float.
Dicts preserve insertion order, which keeps serialization reproducible.
Integers stay integers through arithmetic unless paired with a float; text
never silently becomes a number.
"""

from __future__ import annotations

import logging
import operator
from typing import Callable

from .combine import app_both, app_left, app_right
from .pattern import Pattern, pure, stack, with_value

log = logging.getLogger("riptide")

ControlMap = dict

_STRUCTURES = {"left": app_left, "right": app_right, "both": app_both}
_ARITH = {"add": operator.add, "sub": operator.sub, "mul": operator.mul, "div": operator.truediv}


def _lift(p) -> Pattern:
    return p if isinstance(p, Pattern) else pure(p)


def ctrl(name: str, p) -> Pattern:
    """Wrap each value of p in a one-key control map."""
    return with_value(_lift(p), lambda v: {name: v})


def sound(p) -> Pattern:
    return ctrl("sound", p)


def n(p) -> Pattern:
    return ctrl("n", p)


def note(p) -> Pattern:
    return ctrl("note", p)


def speed(p) -> Pattern:
    return ctrl("speed", p)


def gain(p) -> Pattern:
    return ctrl("gain", p)


def pan(p) -> Pattern:
    return ctrl("pan", p)


def union_op(bias: str) -> Callable[[ControlMap, ControlMap], ControlMap]:
    """Merge two maps; on key clashes the biased side's value wins.

    Key order: left map's keys first, right-only keys appended.
    """
    if bias not in ("left", "right"):
        raise ValueError(f"bias must be left or right, got {bias!r}")

    def merge(a: ControlMap, b: ControlMap) -> ControlMap:
        out = dict(a)
        for k, v in b.items():
            if bias == "right" or k not in out:
                out[k] = v
        return out

    return merge


def _arith_op(name: str) -> Callable[[ControlMap, ControlMap], ControlMap]:
    op = _ARITH[name]

    def merge(a: ControlMap, b: ControlMap) -> ControlMap:
        out = dict(a)
        for k, vb in b.items():
            if k not in out:
                out[k] = vb
                continue
            va = out[k]
            if isinstance(va, str) or isinstance(vb, str):
                del out[k]
                log.warning("dropping %r: arithmetic on text values", k)
                continue
            if name == "div" and vb == 0:
                del out[k]
                log.warning("dropping %r: division by zero", k)
                continue
            out[k] = op(va, vb)
        return out

    return merge


def combine_fn(name: str) -> Callable[[ControlMap, ControlMap], ControlMap]:
    if name in _ARITH:
        return _arith_op(name)
    if name == "union-left":
        return union_op("left")
    if name == "union-right":
        return union_op("right")
    raise ValueError(f"unknown combine {name!r}")


def op_mix(structure: str, combine: str) -> Callable[[Pattern, Pattern], Pattern]:
    """Build a binary pattern operator from a structure bias and a value merge."""
    appf = _STRUCTURES[structure]
    merge = combine_fn(combine)

    def mix(p: Pattern, q: Pattern) -> Pattern:
        return appf(with_value(p, lambda a: lambda b: merge(a, b)), q)

    return mix


# Surface spellings. `#` takes structure from the left and clash values
# from the right; `|op` keeps left structure, `op|` right, `|op|` both.
OPERATORS: dict[str, Callable[[Pattern, Pattern], Pattern]] = {
    "#": op_mix("left", "union-right"),
    "|+": op_mix("left", "add"),
    "+|": op_mix("right", "add"),
    "|+|": op_mix("both", "add"),
    "|-": op_mix("left", "sub"),
    "-|": op_mix("right", "sub"),
    "|-|": op_mix("both", "sub"),
    "|*": op_mix("left", "mul"),
    "*|": op_mix("right", "mul"),
    "|*|": op_mix("both", "mul"),
    "|/": op_mix("left", "div"),
    "/|": op_mix("right", "div"),
    "|/|": op_mix("both", "div"),
}


def jux(f: Callable[[Pattern], Pattern], p: Pattern) -> Pattern:
    """Original pattern hard left, transformed copy hard right."""
    hash_ = OPERATORS["#"]
    return stack([hash_(p, pan(pure(0))), hash_(f(p), pan(pure(1)))])

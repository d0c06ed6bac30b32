"""Brute-force oracle for combining single-cycle step sequences.

Expected values for the applicative golden tables are assembled here by
direct set intersection on a micro-grid, with no pattern machinery
involved: every cell of the 1/L grid (L = lcm of the step counts) is
assigned the pair of steps covering it, and runs of cells with the same
pair merge into one expected fragment.
"""

from fractions import Fraction
from math import lcm


def step_events(values, cycles=1):
    """Events of a single-cycle n-step sequence over `cycles` cycles.

    Returns (whole, active, value) triples with whole == active, spans as
    (begin, end) Fraction pairs.
    """
    n = len(values)
    out = []
    for c in range(cycles):
        for i, v in enumerate(values):
            span = (c + Fraction(i, n), c + Fraction(i + 1, n))
            out.append((span, span, v))
    return out


def app_expected(fvals, vvals, combine, structure):
    """Expected one-cycle output of the app family on two step sequences.

    fvals / vvals: step values of the function-side and value-side
    sequences. combine: binary value operation. structure: which side's
    whole survives ("left", "right", "both").
    """
    n, m = len(fvals), len(vvals)
    grid = lcm(n, m)
    cells = [(k * n // grid, k * m // grid) for k in range(grid)]
    events = []
    run_start = 0
    for k in range(1, grid + 1):
        if k < grid and cells[k] == cells[run_start]:
            continue
        fi, vi = cells[run_start]
        active = (Fraction(run_start, grid), Fraction(k, grid))
        fwhole = (Fraction(fi, n), Fraction(fi + 1, n))
        vwhole = (Fraction(vi, m), Fraction(vi + 1, m))
        if structure == "left":
            whole = fwhole
        elif structure == "right":
            whole = vwhole
        else:
            whole = (max(fwhole[0], vwhole[0]), min(fwhole[1], vwhole[1]))
        events.append((whole, active, combine(fvals[fi], vvals[vi])))
        run_start = k
    return events

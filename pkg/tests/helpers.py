"""Shared test utilities: event triples and observational equality."""

import math
import random
from fractions import Fraction

from riptide import Span


def span_pair(s):
    return None if s is None else (s.begin, s.end)


def triples(events):
    """Events as comparable (whole, active, value) triples."""
    return [(span_pair(e.whole), span_pair(e.active), e.value) for e in events]


def query_triples(p, begin, end):
    return triples(p.query(Span(Fraction(begin), Fraction(end))))


def onsets(p, begin, end):
    return [t for t, e in zip(triples(p.query(Span(begin, end))), p.query(Span(begin, end))) if e.has_onset]


def random_fraction(rng: random.Random, lo: int, hi: int) -> Fraction:
    den = rng.randint(1, 12)
    return Fraction(rng.randint(lo * den, hi * den), den)


def random_subspan(rng: random.Random, lo: int = 0, hi: int = 4) -> Span:
    a = random_fraction(rng, lo, hi)
    b = random_fraction(rng, lo, hi)
    if a > b:
        a, b = b, a
    return Span(a, b)


def split_at_cycle_boundaries(event_triples):
    """Canonical per-cycle view: actives re-split at integer boundaries.

    Wholes and values pass through untouched, so comparing these views
    quotients out only how fragments happen to be fused across cycles.
    """
    out = []
    for whole, (b, e), v in event_triples:
        cut = Fraction(math.floor(b)) + 1
        lo = b
        while cut < e:
            out.append((whole, (lo, cut), v))
            lo = cut
            cut += 1
        out.append((whole, (lo, e), v))
    return sorted(out, key=triple_key)


def triple_key(t):
    """Total deterministic order on (whole, active, value) triples.

    The whole participates (as repr, so None sorts too): stacked branches
    can emit events agreeing on active and value but not whole, and a key
    that ignores wholes would make list comparisons order-sensitive.
    """
    return (t[1][0], t[1][1], repr(t[2]), repr(t[0]))


def assert_observed_equal(p, q, begin=0, end=4, samples=16, seed=0, msg=""):
    """Same sorted events over the full span and over random sub-spans."""

    def observed(pat, s):
        return sorted(triples(pat.query(s)), key=triple_key)

    full = Span(Fraction(begin), Fraction(end))
    assert observed(p, full) == observed(q, full), f"{msg} differ on {full}"
    rng = random.Random(seed)
    for _ in range(samples):
        s = random_subspan(rng, begin, end)
        assert observed(p, s) == observed(q, s), f"{msg} differ on {s}"

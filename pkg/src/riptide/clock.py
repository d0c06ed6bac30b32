"""Scheduling: cycle time to wall time, plus the live loop with hot-swap.

schedule() is the pure core and is what tests exercise; LiveLoop wraps it
in a fixed-rate tick thread. The loop tracks its cycle position as an
exact Fraction carried from tick to tick, so consecutive tick spans abut
exactly and no onset is fired twice or skipped, regardless of float noise
in the wall clock.
"""

from __future__ import annotations

import logging
import os
import threading
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .pattern import Pattern, onsets_only, silence, value_to_json
from .timespan import Span, frac_str

log = logging.getLogger("riptide")

DEFAULT_CPS = 0.5
DEFAULT_TICK = 0.05
DEFAULT_LATENCY = 0.2


@dataclass(frozen=True)
class ClockConfig:
    cps: float = DEFAULT_CPS
    origin: float = 0.0  # wall-clock instant of cycle 0
    tick_interval: float = DEFAULT_TICK
    latency: float = DEFAULT_LATENCY

    def __post_init__(self):
        if self.cps <= 0:
            raise ValueError(f"cps must be positive, got {self.cps}")
        if self.tick_interval <= 0:
            raise ValueError(f"tick_interval must be positive, got {self.tick_interval}")
        if self.latency < 0:
            raise ValueError(f"latency must be non-negative, got {self.latency}")


def config_from_env(**overrides) -> ClockConfig:
    """ClockConfig from RIPTIDE_CPS / RIPTIDE_LATENCY, keyword args winning."""
    values = {}
    if "RIPTIDE_CPS" in os.environ:
        values["cps"] = float(os.environ["RIPTIDE_CPS"])
    if "RIPTIDE_LATENCY" in os.environ:
        values["latency"] = float(os.environ["RIPTIDE_LATENCY"])
    values.update({k: v for k, v in overrides.items() if v is not None})
    return ClockConfig(**values)


@dataclass(frozen=True)
class TimedEvent:
    at_time: float  # wall-clock seconds
    duration: float  # seconds
    controls: dict
    cycle: Fraction  # onset position in cycle time

    def to_json(self) -> dict:
        return {
            "atTime": self.at_time,
            "duration": self.duration,
            "controls": value_to_json(self.controls),
            "cycle": frac_str(self.cycle),
        }


def schedule(p: Pattern, cycle_span: Span, cfg: ClockConfig) -> list[TimedEvent]:
    """Timed onset events for one span of cycle time. Pure and deterministic."""
    out = []
    for e in onsets_only(p.query(cycle_span)):
        onset = e.whole.begin
        out.append(
            TimedEvent(
                at_time=cfg.origin + onset / cfg.cps + cfg.latency,
                duration=(e.whole.end - e.whole.begin) / cfg.cps,
                controls=e.value,
                cycle=onset,
            )
        )
    out.sort(key=lambda t: t.at_time)
    return out


Sink = Callable[[list[TimedEvent]], None]


class Slot:
    """Holder for the live pattern; swaps are atomic and take effect at
    the next tick boundary (each tick reads the slot exactly once)."""

    def __init__(self, pattern: Optional[Pattern] = None):
        self._lock = threading.Lock()
        self._pattern = pattern if pattern is not None else silence()

    def get(self) -> Pattern:
        with self._lock:
            return self._pattern

    def swap(self, pattern: Pattern):
        with self._lock:
            self._pattern = pattern


class LiveLoop:
    """Fixed-rate scheduler loop.

    clock/sleep are injectable so tests can run it against a fake clock.
    Tick deadlines come from the start instant plus a tick count, never
    from accumulated sleeps, so drift stays bounded.
    """

    def __init__(
        self,
        slot: Slot,
        sink: Sink,
        cfg: ClockConfig,
        clock: Callable[[], float] = time.time,
        sleep: Optional[Callable[[float], None]] = None,
    ):
        self.slot = slot
        self.sink = sink
        self.cfg = cfg
        self.clock = clock
        self._sleep = sleep
        self._stop = threading.Event()
        self._lock = threading.Lock()
        self._cps = cfg.cps
        self._pending_cps: Optional[float] = None
        self._playing = True
        self._cycle = Fraction(0)  # next tick's first cycle instant
        self._base_time: Optional[float] = None  # wall time of cycle _cycle
        self._thread: Optional[threading.Thread] = None

    # -- control surface (any thread) --

    def swap(self, pattern: Pattern):
        self.slot.swap(pattern)
        with self._lock:
            self._playing = True

    def set_cps(self, cps: float):
        if cps <= 0:
            raise ValueError(f"cps must be positive, got {cps}")
        with self._lock:
            self._pending_cps = float(cps)

    def set_playing(self, playing: bool):
        with self._lock:
            self._playing = bool(playing)

    def state(self) -> dict:
        with self._lock:
            cps = self._pending_cps if self._pending_cps is not None else self._cps
            return {"cps": cps, "playing": self._playing, "cycle": self._cycle}

    def stop(self):
        self._stop.set()
        if self._thread is not None:
            self._thread.join(timeout=2)

    def start(self):
        self._thread = threading.Thread(target=self.run, name="riptide-clock", daemon=True)
        self._thread.start()

    # -- the loop itself --

    def _wait(self, seconds: float):
        if self._sleep is not None:
            self._sleep(seconds)
        else:
            self._stop.wait(seconds)

    def run(self, max_ticks: Optional[int] = None):
        start = self.clock()
        with self._lock:
            if self._base_time is None:
                self._base_time = start
        tick = self.cfg.tick_interval
        k = 0
        while not self._stop.is_set():
            if max_ticks is not None and k >= max_ticks:
                return
            deadline = start + k * tick
            now = self.clock()
            if deadline > now:
                self._wait(deadline - now)
                if self._stop.is_set():
                    return
            self.tick_once(tick)
            k += 1

    def tick_once(self, tick_seconds: float):
        """One scheduling step; exposed for deterministic tests."""
        with self._lock:
            if self._base_time is None:
                self._base_time = self.clock()
            if self._pending_cps is not None:
                # The (cycle, wall-time) anchor pair is at this tick's
                # boundary; switching the slope here keeps the wall-clock
                # conversion continuous across the tempo change.
                self._cps = self._pending_cps
                self._pending_cps = None
            if not self._playing:
                self._base_time += tick_seconds
                return
            begin = self._cycle
            end = begin + Fraction(tick_seconds) * Fraction(self._cps)
            cps = self._cps
            # Effective cycle-0 instant for this tick's conversion.
            origin = self._base_time - float(begin) / cps
            self._cycle = end
            self._base_time += tick_seconds
        cfg = ClockConfig(
            cps=cps, origin=origin, tick_interval=self.cfg.tick_interval, latency=self.cfg.latency
        )
        try:
            events = schedule(self.slot.get(), Span(begin, end), cfg)
        except Exception:
            log.exception("pattern query failed; skipping tick")
            return
        if not events:
            return
        try:
            self.sink(events)
        except Exception:
            log.exception("event sink failed; continuing")

"""Human-facing output: aligned event tables and timeline figures."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
from matplotlib.patches import Rectangle

from .pattern import Event
from .timespan import Span


def _fmt_time(t: Fraction) -> str:
    return str(t.numerator) if t.denominator == 1 else f"{t.numerator}/{t.denominator}"


def _fmt_span(s) -> str:
    return f"{_fmt_time(s.begin)}..{_fmt_time(s.end)}" if s else "~"


def _fmt_value(v) -> str:
    if isinstance(v, dict):
        return " ".join(f"{k}={x}" for k, x in v.items())
    return str(v)


def format_table(events: list[Event]) -> str:
    """Aligned columns: whole, active, value."""
    rows = [("whole", "active", "value")]
    rows += [(_fmt_span(e.whole), _fmt_span(e.active), _fmt_value(e.value)) for e in events]
    widths = [max(len(r[i]) for r in rows) for i in range(3)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    return "\n".join(lines)


def _lane_key(value) -> str:
    if isinstance(value, dict) and "sound" in value:
        return str(value["sound"])
    return _fmt_value(value)


def render_timeline(events: list[Event], span: Span, path: str, title: str = ""):
    """Draw events as blocks on per-sound lanes and write the figure to path.

    Wholes draw pale, the active fragment solid, onsets as a tick mark.
    """
    lanes: list[str] = []
    for e in events:
        key = _lane_key(e.value)
        if key not in lanes:
            lanes.append(key)
    if not lanes:
        lanes = ["(silence)"]

    colors = plt.get_cmap("tab10")
    height = 0.7
    fig, ax = plt.subplots(figsize=(10, 1.2 + 0.6 * len(lanes)))
    for e in events:
        key = _lane_key(e.value)
        y = lanes.index(key)
        color = colors(y % 10)
        if e.whole is not None:
            ax.add_patch(
                Rectangle(
                    (float(e.whole.begin), y - height / 2),
                    float(e.whole.end - e.whole.begin),
                    height,
                    facecolor=color,
                    alpha=0.25,
                    edgecolor="none",
                )
            )
        ax.add_patch(
            Rectangle(
                (float(e.active.begin), y - height / 2),
                float(e.active.end - e.active.begin) or 0.004,
                height,
                facecolor=color,
                alpha=0.85,
                edgecolor="black",
                linewidth=0.5,
            )
        )
        if e.has_onset:
            ax.plot(
                [float(e.whole.begin)], [y - height / 2 - 0.08],
                marker="^", color=color, markersize=5, clip_on=False,
            )

    begin, end = float(span.begin), float(span.end)
    cycle = int(begin)
    while cycle <= end:
        ax.axvline(cycle, color="grey", linewidth=0.8, alpha=0.6)
        cycle += 1
    ax.set_xlim(begin, end if end > begin else begin + 1)
    ax.set_ylim(-0.6, len(lanes) - 0.4)
    ax.set_yticks(range(len(lanes)), lanes)
    ax.invert_yaxis()
    ax.set_xlabel("cycles")
    if title:
        ax.set_title(title, fontsize=10, fontfamily="monospace")
    fig.tight_layout()
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120)
    plt.close(fig)

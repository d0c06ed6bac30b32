"""riptide: a cycle-based pattern engine for live coding.

Patterns are pure functions from a rational time span to events; this
package layers mini-notation, an expression language, a scheduler and
OSC output on top of that single idea.
"""

from .timespan import Span, frac, frac_str, sam, cycle_pos, next_sam, sect, maybe_sect, span_cycles
from .pattern import (
    Event,
    Pattern,
    silence,
    pure,
    signal,
    sine,
    with_value,
    filter_events,
    stack,
    slowcat,
    fastcat,
    timecat,
    rev,
    iter_,
    onsets_only,
)
from .combine import (
    app,
    app_both,
    app_left,
    app_right,
    bind,
    bind_whole,
    early,
    every,
    fast,
    inner_bind,
    late,
    outer_bind,
    patternify1,
    slow,
    whole_both,
    whole_left,
    whole_right,
)
from .controls import OPERATORS, ctrl, gain, jux, n, note, op_mix, pan, sound, speed, union_op
from .rhythm import (
    Atom,
    Patterning,
    Rhythm,
    Silence,
    StackCycles,
    StackSteps,
    Step,
    Subsequence,
    step_count,
    to_pattern,
    to_sexpr,
)
from .mini import ParseDiagnostic, ParseError, parse_mini, mini_pattern
from .expr import EvalError, compile_expr, eval_expr, parse_expr
from .clock import ClockConfig, LiveLoop, Slot, TimedEvent, config_from_env, schedule

__version__ = "0.1.0"

__all__ = [
    "Span", "frac", "frac_str", "sam", "cycle_pos", "next_sam", "sect", "maybe_sect",
    "span_cycles",
    "Event", "Pattern", "silence", "pure", "signal", "sine", "with_value", "filter_events",
    "stack", "fast", "slow", "early", "late", "slowcat", "fastcat", "timecat", "rev",
    "every", "iter_", "onsets_only",
    "app", "app_both", "app_left", "app_right", "bind", "bind_whole", "inner_bind",
    "outer_bind", "patternify1", "whole_both", "whole_left", "whole_right",
    "OPERATORS", "ctrl", "gain", "jux", "n", "note", "op_mix", "pan", "sound", "speed",
    "union_op",
    "Atom", "Patterning", "Rhythm", "Silence", "StackCycles", "StackSteps", "Step",
    "Subsequence", "step_count", "to_pattern", "to_sexpr",
    "ParseDiagnostic", "ParseError", "parse_mini", "mini_pattern",
    "EvalError", "compile_expr", "eval_expr", "parse_expr",
    "ClockConfig", "LiveLoop", "Slot", "TimedEvent", "config_from_env", "schedule",
    "__version__",
]

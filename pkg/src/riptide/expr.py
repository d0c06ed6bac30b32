"""The pipeline expression language used by the CLI and the REPL.

Grammar:

    expr  := call (INFIX call)* ;
    call  := NAME arg* | arg ;
    arg   := NUMBER | STRING | NAME | '(' expr ')' ;
    INFIX := '|>' | '#' | '|+|' | '|+' | '+|' | '|*|' | '|*' | '*|' ;

All infix operators share one precedence level and associate left; they
bind looser than application. A double-quoted STRING is mini-notation,
parsed in place so its diagnostics point into the enclosing source. A
bare NAME in argument position is a zero-argument reference (`jux rev ...`).

Evaluation is typed: patterns carry a kind (control, text or number) and
the top level must come out as a control pattern. A call given all but
its final pattern argument evaluates to a transform, usable after `|>`
or as an argument to jux/every.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional

from . import pattern as P
from .combine import early as _pearly, every as _pevery, fast as _pfast, late as _plate, slow as _pslow
from .controls import OPERATORS, ctrl, jux
from .mini import ParseDiagnostic, ParseError, parse_mini
from .pattern import Pattern, with_value
from .rhythm import Rhythm, to_pattern

Pos = tuple[int, int, int]  # line, column, offset


class EvalError(Exception):
    def __init__(self, diagnostic: ParseDiagnostic):
        super().__init__(str(diagnostic))
        self.diagnostic = diagnostic


def _eval_fail(message: str, pos: Pos):
    raise EvalError(ParseDiagnostic(message, pos[0], pos[1], pos[2]))


# --- AST ---------------------------------------------------------------

@dataclass(frozen=True)
class NumberLit:
    value: Fraction
    pos: Pos = field(compare=False, default=(1, 1, 0))


@dataclass(frozen=True)
class MiniPattern:
    src: str
    rhythm: Rhythm = field(compare=False, default=None)
    pos: Pos = field(compare=False, default=(1, 1, 0))


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple
    pos: Pos = field(compare=False, default=(1, 1, 0))

    def __init__(self, name, args=(), pos=(1, 1, 0)):
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "args", tuple(args))
        object.__setattr__(self, "pos", pos)


@dataclass(frozen=True)
class Pipe:
    subject: Any
    transform: Any
    pos: Pos = field(compare=False, default=(1, 1, 0))


# --- Lexer -------------------------------------------------------------

def _is_alpha(c: str) -> bool:
    return "a" <= c <= "z" or "A" <= c <= "Z"


def _is_digit(c: str) -> bool:
    return "0" <= c <= "9"


_OPS = ("|+|", "|*|", "|>", "|+", "+|", "|*", "*|", "#")


@dataclass(frozen=True)
class _Tok:
    kind: str  # name | number | string | op | ( | ) | eof
    text: str
    pos: Pos


def _line_col(src: str, offset: int) -> tuple[int, int]:
    line = src.count("\n", 0, offset) + 1
    nl = src.rfind("\n", 0, offset)
    return line, offset - nl if nl >= 0 else offset + 1


def _fail(message: str, pos: Pos):
    raise ParseError(ParseDiagnostic(message, pos[0], pos[1], pos[2]))


def _lex(src: str) -> list[_Tok]:
    toks = []
    i, n = 0, len(src)
    while i < n:
        c = src[i]
        if c in " \t\r\n":
            i += 1
            continue
        pos = (*_line_col(src, i), i)
        if c == '"':
            j = src.find('"', i + 1)
            if j < 0:
                _fail("unterminated string", pos)
            toks.append(_Tok("string", src[i + 1 : j], pos))
            i = j + 1
            continue
        for op in _OPS:
            if src.startswith(op, i):
                toks.append(_Tok("op", op, pos))
                i += len(op)
                break
        else:
            if c in "()":
                toks.append(_Tok(c, c, pos))
                i += 1
            elif _is_alpha(c) or c == "_":
                j = i + 1
                while j < n and (_is_alpha(src[j]) or _is_digit(src[j]) or src[j] == "_"):
                    j += 1
                toks.append(_Tok("name", src[i:j], pos))
                i = j
            elif _is_digit(c) or (c == "-" and i + 1 < n and _is_digit(src[i + 1])):
                j = i + 1
                while j < n and _is_digit(src[j]):
                    j += 1
                if j + 1 < n and src[j] == "." and _is_digit(src[j + 1]):
                    j += 1
                    while j < n and _is_digit(src[j]):
                        j += 1
                if j < n and src[j] == "%" and j + 1 < n and _is_digit(src[j + 1]):
                    j += 2
                    while j < n and _is_digit(src[j]):
                        j += 1
                toks.append(_Tok("number", src[i:j], pos))
                i = j
            else:
                _fail(f"unexpected character {c!r}", pos)
    toks.append(_Tok("eof", "", (*_line_col(src, n), n)))
    return toks


# --- Parser ------------------------------------------------------------

_ARG_STARTERS = {"name", "number", "string", "("}


class _ExprParser:
    def __init__(self, src: str):
        self.src = src
        self.toks = _lex(src)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def expr(self):
        left = self.call()
        while self.peek().kind == "op":
            op = self.take()
            right = self.call()
            if op.text == "|>":
                left = Pipe(left, right, op.pos)
            else:
                left = Call(op.text, (left, right), op.pos)
        return left

    def call(self):
        t = self.peek()
        if t.kind == "name":
            self.take()
            args = []
            while self.peek().kind in _ARG_STARTERS:
                args.append(self.arg())
            return Call(t.text, args, t.pos)
        return self.arg()

    def arg(self):
        t = self.take()
        if t.kind == "number":
            return NumberLit(_parse_number(t), t.pos)
        if t.kind == "string":
            return MiniPattern(t.text, self._mini(t), t.pos)
        if t.kind == "name":
            return Call(t.text, (), t.pos)
        if t.kind == "(":
            inner = self.expr()
            nxt = self.peek()
            if nxt.kind != ")":
                if nxt.kind == "eof":
                    _fail("unclosed '('", t.pos)
                _fail(f"expected ')', found '{nxt.text}'", nxt.pos)
            self.take()
            return inner
        what = "end of input" if t.kind == "eof" else f"'{t.text}'"
        _fail(f"unexpected {what}", t.pos)

    def _mini(self, t: _Tok) -> Rhythm:
        try:
            return parse_mini(t.text)
        except ParseError as e:
            # Re-anchor the inner diagnostic to the enclosing source.
            offset = t.pos[2] + 1 + e.diagnostic.offset
            line, col = _line_col(self.src, min(offset, len(self.src)))
            raise ParseError(ParseDiagnostic(e.diagnostic.message, line, col, offset)) from None


def _parse_number(t: _Tok) -> Fraction:
    text = t.text
    if "%" in text:
        num, den = text.split("%", 1)
        return Fraction(num) / Fraction(den)
    return Fraction(text)


def parse_expr(src: str):
    """Parse an expression; raises ParseError on the first problem."""
    p = _ExprParser(src)
    ast = p.expr()
    t = p.peek()
    if t.kind != "eof":
        _fail(f"unexpected '{t.text}'", t.pos)
    return ast


# --- Evaluation --------------------------------------------------------

@dataclass(frozen=True)
class _Pat:
    kind: str  # control | text | number
    pattern: Pattern


@dataclass(frozen=True)
class _Xform:
    label: str
    fn: Callable[[_Pat], _Pat]


def _as_number(text: str, pos: Pos):
    """Interpret a mini atom as an int or float for control values."""
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        raise EvalError(ParseDiagnostic(f"not a number: {text!r}", *pos)) from None


def _as_fraction(text: str, pos: Pos) -> Fraction:
    try:
        return Fraction(text)
    except ValueError:
        raise EvalError(ParseDiagnostic(f"not a number: {text!r}", *pos)) from None


def _num_value(x: Fraction):
    return int(x) if x.denominator == 1 else float(x)




def _timed(name: str, lifted) -> tuple:
    def impl(factor, pat: _Pat) -> _Pat:
        return _Pat(pat.kind, lifted(factor, pat.pattern))

    return (name, ("factor", "pat"), impl)


def _control(name: str, key: str, numeric: bool) -> tuple:
    def impl(p: _Pat) -> _Pat:
        return _Pat("control", ctrl(key, p.pattern))

    return (name, ("numpat" if numeric else "textpat",), impl)


def _rev_impl(pat: _Pat) -> _Pat:
    return _Pat(pat.kind, P.rev(pat.pattern))


def _iter_impl(count, pat: _Pat) -> _Pat:
    return _Pat(pat.kind, P.iter_(count, pat.pattern))


def _every_impl(count, xf: _Xform, pat: _Pat) -> _Pat:
    def f(p: Pattern) -> Pattern:
        out = xf.fn(_Pat(pat.kind, p))
        return out.pattern

    return _Pat(pat.kind, _pevery(count, f, pat.pattern))


def _jux_impl(xf: _Xform, pat: _Pat) -> _Pat:
    def f(p: Pattern) -> Pattern:
        out = xf.fn(_Pat("control", p))
        if out.kind != "control":
            raise EvalError(ParseDiagnostic("jux transform must keep a control pattern", 1, 1, 0))
        return out.pattern

    return _Pat("control", jux(f, pat.pattern))


_REGISTRY: dict[str, tuple[tuple, Callable]] = {}

for _entry in (
    _control("s", "sound", False),
    _control("sound", "sound", False),
    _control("n", "n", True),
    _control("note", "note", True),
    _control("speed", "speed", True),
    _control("gain", "gain", True),
    _control("pan", "pan", True),
    _timed("fast", _pfast),
    _timed("slow", _pslow),
    _timed("early", _pearly),
    _timed("late", _plate),
    ("rev", ("pat",), _rev_impl),
    ("iter", ("count", "pat"), _iter_impl),
    ("every", ("countpat", "xform", "pat"), _every_impl),
    ("jux", ("xform", "ctrlpat"), _jux_impl),
):
    _REGISTRY[_entry[0]] = (_entry[1], _entry[2])

_PATTERNISH = {"pat", "ctrlpat", "textpat", "numpat"}

_KIND_LABEL = {"control": "a control pattern", "text": "a text pattern", "number": "a number pattern"}


def _describe_val(v) -> str:
    if isinstance(v, _Pat):
        return _KIND_LABEL[v.kind]
    if isinstance(v, _Xform):
        return f"a transform ({v.label})"
    return "a number"


def _coerce(name: str, param: str, v, pos: Pos):
    if param == "pat":
        if isinstance(v, _Pat):
            return v
        _eval_fail(f"{name} expects a pattern, got {_describe_val(v)}", pos)
    if param == "ctrlpat":
        if isinstance(v, _Pat) and v.kind == "control":
            return v
        _eval_fail(f"{name} expects a control pattern, got {_describe_val(v)}", pos)
    if param == "textpat":
        if isinstance(v, _Pat) and v.kind == "text":
            return v
        _eval_fail(f"{name} expects a text pattern, got {_describe_val(v)}", pos)
    if param == "numpat":
        if isinstance(v, Fraction):
            return _Pat("number", P.pure(_num_value(v)))
        if isinstance(v, _Pat) and v.kind == "number":
            return v
        if isinstance(v, _Pat) and v.kind == "text":
            return _Pat("number", with_value(v.pattern, lambda t, p=pos: _as_number(t, p)))
        _eval_fail(f"{name} expects a number pattern, got {_describe_val(v)}", pos)
    if param == "factor":
        if isinstance(v, Fraction):
            return v
        if isinstance(v, _Pat) and v.kind == "text":
            return with_value(v.pattern, lambda t, p=pos: _as_fraction(t, p))
        if isinstance(v, _Pat) and v.kind == "number":
            return v.pattern
        _eval_fail(f"{name} expects a number, got {_describe_val(v)}", pos)
    if param == "count":
        if isinstance(v, Fraction) and v.denominator == 1:
            return int(v)
        _eval_fail(f"{name} expects a whole number, got {_describe_val(v)}", pos)
    if param == "countpat":
        if isinstance(v, Fraction) and v.denominator == 1:
            return int(v)
        if isinstance(v, _Pat) and v.kind == "text":
            return with_value(v.pattern, lambda t, p=pos: _as_fraction(t, p))
        if isinstance(v, _Pat) and v.kind == "number":
            return v.pattern
        _eval_fail(f"{name} expects a whole number, got {_describe_val(v)}", pos)
    if param == "xform":
        if isinstance(v, _Xform):
            return v
        _eval_fail(f"{name} expects a transform, got {_describe_val(v)}", pos)
    raise AssertionError(param)


def _eval(node):
    if isinstance(node, NumberLit):
        return node.value
    if isinstance(node, MiniPattern):
        rhythm = node.rhythm if node.rhythm is not None else parse_mini(node.src)
        return _Pat("text", to_pattern(rhythm))
    if isinstance(node, Pipe):
        subject = _eval(node.subject)
        xf = _eval(node.transform)
        if not isinstance(xf, _Xform):
            _eval_fail(f"right of |> must be a transform, got {_describe_val(xf)}", node.pos)
        if not isinstance(subject, _Pat):
            _eval_fail(f"left of |> must be a pattern, got {_describe_val(subject)}", node.pos)
        return xf.fn(subject)
    if isinstance(node, Call):
        return _eval_call(node)
    raise AssertionError(node)


def _eval_call(node: Call):
    name, pos = node.name, node.pos
    if name == "stack":
        return _eval_stack(node)
    if name in OPERATORS:
        if len(node.args) != 2:
            _eval_fail(f"{name} expects 2 arguments, got {len(node.args)}", pos)
        a = _coerce(name, "ctrlpat", _eval(node.args[0]), _arg_pos(node.args[0], pos))
        b = _coerce(name, "ctrlpat", _eval(node.args[1]), _arg_pos(node.args[1], pos))
        return _Pat("control", OPERATORS[name](a.pattern, b.pattern))
    entry = _REGISTRY.get(name)
    if entry is None:
        _eval_fail(f"unknown function '{name}'", pos)
    params, impl = entry
    got = len(node.args)
    if got == len(params):
        vals = [
            _coerce(name, p, _eval(a), _arg_pos(a, pos))
            for p, a in zip(params, node.args)
        ]
        try:
            return impl(*vals)
        except ValueError as e:
            _eval_fail(str(e), pos)
    if got == len(params) - 1 and params[-1] in _PATTERNISH:
        head = [
            _coerce(name, p, _eval(a), _arg_pos(a, pos))
            for p, a in zip(params, node.args)
        ]
        last = params[-1]

        def complete(pat: _Pat, _head=head, _last=last) -> _Pat:
            final = _coerce(name, _last, pat, pos)
            try:
                return impl(*_head, final)
            except ValueError as e:
                _eval_fail(str(e), pos)

        label = name if not node.args else f"{name} ..."
        return _Xform(label, complete)
    _eval_fail(f"{name} expects {len(params)} arguments, got {got}", pos)


def _eval_stack(node: Call):
    if not node.args:
        _eval_fail("stack expects at least 1 argument, got 0", node.pos)
    vals = [_coerce("stack", "pat", _eval(a), _arg_pos(a, node.pos)) for a in node.args]
    kinds = {v.kind for v in vals}
    if len(kinds) > 1:
        _eval_fail("stack arguments must all be the same kind of pattern", node.pos)
    return _Pat(vals[0].kind, P.stack([v.pattern for v in vals]))


def _arg_pos(arg, fallback: Pos) -> Pos:
    return getattr(arg, "pos", fallback)


def eval_expr(ast) -> Pattern:
    """Evaluate to a control pattern; raises EvalError otherwise."""
    v = _eval(ast)
    if isinstance(v, _Pat) and v.kind == "control":
        return v.pattern
    pos = _arg_pos(ast, (1, 1, 0))
    _eval_fail(f"expression must produce a control pattern, got {_describe_val(v)}", pos)


def compile_expr(src: str) -> Pattern:
    """parse_expr then eval_expr; raises ParseError or EvalError."""
    return eval_expr(parse_expr(src))

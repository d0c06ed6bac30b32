"""Mini-notation parser: text to Rhythm.

Grammar (tokens separated by spaces, brackets self-delimiting):

    sequence  := lane (',' lane)* ;
    lane      := step+ ;
    step      := term postfix* | '_' ;
    term      := WORD | NUMBER | '~' | '[' sequence ']'
               | '<' lane '>' | '{' sequence '}' percent? ;
    postfix   := '*' RATIONAL | '/' RATIONAL | '!' INT | '@' RATIONAL ;
    percent   := '%' INT ;
    WORD      := [a-zA-Z][a-zA-Z0-9'#._-]* ;
    NUMBER    := '-'? digits ('.' digits)? ;
    RATIONAL  := NUMBER ('%' digits)? ;

Numbers in atom position stay text at this layer; numeric meaning is the
caller's business. All failures raise ParseError carrying a positioned
ParseDiagnostic; the first error wins.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import partial

from . import pattern as P
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
)

# Nesting beyond this is nobody's live set; it keeps degenerate inputs
# from hitting the interpreter's recursion limit.
MAX_DEPTH = 64

_PUNCT = "[]<>{},~_*/!@%"


def _is_alpha(c: str) -> bool:
    return "a" <= c <= "z" or "A" <= c <= "Z"


def _is_digit(c: str) -> bool:
    return "0" <= c <= "9"
_WORD_CONT = "'#._-"


@dataclass(frozen=True)
class ParseDiagnostic:
    message: str
    line: int
    column: int
    offset: int

    def __str__(self):
        return f"line {self.line} col {self.column}: {self.message}"

    def to_json(self) -> dict:
        return {
            "message": self.message,
            "line": self.line,
            "column": self.column,
            "offset": self.offset,
        }


class ParseError(Exception):
    def __init__(self, diagnostic: ParseDiagnostic):
        super().__init__(str(diagnostic))
        self.diagnostic = diagnostic


@dataclass(frozen=True)
class _Tok:
    kind: str  # "word" | "number" | "eof" | a punctuation char
    text: str
    offset: int
    line: int
    column: int


def _fail(message: str, tok: _Tok):
    raise ParseError(ParseDiagnostic(message, tok.line, tok.column, tok.offset))


def _tokenize(src: str) -> list[_Tok]:
    toks = []
    i, line, col = 0, 1, 1
    n = len(src)
    while i < n:
        c = src[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        start, sline, scol = i, line, col
        if _is_alpha(c):
            i += 1
            while i < n and (_is_alpha(src[i]) or _is_digit(src[i]) or src[i] in _WORD_CONT):
                i += 1
            toks.append(_Tok("word", src[start:i], start, sline, scol))
        elif _is_digit(c) or (c == "-" and i + 1 < n and _is_digit(src[i + 1])):
            i += 1
            while i < n and _is_digit(src[i]):
                i += 1
            if i + 1 < n and src[i] == "." and _is_digit(src[i + 1]):
                i += 1
                while i < n and _is_digit(src[i]):
                    i += 1
            toks.append(_Tok("number", src[start:i], start, sline, scol))
        elif c in _PUNCT:
            i += 1
            toks.append(_Tok(c, c, start, sline, scol))
        else:
            raise ParseError(ParseDiagnostic(f"unexpected character {c!r}", sline, scol, start))
        col += i - start
    toks.append(_Tok("eof", "", n, line, col))
    return toks


_LANE_ENDERS = {",", "]", "}", ">", "eof"}


class _Parser:
    def __init__(self, tokens: list[_Tok]):
        self.toks = tokens
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def lanes(self, depth: int) -> list[list[Step]]:
        out = [self.lane(depth)]
        while self.peek().kind == ",":
            self.take()
            out.append(self.lane(depth))
        return out

    def lane(self, depth: int) -> list[Step]:
        steps: list[Step] = []
        while self.peek().kind not in _LANE_ENDERS:
            t = self.peek()
            if t.kind == "_":
                self.take()
                if not steps:
                    _fail("'_' has no step to extend", t)
                prev = steps[-1]
                steps[-1] = Step(prev.weight + 1, prev.rhythm)
            else:
                steps.extend(self.step(depth))
        return steps

    def step(self, depth: int) -> list[Step]:
        rhythm = self.term(depth)
        weight = Fraction(1)
        count = 1
        while True:
            t = self.peek()
            if t.kind == "*":
                self.take()
                r = self.rational(t, "*")
                rhythm = Patterning(partial(P.fast, r), rhythm, f"fast {_fmt(r)}")
            elif t.kind == "/":
                self.take()
                r = self.rational(t, "/")
                rhythm = Patterning(partial(P.slow, r), rhythm, f"slow {_fmt(r)}")
            elif t.kind == "@":
                self.take()
                weight = self.rational(t, "@")
            elif t.kind == "!":
                self.take()
                count = self.integer(t, "!")
            else:
                break
        return [Step(weight, rhythm)] * count

    def term(self, depth: int) -> Rhythm:
        t = self.take()
        if t.kind in ("word", "number"):
            return Atom(t.text)
        if t.kind == "~":
            return Silence()
        if depth >= MAX_DEPTH and t.kind in "[<{":
            _fail("nesting too deep", t)
        if t.kind == "[":
            lanes = self.lanes(depth + 1)
            self.close("]", t)
            return _cyclewise(lanes)
        if t.kind == "<":
            steps = self.lane(depth + 1)
            self.close(">", t)
            if not steps:
                _fail("empty '<>'", t)
            sub = Subsequence(steps)
            n = step_count(sub)
            return Patterning(partial(P.slow, n), sub, f"alt {_fmt(n)}")
        if t.kind == "{":
            lanes = self.lanes(depth + 1)
            self.close("}", t)
            per_cycle = None
            if self.peek().kind == "%":
                ptok = self.take()
                per_cycle = Fraction(self.integer(ptok, "%"))
            subs = [Subsequence(l) for l in lanes]
            if per_cycle is None:
                per_cycle = step_count(subs[0])
                if per_cycle == 0:
                    _fail("empty '{}'", t)
            return StackSteps(per_cycle, subs)
        _fail(f"unexpected {_describe(t)}", t)

    def close(self, closer: str, opener: _Tok):
        t = self.peek()
        if t.kind == closer:
            self.take()
            return
        if t.kind == "eof":
            _fail(f"unclosed '{opener.kind}'", opener)
        _fail(f"expected '{closer}', found {_describe(t)}", t)

    def rational(self, op: _Tok, what: str) -> Fraction:
        t = self.peek()
        if t.kind != "number":
            _fail(f"'{what}' needs a number", op)
        self.take()
        value = Fraction(t.text)
        if self.peek().kind == "%":
            self.take()
            d = self.peek()
            if d.kind != "number" or not d.text.isdigit() or int(d.text) == 0:
                _fail("'%' needs a positive integer", d if d.kind != "eof" else op)
            self.take()
            value = value / int(d.text)
        if value <= 0:
            _fail(f"'{what}' needs a positive number, got {t.text}", t)
        return value

    def integer(self, op: _Tok, what: str) -> int:
        t = self.peek()
        if t.kind != "number" or not t.text.isdigit() or int(t.text) == 0:
            _fail(f"'{what}' needs a positive integer", op)
        self.take()
        return int(t.text)


def _cyclewise(lanes: list[list[Step]]) -> Rhythm:
    if len(lanes) == 1:
        return Subsequence(lanes[0])
    return StackCycles([Subsequence(l) for l in lanes])


def _describe(t: _Tok) -> str:
    return "end of input" if t.kind == "eof" else f"'{t.text}'"


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_mini(src: str) -> Rhythm:
    """Parse mini-notation; raises ParseError on the first problem."""
    p = _Parser(_tokenize(src))
    lanes = p.lanes(0)
    t = p.peek()
    if t.kind != "eof":
        _fail(f"unexpected {_describe(t)}", t)
    return _cyclewise(lanes)


def mini_pattern(src: str) -> P.Pattern:
    """Parse and compile in one go."""
    from .rhythm import to_pattern

    return to_pattern(parse_mini(src))

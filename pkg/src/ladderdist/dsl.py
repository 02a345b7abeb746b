"""Text formats: universe declaration files and multisegment literals.

Universe files::

    tower rho2 { degree 2; tau self; dual self; gamma 1; }
    tower S    { degree 2; tau -> S2; dual self; chi -> S_chi; }

``#`` starts a comment that runs to the end of the line.  Multisegment
literals are sums ``Delta(id,a,b) + Delta(id,a,b) + ...`` with rationals
written ``p/q``; the empty string is the empty multisegment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import ParseError, SegmentError, UniverseError
from .multisegment import Multisegment
from .segments import Segment, format_rational
from .universe import Universe, UniverseBuilder

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<arrow>->)
  | (?P<rat>[-+]?\d+(?:/\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_.']*)
  | (?P<punct>[{};(),+])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Cursor:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, msg: str, tok: Optional[Token] = None) -> ParseError:
        tok = tok or self.tok
        shown = tok.text or "end of input"
        return ParseError(f"{msg} (found {shown!r})", tok.line, tok.column)

    def next(self) -> Token:
        tok = self.tok
        self.i += 1
        return tok

    def accept(self, kind: str, text: Optional[str] = None) -> Optional[Token]:
        tok = self.tok
        if tok.kind == kind and (text is None or tok.text == text):
            self.i += 1
            return tok
        return None

    def expect(self, kind: str, text: Optional[str] = None, what: Optional[str] = None) -> Token:
        tok = self.accept(kind, text)
        if tok is None:
            raise self.error(f"expected {what or text or kind}")
        return tok


def parse_rational(text: str) -> Fraction:
    m = re.fullmatch(r"[-+]?\d+(?:/\d+)?", text.strip())
    if not m:
        raise ParseError(f"not a rational: {text!r}")
    try:
        return Fraction(text.strip())
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {text!r}") from None


# -- universe ----------------------------------------------------------------

_FIELDS = ("degree", "tau", "dual", "chi", "gamma")


def parse_universe(text: str) -> Universe:
    """Parse and validate a universe file.

    Syntax problems raise ``ParseError`` with a line and column; semantic
    problems (dangling partners, wrong gamma, ...) raise ``UniverseError``.
    """
    cur = _Cursor(text)
    builder = UniverseBuilder()
    while cur.tok.kind != "eof":
        head = cur.expect("ident", "tower")
        name = cur.expect("ident", what="tower identifier")
        cur.expect("punct", "{")
        seen: dict[str, object] = {}
        while not cur.accept("punct", "}"):
            key = cur.expect("ident", what="field name")
            if key.text not in _FIELDS:
                raise cur.error(f"unknown field {key.text!r}", key)
            if key.text in seen:
                raise cur.error(f"field {key.text!r} given twice", key)
            if key.text in ("degree", "gamma"):
                val = cur.expect("rat", what="integer")
                if "/" in val.text:
                    raise cur.error("expected an integer", val)
                n = int(val.text)
                if key.text == "gamma" and n not in (0, 1):
                    raise cur.error("gamma must be 0 or 1", val)
                seen[key.text] = n
            elif key.text == "chi":
                cur.expect("arrow", what="'->'")
                seen["chi"] = cur.expect("ident", what="tower identifier").text
            else:
                if cur.accept("ident", "self"):
                    seen[key.text] = None
                else:
                    cur.expect("arrow", what="'self' or '->'")
                    target = cur.expect("ident", what="tower identifier").text
                    seen[key.text] = None if target == name.text else target
            cur.expect("punct", ";")
        if "degree" not in seen:
            raise ParseError(f"tower {name.text!r} has no degree", head.line, head.column)
        try:
            builder.declare_tower(name.text, seen["degree"], seen.get("tau"), seen.get("dual"),
                                  seen.get("chi"), seen.get("gamma"))
        except UniverseError as e:
            raise UniverseError(f"{head.line}:{head.column}: {e}") from None
    return builder.build()


def format_universe(universe: Universe) -> str:
    """Text form of the declared towers; synthesized chi partners are left implicit."""
    lines = []
    for t in universe.declared:
        parts = [f"degree {t.degree}"]
        parts.append("tau self" if t.tau_id == t.id else f"tau -> {t.tau_id}")
        parts.append("dual self" if t.dual_id == t.id else f"dual -> {t.dual_id}")
        if not t.chi.synthesized:
            parts.append(f"chi -> {t.chi_id}")
        if t.base_gamma is not None:
            parts.append(f"gamma {t.base_gamma}")
        lines.append(f"tower {t.id} {{ " + "; ".join(parts) + "; }")
    return "\n".join(lines) + ("\n" if lines else "")


# -- multisegments -----------------------------------------------------------

def _parse_delta(cur: _Cursor, universe: Universe) -> Segment:
    head = cur.expect("ident", "Delta", what="'Delta'")
    cur.expect("punct", "(")
    tid = cur.expect("ident", what="tower identifier")
    cur.expect("punct", ",")
    a = cur.expect("rat", what="rational")
    cur.expect("punct", ",")
    b = cur.expect("rat", what="rational")
    cur.expect("punct", ")")
    if tid.text not in universe:
        raise ParseError(f"unknown tower {tid.text!r}", tid.line, tid.column)
    try:
        return Segment(universe[tid.text], parse_rational(a.text), parse_rational(b.text))
    except SegmentError as e:
        raise ParseError(str(e), head.line, head.column) from None


def parse_segment(text: str, universe: Universe) -> Segment:
    cur = _Cursor(text)
    seg = _parse_delta(cur, universe)
    cur.expect("eof", what="end of input")
    return seg


def parse_multisegment(text: str, universe: Universe) -> Multisegment:
    cur = _Cursor(text)
    segs = []
    if cur.tok.kind != "eof":
        segs.append(_parse_delta(cur, universe))
        while cur.accept("punct", "+"):
            segs.append(_parse_delta(cur, universe))
    cur.expect("eof", what="'+' or end of input")
    return Multisegment(segs)


def format_segment(seg: Segment) -> str:
    return f"Delta({seg.tower.id},{format_rational(seg.a)},{format_rational(seg.b)})"


def format_multisegment(ms: Multisegment) -> str:
    return " + ".join(format_segment(s) for s in ms)

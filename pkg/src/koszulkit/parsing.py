"""Text format for rings, ideals and module presentations.

    ring a,b,c,d;
    ideal a^2, b^2, a*d - 2*b*c;
    module gens 0,1;          # optional: generator degrees
    rel a, b^2;               # one relation column per statement
    extra c*d;                # optional: generators of a further quotient

``#`` starts a comment.  Coefficients are integers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .errors import NonHomogeneous, NotQuadratic, ParseError, UnknownVariable, UsageError
from .gb import MonomialOrder, MultiPolynomial
from .linalg import QQ, Field
from .monomial import MonomialIdeal

NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
KEYWORDS = ("ring", "ideal", "module", "rel", "extra")


@dataclass
class ParsedInput:
    variables: tuple
    ideal: list = field(default_factory=list)
    module_degrees: Optional[list] = None
    relations: list = field(default_factory=list)
    extra: list = field(default_factory=list)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ParsedInput):
            return NotImplemented
        return (
            self.variables == other.variables
            and [p.terms for p in self.ideal] == [p.terms for p in other.ideal]
            and self.module_degrees == other.module_degrees
            and [[p.terms for p in col] for col in self.relations]
            == [[p.terms for p in col] for col in other.relations]
            and [p.terms for p in self.extra] == [p.terms for p in other.extra]
        )

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def monomial_ideal(self) -> MonomialIdeal:
        gens = []
        for p in self.ideal:
            if len(p.terms) != 1:
                raise NotQuadratic(f"{p.to_string(self.variables)} is not a monomial")
            gens.append(next(iter(p.terms)))
        return MonomialIdeal(self.variables, tuple(gens))

    def quotient_ring(self, field: Field = QQ, order: Optional[MonomialOrder] = None):
        from .resolution import QuotientRing

        return QuotientRing(self.variables, [_convert(p, field) for p in self.ideal], field, order)

    def module(self, ring):
        """The module described by the input, defaulting to R/(extra) or the residue field."""
        from .resolution import GradedModulePresentation

        K = ring.field
        if self.module_degrees is not None:
            cols = [[_convert(p, K) for p in col] for col in self.relations]
            return GradedModulePresentation(ring, list(self.module_degrees), cols)
        if self.extra:
            return GradedModulePresentation.cyclic(ring, [_convert(p, K) for p in self.extra])
        return GradedModulePresentation.residue_field(ring)

    def extra_polynomials(self, field: Field = QQ) -> list:
        return [_convert(p, field) for p in self.extra]


def _convert(p: MultiPolynomial, K: Field) -> MultiPolynomial:
    return MultiPolynomial(p.nvars, dict(p.terms), K) if p.field != K else p


class _Cursor:
    def __init__(self, text: str, start: int, line_starts: list[int]):
        self.text = text
        self.pos = start
        self.line_starts = line_starts

    def where(self, pos: Optional[int] = None) -> tuple[int, int]:
        pos = self.pos if pos is None else pos
        line = 0
        for k, s in enumerate(self.line_starts):
            if s <= pos:
                line = k
        return line + 1, pos - self.line_starts[line] + 1

    def fail(self, message: str, pos: Optional[int] = None, cls=ParseError):
        line, col = self.where(pos)
        raise cls(message, line, col)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t\r\n":
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> None:
        if self.peek() != ch:
            found = self.peek() or "end of input"
            self.fail(f"expected {ch!r}, found {found!r}")
        self.pos += 1

    def name(self) -> str:
        self.skip()
        m = NAME.match(self.text, self.pos)
        if not m:
            found = self.peek() or "end of input"
            self.fail(f"expected a name, found {found!r}")
        self.pos = m.end()
        return m.group()

    def integer(self) -> int:
        self.skip()
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            found = self.peek() or "end of input"
            self.fail(f"expected an integer, found {found!r}")
        self.pos = m.end()
        return int(m.group())


def _strip_comments(text: str) -> str:
    # keep offsets intact so error positions stay right
    return re.sub(r"#[^\n]*", lambda m: " " * len(m.group()), text)


def parse_input(text: str) -> ParsedInput:
    text = _strip_comments(text)
    starts = [0] + [m.end() for m in re.finditer(r"\n", text)]
    cur = _Cursor(text, 0, starts)
    variables: Optional[tuple] = None
    out: Optional[ParsedInput] = None
    while cur.peek():
        kw_pos = cur.pos
        kw = cur.name()
        if kw not in KEYWORDS:
            cur.fail(f"unknown statement {kw!r}", kw_pos)
        if kw == "ring":
            if variables is not None:
                cur.fail("ring declared twice", kw_pos)
            names = [cur.name()]
            while cur.peek() == ",":
                cur.take(",")
                names.append(cur.name())
            if len(set(names)) != len(names):
                cur.fail("repeated variable name", kw_pos)
            variables = tuple(names)
            out = ParsedInput(variables)
            cur.take(";")
            continue
        if out is None:
            cur.fail("the ring must be declared first", kw_pos)
        if kw == "module":
            sub_pos = cur.pos
            if cur.name() != "gens":
                cur.fail("expected 'gens' after 'module'", sub_pos)
            if out.module_degrees is not None:
                cur.fail("module declared twice", kw_pos)
            degs = [cur.integer()]
            while cur.peek() == ",":
                cur.take(",")
                degs.append(cur.integer())
            out.module_degrees = degs
            cur.take(";")
            continue
        polys = _poly_list(cur, out.variables)
        cur.take(";")
        if kw == "rel":
            if out.module_degrees is None:
                cur.fail("'rel' needs a preceding 'module gens' statement", kw_pos)
            if len(polys) != len(out.module_degrees):
                cur.fail(f"relation has {len(polys)} entries for {len(out.module_degrees)} generators", kw_pos)
            _check_column(cur, polys, out.module_degrees, kw_pos)
            out.relations.append([p for p, _ in polys])
        else:
            for p, pos in polys:
                if not p.is_homogeneous():
                    cur.fail(f"{p.to_string(out.variables)} is not homogeneous", pos, NonHomogeneous)
            target = out.ideal if kw == "ideal" else out.extra
            target.extend(p for p, _ in polys if not p.is_zero())
    if out is None:
        raise ParseError("empty input: expected 'ring ...;'", 1, 1)
    return out


def _check_column(cur: _Cursor, polys, degs, pos) -> None:
    seen = None
    for (p, ppos), d in zip(polys, degs):
        if not p.is_homogeneous():
            cur.fail("relation entry is not homogeneous", ppos, NonHomogeneous)
        if p.is_zero():
            continue
        total = p.degree + d
        if seen is None:
            seen = total
        elif total != seen:
            cur.fail(f"relation column mixes degrees {seen} and {total}", ppos, NonHomogeneous)


def _poly_list(cur: _Cursor, variables) -> list:
    out = [_poly(cur, variables)]
    while cur.peek() == ",":
        cur.take(",")
        out.append(_poly(cur, variables))
    return out


def _poly(cur: _Cursor, variables) -> tuple[MultiPolynomial, int]:
    index = {v: k for k, v in enumerate(variables)}
    n = len(variables)
    start = cur.peek() and cur.pos
    terms: dict = {}
    sign = 1
    if cur.peek() in "+-" and cur.peek():
        sign = -1 if cur.text[cur.pos] == "-" else 1
        cur.pos += 1
    while True:
        coef, mono = _term(cur, index, n)
        terms[mono] = terms.get(mono, 0) + sign * coef
        nxt = cur.peek()
        if nxt in ("+", "-") and nxt:
            sign = -1 if nxt == "-" else 1
            cur.pos += 1
            continue
        break
    return MultiPolynomial(n, terms, QQ), start


def _term(cur: _Cursor, index, n) -> tuple[int, tuple]:
    coef = 1
    exps = [0] * n
    first = True
    while True:
        ch = cur.peek()
        if ch.isdigit():
            coef *= cur.integer()
        elif ch and (ch.isalpha()):
            pos = cur.pos
            name = cur.name()
            if name not in index:
                cur.fail(f"unknown variable {name!r}", pos, UnknownVariable)
            power = 1
            if cur.peek() == "^":
                cur.take("^")
                power = cur.integer()
            exps[index[name]] += power
        else:
            what = "a term" if first else "a factor after '*'"
            cur.fail(f"expected {what}, found {ch or 'end of input'!r}")
        first = False
        if cur.peek() == "*":
            cur.take("*")
            continue
        return coef, tuple(exps)


def format_polynomial(p: MultiPolynomial, variables) -> str:
    return p.to_string(variables, MonomialOrder(len(variables)))


def print_input(parsed: ParsedInput) -> str:
    """Canonical text for a parsed input; parsing it again gives an equal object."""
    vs = parsed.variables
    lines = [f"ring {','.join(vs)};"]
    if parsed.ideal:
        lines.append("ideal " + ", ".join(format_polynomial(p, vs) for p in parsed.ideal) + ";")
    if parsed.module_degrees is not None:
        lines.append("module gens " + ",".join(str(d) for d in parsed.module_degrees) + ";")
        for col in parsed.relations:
            lines.append("rel " + ", ".join(format_polynomial(p, vs) for p in col) + ";")
    if parsed.extra:
        lines.append("extra " + ", ".join(format_polynomial(p, vs) for p in parsed.extra) + ";")
    return "\n".join(lines) + "\n"


def read_input_file(path: str) -> ParsedInput:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_input(text)

"""Parser for map expressions such as ``(z1 + z0*z2^2, z0, z2)``.

Grammar::

    map       := "(" component (sep component)* ")"      sep is "," (affine) or ":" (projective)
    component := expr
    expr      := term (("+" | "-") term)*
    term      := factor (("*" | "/") factor)*
    factor    := base ("^" nat)?
    base      := var | rational | "(" expr ")" | "-" factor
    var       := "z" nat
    rational  := int ("/" nat)?

A leading minus applies to the whole factor, so ``-z0^2`` is ``-(z0^2)``.
An integer literal directly followed by ``/`` and another integer literal is
one rational literal, so ``2/3^2`` is ``(2/3)^2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .gcd import gcd
from .maps import AffineMapSpec, ProjectiveMap
from .poly import Poly, divide_exact

__all__ = ["ParseError", "MapExpressionAST", "parse_map_ast", "lower", "parse_map", "parse_poly"]


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.message = message
        self.line = line
        self.column = column


# -- AST ------------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    index: int
    pos: tuple[int, int]


@dataclass(frozen=True)
class Num:
    value: Fraction
    pos: tuple[int, int]


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    pos: tuple[int, int]


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"
    pos: tuple[int, int]


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int
    pos: tuple[int, int]


Node = Union[Var, Num, Neg, BinOp, Pow]


@dataclass(frozen=True)
class MapExpressionAST:
    components: tuple[Node, ...]
    chart: str  # "affine" or "projective"
    dimension: int


# -- lexer ----------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(z)(\d+)|(\d+)|(.))", re.S)


@dataclass(frozen=True)
class _Tok:
    kind: str  # VAR, INT, op char, EOF
    value: object
    pos: tuple[int, int]


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _lex(text: str) -> list[_Tok]:
    toks = []
    i = 0
    n = len(text)
    while i < n:
        while i < n and text[i].isspace():
            i += 1
        if i == n:
            break
        m = _TOKEN.match(text, i)
        if m is None or m.end() == i:
            break
        if m.group(1):
            toks.append(_Tok("VAR", int(m.group(2)), _position(text, m.start(1))))
        elif m.group(3):
            toks.append(_Tok("INT", int(m.group(3)), _position(text, m.start(3))))
        elif m.group(4):
            ch = m.group(4)
            pos = _position(text, m.start(4))
            if ch not in "()+-*/^,:":
                raise ParseError(f"unexpected character {ch!r}", *pos)
            toks.append(_Tok(ch, ch, pos))
        i = m.end()
    toks.append(_Tok("EOF", None, _position(text, len(text))))
    return toks


def _describe(t: _Tok) -> str:
    if t.kind == "EOF":
        return "end of input"
    if t.kind == "VAR":
        return f"'z{t.value}'"
    return repr(str(t.value))


# -- recursive descent ----------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.toks = _lex(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind: str) -> _Tok:
        t = self.tok
        if t.kind != kind:
            what = _describe(t)
            raise ParseError(f"expected {kind!r}, found {what}", *t.pos)
        return self.advance()

    def parse_map(self) -> tuple[list[Node], str]:
        self.expect("(")
        comps = [self.expr()]
        sep = None
        while self.tok.kind in (",", ":"):
            if sep is None:
                sep = self.tok.kind
            elif self.tok.kind != sep:
                raise ParseError("mixed ',' and ':' separators", *self.tok.pos)
            self.advance()
            comps.append(self.expr())
        self.expect(")")
        if self.tok.kind != "EOF":
            raise ParseError(f"trailing input {self.tok.value!r}", *self.tok.pos)
        return comps, "projective" if sep == ":" else "affine"

    def expr(self) -> Node:
        node = self.term()
        while self.tok.kind in ("+", "-"):
            op = self.advance()
            node = BinOp(op.kind, node, self.term(), op.pos)
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.tok.kind in ("*", "/"):
            op = self.advance()
            node = BinOp(op.kind, node, self.factor(), op.pos)
        return node

    def factor(self) -> Node:
        node = self.base()
        if self.tok.kind == "^":
            caret = self.advance()
            if self.tok.kind == "-":
                raise ParseError("negative exponent", *self.tok.pos)
            e = self.expect("INT")
            node = Pow(node, e.value, caret.pos)
        return node

    def base(self) -> Node:
        t = self.tok
        if t.kind == "VAR":
            self.advance()
            return Var(t.value, t.pos)
        if t.kind == "INT":
            self.advance()
            if self.tok.kind == "/" and self.toks[self.i + 1].kind == "INT":
                self.advance()
                den = self.advance()
                if den.value == 0:
                    raise ParseError("zero denominator in rational literal", *den.pos)
                return Num(Fraction(t.value, den.value), t.pos)
            return Num(Fraction(t.value), t.pos)
        if t.kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if t.kind == "-":
            self.advance()
            return Neg(self.factor(), t.pos)
        what = _describe(t)
        raise ParseError(f"unexpected {what}", *t.pos)


def _max_var(node: Node) -> int:
    if isinstance(node, Var):
        return node.index
    if isinstance(node, Num):
        return -1
    if isinstance(node, Neg):
        return _max_var(node.operand)
    if isinstance(node, Pow):
        return _max_var(node.base)
    return max(_max_var(node.left), _max_var(node.right))


def _used_vars(node: Node, acc: set[int]) -> set[int]:
    if isinstance(node, Var):
        acc.add(node.index)
    elif isinstance(node, Neg):
        _used_vars(node.operand, acc)
    elif isinstance(node, Pow):
        _used_vars(node.base, acc)
    elif isinstance(node, BinOp):
        _used_vars(node.left, acc)
        _used_vars(node.right, acc)
    return acc


def parse_map_ast(text: str, nvars: int | None = None) -> MapExpressionAST:
    """Parse ``text`` into an AST; ``nvars`` overrides the inferred variable count."""
    p = _Parser(text)
    comps, chart = p.parse_map()
    used: set[int] = set()
    for c in comps:
        _used_vars(c, used)
    if nvars is None:
        nvars = max(used, default=-1) + 1
        missing = sorted(set(range(nvars)) - used)
        if missing:
            raise ParseError(f"variable indices are not contiguous: z{missing[0]} never appears", 1, 1)
    elif used and max(used) >= nvars:
        raise ParseError(f"variable z{max(used)} out of range for {nvars} variables", 1, 1)
    if len(comps) != nvars:
        raise ParseError(f"arity mismatch: {len(comps)} components in {nvars} variables", 1, 1)
    dim = nvars if chart == "affine" else nvars - 1
    return MapExpressionAST(tuple(comps), chart, dim)


# -- lowering -------------------------------------------------------------------


def _eval(node: Node, nvars: int) -> tuple[Poly, Poly]:
    """Evaluate to a fraction ``(numerator, denominator)``."""
    one = Poly.one(nvars)
    if isinstance(node, Var):
        return Poly.var(nvars, node.index), one
    if isinstance(node, Num):
        return Poly.constant(nvars, node.value), one
    if isinstance(node, Neg):
        n, d = _eval(node.operand, nvars)
        return -n, d
    if isinstance(node, Pow):
        n, d = _eval(node.base, nvars)
        return n**node.exponent, d**node.exponent
    ln, ld = _eval(node.left, nvars)
    rn, rd = _eval(node.right, nvars)
    if node.op == "+":
        return _reduce(ln * rd + rn * ld, ld * rd)
    if node.op == "-":
        return _reduce(ln * rd - rn * ld, ld * rd)
    if node.op == "*":
        return _reduce(ln * rn, ld * rd)
    if rn.is_zero():
        raise ParseError("division by zero", *node.pos)
    return _reduce(ln * rd, ld * rn)


def _reduce(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if den.is_constant():
        c = den.constant_value()
        return (num.scale(Fraction(1) / Fraction(c)), Poly.one(num.nvars)) if c != 1 else (num, den)
    if num.is_zero():
        return num, Poly.one(num.nvars)
    g = gcd(num, den)
    if not g.is_constant():
        num, den = divide_exact(num, g), divide_exact(den, g)
    return num, den


def lower(ast: MapExpressionAST) -> AffineMapSpec | ProjectiveMap:
    if ast.chart == "affine":
        k = ast.dimension
        pairs = []
        for c in ast.components:
            n, d = _eval(c, k)
            if d.is_zero():
                raise ParseError("zero denominator component", 1, 1)
            pairs.append((n, d))
        return AffineMapSpec.rational(pairs)
    nv = ast.dimension + 1
    comps = []
    for c in ast.components:
        n, d = _eval(c, nv)
        if not d.is_constant():
            raise ParseError("division by a non-constant in a projective component", *_pos(c))
        comps.append(n)
    return ProjectiveMap(comps)


def _pos(node: Node) -> tuple[int, int]:
    return node.pos


def parse_map(text: str, nvars: int | None = None) -> AffineMapSpec | ProjectiveMap:
    return lower(parse_map_ast(text, nvars))


def parse_poly(text: str, nvars: int) -> Poly:
    """Parse a single polynomial expression in ``nvars`` variables."""
    p = _Parser(text)
    node = p.expr()
    if p.tok.kind != "EOF":
        raise ParseError(f"trailing input {p.tok.value!r}", *p.tok.pos)
    if _max_var(node) >= nvars:
        raise ParseError(f"variable out of range for {nvars} variables", 1, 1)
    n, d = _eval(node, nvars)
    if not d.is_constant():
        raise ParseError("expected a polynomial, got a rational function", *node.pos)
    return n

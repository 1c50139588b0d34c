"""Reading and writing polynomial and Dirichlet expressions.

Grammar (whitespace is ignored)::

    expr        := term { "+" term }
    term        := [nat ["*"]] factor | nat
    poly-factor := "y" ["^" nat]
    dir-factor  := nat "^" "y"

A bare ``n`` is the constant ``n*y^0`` for polynomials and ``n*1^y`` for
Dirichlet polynomials.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .dirichlet import Dir
from .errors import ExprSyntaxError, MixedKindError
from .poly import Poly

POLY, DIR = "poly", "dir"

_TOKEN = re.compile(r"\s*(?:(\d+)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    for m in _TOKEN.finditer(text):
        if m.group(1) is not None:
            tokens.append(("nat", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            ch = m.group(2)
            if ch not in "y^*+":
                raise ExprSyntaxError(f"unexpected character {ch!r}", m.start(2))
            tokens.append((ch, ch, m.start(2)))
    tokens.append(("end", "", len(text)))
    return tokens


@dataclass
class Expr:
    kind: str | None
    terms: list[tuple[int, int]] = field(default_factory=list)

    def normalize(self, kind: str | None = None):
        kind = kind or self.kind or POLY
        # bare constants were recorded with exponent 0; for Dir they are n*1^y
        items = [(a, k if k is not None else (0 if kind == POLY else 1)) for a, k in self.terms]
        multiset = tuple(k for a, k in items for _ in range(a))
        return Poly(multiset) if kind == POLY else Dir(multiset)


class _Parser:
    def __init__(self, text, kind):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.kind = kind
        self.kind_at = None

    def peek(self, offset=0):
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def take(self, typ):
        tok = self.peek()
        if tok[0] != typ:
            expected = "a number" if typ == "nat" else repr(typ)
            found = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ExprSyntaxError(f"expected {expected}, found {found}", tok[2])
        self.pos += 1
        return tok

    def set_kind(self, kind, at):
        if self.kind is None:
            self.kind, self.kind_at = kind, at
        elif self.kind != kind:
            raise MixedKindError(
                f"{kind} term in a {self.kind} expression", at)

    def factor(self):
        """Returns the exponent (poly) or base (dir) of a factor."""
        tok = self.peek()
        if tok[0] == "y":
            self.pos += 1
            self.set_kind(POLY, tok[2])
            if self.peek()[0] == "^":
                self.pos += 1
                return int(self.take("nat")[1])
            return 1
        if tok[0] == "nat":
            self.pos += 1
            self.take("^")
            self.take("y")
            self.set_kind(DIR, tok[2])
            return int(tok[1])
        found = "end of input" if tok[0] == "end" else repr(tok[1])
        raise ExprSyntaxError(f"expected a power, found {found}", tok[2])

    def term(self):
        tok = self.peek()
        if tok[0] == "nat":
            nxt = self.peek(1)[0]
            if nxt == "^":
                return 1, self.factor()
            self.pos += 1
            coef = int(tok[1])
            if nxt == "*":
                self.pos += 1
                return coef, self.factor()
            if nxt in ("y", "nat"):
                return coef, self.factor()
            return coef, None
        return 1, self.factor()

    def parse(self):
        terms = [self.term()]
        while self.peek()[0] == "+":
            self.pos += 1
            terms.append(self.term())
        tok = self.peek()
        if tok[0] != "end":
            raise ExprSyntaxError(f"unexpected {tok[1]!r}", tok[2])
        return Expr(self.kind, [(a, k) for a, k in terms if a > 0])


def parse_expr(text: str, kind: str | None = None) -> Expr:
    if kind not in (None, POLY, DIR):
        raise ValueError(f"kind must be 'poly' or 'dir', not {kind!r}")
    return _Parser(text, kind).parse()


def parse(kind: str | None, text: str):
    """Parse text into a canonical Poly or Dir.  With kind None the kind is
    inferred from the powers used (constants alone read as a polynomial)."""
    e = parse_expr(text, kind)
    return e.normalize(kind)


def parse_poly(text: str) -> Poly:
    return parse(POLY, text)


def parse_dir(text: str) -> Dir:
    return parse(DIR, text)


def format_poly(P: Poly) -> str:
    parts = []
    for e, a in P.coefficients().items():
        if e == 0:
            parts.append(str(a))
            continue
        power = "y" if e == 1 else f"y^{e}"
        parts.append(power if a == 1 else f"{a}{power}")
    return " + ".join(parts) or "0"


def format_dir(D: Dir) -> str:
    parts = []
    for b, a in D.coefficients().items():
        power = f"{b}^y"
        parts.append(power if a == 1 else f"{a}*{power}")
    return " + ".join(parts) or "0"


def format(obj) -> str:
    if isinstance(obj, Poly):
        return format_poly(obj)
    if isinstance(obj, Dir):
        return format_dir(obj)
    raise TypeError(f"cannot format {type(obj).__name__}")

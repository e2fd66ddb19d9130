"""Surface syntax for group names.

    expr := term (('x' | '×') term)*
    term := Zn | Dn | Qn | SDn | Sn | An | Mn | ZM(m,n,r) | Heis(p) | G(n,k) | '(' expr ')'

Dn, Qn and SDn take the group order; Mn is the modular group of order n.
Whitespace is ignored.
"""
from __future__ import annotations

import re

from ..errors import InvalidSpec, IsoPosetError
from ..group_core import (
    Alternating, CatalogRef, Cyclic, Dicyclic, Dihedral, GroupSpec, Heisenberg, Metacyclic,
    Semidihedral, Symmetric, modular_group, product_spec,
)


class GroupSyntaxError(IsoPosetError, ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}" + (f" in {text!r}" if text else ""))
        self.position = position


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>ZM|SD|Heis|Z|D|Q|S|A|M|G)|(?P<op>[x×(),]))")

_SIMPLE = {
    "Z": Cyclic,
    "D": Dihedral,
    "Q": Dicyclic,
    "SD": Semidihedral,
    "S": Symmetric,
    "A": Alternating,
    "M": modular_group,
}
_ARGS = {"ZM": (3, lambda m, n, r: Metacyclic(m, n, r)), "Heis": (1, Heisenberg), "G": (2, CatalogRef)}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = len(text) - len(text[pos:].lstrip())
            raise GroupSyntaxError(f"unexpected character {text[start]!r}", start, text)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self, kind: str, value: str | None = None) -> tuple[str, str, int]:
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or {"num": "a number", "name": "a group name"}.get(kind, kind)
            got = tok[1] or "end of input"
            raise GroupSyntaxError(f"expected {want if value is None else repr(want)}, found {got!r}", tok[2], self.text)
        self.i += 1
        return tok

    def expr(self) -> GroupSpec:
        factors = [self.term()]
        while self.peek()[0] == "op" and self.peek()[1] in ("x", "×"):
            self.i += 1
            factors.append(self.term())
        return product_spec(factors)

    def term(self) -> GroupSpec:
        kind, value, pos = self.peek()
        if kind == "op" and value == "(":
            self.i += 1
            inner = self.expr()
            self.take("op", ")")
            return inner
        if kind != "name":
            raise GroupSyntaxError(f"expected a group name, found {value or 'end of input'!r}", pos, self.text)
        self.i += 1
        if value in _SIMPLE:
            n = int(self.take("num")[1])
            return self._build(_SIMPLE[value], (n,), pos)
        arity, build = _ARGS[value]
        self.take("op", "(")
        args = [int(self.take("num")[1])]
        for _ in range(arity - 1):
            self.take("op", ",")
            args.append(int(self.take("num")[1]))
        end = self.take("op", ")")[2] + 1
        return self._build(build, tuple(args), pos, end)

    def _build(self, build, args, pos: int, end: int | None = None):
        try:
            return build(*args)
        except InvalidSpec as exc:
            if end is None:
                end = self.tokens[self.i - 1][2] + len(self.tokens[self.i - 1][1])
            err = InvalidSpec(f"{exc} (at position {pos}: {self.text[pos:end]!r})")
            err.position = pos
            raise err from None


def parse_group_expr(text: str) -> GroupSpec:
    parser = _Parser(text)
    spec = parser.expr()
    parser.take("end")
    return spec


def format_spec(spec: GroupSpec) -> str:
    """Inverse of parse_group_expr where the syntax allows it."""
    from ..group_core import Abelian, Perm, Product
    if isinstance(spec, Cyclic):
        return f"Z{spec.n}"
    if isinstance(spec, Abelian):
        return " x ".join(f"Z{f}" for f in spec.factors) or "Z1"
    if isinstance(spec, Dihedral):
        return f"D{spec.order}"
    if isinstance(spec, Dicyclic):
        return f"Q{spec.order}"
    if isinstance(spec, Semidihedral):
        return f"SD{spec.order}"
    if isinstance(spec, Symmetric):
        return f"S{spec.degree}"
    if isinstance(spec, Alternating):
        return f"A{spec.degree}"
    if isinstance(spec, Metacyclic):
        try:
            if modular_group(spec.order) == spec:
                return f"M{spec.order}"
        except InvalidSpec:
            pass
        return f"ZM({spec.m},{spec.n},{spec.r})"
    if isinstance(spec, Heisenberg):
        return f"Heis({spec.p})"
    if isinstance(spec, CatalogRef):
        return f"G({spec.order},{spec.index})"
    if isinstance(spec, Product):
        return " x ".join(f"({format_spec(f)})" if isinstance(f, (Product, Abelian)) else format_spec(f)
                          for f in spec.factors)
    if isinstance(spec, Perm):
        return repr(spec)
    raise TypeError(f"cannot format {spec!r}")

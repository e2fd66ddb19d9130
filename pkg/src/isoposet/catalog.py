"""Small-groups catalog stored as permutation generators.

One entry per line::

    order:index:name:degree:gen;gen;...

Generators are in disjoint-cycle notation over 1..degree.  A header line
``complete: N`` declares that every group of order <= N is present exactly
once.  Blank lines and ``#`` comments are ignored.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .errors import IsoPosetError
from .group_core import Group, Perm, construct, parse_cycles


class CatalogError(IsoPosetError):
    pass


class ParseError(CatalogError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class OrderMismatch(CatalogError):
    pass


class CatalogIncomplete(CatalogError):
    pass


@dataclass(eq=False)
class CatalogEntry:
    order: int
    index: int
    name: str
    degree: int
    generators: tuple[str, ...]
    _group: Group | None = field(default=None, repr=False)

    @property
    def key(self) -> tuple[int, int]:
        return (self.order, self.index)

    @property
    def spec(self) -> Perm:
        return Perm(self.degree, tuple(parse_cycles(g, self.degree) for g in self.generators))

    def group(self) -> Group:
        if self._group is None:
            g = construct(self.spec, check=False)
            if g.order != self.order:
                raise OrderMismatch(
                    f"entry {self.order}:{self.index} ({self.name}) generates a group of order {g.order}")
            self._group = g
        return self._group

    def to_line(self) -> str:
        return f"{self.order}:{self.index}:{self.name}:{self.degree}:{';'.join(self.generators)}"


@dataclass
class Catalog:
    entries: list[CatalogEntry]
    complete_through: int = 0

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, order: int, index: int) -> CatalogEntry:
        for e in self.entries:
            if e.key == (order, index):
                return e
        raise KeyError(f"no catalog entry G({order},{index})")

    def of_order(self, order: int) -> list[CatalogEntry]:
        return [e for e in self.entries if e.order == order]

    def by_name(self, name: str) -> CatalogEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def require_complete(self, max_order: int) -> None:
        if max_order > self.complete_through:
            raise CatalogIncomplete(
                f"catalog is complete only through order {self.complete_through}, asked for {max_order}")


def parse_catalog(text: str, validate: bool = True) -> Catalog:
    entries: list[CatalogEntry] = []
    complete = 0
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("complete:"):
            complete = int(line.split(":", 1)[1])
            continue
        fields = line.split(":")
        if len(fields) != 5:
            raise ParseError(lineno, f"expected 5 ':'-separated fields, got {len(fields)}")
        try:
            order, index, degree = int(fields[0]), int(fields[1]), int(fields[3])
        except ValueError as exc:
            raise ParseError(lineno, str(exc)) from None
        gens = tuple(g.strip() for g in fields[4].split(";") if g.strip())
        try:
            for g in gens:
                parse_cycles(g, degree)
        except IsoPosetError as exc:
            raise ParseError(lineno, str(exc)) from None
        if (order, index) in seen:
            raise ParseError(lineno, f"duplicate entry {order}:{index}")
        seen.add((order, index))
        entries.append(CatalogEntry(order, index, fields[2].strip(), degree, gens))
    if validate:
        for e in entries:
            e.group()
    entries.sort(key=lambda e: e.key)
    return Catalog(entries, complete)


def load_catalog(path: str | Path | None = None, validate: bool = True) -> Catalog:
    """Read a catalog file; the shipped catalog when ``path`` is None."""
    if path is None:
        text = resources.files("isoposet").joinpath("data/catalog.txt").read_text()
    else:
        text = Path(path).read_text()
    return parse_catalog(text, validate=validate)


@lru_cache(maxsize=1)
def default_catalog() -> Catalog:
    return load_catalog()

"""Concrete finite groups as full multiplication tables.

Elements of a group of order n are the integers 0..n-1 and element 0 is
always the identity.  ``table[a, b]`` is the index of the product ``a*b``.
Permutations compose left to right: ``(g*h)(x) = h(g(x))``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import InvalidSpec, OrderCapExceeded

TABLE_CAP = 5000
VALIDATE_CAP = 512


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation by trial division (orders here are small)."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# ---------------------------------------------------------------------------
# Group specifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Cyclic:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidSpec(f"cyclic order must be positive, got {self.n}")

    @property
    def order(self) -> int:
        return self.n


@dataclass(frozen=True)
class Abelian:
    """Direct product of cyclic groups of the given orders (any factor list)."""

    factors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(f) for f in self.factors))
        if any(f < 1 for f in self.factors):
            raise InvalidSpec(f"abelian factors must be positive: {self.factors}")

    @property
    def order(self) -> int:
        return math.prod(self.factors)


@dataclass(frozen=True)
class Dihedral:
    """Dihedral group given by its ORDER 2n."""

    order: int

    def __post_init__(self):
        if self.order < 2 or self.order % 2:
            raise InvalidSpec(f"dihedral order must be even and >= 2, got {self.order}")


@dataclass(frozen=True)
class Dicyclic:
    """Dicyclic group of order 4n; generalized quaternion when 4n is a power of 2."""

    order: int

    def __post_init__(self):
        if self.order < 4 or self.order % 4:
            raise InvalidSpec(f"dicyclic order must be a positive multiple of 4, got {self.order}")


@dataclass(frozen=True)
class Semidihedral:
    order: int

    def __post_init__(self):
        k = self.order.bit_length() - 1
        if self.order != 1 << k or k < 4:
            raise InvalidSpec(f"semidihedral order must be 2^k with k >= 4, got {self.order}")


@dataclass(frozen=True)
class Symmetric:
    degree: int

    def __post_init__(self):
        if self.degree < 1:
            raise InvalidSpec(f"symmetric degree must be positive, got {self.degree}")

    @property
    def order(self) -> int:
        return math.factorial(self.degree)


@dataclass(frozen=True)
class Alternating:
    degree: int

    def __post_init__(self):
        if self.degree < 1:
            raise InvalidSpec(f"alternating degree must be positive, got {self.degree}")

    @property
    def order(self) -> int:
        return 1 if self.degree < 2 else math.factorial(self.degree) // 2


@dataclass(frozen=True)
class Metacyclic:
    """<a, b | a^m = b^n = 1, b a b^-1 = a^r>, realised on pairs (i mod m, j mod n)."""

    m: int
    n: int
    r: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise InvalidSpec(f"metacyclic parameters must be positive: {self}")
        if math.gcd(self.r, self.m) != 1:
            raise InvalidSpec(f"gcd(r, m) must be 1 in {self}")
        if pow(self.r, self.n, self.m) != 1 % self.m:
            raise InvalidSpec(f"r^n must be 1 mod m in {self}")

    @property
    def order(self) -> int:
        return self.m * self.n


@dataclass(frozen=True)
class Heisenberg:
    """Upper unitriangular 3x3 matrices over the field with p elements."""

    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise InvalidSpec(f"Heisenberg group needs a prime, got {self.p}")

    @property
    def order(self) -> int:
        return self.p**3


@dataclass(frozen=True)
class Perm:
    """Permutation group; generators are 0-based image tuples on range(degree)."""

    degree: int
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        for g in gens:
            if sorted(g) != list(range(self.degree)):
                raise InvalidSpec(f"not a permutation of degree {self.degree}: {g}")

    @classmethod
    def from_cycles(cls, degree: int, generators: Iterable[str]) -> "Perm":
        return cls(degree, tuple(parse_cycles(g, degree) for g in generators))

    @property
    def order(self) -> int | None:
        return None


@dataclass(frozen=True)
class Product:
    factors: tuple["GroupSpec", ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    @property
    def order(self) -> int | None:
        orders = [f.order for f in self.factors]
        return None if None in orders else math.prod(orders)


@dataclass(frozen=True)
class CatalogRef:
    order: int
    index: int


GroupSpec = Union[
    Cyclic, Abelian, Dihedral, Dicyclic, Semidihedral, Symmetric, Alternating,
    Metacyclic, Heisenberg, Perm, Product, CatalogRef,
]


def modular_group(order: int) -> Metacyclic:
    """M(p^a): <a, b | a^(p^(a-1)) = b^p = 1, b a b^-1 = a^(1 + p^(a-2))>, a >= 3."""
    f = factorize(order)
    if len(f) != 1 or next(iter(f.values())) < 3:
        raise InvalidSpec(f"modular group order must be p^a with a >= 3, got {order}")
    (p, a), = f.items()
    return Metacyclic(p ** (a - 1), p, 1 + p ** (a - 2))


def product_spec(factors: Sequence[GroupSpec]) -> GroupSpec:
    """Direct product, flattened; all-abelian factor lists collapse to one Abelian."""
    flat: list = []
    for f in factors:
        flat.extend(f.factors if isinstance(f, Product) else [f])
    if len(flat) == 1:
        return flat[0]
    if all(isinstance(f, (Cyclic, Abelian)) for f in flat):
        return Abelian(tuple(d for f in flat for d in ((f.n,) if isinstance(f, Cyclic) else f.factors)))
    return Product(tuple(flat))


# ---------------------------------------------------------------------------
# Permutation text format
# ---------------------------------------------------------------------------

_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> tuple[int, ...]:
    """Parse disjoint-cycle notation over points 1..degree into 0-based images."""
    text = text.strip()
    images = list(range(degree))
    if re.sub(r"\s", "", _CYCLE.sub("", text)):
        raise InvalidSpec(f"malformed cycle notation: {text!r}")
    seen: set[int] = set()
    for body in _CYCLE.findall(text):
        pts = [int(t) for t in re.split(r"[\s,]+", body.strip()) if t]
        for x in pts:
            if not 1 <= x <= degree:
                raise InvalidSpec(f"point {x} outside 1..{degree} in {text!r}")
            if x in seen:
                raise InvalidSpec(f"cycles are not disjoint in {text!r}")
            seen.add(x)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a - 1] = b - 1
    return tuple(images)


def format_cycles(perm: Sequence[int]) -> str:
    seen = [False] * len(perm)
    parts = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc, x = [], start
        while not seen[x]:
            seen[x] = True
            cyc.append(str(x + 1))
            x = perm[x]
        parts.append("(" + " ".join(cyc) + ")")
    return "".join(parts) or "()"


def parse_perm_text(text: str) -> Perm:
    """Read a ``degree: k`` header followed by one generator per line."""
    degree = None
    gens = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("degree:"):
            degree = int(line.split(":", 1)[1])
        elif degree is None:
            raise InvalidSpec("permutation text must declare 'degree: k' first")
        else:
            gens.append(parse_cycles(line, degree))
    if degree is None:
        raise InvalidSpec("permutation text must declare 'degree: k'")
    return Perm(degree, tuple(gens))


def format_perm_text(spec: Perm) -> str:
    lines = [f"degree: {spec.degree}"]
    lines += [format_cycles(g) for g in spec.generators]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Groups
# ---------------------------------------------------------------------------


class Group:
    """A finite group materialised as a multiplication table over 0..n-1."""

    def __init__(self, table, spec=None, element_names=None, check: bool = True):
        table = np.ascontiguousarray(table, dtype=np.int32)
        table.setflags(write=False)
        self.table = table
        self.spec = spec
        self._names = None if element_names is None else tuple(element_names)
        self._memo: dict = {}
        if check:
            validate_table(table)

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def identity(self) -> int:
        return 0

    @property
    def element_names(self) -> tuple[str, ...]:
        if self._names is None:
            self._names = tuple(f"g{i}" for i in range(self.order))
        return self._names

    @property
    def inverse(self) -> np.ndarray:
        if "inverse" not in self._memo:
            rows, cols = np.nonzero(self.table == 0)
            inv = np.empty(self.order, dtype=np.int32)
            inv[rows] = cols
            self._memo["inverse"] = inv
        return self._memo["inverse"]

    @property
    def element_orders(self) -> np.ndarray:
        if "orders" not in self._memo:
            self._memo["orders"] = _element_orders(self.table)
        return self._memo["orders"]

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def power(self, a: int, k: int) -> int:
        x = 0
        for _ in range(k % int(self.element_orders[a])):
            x = self.table[x, a]
        return int(x)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"Group(order={self.order}, spec={self.spec!r})"


def validate_table(table: np.ndarray, cap: int = VALIDATE_CAP, samples: int = 20000) -> None:
    n = len(table)
    if table.ndim != 2 or table.shape != (n, n) or n == 0:
        raise InvalidSpec("multiplication table must be a non-empty square array")
    ar = np.arange(n)
    if not (np.array_equal(table[0], ar) and np.array_equal(table[:, 0], ar)):
        raise InvalidSpec("element 0 is not a two-sided identity")
    srt = np.sort(table, axis=1)
    if not (srt == ar).all() or not (np.sort(table, axis=0) == ar[:, None]).all():
        raise InvalidSpec("table is not a Latin square")
    if n <= cap:
        # Light's test: elements b with (x*b)*y == x*(b*y) for all x, y form a
        # submagma, so checking a generating set is exhaustive.
        for s in _right_generators(table):
            if not np.array_equal(table[table[:, s]], table[:, table[s]]):
                raise InvalidSpec("table is not associative")
    else:
        rng = np.random.default_rng(0)
        a, b, c = rng.integers(0, n, size=(3, samples))
        if not np.array_equal(table[table[a, b], c], table[a, table[b, c]]):
            raise InvalidSpec("table is not associative (spot check)")


def _right_generators(table: np.ndarray) -> list[int]:
    """Greedy S such that right products e*s1*s2*... reach every element."""
    n = len(table)
    reached = np.zeros(n, dtype=bool)
    reached[0] = True
    frontier = [0]
    gens: list[int] = []
    while True:
        missing = np.flatnonzero(~reached)
        if not len(missing):
            return gens
        s = int(missing[0])
        gens.append(s)
        frontier = list(np.flatnonzero(reached))
        while frontier:
            nxt = []
            for x in frontier:
                for t in gens:
                    y = table[x, t]
                    if not reached[y]:
                        reached[y] = True
                        nxt.append(y)
            frontier = nxt


def _element_orders(table: np.ndarray) -> np.ndarray:
    n = len(table)
    ar = np.arange(n)
    orders = np.zeros(n, dtype=np.int64)
    x = ar.copy()
    k = 1
    while True:
        hit = (x == 0) & (orders == 0)
        orders[hit] = k
        if orders.all():
            return orders
        x = table[x, ar]
        k += 1


def generate(table: np.ndarray, gens: Iterable[int], base: np.ndarray | None = None) -> np.ndarray:
    """Sorted elements of the subgroup generated by ``gens``.

    ``base`` may be a subgroup contained in <gens>; the result is then built
    as a union of right cosets of it.
    """
    gens = [int(s) for s in gens]
    base = np.array([0], dtype=np.int64) if base is None else np.asarray(base)
    member = np.zeros(len(table), dtype=bool)
    member[base] = True
    reps = [0]
    i = 0
    while i < len(reps):
        r = reps[i]
        i += 1
        row = table[r]
        for s in gens:
            x = row[s]
            if not member[x]:
                member[table[base, x]] = True
                reps.append(int(x))
    return np.flatnonzero(member)


def restrict(g: Group, elements: Sequence[int], spec=None) -> Group:
    """The subgroup on ``elements`` as a standalone group (identity first)."""
    elements = np.asarray(sorted(int(e) for e in elements))
    if elements[0] != 0:
        raise InvalidSpec("subgroup must contain the identity")
    pos = np.full(g.order, -1, dtype=np.int64)
    pos[elements] = np.arange(len(elements))
    sub = pos[g.table[np.ix_(elements, elements)]]
    if (sub < 0).any():
        raise InvalidSpec("element set is not closed under multiplication")
    names = [g.element_names[e] for e in elements] if g._names is not None else None
    return Group(sub, spec=spec, element_names=names, check=False)


def relabel(g: Group, perm: Sequence[int]) -> Group:
    """Copy of ``g`` with element ``a`` renamed ``perm[a]`` (perm[0] must be 0)."""
    perm = np.asarray(perm, dtype=np.int64)
    if perm[0] != 0 or sorted(perm.tolist()) != list(range(g.order)):
        raise InvalidSpec("relabelling must be a permutation fixing the identity")
    table = np.empty_like(g.table)
    table[np.ix_(perm, perm)] = perm[g.table]
    return Group(table, spec=g.spec, check=False)


def direct_product(g1: Group, g2: Group, cap: int = TABLE_CAP) -> Group:
    n1, n2 = g1.order, g2.order
    if n1 * n2 > cap:
        raise OrderCapExceeded(f"direct product of order {n1 * n2} exceeds cap {cap}")
    t1 = g1.table.astype(np.int64)
    t2 = g2.table.astype(np.int64)
    table = (t1[:, None, :, None] * n2 + t2[None, :, None, :]).reshape(n1 * n2, n1 * n2)
    names = [f"({a},{b})" for a in g1.element_names for b in g2.element_names]
    spec = Product((g1.spec, g2.spec)) if g1.spec is not None and g2.spec is not None else None
    return Group(table, spec=spec, element_names=names, check=False)


def semidirect_product(normal: Group, acting: Group, action, cap: int = TABLE_CAP) -> Group:
    """N x| H with (n, h)(n', h') = (n * action[h](n'), h h').

    ``action`` has shape (|H|, |N|); row h is the automorphism of N by which
    h acts.  The result is validated, so a non-homomorphic action is rejected.
    """
    nn, nh = normal.order, acting.order
    if nn * nh > cap:
        raise OrderCapExceeded(f"semidirect product of order {nn * nh} exceeds cap {cap}")
    act = np.asarray(action, dtype=np.int64)
    tn = normal.table.astype(np.int64)
    th = acting.table.astype(np.int64)
    # index of (n, h) is n * |H| + h
    left = tn[np.arange(nn)[:, None, None], act[None, :, :]]  # (n, h, n') -> n * h(n')
    table = left[:, :, :, None] * nh + th[None, :, None, :]
    return Group(table.reshape(nn * nh, nn * nh), check=True)


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def _cyclic(n: int) -> Group:
    ar = np.arange(n)
    names = ["1"] + [f"a^{i}" if i > 1 else "a" for i in range(1, n)]
    return Group((ar[:, None] + ar[None, :]) % n, spec=Cyclic(n), element_names=names, check=False)


def _metacyclic(m: int, n: int, r: int, spec, letters=("a", "b")) -> Group:
    rpow = np.array([pow(r, j, m) for j in range(n)], dtype=np.int64)
    k = np.arange(m * n)
    i, j = k % m, k // m
    new_i = (i[:, None] + rpow[j][:, None] * i[None, :]) % m
    new_j = (j[:, None] + j[None, :]) % n
    return Group(new_i + new_j * m, spec=spec, element_names=_word_names(m, n, letters), check=False)


def _word_names(m: int, n: int, letters) -> list[str]:
    x, y = letters
    out = []
    for k in range(m * n):
        i, j = k % m, k // m
        word = (f"{x}^{i}" if i > 1 else x if i else "") + (f"{y}^{j}" if j > 1 else y if j else "")
        out.append(word or "1")
    return out


def _dicyclic(order: int) -> Group:
    n = order // 4
    m = 2 * n
    k = np.arange(order)
    i, j = k % m, k // m
    i1, j1 = i[:, None], j[:, None]
    i2, j2 = i[None, :], j[None, :]
    e = i1 + np.where(j1 == 1, -i2, i2) + np.where((j1 == 1) & (j2 == 1), n, 0)
    table = (e % m) + ((j1 + j2) % 2) * m
    return Group(table, spec=Dicyclic(order), element_names=_word_names(m, 2, ("a", "x")), check=False)


def _heisenberg(p: int) -> Group:
    k = np.arange(p**3)
    a, b, c = k // (p * p), (k // p) % p, k % p
    na = (a[:, None] + a[None, :]) % p
    nb = (b[:, None] + b[None, :]) % p
    nc = (c[:, None] + c[None, :] + a[:, None] * b[None, :]) % p
    names = [f"[{x},{y},{z}]" for x, y, z in zip(a, b, c)]
    return Group(na * p * p + nb * p + nc, spec=Heisenberg(p), element_names=names, check=False)


def perm_closure(degree: int, gens: Sequence[Sequence[int]], cap: int = TABLE_CAP) -> np.ndarray:
    """All elements of <gens> as rows of an array; identity first, BFS order."""
    ident = np.arange(degree, dtype=np.int32)
    gens = [np.asarray(g, dtype=np.int32) for g in gens]
    elems = [ident]
    seen = {ident.tobytes()}
    i = 0
    while i < len(elems):
        x = elems[i]
        i += 1
        for s in gens:
            y = s[x]  # x then s
            key = y.tobytes()
            if key not in seen:
                seen.add(key)
                elems.append(y)
                if len(elems) > cap:
                    raise OrderCapExceeded(f"permutation group exceeds cap {cap}")
    return np.stack(elems)


def perm_table(perms: np.ndarray) -> np.ndarray:
    """Multiplication table of a list of distinct permutations closed under composition."""
    n, d = perms.shape
    perms = perms.astype(np.int64)
    # a base: points whose images separate all elements
    base, codes = [], np.zeros(n, dtype=np.int64)
    for p in range(d):
        if len(np.unique(codes)) == n:
            break
        trial = np.unique(codes, return_inverse=True)[1].reshape(-1) * d + perms[:, p]
        if len(np.unique(trial)) > len(np.unique(codes)):
            base.append(p)
            codes = trial
    if n == 1:
        return np.zeros((1, 1), dtype=np.int64)
    if d ** len(base) < 2**62:
        weights = d ** np.arange(len(base), dtype=np.int64)[::-1]
        keys = perms[:, base] @ weights
        order = np.argsort(keys)
        sorted_keys = keys[order]
        table = np.empty((n, n), dtype=np.int64)
        chunk = max(1, 4_000_000 // (n * len(base)))
        for start in range(0, n, chunk):
            rows = perms[start:start + chunk][:, base]            # g_i on the base
            prod = perms[np.arange(n)[None, :, None], rows[:, None, :]]  # g_j(g_i(b))
            table[start:start + chunk] = order[np.searchsorted(sorted_keys, prod @ weights)]
        return table
    lookup = {row.tobytes(): k for k, row in enumerate(perms)}
    return np.array([[lookup[pj[pi].tobytes()] for pj in perms] for pi in perms])


def _perm_group(degree: int, gens, spec, cap: int) -> Group:
    perms = perm_closure(degree, gens, cap)
    names = [format_cycles(p) for p in perms]
    return Group(perm_table(perms), spec=spec, element_names=names, check=False)


def construct(spec: GroupSpec, cap: int = TABLE_CAP, catalog=None, check: bool = True) -> Group:
    """Materialise ``spec`` as a concrete group."""
    order = getattr(spec, "order", None)
    if order is not None and order > cap:
        raise OrderCapExceeded(f"{spec!r} has order {order}, above the table cap {cap}")
    g = _build(spec, cap, catalog)
    if check and g.order <= VALIDATE_CAP:
        validate_table(g.table)
    return g


def _build(spec, cap, catalog) -> Group:
    if isinstance(spec, Cyclic):
        return _cyclic(spec.n)
    if isinstance(spec, Abelian):
        if not spec.factors:
            return Group(np.zeros((1, 1)), spec=spec, element_names=["1"], check=False)
        g = reduce(lambda a, b: direct_product(a, b, cap), [_cyclic(f) for f in spec.factors])
        g.spec = spec
        return g
    if isinstance(spec, Dihedral):
        n = spec.order // 2
        return _metacyclic(n, 2, (n - 1) % n if n > 1 else 0, spec, ("x", "y"))
    if isinstance(spec, Dicyclic):
        return _dicyclic(spec.order)
    if isinstance(spec, Semidihedral):
        m = spec.order // 2
        return _metacyclic(m, 2, m // 2 - 1, spec)
    if isinstance(spec, Metacyclic):
        return _metacyclic(spec.m, spec.n, spec.r, spec)
    if isinstance(spec, Heisenberg):
        return _heisenberg(spec.p)
    if isinstance(spec, Symmetric):
        d = spec.degree
        gens = [] if d < 2 else [parse_cycles("(1 2)", d), tuple(list(range(1, d)) + [0])]
        return _perm_group(d, gens, spec, cap)
    if isinstance(spec, Alternating):
        d = spec.degree
        gens = [parse_cycles(f"(1 2 {k})", d) for k in range(3, d + 1)]
        return _perm_group(d, gens, spec, cap)
    if isinstance(spec, Perm):
        return _perm_group(spec.degree, spec.generators, spec, cap)
    if isinstance(spec, Product):
        if not spec.factors:
            return Group(np.zeros((1, 1)), spec=spec, element_names=["1"], check=False)
        g = reduce(lambda a, b: direct_product(a, b, cap), [_build(f, cap, catalog) for f in spec.factors])
        g.spec = spec
        return g
    if isinstance(spec, CatalogRef):
        if catalog is None:
            from .catalog import default_catalog
            catalog = default_catalog()
        g = catalog.get(spec.order, spec.index).group()
        return Group(g.table, spec=spec, element_names=g.element_names, check=False)
    raise InvalidSpec(f"unknown group specification {spec!r}")


# ---------------------------------------------------------------------------
# Invariants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupInvariants:
    order: int
    exponent: int
    element_order_histogram: dict[int, int]
    abelian: bool
    abelian_type: dict[int, tuple[int, ...]] | None
    center_order: int
    derived_subgroup_order: int
    solvable: bool
    nilpotent: bool


def center(g: Group) -> np.ndarray:
    t = g.table
    return np.flatnonzero((t == t.T).all(axis=1))


def commutator_subgroup(g: Group, elements: np.ndarray | None = None) -> np.ndarray:
    """[K, K] for the subgroup K on ``elements`` (default: the whole group)."""
    t, inv = g.table, g.inverse
    sub = np.arange(g.order) if elements is None else np.asarray(elements)
    left = t[np.ix_(inv[sub], inv[sub])]
    comms = np.unique(t[left, t[np.ix_(sub, sub)]])
    return generate(t, comms[comms != 0])


def derived_series(g: Group) -> list[np.ndarray]:
    series = [np.arange(g.order)]
    while True:
        nxt = commutator_subgroup(g, series[-1])
        if len(nxt) == len(series[-1]):
            return series
        series.append(nxt)


def sylow_elements(g: Group, p: int) -> np.ndarray:
    """Elements of p-power order; a subgroup exactly when the Sylow p-subgroup is normal."""
    orders = g.element_orders
    mask = np.array([_is_power_of(int(o), p) for o in orders])
    return np.flatnonzero(mask)


def _is_power_of(x: int, p: int) -> bool:
    while x % p == 0:
        x //= p
    return x == 1


def is_nilpotent(g: Group) -> bool:
    return all(len(sylow_elements(g, p)) == p**a for p, a in factorize(g.order).items())


def abelian_type(g: Group) -> dict[int, tuple[int, ...]]:
    """Per prime, the partition of the Sylow subgroup of an ABELIAN group."""
    orders = g.element_orders
    out = {}
    for p, a in sorted(factorize(g.order).items()):
        logs = [0]
        k = 1
        while logs[-1] < a:
            count = int(np.sum((p**k % orders == 0)))
            logs.append(round(math.log(count, p)))
            k += 1
        at_least = [logs[i] - logs[i - 1] for i in range(1, len(logs))]  # parts >= i
        parts = [sum(1 for c in at_least if c >= j) for j in range(1, at_least[0] + 1)]
        out[p] = tuple(parts)
    return out


def invariants(g: Group) -> GroupInvariants:
    if "invariants" in g._memo:
        return g._memo["invariants"]
    orders = g.element_orders
    keys, counts = np.unique(orders, return_counts=True)
    hist = {int(k): int(c) for k, c in zip(keys, counts)}
    z = len(center(g))
    abelian = z == g.order
    if abelian:
        derived, solvable = 1, True
    else:
        series = derived_series(g)
        derived = len(series[1]) if len(series) > 1 else g.order
        solvable = len(series[-1]) == 1
    inv = GroupInvariants(
        order=g.order,
        exponent=math.lcm(*hist),
        element_order_histogram=hist,
        abelian=abelian,
        abelian_type=abelian_type(g) if abelian else None,
        center_order=z,
        derived_subgroup_order=derived,
        solvable=solvable,
        nilpotent=abelian or is_nilpotent(g),
    )
    g._memo["invariants"] = inv
    return inv

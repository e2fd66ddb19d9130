"""Closed-form constructions: partition posets, divisor lattices, dihedral
counts, the chain-group classification and the twin-pair constructor.

Everything here is arithmetic; nothing materialises a multiplication table
except ``is_chain_group`` when handed a small specification.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import OrderCapExceeded, SquareFreeOrder, Unresolvable
from .group_core import (
    TABLE_CAP, Abelian, Cyclic, Dihedral, Group, GroupSpec, Product, construct,
    factorize, invariants, modular_group, product_spec,
)
from .poset import Poset, divisor_poset

Partition = tuple[int, ...]


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def partition_counts(n: int) -> tuple[int, ...]:
    """pi(0), ..., pi(n) by the coin-change recurrence."""
    counts = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            counts[total] += counts[total - part]
    return tuple(counts)


def tau(n: int) -> int:
    return math.prod(e + 1 for e in factorize(n).values())


def sigma(n: int) -> int:
    return math.prod((p ** (e + 1) - 1) // (p - 1) for p, e in factorize(n).items())


def arithmetic(n: int) -> tuple[int, int, tuple[int, ...]]:
    if n < 1:
        raise ValueError("n must be positive")
    return tau(n), sigma(n), partition_counts(n)


# ---------------------------------------------------------------------------
# Abelian groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AbelianType:
    """Per prime, the partition of the exponent of the Sylow subgroup."""

    parts: tuple[tuple[int, Partition], ...]

    def __post_init__(self):
        clean = []
        for p, lam in sorted(self.parts):
            lam = tuple(sorted((int(x) for x in lam if x), reverse=True))
            if lam:
                clean.append((int(p), lam))
        object.__setattr__(self, "parts", tuple(clean))

    @classmethod
    def of(cls, mapping: dict[int, Partition]) -> "AbelianType":
        return cls(tuple(mapping.items()))

    @classmethod
    def from_factors(cls, factors) -> "AbelianType":
        per_prime: dict[int, list[int]] = {}
        for f in factors:
            for p, e in factorize(int(f)).items():
                per_prime.setdefault(p, []).append(e)
        return cls(tuple((p, tuple(es)) for p, es in per_prime.items()))

    @property
    def order(self) -> int:
        return math.prod(p ** sum(lam) for p, lam in self.parts)

    def as_dict(self) -> dict[int, Partition]:
        return dict(self.parts)


def abelian_type_of(spec: GroupSpec) -> AbelianType | None:
    """Type of a cyclic/abelian specification (or a product of them), else None."""
    if isinstance(spec, Cyclic):
        return AbelianType.from_factors([spec.n])
    if isinstance(spec, Abelian):
        return AbelianType.from_factors(spec.factors)
    if isinstance(spec, Product):
        types = [abelian_type_of(f) for f in spec.factors]
        if any(t is None for t in types):
            return None
        merged: dict[int, list[int]] = {}
        for t in types:
            for p, lam in t.parts:
                merged.setdefault(p, []).extend(lam)
        return AbelianType(tuple((p, tuple(lam)) for p, lam in merged.items()))
    return None


def subpartitions(lam: Partition) -> list[Partition]:
    """Partitions mu (padded with zeros to len(lam)) with mu_i <= lam_i."""
    out = []

    def rec(i: int, prefix: list[int], bound: int):
        if i == len(lam):
            out.append(tuple(prefix))
            return
        for x in range(min(bound, lam[i]), -1, -1):
            rec(i + 1, prefix + [x], x)

    rec(0, [], lam[0] if lam else 0)
    return sorted(out, key=lambda mu: (sum(mu), tuple(-x for x in mu)))


def _type_label(per_prime: tuple[tuple[int, Partition], ...]) -> str:
    from .naming import abelian_name
    return abelian_name({p: tuple(x for x in mu if x) for p, mu in per_prime if any(mu)})


def abelian_iso_poset(t: AbelianType | dict) -> Poset:
    """Iso of an abelian group of type ``t``: product over primes of sub-partition posets."""
    if isinstance(t, dict):
        t = AbelianType.of(t)
    factors = []
    for p, lam in t.parts:
        subs = subpartitions(lam)
        alpha = sum(lam)
        assert len(subs) <= sum(partition_counts(alpha)), "partition bound violated"
        factors.append([(p, mu) for mu in subs])
    elements = list(itertools.product(*factors))
    elements.sort(key=lambda e: (math.prod(p ** sum(mu) for p, mu in e), e))
    n = len(elements)
    leq = np.ones((n, n), dtype=bool)
    for k in range(len(factors)):
        mus = np.array([e[k][1] for e in elements])
        leq &= (mus[:, None, :] <= mus[None, :, :]).all(axis=2)
    return Poset(leq, [_type_label(e) for e in elements])


def divisor_lattice(n: int) -> Poset:
    if n < 1:
        raise ValueError("n must be positive")
    return divisor_poset(n)


# ---------------------------------------------------------------------------
# Dihedral groups
# ---------------------------------------------------------------------------


def dihedral_counts(n: int) -> tuple[int, int]:
    """(|L(D_2n)|, |Iso(D_2n)|).

    The class count is tau(n) cyclic classes plus tau(n) dihedral ones,
    minus one when n is even because the dihedral class D_2 coincides with Z_2.
    """
    if n < 1:
        raise ValueError("n must be positive")
    subgroups = tau(n) + sigma(n)
    if n == 1:
        return subgroups, 2
    classes = 2 * tau(n) - (1 if n % 2 == 0 else 0)
    return subgroups, classes


def printed_dihedral_class_count(n: int) -> int:
    """The class-count display with its odd/even labels as originally printed."""
    return 2 * tau(n) - 1 if n % 2 else 2 * tau(n)


def dihedral_is_lattice(n: int) -> bool:
    if n < 1:
        raise ValueError("n must be positive")
    return n % 2 == 1 or n & (n - 1) == 0


# ---------------------------------------------------------------------------
# Chain groups
# ---------------------------------------------------------------------------


def _chain_from_invariants(g: Group) -> bool:
    inv = invariants(g)
    if inv.order == 1:
        return True
    f = factorize(inv.order)
    if len(f) != 1:
        return False
    (p, a), = f.items()
    if inv.exponent == inv.order:
        return True
    if inv.abelian:
        return inv.exponent == p
    if a == 3 and inv.exponent == p:
        return True
    return inv.order == 8 and inv.element_order_histogram.get(2, 0) == 1


def is_chain_group(g: GroupSpec | Group, cap: int = TABLE_CAP) -> bool:
    """Whether Iso(g) is a chain, decided from the four-family classification."""
    if isinstance(g, Group):
        return _chain_from_invariants(g)
    t = abelian_type_of(g)
    if t is not None:
        if len(t.parts) > 1:
            return False
        if not t.parts:
            return True
        _, lam = t.parts[0]
        return len(lam) == 1 or max(lam) == 1
    try:
        return _chain_from_invariants(construct(g, cap=cap))
    except OrderCapExceeded:
        raise Unresolvable(f"{g!r} is above the table cap and not a recognised family") from None


# ---------------------------------------------------------------------------
# Twin pairs
# ---------------------------------------------------------------------------


def _base_pair(p: int, a: int) -> tuple[GroupSpec, GroupSpec]:
    if a == 2:
        return Cyclic(p * p), Abelian((p, p))
    if p == 2:
        return Dihedral(2 ** a), Abelian((2 ** (a - 1), 2))
    return modular_group(p ** a), Abelian((p ** (a - 1), p))


def twin_pair(n: int) -> tuple[GroupSpec, GroupSpec]:
    """Two non-isomorphic groups of order n whose Iso posets agree.

    The base is the prime power with the largest exponent (smallest prime on
    ties); every other prime power is attached as a cyclic direct factor.
    """
    f = factorize(n) if n >= 2 else {}
    if not f or max(f.values()) < 2:
        raise SquareFreeOrder(f"{n} is square-free; no twin construction applies")
    p, a = max(f.items(), key=lambda pe: (pe[1], -pe[0]))
    g1, g2 = _base_pair(p, a)
    rest = [Cyclic(q ** b) for q, b in sorted(f.items()) if q != p]
    return product_spec([g1, *rest]), product_spec([g2, *rest])

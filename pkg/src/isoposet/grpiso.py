"""Isomorphism of small table groups.

Fingerprints prune; a backtracking search over images of a greedy
generating sequence decides, and every isomorphism it reports is checked
against the full multiplication tables first.
"""
from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from typing import Hashable, Sequence

import numpy as np

from .group_core import Group, generate, invariants


@dataclass(frozen=True)
class Fingerprint:
    order: int
    element_order_histogram: tuple[tuple[int, int], ...]
    abelian: bool
    abelian_type: tuple[tuple[int, tuple[int, ...]], ...] | None
    center_order: int
    derived_subgroup_order: int
    exponent: int

    def sort_key(self) -> tuple:
        return (self.order, not self.abelian, self.element_order_histogram,
                self.abelian_type or (), self.center_order, self.derived_subgroup_order)


def fingerprint(g: Group) -> Fingerprint:
    if "fingerprint" not in g._memo:
        inv = invariants(g)
        g._memo["fingerprint"] = Fingerprint(
            order=inv.order,
            element_order_histogram=tuple(sorted(inv.element_order_histogram.items())),
            abelian=inv.abelian,
            abelian_type=None if inv.abelian_type is None else tuple(sorted(inv.abelian_type.items())),
            center_order=inv.center_order,
            derived_subgroup_order=inv.derived_subgroup_order,
            exponent=inv.exponent,
        )
    return g._memo["fingerprint"]


def _signatures(g: Group) -> np.ndarray:
    """Per-element isomorphism-invariant labels: (order, centralizer size, #square roots)."""
    if "signatures" not in g._memo:
        t = g.table
        cent = (t == t.T).sum(axis=1)
        roots = np.bincount(np.diagonal(t), minlength=g.order)
        sig = np.stack([g.element_orders, cent, roots], axis=1)
        _, labels = np.unique(sig, axis=0, return_inverse=True)
        g._memo["signatures"] = (sig, labels.reshape(-1))
    return g._memo["signatures"]


def is_homomorphism(g1: Group, g2: Group, phi: Sequence[int]) -> bool:
    phi = np.asarray(phi)
    return bool(np.array_equal(phi[g1.table], g2.table[np.ix_(phi, phi)]))


def verify_isomorphism(g1: Group, g2: Group, phi: Sequence[int]) -> bool:
    phi = np.asarray(phi)
    return (
        g1.order == g2.order
        and len(phi) == g1.order
        and sorted(phi.tolist()) == list(range(g2.order))
        and is_homomorphism(g1, g2, phi)
    )


def find_isomorphism(g1: Group, g2: Group) -> np.ndarray | None:
    """An isomorphism g1 -> g2 as an image array, or None if none exists."""
    if fingerprint(g1) != fingerprint(g2):
        return None
    n = g1.order
    if n == 1:
        return np.zeros(1, dtype=np.int64)
    sig1, _ = _signatures(g1)
    sig2, _ = _signatures(g2)
    # signature multisets must agree before any search
    if sorted(map(tuple, sig1.tolist())) != sorted(map(tuple, sig2.tolist())):
        return None
    gens = _search_generators(g1, g2)
    by_sig = defaultdict(list)
    for x, s in enumerate(map(tuple, sig2.tolist())):
        by_sig[s].append(x)
    candidates = [by_sig[tuple(sig1[s].tolist())] for s in gens]
    rows1 = g1.table.tolist()
    rows2 = g2.table.tolist()
    phi = [-1] * n
    phi[0] = 0
    used = [False] * n
    used[0] = True
    found = _extend(rows1, rows2, gens, candidates, 0, phi, used, [0])
    if found is None:
        return None
    witness = np.array(found, dtype=np.int64)
    assert verify_isomorphism(g1, g2, witness), "isomorphism witness failed verification"
    return witness


def _search_generators(g1: Group, g2: Group) -> list[int]:
    # high order first keeps the generating set short; rare signatures break ties
    sig1, _ = _signatures(g1)
    sig2, _ = _signatures(g2)
    counts = defaultdict(int)
    for s in map(tuple, sig2.tolist()):
        counts[s] += 1
    key = {x: (-int(g1.element_orders[x]), counts[tuple(sig1[x].tolist())], x) for x in range(1, g1.order)}
    gens: list[int] = []
    current = np.array([0])
    inside = np.zeros(g1.order, dtype=bool)
    inside[0] = True
    while len(current) < g1.order:
        a = min((x for x in range(1, g1.order) if not inside[x]), key=key.__getitem__)
        gens.append(a)
        current = generate(g1.table, gens, base=current)
        inside[current] = True
    return gens


def _extend(rows1, rows2, gens, candidates, k, phi, used, domain):
    """Assign an image to gens[k] and propagate over <gens[:k+1]>."""
    if k == len(gens):
        return list(phi)
    s = gens[k]
    inside = set(domain)
    depth = _relative_order(rows1, s, inside.__contains__)
    for t in candidates[k]:
        if used[t]:
            continue
        # s and t must first re-enter the current domain and its image at the same power
        if _relative_order(rows2, t, used.__getitem__) != depth:
            continue
        new_phi = list(phi)
        new_used = list(used)
        new_domain = _propagate(rows1, rows2, gens[:k + 1], s, t, new_phi, new_used, domain)
        if new_domain is None:
            continue
        result = _extend(rows1, rows2, gens, candidates, k + 1, new_phi, new_used, new_domain)
        if result is not None:
            return result
    return None


def _relative_order(rows, x, member) -> int:
    """Least m >= 1 with x^m in the subgroup recognised by member."""
    m, y = 1, x
    while not member(y):
        y = rows[y][x]
        m += 1
    return m


def _propagate(rows1, rows2, gens, s, t, phi, used, domain):
    """Extend phi from H = domain to <H, s> with s -> t; None on inconsistency."""
    images = {g: phi[g] for g in gens[:-1]}
    images[s] = t
    dom = list(domain)
    # every element x of the old domain already satisfies phi(x g) = phi(x) phi(g)
    # for old generators; re-run the closure with the new generator included
    queue = list(dom)
    i = 0
    while i < len(queue):
        x = queue[i]
        i += 1
        px = phi[x]
        row = rows1[x]
        prow = rows2[px]
        for g in gens:
            y = row[g]
            py = prow[images[g]]
            if phi[y] == -1:
                if used[py]:
                    return None
                phi[y] = py
                used[py] = True
                queue.append(y)
            elif phi[y] != py:
                return None
    return queue


def is_isomorphic(g1: Group, g2: Group) -> bool:
    f1, f2 = fingerprint(g1), fingerprint(g2)
    if f1 != f2:
        return False
    if f1.abelian:
        return True  # equal abelian types
    return find_isomorphism(g1, g2) is not None


def partition_classes(groups: Sequence[Group], keys: Sequence[Hashable] | None = None,
                      spot_checks: int = 20, seed: int = 0) -> list[list[int]]:
    """Split ``groups`` into isomorphism classes (lists of positions).

    Classes are sorted by (order, fingerprint, smallest key) and each class
    lists positions by key, so the result does not depend on input order
    when ``keys`` are supplied.
    """
    if keys is None:
        keys = list(range(len(groups)))
    order = sorted(range(len(groups)), key=lambda i: keys[i])
    buckets: dict[Fingerprint, list[list[int]]] = defaultdict(list)
    for i in order:
        fp = fingerprint(groups[i])
        for cls in buckets[fp]:
            if fp.abelian or find_isomorphism(groups[cls[0]], groups[i]) is not None:
                cls.append(i)
                break
        else:
            buckets[fp].append([i])
    classes = [cls for fp in buckets for cls in buckets[fp]]
    classes.sort(key=lambda c: (fingerprint(groups[c[0]]).sort_key(), keys[c[0]]))
    _spot_check(groups, classes, spot_checks, seed)
    return classes


def _spot_check(groups, classes, count, seed) -> None:
    """Transitivity sample: random member pairs of one class are isomorphic."""
    rng = random.Random(seed)
    multi = [c for c in classes if len(c) > 1]
    for _ in range(count if multi else 0):
        cls = rng.choice(multi)
        a, b = rng.sample(cls, 2)
        assert is_isomorphic(groups[a], groups[b]), "isomorphism classes are not transitive"

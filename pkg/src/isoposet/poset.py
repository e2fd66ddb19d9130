"""Finite posets, the isomorphism-class poset Iso(G), and lattice properties."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import NotALattice, NotBounded
from .group_core import Group, factorize
from .grpiso import Fingerprint, fingerprint, partition_classes
from .subgrp import SubgroupLattice


class Poset:
    """A finite poset given by its order matrix ``leq[a, b] == (a <= b)``."""

    def __init__(self, leq, labels: Sequence[str] | None = None, check: bool = True):
        leq = np.array(leq, dtype=bool)
        leq.setflags(write=False)
        self.leq = leq
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(len(leq)))
        if check:
            _check_order(leq)
        self._meet = self._join = None

    @property
    def size(self) -> int:
        return len(self.leq)

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"Poset(size={self.size}, labels={self.labels!r})"

    @property
    def hasse(self) -> list[tuple[int, int]]:
        lt = self.leq & ~np.eye(self.size, dtype=bool)
        f = lt.astype(np.float32)
        cover = lt & ~((f @ f) > 0)
        return [(int(a), int(b)) for a, b in zip(*np.nonzero(cover))]

    def bottom(self) -> int | None:
        hits = np.flatnonzero(self.leq.all(axis=1))
        return int(hits[0]) if len(hits) else None

    def top(self) -> int | None:
        hits = np.flatnonzero(self.leq.all(axis=0))
        return int(hits[0]) if len(hits) else None

    def induced(self, elements: Sequence[int]) -> "Poset":
        idx = np.asarray(elements, dtype=int)
        return Poset(self.leq[np.ix_(idx, idx)], [self.labels[i] for i in idx], check=False)

    def _bound_tables(self):
        if self._meet is None:
            self._meet = _glb_table(self.leq)
            self._join = _glb_table(self.leq.T)
        return self._meet, self._join

    def meet(self, a: int, b: int) -> int | None:
        m = int(self._bound_tables()[0][a, b])
        return None if m < 0 else m

    def join(self, a: int, b: int) -> int | None:
        j = int(self._bound_tables()[1][a, b])
        return None if j < 0 else j

    def is_lattice(self) -> bool:
        meet, join = self._bound_tables()
        return bool((meet >= 0).all() and (join >= 0).all())

    def height(self) -> int:
        """Number of edges in a longest chain."""
        order = np.argsort(self.leq.sum(axis=0), kind="stable")  # by down-set size
        depth = np.zeros(self.size, dtype=int)
        for v in order:
            below = np.flatnonzero(self.leq[:, v])
            below = below[below != v]
            depth[v] = 1 + depth[below].max() if len(below) else 0
        return int(depth.max()) if self.size else 0

    def atoms(self) -> list[int]:
        b = self.bottom()
        return sorted({v for u, v in self.hasse if u == b})


def _check_order(leq: np.ndarray) -> None:
    n = len(leq)
    assert leq.shape == (n, n), "order matrix must be square"
    assert leq.diagonal().all(), "order relation is not reflexive"
    assert not (leq & leq.T & ~np.eye(n, dtype=bool)).any(), "order relation is not antisymmetric"
    f = leq.astype(np.float32)
    assert not (((f @ f) > 0) & ~leq).any(), "order relation is not transitive"


def _glb_table(leq: np.ndarray) -> np.ndarray:
    """Greatest lower bound of every pair, -1 where none exists."""
    n = len(leq)
    lower = leq[:, :, None] & leq[:, None, :]  # lower[x, a, b]: x <= a and x <= b
    lower = lower.transpose(1, 2, 0).reshape(n * n, n)
    # count[ab, m] = number of lower bounds of (a, b) below m
    count = lower.astype(np.float32) @ leq.astype(np.float32)
    size = lower.sum(axis=1)
    is_glb = lower & (count == size[:, None])
    out = np.where(is_glb.any(axis=1), is_glb.argmax(axis=1), -1)
    return out.reshape(n, n)


# ---------------------------------------------------------------------------
# Properties
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PropertyReport:
    is_lattice: bool
    is_chain: bool
    is_modular: bool
    is_distributive: bool
    is_complemented: bool
    height: int
    witness: dict[str, tuple] = field(default_factory=dict)


def properties(p: Poset) -> PropertyReport:
    """Lattice properties of a bounded poset; each failure carries the least witness."""
    if p.bottom() is None or p.top() is None:
        raise NotBounded("poset has no bottom or no top element")
    n = p.size
    witness: dict[str, tuple] = {}
    incomparable = ~(p.leq | p.leq.T)
    if incomparable.any():
        a, b = np.argwhere(incomparable)[0]
        witness["chain"] = (int(a), int(b))
    meet, join = p._bound_tables()
    no_meet, no_join = np.argwhere(meet < 0), np.argwhere(join < 0)
    if len(no_meet) or len(no_join):
        if len(no_meet):
            witness["no_meet"] = tuple(int(x) for x in no_meet[0])
        if len(no_join):
            witness["no_join"] = tuple(int(x) for x in no_join[0])
        pair = witness.get("no_meet", witness.get("no_join"))
        for key in ("lattice", "modular", "distributive", "complemented"):
            witness[key] = pair
        return PropertyReport(False, False, False, False, False, p.height(), witness)
    a, b, c = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    # modular law: a <= c implies a v (b ^ c) == (a v b) ^ c
    mod_fail = p.leq[a, c] & (join[a, meet[b, c]] != meet[join[a, b], c])
    if mod_fail.any():
        witness["modular"] = tuple(int(x) for x in np.argwhere(mod_fail)[0])
    dist_fail = meet[a, join[b, c]] != join[meet[a, b], meet[a, c]]
    if dist_fail.any():
        witness["distributive"] = tuple(int(x) for x in np.argwhere(dist_fail)[0])
    bot, top = p.bottom(), p.top()
    has_complement = ((meet == bot) & (join == top)).any(axis=1)
    if not has_complement.all():
        witness["complemented"] = (int(np.flatnonzero(~has_complement)[0]),)
    return PropertyReport(
        is_lattice=True,
        is_chain="chain" not in witness,
        is_modular="modular" not in witness,
        is_distributive="distributive" not in witness,
        is_complemented="complemented" not in witness,
        height=p.height(),
        witness=witness,
    )


def complements(p: Poset, a: int) -> list[int]:
    meet, join = p._bound_tables()
    return [int(b) for b in np.flatnonzero((meet[a] == p.bottom()) & (join[a] == p.top()))]


def _brute_glb(leq: np.ndarray, a: int, b: int) -> int | None:
    lower = [x for x in range(len(leq)) if leq[x, a] and leq[x, b]]
    best = [m for m in lower if all(leq[x, m] for x in lower)]
    return best[0] if best else None


def validate_witnesses(p: Poset, report: PropertyReport) -> bool:
    """Re-check every witness of ``report`` against the order matrix alone."""
    leq = p.leq

    def meet(a, b):
        return _brute_glb(leq, a, b)

    def join(a, b):
        return _brute_glb(leq.T, a, b)

    for key, w in report.witness.items():
        if key == "chain":
            ok = not leq[w[0], w[1]] and not leq[w[1], w[0]]
        elif key == "no_meet":
            ok = meet(*w) is None
        elif key == "no_join":
            ok = join(*w) is None
        elif key == "lattice" or not report.is_lattice:
            ok = meet(*w) is None or join(*w) is None
        elif key == "modular":
            a, b, c = w
            ok = leq[a, c] and join(a, meet(b, c)) != meet(join(a, b), c)
        elif key == "distributive":
            a, b, c = w
            ok = meet(a, join(b, c)) != join(meet(a, b), meet(a, c))
        elif key == "complemented":
            (a,) = w
            ok = not any(meet(a, x) == p.bottom() and join(a, x) == p.top() for x in range(p.size))
        else:
            ok = False
        if not ok:
            return False
    return True


def find_sublattice(p: Poset, shape: str) -> tuple[int, ...] | None:
    """Least sublattice of the given shape.

    N5 is returned as (bottom, a, b, c, top) with a < b and c beside both;
    M3 as (bottom, x, y, z, top) with three pairwise incomparable atoms.
    """
    if not p.is_lattice():
        raise NotALattice("sublattice search needs a lattice")
    meet, join = p._bound_tables()
    leq = p.leq
    n = p.size
    shape = shape.upper()
    if shape == "N5":
        for a, b in itertools.permutations(range(n), 2):
            if not leq[a, b]:
                continue
            for c in range(n):
                if leq[a, c] or leq[c, a] or leq[b, c] or leq[c, b]:
                    continue
                o, i = meet[a, c], join[a, c]
                if meet[b, c] == o and join[b, c] == i:
                    return (int(o), a, b, c, int(i))
        return None
    if shape == "M3":
        for x, y, z in itertools.combinations(range(n), 3):
            o, i = meet[x, y], join[x, y]
            if o in (x, y) or i in (x, y):
                continue
            if meet[x, z] == meet[y, z] == o and join[x, z] == join[y, z] == i and z not in (o, i):
                return (int(o), x, y, z, int(i))
        return None
    raise ValueError(f"unknown sublattice shape {shape!r}")


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------


def chain(k: int, labels: Sequence[str] | None = None) -> Poset:
    """Chain with k elements."""
    ar = np.arange(k)
    return Poset(ar[:, None] <= ar[None, :], labels)


def product(p1: Poset, p2: Poset, cap: int = 100_000) -> Poset:
    if p1.size * p2.size > cap:
        raise ValueError(f"product poset of size {p1.size * p2.size} exceeds cap {cap}")
    leq = p1.leq[:, None, :, None] & p2.leq[None, :, None, :]
    n = p1.size * p2.size
    labels = [f"({a}, {b})" for a in p1.labels for b in p2.labels]
    return Poset(leq.reshape(n, n), labels, check=False)


def _element_invariants(p: Poset) -> list[tuple]:
    lt = p.leq & ~np.eye(p.size, dtype=bool)
    f = lt.astype(np.float32)
    cover = lt & ~((f @ f) > 0)
    depth = np.zeros(p.size, dtype=int)
    for v in np.argsort(p.leq.sum(axis=0), kind="stable"):
        below = np.flatnonzero(lt[:, v])
        depth[v] = 1 + depth[below].max() if len(below) else 0
    return [
        (int(depth[v]), int(p.leq[:, v].sum()), int(p.leq[v].sum()),
         int(cover[:, v].sum()), int(cover[v].sum()))
        for v in range(p.size)
    ]


def invariant_signature(p: Poset) -> tuple:
    """Isomorphism-invariant summary; unequal signatures rule out an isomorphism."""
    return (p.size, len(p.hasse), tuple(sorted(_element_invariants(p))))


def find_poset_isomorphism(p1: Poset, p2: Poset) -> np.ndarray | None:
    """Order isomorphism p1 -> p2 as an image array, or None."""
    if p1.size != p2.size:
        return None
    inv1, inv2 = _element_invariants(p1), _element_invariants(p2)
    if sorted(inv1) != sorted(inv2):
        return None
    n = p1.size
    order = sorted(range(n), key=lambda v: (inv1[v], v))
    cands = {v: [w for w in range(n) if inv2[w] == inv1[v]] for v in order}
    l1, l2 = p1.leq, p2.leq
    f = [-1] * n
    used = [False] * n

    def assign(k: int) -> bool:
        if k == n:
            return True
        v = order[k]
        for w in cands[v]:
            if used[w]:
                continue
            if all(l1[u, v] == l2[f[u], w] and l1[v, u] == l2[w, f[u]] for u in order[:k]):
                f[v], used[w] = w, True
                if assign(k + 1):
                    return True
                f[v], used[w] = -1, False
        return False

    if not assign(0):
        return None
    witness = np.array(f)
    assert verify_poset_isomorphism(p1, p2, witness), "poset isomorphism witness failed"
    return witness


def verify_poset_isomorphism(p1: Poset, p2: Poset, f) -> bool:
    f = np.asarray(f)
    return (
        p1.size == p2.size == len(f)
        and sorted(f.tolist()) == list(range(p2.size))
        and bool(np.array_equal(p1.leq, p2.leq[np.ix_(f, f)]))
    )


def poset_isomorphic(p1: Poset, p2: Poset) -> bool:
    return find_poset_isomorphism(p1, p2) is not None


def divisor_poset(n: int) -> Poset:
    divs = [d for d in range(1, n + 1) if n % d == 0]
    leq = [[b % a == 0 for b in divs] for a in divs]
    return Poset(leq, [str(d) for d in divs])


# ---------------------------------------------------------------------------
# Iso(G)
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class IsoPoset:
    poset: Poset
    classes: tuple[tuple[int, ...], ...]
    representative: tuple[int, ...]
    class_fingerprint: tuple[Fingerprint, ...]
    lattice: SubgroupLattice | None = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return self.poset.size

    def class_of(self, sid: int) -> int:
        return next(k for k, members in enumerate(self.classes) if sid in members)


def build_iso_poset(lat: SubgroupLattice, namer: Callable[[Group], str] | None = None) -> IsoPoset:
    """Classes of isomorphic subgroups ordered by 'some member inside some member'."""
    if namer is None:
        from .naming import describe
        namer = describe
    # conjugate subgroups are isomorphic: classify one subgroup per conjugacy class
    conj = lat.conjugacy_class_ids
    reps = sorted({int(np.flatnonzero(conj == c)[0]) for c in set(conj.tolist())})
    groups = [lat.group(r) for r in reps]
    parts = partition_classes(groups, keys=reps)
    classes = []
    for part in parts:
        members = np.flatnonzero(np.isin(conj, [conj[reps[i]] for i in part]))
        classes.append(tuple(int(m) for m in members))
    ind = np.zeros((len(classes), len(lat)), dtype=np.float32)
    for k, members in enumerate(classes):
        ind[k, list(members)] = 1.0
    leq = (ind @ lat.leq.astype(np.float32) @ ind.T) > 0
    representative = tuple(c[0] for c in classes)
    labels = [namer(lat.group(r)) for r in representative]
    ip = IsoPoset(
        poset=Poset(leq, labels),
        classes=tuple(classes),
        representative=representative,
        class_fingerprint=tuple(fingerprint(lat.group(r)) for r in representative),
        lattice=lat,
    )
    _check_iso_poset(ip, lat)
    return ip


def _check_iso_poset(ip: IsoPoset, lat: SubgroupLattice) -> None:
    ids = sorted(i for c in ip.classes for i in c)
    assert ids == list(range(len(lat))), "classes do not partition the subgroups"
    assert ip.classes[0] == (0,) and ip.classes[-1] == (lat.top,), "[1] and [G] must be the ends"
    orders = lat.orders[list(ip.representative)]
    strict = ip.poset.leq & ~np.eye(ip.size, dtype=bool)
    for a, b in zip(*np.nonzero(strict)):
        assert orders[b] % orders[a] == 0 and orders[b] > orders[a], "order map is not isotone"


def conjugacy_class_poset(lat: SubgroupLattice) -> Poset:
    """C(G): conjugacy classes of subgroups, ordered by containment of some members."""
    conj = lat.conjugacy_class_ids
    k = int(conj.max()) + 1
    ind = np.zeros((k, len(lat)), dtype=np.float32)
    ind[conj, np.arange(len(lat))] = 1.0
    leq = (ind @ lat.leq.astype(np.float32) @ ind.T) > 0
    first = [int(np.flatnonzero(conj == c)[0]) for c in range(k)]
    return Poset(leq, [f"|H|={lat.orders[i]}" for i in first])


def subgroup_poset(lat: SubgroupLattice) -> Poset:
    """L(G) itself as an abstract poset (ids as labels)."""
    return Poset(lat.leq, check=False)


def solitary_subposet(ip: IsoPoset) -> Poset:
    """Induced subposet of the classes with exactly one member."""
    return ip.poset.induced([k for k, members in enumerate(ip.classes) if len(members) == 1])


def pq_violation(lat: SubgroupLattice) -> tuple[int, int] | None:
    """A (cyclic, non-abelian) pair of order-pq subgroups, or None when none exists."""
    primes = sorted(factorize(lat.parent.order))
    for p, q in itertools.combinations(primes, 2):
        cyclic, nonabelian = [], []
        for sid in np.flatnonzero(lat.orders == p * q):
            g = lat.group(int(sid))
            fp = fingerprint(g)
            # abelian of square-free order is cyclic
            (cyclic if fp.abelian else nonabelian).append(int(sid))
        if cyclic and nonabelian:
            return (cyclic[0], nonabelian[0])
    return None


def pq_property(lat: SubgroupLattice) -> bool:
    return pq_violation(lat) is None

"""Exhaustive subgroup lattices L(G) of table groups."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import SubgroupCountCapExceeded
from .group_core import Group, factorize, generate, restrict

SUBGROUP_CAP = 200_000


def _mask(elements: np.ndarray, n: int) -> int:
    bits = np.zeros(n, dtype=bool)
    bits[elements] = True
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def _prime_power(k: int) -> bool:
    return k > 1 and len(factorize(k)) == 1


@dataclass(frozen=True, eq=False)
class SubgroupSet:
    members: int  # bit i set iff element i belongs to the subgroup
    elements: np.ndarray = field(repr=False)
    generators: tuple[int, ...] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, element: int) -> bool:
        return bool(self.members >> element & 1)


@dataclass(frozen=True)
class LatticeMeta:
    frattini_id: int
    is_clt: bool
    jordan_dedekind: bool
    minimal_normal_ids: tuple[int, ...]


class SubgroupLattice:
    """All subgroups of ``parent`` with inclusion order.

    Ids are sorted by (order, bit-vector): id 0 is the trivial subgroup and
    the last id is the whole group.
    """

    def __init__(self, parent: Group, subgroups: list[SubgroupSet]):
        self.parent = parent
        self.subgroups = subgroups
        self.index = {s.members: i for i, s in enumerate(subgroups)}
        n = parent.order
        member = np.zeros((len(subgroups), n), dtype=np.float32)
        for i, s in enumerate(subgroups):
            member[i, s.elements] = 1.0
        # A <= B iff A has no element outside B
        self.leq = (member @ (1.0 - member).T) == 0
        self.orders = np.array([s.order for s in subgroups])
        lt = self.leq & ~np.eye(len(subgroups), dtype=bool)
        lt_f = lt.astype(np.float32)
        cover = lt & ~((lt_f @ lt_f) > 0)
        self.hasse = [(int(a), int(b)) for a, b in zip(*np.nonzero(cover))]
        self.conjugacy_class_ids, self.normal_flags = self._conjugacy()
        self._groups: dict[int, Group] = {}

    def __len__(self) -> int:
        return len(self.subgroups)

    @property
    def top(self) -> int:
        return len(self.subgroups) - 1

    def id_of(self, elements) -> int:
        return self.index[_mask(np.asarray(elements), self.parent.order)]

    def _conjugacy(self):
        g = self.parent
        t, inv = g.table, g.inverse
        gens = group_generators(g)
        images = []
        for s in gens:
            conj = t[t[inv[s]], s]  # x -> s^-1 x s
            images.append([self.index[_mask(conj[sub.elements], g.order)] for sub in self.subgroups])
        parent = list(range(len(self.subgroups)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for img in images:
            for i, j in enumerate(img):
                a, b = find(i), find(j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        roots = [find(i) for i in range(len(parent))]
        numbering: dict[int, int] = {}
        class_ids = np.array([numbering.setdefault(r, len(numbering)) for r in roots])
        sizes = np.bincount(class_ids)
        return class_ids, sizes[class_ids] == 1

    def group(self, sid: int) -> Group:
        if sid not in self._groups:
            self._groups[sid] = restrict(self.parent, self.subgroups[sid].elements)
        return self._groups[sid]

    def maximal_ids(self) -> list[int]:
        return [a for a, b in self.hasse if b == self.top]

    def meet(self, a: int, b: int) -> int:
        return self.index[self.subgroups[a].members & self.subgroups[b].members]

    def join(self, a: int, b: int) -> int:
        upper = np.flatnonzero(self.leq[a] & self.leq[b])
        return int(upper[np.argmin(self.orders[upper])])

    def complements(self, sid: int) -> list[int]:
        """Ids K with H meet K trivial and H join K = G."""
        top = self.top
        if top == 0:
            return [0]
        maxes = self.maximal_ids()
        above = self.leq[:, maxes]  # which maximal subgroups contain each id
        trivial_meet = np.array([(s.members & self.subgroups[sid].members) == 1 for s in self.subgroups])
        full_join = ~(above & above[sid]).any(axis=1)
        return [int(k) for k in np.flatnonzero(trivial_meet & full_join)]

    def is_complemented(self) -> tuple[bool, int | None]:
        for sid in range(len(self)):
            if not self.complements(sid):
                return False, sid
        return True, None


def group_generators(g: Group) -> list[int]:
    """Greedy generating sequence: each element enlarges the generated subgroup."""
    gens: list[int] = []
    current = np.array([0])
    orders = g.element_orders
    # large element orders first keeps the sequence short
    candidates = sorted(range(1, g.order), key=lambda a: (-int(orders[a]), a))
    while len(current) < g.order:
        inside = np.zeros(g.order, dtype=bool)
        inside[current] = True
        a = next(c for c in candidates if not inside[c])
        gens.append(a)
        current = generate(g.table, gens, base=current)
    return gens


def enumerate_subgroups(g: Group, cap: int = SUBGROUP_CAP) -> SubgroupLattice:
    """All subgroups, as joins of cyclic prime-power seeds taken in index order.

    Every subgroup is generated by the seeds it contains, so it is reached by
    adding those seeds in increasing index.  ``last[H]`` is the smallest final
    seed index over the generating paths found so far; H only needs joining
    with seeds above it, and is re-queued when a cheaper path shows up.
    """
    n = g.order
    rows = g.table.tolist()
    cols = g.table.T.tolist()
    bit = [1 << x for x in range(n)]
    orders = g.element_orders.tolist()
    seeds: list[tuple[int, int]] = []
    covered = 1  # elements already known to generate a seed
    for a in sorted(range(1, n), key=lambda x: (-orders[x], x)):
        if covered >> a & 1 or not _prime_power(orders[a]):
            continue
        mask, x = 1, a
        while x:
            mask |= bit[x]
            if orders[x] == orders[a]:
                covered |= bit[x]
            x = rows[x][a]
        seeds.append((a, mask))
    found: dict[int, tuple[int, ...]] = {1: ()}  # mask -> generators
    last = {1: -1}
    queue = [(1, -1, len(seeds))]
    i = 0
    while i < len(queue):
        h, lo, hi = queue[i]
        i += 1
        h_gens = found[h]
        h_elems = None
        for k in range(lo + 1, hi):
            c, cmask = seeds[k]
            if h >> c & 1:
                continue
            mask = cmask | h
            if mask not in found:
                if h_elems is None:
                    h_elems = _bits(h, n)
                mask = _join(rows, cols, bit, h_elems, h, h_gens + (c,))
            prev = last.get(mask)
            if prev is None:
                found[mask] = h_gens + (c,)
                last[mask] = k
                queue.append((mask, k, len(seeds)))
                if len(found) > cap:
                    raise SubgroupCountCapExceeded(f"more than {cap} subgroups in group of order {n}")
            elif k < prev:
                last[mask] = k
                queue.append((mask, k, prev + 1))
    subs = []
    for mask, gens in found.items():
        elems = np.array(_bits(mask, n))
        elems.setflags(write=False)
        subs.append(SubgroupSet(mask, elems, gens))
    subs.sort(key=lambda s: (s.order, s.members))
    _check_lagrange(subs, n)
    return SubgroupLattice(g, subs)


def _bits(mask: int, n: int) -> list[int]:
    return [x for x in range(n) if mask >> x & 1]


def _join(rows, cols, bit, h_elems, h_mask, gens) -> int:
    """Mask of <H, gens> as a union of right cosets Hx (gens must generate H too)."""
    mask = h_mask
    reps = [0]
    for r in reps:
        row = rows[r]
        for s in gens:
            x = row[s]
            if not mask >> x & 1:
                col = cols[x]
                for h in h_elems:
                    mask |= bit[col[h]]
                reps.append(x)
    return mask


def _check_lagrange(subs, n: int) -> None:
    for s in subs:
        assert n % s.order == 0, f"subgroup order {s.order} does not divide {n}"
    assert subs[0].order == 1 and subs[-1].order == n


def lattice_meta(lat: SubgroupLattice) -> LatticeMeta:
    n = lat.parent.order
    maxes = lat.maximal_ids()
    frat = lat.subgroups[lat.top].members
    for m in maxes:
        frat &= lat.subgroups[m].members
    divisors = {d for d in range(1, n + 1) if n % d == 0}
    longest = np.zeros(len(lat), dtype=int)
    shortest = np.zeros(len(lat), dtype=int)
    preds: dict[int, list[int]] = {}
    for a, b in lat.hasse:
        preds.setdefault(b, []).append(a)
    for v in range(1, len(lat)):  # ids are topologically sorted by order
        ps = preds[v]
        longest[v] = 1 + max(longest[p] for p in ps)
        shortest[v] = 1 + min(shortest[p] for p in ps)
    normal = [i for i in range(1, len(lat)) if lat.normal_flags[i]]
    minimal = tuple(i for i in normal if not any(j != i and lat.leq[j, i] for j in normal))
    return LatticeMeta(
        frattini_id=lat.index[frat],
        is_clt=set(int(o) for o in lat.orders) == divisors,
        jordan_dedekind=bool(longest[lat.top] == shortest[lat.top]),
        minimal_normal_ids=minimal,
    )


def subgroup_as_group(lat: SubgroupLattice, sid: int) -> Group:
    return lat.group(sid)

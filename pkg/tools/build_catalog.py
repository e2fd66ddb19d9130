"""Regenerate src/isoposet/data/catalog.txt.

Orders <= 24 are complete and numbered as in the SmallGroups library.
Larger orders hold named extras numbered 1.. in the order listed here.

    python tools/build_catalog.py [--check]
"""
from __future__ import annotations

import argparse
import itertools
import sys
from pathlib import Path

import numpy as np

from isoposet.catalog import CatalogEntry, parse_catalog
from isoposet.group_core import (
    Abelian, Alternating, Cyclic, Dicyclic, Dihedral, Group, Heisenberg, Metacyclic, Product,
    Semidihedral, Symmetric, construct, format_cycles, modular_group, semidirect_product,
)
from isoposet.grpiso import is_isomorphic
from isoposet.naming import abelian_name
from isoposet.subgrp import group_generators

OUT = Path(__file__).resolve().parents[1] / "src" / "isoposet" / "data" / "catalog.txt"
COMPLETE_THROUGH = 24
# number of groups of each order (OEIS A000001)
GROUP_COUNTS = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15]


def _abelian_cycles(factors):
    gens, start = [], 0
    degree = sum(f for f in factors if f > 1)
    for f in factors:
        if f == 1:
            continue
        img = list(range(degree))
        for k in range(f):
            img[start + k] = start + (k + 1) % f
        gens.append(tuple(img))
        start += f
    return degree, gens


def perm_rep(spec, group: Group):
    """A faithful permutation representation (degree, generators)."""
    if isinstance(spec, (Cyclic, Abelian)):
        factors = (spec.n,) if isinstance(spec, Cyclic) else spec.factors
        degree, gens = _abelian_cycles(factors)
        return max(degree, 1), gens
    if isinstance(spec, Dihedral) and spec.order >= 6:
        n = spec.order // 2
        rot = tuple((i + 1) % n for i in range(n))
        ref = tuple((-i) % n for i in range(n))
        return n, [rot, ref]
    if isinstance(spec, (Symmetric, Alternating)):
        d = spec.degree
        if isinstance(spec, Symmetric):
            gens = [tuple([1, 0] + list(range(2, d))), tuple(list(range(1, d)) + [0])]
        else:
            gens = []
            for k in range(2, d):
                img = list(range(d))
                img[0], img[1], img[k] = 1, k, 0
                gens.append(tuple(img))
        return d, gens
    if isinstance(spec, Product):
        degree, gens = 0, []
        for f in spec.factors:
            fd, fg = perm_rep(f, construct(f))
            for g in fg:
                img = list(range(degree)) + [degree + x for x in g]
                gens.append(img)
            degree += fd
        return degree, [tuple(g + list(range(len(g), degree))) for g in gens]
    # right regular representation x -> x * s
    return group.order, [tuple(int(v) for v in group.table[:, s]) for s in group_generators(group)]


def _z(n):
    return construct(Cyclic(n))


def _sl23() -> Group:
    mats = [m for m in itertools.product(range(3), repeat=4) if (m[0] * m[3] - m[1] * m[2]) % 3 == 1]
    mats.remove((1, 0, 0, 1))
    mats.insert(0, (1, 0, 0, 1))
    index = {m: i for i, m in enumerate(mats)}

    def mul(p, q):
        a, b, c, d = p
        e, f, g, h = q
        return ((a * e + b * g) % 3, (a * f + b * h) % 3, (c * e + d * g) % 3, (c * f + d * h) % 3)

    return Group([[index[mul(p, q)] for q in mats] for p in mats])


def _z4z2_action(phi):
    # Z4 x Z2 indexed x * 2 + y
    return [list(range(8)), [phi(k // 2, k % 2) for k in range(8)]]


def special_groups():
    z4z2 = construct(Abelian((4, 2)))
    g16_3 = semidirect_product(z4z2, _z(2), _z4z2_action(lambda x, y: x * 2 + (x + y) % 2))
    g16_13 = semidirect_product(z4z2, _z(2), _z4z2_action(lambda x, y: ((x + 2 * y) % 4) * 2 + y))
    z3z3 = construct(Abelian((3, 3)))
    g18_4 = semidirect_product(z3z3, _z(2), [list(range(9)), [((-(k // 3)) % 3) * 3 + (-k) % 3 for k in range(9)]])
    d8 = construct(Dihedral(8))  # x^i y^j at index j * 4 + i
    action = [[0, 1, 2] if (h % 4) % 2 == 0 else [0, 2, 1] for h in range(8)]
    g24_8 = semidirect_product(_z(3), d8, action)
    return {"16_3": g16_3, "16_13": g16_13, "18_4": g18_4, "24_3": _sl23(), "24_8": g24_8}


def A(*factors):
    return Abelian(tuple(factors))


def P(*factors):
    return Product(tuple(factors))


def complete_list(special):
    """(order, index, name, spec-or-group) for every group of order <= 24."""
    rows = [(1, 1, A())]
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23):
        rows.append((p, 1, A(p)))
    rows += [
        (4, 1, A(4)), (4, 2, A(2, 2)),
        (6, 1, Symmetric(3), "S3"), (6, 2, A(6)),
        (8, 1, A(8)), (8, 2, A(4, 2)), (8, 3, Dihedral(8)), (8, 4, Dicyclic(8)), (8, 5, A(2, 2, 2)),
        (9, 1, A(9)), (9, 2, A(3, 3)),
        (10, 1, Dihedral(10)), (10, 2, A(10)),
        (12, 1, Dicyclic(12)), (12, 2, A(12)), (12, 3, Alternating(4)), (12, 4, Dihedral(12)), (12, 5, A(6, 2)),
        (14, 1, Dihedral(14)), (14, 2, A(14)),
        (15, 1, A(15)),
        (16, 1, A(16)), (16, 2, A(4, 4)), (16, 3, special["16_3"], "(Z4xZ2)|xZ2"),
        (16, 4, Metacyclic(4, 4, 3), "ZM(4,4,3)"), (16, 5, A(8, 2)), (16, 6, modular_group(16), "M16"),
        (16, 7, Dihedral(16)), (16, 8, Semidihedral(16)), (16, 9, Dicyclic(16)), (16, 10, A(4, 2, 2)),
        (16, 11, P(Dihedral(8), Cyclic(2)), "D8xZ2"), (16, 12, P(Dicyclic(8), Cyclic(2)), "Q8xZ2"),
        (16, 13, special["16_13"], "Z4oD8"), (16, 14, A(2, 2, 2, 2)),
        (18, 1, Dihedral(18)), (18, 2, A(18)), (18, 3, P(Symmetric(3), Cyclic(3)), "S3xZ3"),
        (18, 4, special["18_4"], "(Z3xZ3)|xZ2"), (18, 5, A(6, 3)),
        (20, 1, Dicyclic(20)), (20, 2, A(20)), (20, 3, Metacyclic(5, 4, 2), "ZM(5,4,2)"),
        (20, 4, Dihedral(20)), (20, 5, A(10, 2)),
        (21, 1, Metacyclic(7, 3, 2), "ZM(7,3,2)"), (21, 2, A(21)),
        (22, 1, Dihedral(22)), (22, 2, A(22)),
        (24, 1, Metacyclic(3, 8, 2), "ZM(3,8,2)"), (24, 2, A(24)), (24, 3, special["24_3"], "SL(2,3)"),
        (24, 4, Dicyclic(24)), (24, 5, P(Symmetric(3), Cyclic(4)), "S3xZ4"), (24, 6, Dihedral(24)),
        (24, 7, P(Dicyclic(12), Cyclic(2)), "Q12xZ2"), (24, 8, special["24_8"], "Z3|xD8"),
        (24, 9, A(12, 2)), (24, 10, P(Dihedral(8), Cyclic(3)), "D8xZ3"),
        (24, 11, P(Dicyclic(8), Cyclic(3)), "Q8xZ3"), (24, 12, Symmetric(4), "S4"),
        (24, 13, P(Alternating(4), Cyclic(2)), "A4xZ2"), (24, 14, P(Dihedral(12), Cyclic(2)), "D12xZ2"),
        (24, 15, A(6, 2, 2)),
    ]
    return rows


def extras():
    """Named groups above the completeness bound."""
    out = []
    out += [(Dihedral(2 * n), None) for n in range(13, 41)]
    out += [(Dicyclic(28), None), (Dicyclic(32), None), (Dicyclic(64), None)]
    out += [(Semidihedral(32), None), (Semidihedral(64), None)]
    out += [(modular_group(27), "M27"), (modular_group(32), "M32"), (modular_group(64), "M64")]
    out += [(Heisenberg(3), "Heis(3)"), (Heisenberg(5), "Heis(5)")]
    out += [(Metacyclic(*mnr), "ZM({},{},{})".format(*mnr))
            for mnr in [(13, 3, 3), (7, 6, 3), (11, 5, 3), (5, 8, 2), (7, 9, 2), (19, 3, 7)]]
    out += [(Alternating(5), "A5"), (Symmetric(5), "S5"), (P(Symmetric(4), Cyclic(2)), "S4xZ2")]
    # p-groups up to 64
    out += [(A(*f), None) for f in [
        (25,), (5, 5), (27,), (9, 3), (3, 3, 3), (49,), (7, 7),
        (32,), (16, 2), (8, 4), (8, 2, 2), (4, 4, 2), (4, 2, 2, 2), (2, 2, 2, 2, 2),
        (64,), (32, 2), (16, 4), (8, 8), (16, 2, 2), (4, 4, 4), (8, 4, 2),
    ]]
    out += [(P(Dihedral(8), Cyclic(4)), "D8xZ4"), (P(Dihedral(8), A(2, 2)), "D8xZ2xZ2"),
            (P(Dicyclic(8), Cyclic(4)), "Q8xZ4"), (P(Dicyclic(8), A(2, 2)), "Q8xZ2xZ2"),
            (P(Dihedral(16), Cyclic(2)), "D16xZ2"), (P(Dicyclic(16), Cyclic(2)), "Q16xZ2"),
            (P(Semidihedral(16), Cyclic(2)), "SD16xZ2"), (P(modular_group(16), Cyclic(2)), "M16xZ2")]
    # nilpotent groups with two or more prime divisors
    out += [(P(Dicyclic(8), Cyclic(5)), "Q8xZ5"), (P(Dihedral(8), Cyclic(5)), "D8xZ5"),
            (P(Heisenberg(3), Cyclic(2)), "Heis(3)xZ2"), (P(modular_group(27), Cyclic(2)), "M27xZ2"),
            (P(Dicyclic(16), Cyclic(3)), "Q16xZ3"), (P(Dihedral(16), Cyclic(3)), "D16xZ3"),
            (P(Dihedral(8), Cyclic(9)), "D8xZ9"), (P(Dihedral(8), A(3, 3)), "D8xZ3xZ3"),
            (P(Dicyclic(8), Cyclic(15)), "Q8xZ15"), (P(Heisenberg(3), Cyclic(4)), "Heis(3)xZ4"),
            (P(Heisenberg(3), Cyclic(5)), "Heis(3)xZ5"), (P(Dicyclic(8), Cyclic(25)), "Q8xZ25")]
    # abelian groups up to 512
    out += [(A(*f), None) for f in [
        (36,), (18, 2), (12, 3), (6, 6), (48,), (24, 2), (12, 4), (12, 2, 2), (72,), (6, 6, 2),
        (81,), (9, 9), (3, 3, 3, 3), (100,), (10, 10), (125,), (5, 5, 5), (128,), (64, 2), (8, 8, 2),
        (144,), (12, 12), (18, 6, 2), (6, 6, 6), (243,), (27, 9), (256,), (16, 16), (512,), (32, 16),
        (128, 4), (8, 8, 8),
    ]]
    return out


def spec_name(spec) -> str:
    if isinstance(spec, Cyclic):
        return f"Z{spec.n}"
    if isinstance(spec, Abelian):
        from isoposet.group_core import factorize
        atype: dict[int, list[int]] = {}
        for f in spec.factors:
            for p, a in factorize(f).items():
                atype.setdefault(p, []).append(a)
        return abelian_name({p: tuple(sorted(v, reverse=True)) for p, v in atype.items()})
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
    raise ValueError(f"no default name for {spec!r}")


def entry_for(order, index, obj, name=None):
    group = obj if isinstance(obj, Group) else construct(obj)
    assert group.order == order, (order, index, group.order)
    spec = None if isinstance(obj, Group) else obj
    degree, gens = perm_rep(spec, group)
    name = name or spec_name(spec)
    entry = CatalogEntry(order, index, name, degree, tuple(format_cycles(g) for g in gens))
    assert is_isomorphic(entry.group(), group), f"{name}: permutation representation is wrong"
    return entry, group


def build() -> str:
    special = special_groups()
    entries: list[tuple[CatalogEntry, Group]] = []
    for row in complete_list(special):
        order, index, obj = row[:3]
        entries.append(entry_for(order, index, obj, row[3] if len(row) > 3 else None))
    next_index: dict[int, int] = {}
    for spec, name in extras():
        order = spec.order
        index = next_index[order] = next_index.get(order, 0) + 1
        entries.append(entry_for(order, index, spec, name))
    by_order: dict[int, list] = {}
    for e, g in entries:
        by_order.setdefault(e.order, []).append((e, g))
    for n in range(1, COMPLETE_THROUGH + 1):
        assert len(by_order[n]) == GROUP_COUNTS[n - 1], f"order {n}: {len(by_order[n])} entries"
    for n, items in by_order.items():
        for (e1, g1), (e2, g2) in itertools.combinations(items, 2):
            assert not is_isomorphic(g1, g2), f"{e1.name} and {e2.name} are isomorphic"
    lines = [
        "# Small-groups catalog: order:index:name:degree:generators (cycle notation, ';'-separated)",
        "# Orders <= 24 are complete and follow SmallGroups numbering; larger orders are",
        "# catalog-local extras numbered in insertion order.",
        f"complete: {COMPLETE_THROUGH}",
    ]
    lines += [e.to_line() for e, _ in sorted(entries, key=lambda eg: eg[0].key)]
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--check", action="store_true", help="fail if the shipped file is stale")
    args = ap.parse_args(argv)
    text = build()
    parse_catalog(text)  # round trip
    if args.check:
        if OUT.read_text() != text:
            print("catalog.txt is stale", file=sys.stderr)
            return 1
        print("catalog.txt is up to date")
        return 0
    OUT.write_text(text)
    print(f"wrote {OUT} ({text.count(chr(10)) - 4} entries)")
    return 0


if __name__ == "__main__":
    sys.exit(main())

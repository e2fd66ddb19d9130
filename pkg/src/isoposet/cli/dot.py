"""Graphviz rendering of Hasse diagrams."""
from __future__ import annotations

import numpy as np

from ..poset import Poset


def ranks(p: Poset) -> list[int]:
    """Length of the longest chain from a minimal element up to each element."""
    rank = [0] * p.size
    strict = p.leq & ~np.eye(p.size, dtype=bool)
    # elements sorted by number of elements below them form a linear extension
    for b in sorted(range(p.size), key=lambda x: int(p.leq[:, x].sum())):
        below = np.flatnonzero(strict[:, b])
        rank[b] = max((rank[a] + 1 for a in below), default=0)
    return rank


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(p: Poset, name: str = "poset") -> str:
    rank = ranks(p)
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;", "  node [shape=box, fontname=Helvetica];"]
    for i, label in enumerate(p.labels):
        lines.append(f"  n{i} [label={_quote(label)}];")
    for r in sorted(set(rank)):
        members = " ".join(f"n{i};" for i in range(p.size) if rank[i] == r)
        lines.append(f"  {{ rank=same; {members} }}")
    for a, b in p.hasse:
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"

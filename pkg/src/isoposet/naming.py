"""Human-readable names for small groups."""
from __future__ import annotations

import hashlib

from .group_core import Group
from .grpiso import fingerprint, is_isomorphic

_cache: dict = {}


def invariant_factors(atype: dict[int, tuple[int, ...]]) -> list[int]:
    width = max((len(parts) for parts in atype.values()), default=0)
    factors = []
    for i in range(width):
        d = 1
        for p, parts in atype.items():
            if i < len(parts):
                d *= p ** parts[i]
        factors.append(d)
    return factors


def abelian_name(atype: dict[int, tuple[int, ...]]) -> str:
    factors = invariant_factors(atype)
    return "x".join(f"Z{d}" for d in factors) if factors else "1"


def describe(g: Group, catalog=None) -> str:
    """'Z4xZ2' for abelian groups, the catalog name otherwise, 'grp(n,#hash)' as fallback."""
    fp = fingerprint(g)
    if fp.abelian:
        return abelian_name(dict(fp.abelian_type))
    if catalog is None:
        from .catalog import default_catalog
        catalog = default_catalog()
    for entry in catalog.of_order(g.order):
        key = (id(catalog), entry.key)
        if key not in _cache:
            _cache[key] = entry.group()
        other = _cache[key]
        if fingerprint(other) == fp and is_isomorphic(other, g):
            return entry.name
    digest = hashlib.sha1(repr(fp).encode()).hexdigest()[:6]
    return f"grp({g.order},#{digest})"

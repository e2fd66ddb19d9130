import numpy as np
import pytest

from isoposet import (
    Abelian, Cyclic, Dicyclic, Dihedral, Metacyclic, Symmetric, construct, enumerate_subgroups,
    find_isomorphism, fingerprint, is_isomorphic, partition_classes,
)
from isoposet.group_core import relabel
from isoposet.grpiso import verify_isomorphism

from conftest import random_relabel


def test_fingerprint_separates_small_pairs():
    assert fingerprint(construct(Cyclic(4))) != fingerprint(construct(Abelian((2, 2))))
    d8, q8 = fingerprint(construct(Dihedral(8))), fingerprint(construct(Dicyclic(8)))
    assert dict(d8.element_order_histogram)[2] == 5
    assert dict(q8.element_order_histogram)[2] == 1


def test_fingerprint_relabel_invariant():
    g = construct(Dihedral(24))
    rng = np.random.default_rng(7)
    assert fingerprint(relabel(g, random_relabel(g, rng))) == fingerprint(g)


def test_s3_isomorphic_to_metacyclic():
    g1, g2 = construct(Symmetric(3)), construct(Metacyclic(3, 2, 2))
    phi = find_isomorphism(g1, g2)
    assert phi is not None
    # oracle: homomorphism on every pair, bijective
    assert sorted(phi.tolist()) == list(range(6))
    assert all(phi[g1.table[a, b]] == g2.table[phi[a], phi[b]] for a in range(6) for b in range(6))


def test_square_vs_elementary():
    for p in (2, 3, 5):
        assert not is_isomorphic(construct(Cyclic(p * p)), construct(Abelian((p, p))))


def test_self_isomorphism():
    g = construct(Dicyclic(16))
    phi = find_isomorphism(g, g)
    assert phi is not None and verify_isomorphism(g, g, phi)


def test_same_fingerprint_non_isomorphic(catalog):
    # Z4 |x Z4 and Q8 x Z2 agree on every fingerprint field; only the search separates them
    g1, g2 = catalog.get(16, 4).group(), catalog.get(16, 12).group()
    assert fingerprint(g1) == fingerprint(g2)
    assert find_isomorphism(g1, g2) is None
    assert find_isomorphism(construct(Dihedral(8)), construct(Dicyclic(8))) is None


def test_find_isomorphism_on_relabelled_nonabelian():
    rng = np.random.default_rng(11)
    for spec in (Symmetric(4), Dicyclic(32), Metacyclic(7, 3, 2)):
        g = construct(spec)
        h = relabel(g, random_relabel(g, rng))
        phi = find_isomorphism(g, h)
        assert phi is not None and verify_isomorphism(g, h, phi)


def _subgroup_groups(spec):
    lat = enumerate_subgroups(construct(spec))
    return [lat.group(i) for i in range(len(lat))]


def test_partition_s3_subgroups():
    classes = partition_classes(_subgroup_groups(Symmetric(3)))
    assert sorted(len(c) for c in classes) == [1, 1, 1, 3]


def test_partition_q8_subgroups():
    assert len(partition_classes(_subgroup_groups(Dicyclic(8)))) == 4


def test_partition_empty():
    assert partition_classes([]) == []


def test_partition_independent_of_order():
    groups = _subgroup_groups(Dihedral(12))
    rng = np.random.default_rng(5)
    perm = rng.permutation(len(groups))
    a = partition_classes(groups)
    b = partition_classes([groups[i] for i in perm])
    canon = lambda classes, idx: sorted(sorted(idx[i] for i in c) for c in classes)
    assert canon(a, list(range(len(groups)))) == canon(b, perm.tolist())


def test_catalog_pairwise_non_isomorphic(catalog):
    """Distinct catalog entries of order <= 64 are non-isomorphic."""
    by_order = {}
    for e in catalog:
        if e.order <= 64:
            by_order.setdefault(e.order, []).append(e.group())
    for order, groups in by_order.items():
        for i in range(len(groups)):
            for j in range(i + 1, len(groups)):
                assert not is_isomorphic(groups[i], groups[j]), (order, i, j)

import numpy as np
import pytest

from isoposet import (
    Abelian, Alternating, Cyclic, Dicyclic, Dihedral, NotALattice, NotBounded, Poset, Semidihedral,
    Symmetric, find_sublattice, poset_isomorphic, pq_property, product, properties,
    solitary_subposet,
)
from isoposet.analytic import divisor_lattice
from isoposet.poset import (
    chain, conjugacy_class_poset, find_poset_isomorphism, pq_violation, validate_witnesses,
    verify_poset_isomorphism,
)

from conftest import iso_of, lattice_of


def labelled(ip):
    return {lab: k for k, lab in enumerate(ip.poset.labels)}


def test_z6_is_two_by_two_grid():
    ip = iso_of(Cyclic(6))
    assert poset_isomorphic(ip.poset, product(chain(2), chain(2)))


def test_a4_is_pentagon():
    ip = iso_of(Alternating(4))
    k = labelled(ip)
    leq = ip.poset.leq
    assert ip.size == 5
    assert not leq[k["Z3"], k["Z2"]] and not leq[k["Z2"], k["Z3"]]
    assert not leq[k["Z3"], k["Z2xZ2"]] and not leq[k["Z2xZ2"], k["Z3"]]
    assert leq[k["Z2"], k["Z2xZ2"]]


def test_trivial_group_poset():
    assert iso_of(Cyclic(1)).size == 1


def test_iso_poset_structure():
    ip = iso_of(Symmetric(4))
    lat = ip.lattice
    members = sorted(i for c in ip.classes for i in c)
    assert members == list(range(len(lat)))
    assert ip.classes[0] == (0,) and ip.classes[-1] == (lat.top,)
    for a in range(ip.size):
        for b in range(ip.size):
            if a != b and ip.poset.leq[a, b]:
                oa, ob = lat.orders[ip.representative[a]], lat.orders[ip.representative[b]]
                assert ob % oa == 0 and ob > oa


def test_d12_no_meet_witness():
    ip = iso_of(Dihedral(12))
    r = properties(ip.poset)
    assert not r.is_lattice
    a, b = r.witness["lattice"]
    assert {ip.poset.labels[a], ip.poset.labels[b]} == {"Z6", "S3"}
    assert validate_witnesses(ip.poset, r)


def test_a4_not_modular():
    p = iso_of(Alternating(4)).poset
    r = properties(p)
    assert r.is_lattice and not r.is_modular
    found = find_sublattice(p, "N5")
    assert found is not None
    assert sorted(p.labels[i] for i in found) == sorted(["1", "Z2", "Z2xZ2", "Z3", "A4"])


def test_sd16_diamond():
    p = iso_of(Semidihedral(16)).poset
    r = properties(p)
    assert r.is_lattice and r.is_modular and not r.is_distributive
    found = find_sublattice(p, "M3")
    assert sorted(p.labels[i] for i in found) == sorted(["Z4", "Z8", "D8", "Q8", "SD16"])


@pytest.mark.parametrize("k", [1, 2, 3, 6])
def test_chain_flags(k):
    r = properties(chain(k))
    assert r.is_lattice and r.is_chain and r.is_modular and r.is_distributive
    assert r.height == k - 1
    # only the one- and two-element chains are complemented
    assert r.is_complemented == (k <= 2)
    assert find_sublattice(chain(k), "N5") is None and find_sublattice(chain(k), "M3") is None


def test_not_bounded():
    antichain = Poset(np.eye(2, dtype=bool))
    with pytest.raises(NotBounded):
        properties(antichain)


def test_find_sublattice_requires_lattice():
    with pytest.raises(NotALattice):
        find_sublattice(iso_of(Dihedral(12)).poset, "N5")


def test_products():
    assert poset_isomorphic(product(chain(2), chain(2)), iso_of(Cyclic(6)).poset)
    p = iso_of(Dihedral(8)).poset
    assert poset_isomorphic(product(p, chain(1)), p)
    grid = product(chain(2), chain(3))
    assert grid.size == 6 and poset_isomorphic(grid, divisor_lattice(12))


def test_poset_isomorphism_examples():
    assert poset_isomorphic(iso_of(Abelian((2, 4))).poset, iso_of(Dihedral(8)).poset)
    assert poset_isomorphic(iso_of(Symmetric(3)).poset, iso_of(Cyclic(6)).poset)
    assert not poset_isomorphic(iso_of(Cyclic(16)).poset, iso_of(Dicyclic(16)).poset)


def test_poset_isomorphism_witness():
    p = iso_of(Symmetric(4)).poset
    rng = np.random.default_rng(2)
    q = rng.permutation(p.size)
    shuffled = Poset(p.leq[np.ix_(q, q)])
    f = find_poset_isomorphism(p, shuffled)
    assert f is not None and verify_poset_isomorphism(p, shuffled, f)


def test_solitary_subposets():
    assert solitary_subposet(iso_of(Cyclic(27))).size == 4
    assert solitary_subposet(iso_of(Cyclic(1))).size == 1
    # the centre of D8 is one of five subgroups of order 2, so it is not solitary
    assert solitary_subposet(iso_of(Dihedral(8))).labels == ("1", "Z4", "D8")


def test_pq_property():
    assert not pq_property(lattice_of(Dihedral(12)))
    assert pq_violation(lattice_of(Dihedral(12))) is not None
    assert pq_property(lattice_of(Symmetric(3)))
    assert pq_property(lattice_of(Cyclic(27)))


def test_conjugacy_poset_of_zm_group():
    from isoposet import Metacyclic
    lat = lattice_of(Metacyclic(7, 3, 2))
    assert poset_isomorphic(conjugacy_class_poset(lat), divisor_lattice(21))


def test_transitivity_is_asserted():
    leq = np.eye(3, dtype=bool)
    leq[0, 1] = leq[1, 2] = True
    with pytest.raises(AssertionError):
        Poset(leq)

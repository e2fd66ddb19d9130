import pytest
import sympy
from sympy.functions.combinatorial.numbers import partition as sympy_partition

from isoposet import (
    Abelian, Cyclic, Dicyclic, Dihedral, Heisenberg, Metacyclic, SquareFreeOrder, Symmetric,
    Unresolvable, abelian_iso_poset, arithmetic, construct, dihedral_counts, dihedral_is_lattice,
    divisor_lattice, is_chain_group, poset_isomorphic, properties, twin_pair,
)
from isoposet.analytic import AbelianType, partition_counts, printed_dihedral_class_count, subpartitions
from isoposet.grpiso import is_isomorphic
from isoposet.poset import chain

from conftest import iso_of


def test_arithmetic_small():
    assert arithmetic(6)[:2] == (4, 12)
    assert arithmetic(12)[:2] == (6, 28)
    assert partition_counts(3) == (1, 1, 2, 3)


@pytest.mark.parametrize("n", [1, 2, 12, 36, 97, 360, 1001])
def test_arithmetic_against_sympy(n):
    t, s, pi = arithmetic(n)
    assert t == sympy.divisor_count(n)
    assert s == sympy.divisor_sigma(n)
    assert list(pi[:40]) == [int(sympy_partition(i)) for i in range(min(n, 39) + 1)]


def test_subpartitions():
    assert set(subpartitions((2, 1))) == {(0, 0), (1, 0), (2, 0), (1, 1), (2, 1)}


def test_elementary_abelian_chain():
    assert poset_isomorphic(abelian_iso_poset({2: (1, 1, 1)}), chain(4))


def test_cor33_pair():
    assert poset_isomorphic(abelian_iso_poset({2: (1, 1, 1), 3: (2, 1)}),
                            abelian_iso_poset({5: (3,), 7: (2, 1)}))


def test_square_types_are_three_chains():
    assert poset_isomorphic(abelian_iso_poset({3: (2,)}), chain(3))
    assert poset_isomorphic(abelian_iso_poset({3: (1, 1)}), chain(3))


@pytest.mark.parametrize("spec", [Abelian((2, 4)), Abelian((2, 6, 18)), Abelian((4, 4)), Cyclic(60)])
def test_analytic_matches_brute(spec):
    t = AbelianType.from_factors(spec.factors if isinstance(spec, Abelian) else [spec.n])
    p = abelian_iso_poset(t)
    assert poset_isomorphic(p, iso_of(spec).poset)
    r = properties(p)
    assert r.is_lattice and r.is_distributive


def test_abelian_type_order():
    assert AbelianType.from_factors([7, 6125]).order == 7 * 6125
    assert AbelianType.from_factors([7, 6125]).as_dict() == {5: (3,), 7: (2, 1)}


def test_divisor_lattice():
    assert poset_isomorphic(divisor_lattice(21), iso_of(Metacyclic(7, 3, 2)).poset)
    assert divisor_lattice(1).size == 1
    assert poset_isomorphic(divisor_lattice(3 ** 4), iso_of(Cyclic(81)).poset)


@pytest.mark.parametrize("n, expected", [(4, (10, 5)), (5, (8, 4)), (6, (16, 7)), (1, (2, 2))])
def test_dihedral_counts(n, expected):
    assert dihedral_counts(n) == expected


def test_printed_labels_disagree():
    assert printed_dihedral_class_count(4) == 6
    assert printed_dihedral_class_count(5) == 3


def test_dihedral_is_lattice():
    assert not dihedral_is_lattice(6)
    assert dihedral_is_lattice(8) and dihedral_is_lattice(15)


def test_is_chain_group():
    assert is_chain_group(Cyclic(8))
    assert is_chain_group(Heisenberg(3))
    assert not is_chain_group(Dicyclic(16))
    assert is_chain_group(Dicyclic(8))
    assert is_chain_group(Abelian((5, 5, 5)))
    assert not is_chain_group(Abelian((7, 6125)))  # analytic path, never materialised
    assert is_chain_group(construct(Abelian((3, 3))))


def test_is_chain_group_unresolvable():
    with pytest.raises(Unresolvable):
        is_chain_group(Symmetric(5), cap=100)


def test_twin_pairs_named():
    assert twin_pair(8) == (Dihedral(8), Abelian((4, 2)))
    s1, s2 = twin_pair(9)
    assert is_isomorphic(construct(s1), construct(Cyclic(9)))
    assert is_isomorphic(construct(s2), construct(Abelian((3, 3))))
    s1, s2 = twin_pair(12)
    assert is_isomorphic(construct(s1), construct(Abelian((4, 3))))
    assert is_isomorphic(construct(s2), construct(Abelian((2, 2, 3))))


@pytest.mark.parametrize("n", [6, 30, 1])
def test_twin_square_free(n):
    with pytest.raises(SquareFreeOrder):
        twin_pair(n)


def test_twin_27():
    s1, s2 = twin_pair(27)
    g1, g2 = construct(s1), construct(s2)
    assert g1.order == g2.order == 27 and not is_isomorphic(g1, g2)
    assert poset_isomorphic(iso_of(s1).poset, iso_of(s2).poset)

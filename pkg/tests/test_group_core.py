import numpy as np
import pytest

from isoposet import (
    Abelian, Alternating, Cyclic, Dicyclic, Dihedral, Heisenberg, InvalidSpec, Metacyclic,
    OrderCapExceeded, Product, Semidihedral, Symmetric, construct, direct_product, invariants,
)
from isoposet.group_core import (
    Perm, format_cycles, generate, parse_cycles, parse_perm_text, relabel,
)
from isoposet.grpiso import is_isomorphic


def count_involutions(g):
    return sum(1 for a in range(1, g.order) if g.table[a, a] == 0)


@pytest.mark.parametrize("spec, order", [
    (Cyclic(1), 1), (Cyclic(7), 7), (Dihedral(2), 2), (Dihedral(12), 12), (Dicyclic(8), 8),
    (Semidihedral(16), 16), (Symmetric(4), 24), (Alternating(4), 12), (Metacyclic(7, 3, 2), 21),
    (Heisenberg(3), 27), (Heisenberg(5), 125), (Abelian((2, 6, 18)), 216),
    (Product((Dihedral(8), Cyclic(4))), 32),
])
def test_constructed_orders(spec, order):
    assert construct(spec).order == order


def test_dihedral_12_has_seven_involutions():
    # table scan: solutions of g^2 = 1 other than the identity
    assert count_involutions(construct(Dihedral(12))) == 7


def test_trivial_group():
    g = construct(Cyclic(1))
    assert g.order == 1 and g.table.tolist() == [[0]]


def test_metacyclic_21_is_zm():
    g = construct(Metacyclic(7, 3, 2))
    assert not invariants(g).abelian
    # every element of order p generates the whole Sylow p-subgroup, which is then cyclic
    for p in (3, 7):
        x = int(np.flatnonzero(g.element_orders == p)[0])
        assert len(generate(g.table, [x])) == p
    assert sorted(set(g.element_orders.tolist())) == [1, 3, 7]


@pytest.mark.parametrize("bad", [
    lambda: Dihedral(7), lambda: Dicyclic(6), lambda: Semidihedral(8),
    lambda: Metacyclic(7, 3, 3), lambda: Metacyclic(6, 2, 2), lambda: Heisenberg(4),
])
def test_invalid_specs(bad):
    with pytest.raises(InvalidSpec):
        bad()


def test_table_cap():
    with pytest.raises(OrderCapExceeded):
        construct(Abelian((7, 6125)))


def test_direct_product_examples():
    z6 = direct_product(construct(Cyclic(2)), construct(Cyclic(3)))
    assert z6.order == 6 and 6 in z6.element_orders
    g = construct(Dihedral(8))
    assert is_isomorphic(direct_product(g, construct(Cyclic(1))), g)
    assert direct_product(g, construct(Cyclic(4))).order == 32


def test_q8_invariants():
    inv = invariants(construct(Dicyclic(8)))
    assert inv.exponent == 4
    assert inv.center_order == 2
    assert inv.derived_subgroup_order == 2
    assert inv.element_order_histogram[2] == 1


def test_z6_invariants():
    inv = invariants(construct(Cyclic(6)))
    assert inv.abelian and inv.exponent == 6
    assert inv.abelian_type == {2: (1,), 3: (1,)}


def test_heisenberg_invariants():
    inv = invariants(construct(Heisenberg(3)))
    assert (inv.order, inv.exponent, inv.abelian) == (27, 3, False)


def test_perfect_group_is_not_solvable():
    inv = invariants(construct(Alternating(5)))
    assert inv.derived_subgroup_order == 60 and not inv.solvable


def test_generalized_quaternion_unique_involution():
    for order in (8, 16, 32):
        assert count_involutions(construct(Dicyclic(order))) == 1


def test_relabel_preserves_invariants():
    g = construct(Symmetric(4))
    rng = np.random.default_rng(3)
    perm = np.concatenate([[0], 1 + rng.permutation(g.order - 1)])
    assert invariants(relabel(g, perm)) == invariants(g)


def test_cycle_notation_round_trip():
    perm = parse_cycles("(1 2)(3 4 5)", 6)
    assert perm == (1, 0, 3, 4, 2, 5)
    assert format_cycles(perm) == "(1 2)(3 4 5)"


def test_perm_text_format():
    spec = parse_perm_text("degree: 4\n(1 2 3 4)\n(1 3)\n")
    assert isinstance(spec, Perm) and construct(spec).order == 8


def test_generate_closure():
    g = construct(Cyclic(12))
    assert sorted(generate(g.table, [4]).tolist()) == [0, 4, 8]

"""Property-based checks of the structural invariants."""
import math

import numpy as np
import sympy
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from isoposet import (
    Abelian, Alternating, Cyclic, Dicyclic, Dihedral, Metacyclic, Poset, Product, Symmetric,
    abelian_iso_poset, arithmetic, build_iso_poset, construct, dihedral_counts, dihedral_is_lattice,
    enumerate_subgroups, find_isomorphism, fingerprint, invariants, poset_isomorphic, product,
    properties,
)
from isoposet.analytic import AbelianType
from isoposet.cli import format_spec, parse_group_expr
from isoposet.group_core import relabel
from isoposet.grpiso import verify_isomorphism
from isoposet.poset import chain, find_poset_isomorphism, validate_witnesses, verify_poset_isomorphism

settings.register_profile("repo", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@st.composite
def metacyclic(draw):
    m = draw(st.integers(2, 13))
    n = draw(st.integers(1, 6))
    r = draw(st.integers(1, m - 1))
    assume(math.gcd(r, m) == 1 and pow(r, n, m) == 1 % m)
    return Metacyclic(m, n, r)


small_specs = st.one_of(
    st.integers(1, 40).map(Cyclic),
    st.integers(1, 20).map(lambda n: Dihedral(2 * n)),
    st.integers(1, 8).map(lambda n: Dicyclic(4 * n)),
    st.lists(st.integers(2, 6), min_size=1, max_size=3).map(lambda fs: Abelian(tuple(fs))),
    st.sampled_from([Symmetric(3), Symmetric(4), Alternating(4)]),
    metacyclic(),
)
specs = st.one_of(small_specs, st.tuples(small_specs, small_specs).filter(
    lambda pair: construct(pair[0]).order * construct(pair[1]).order <= 96).map(Product))


def relabelling(g, seed):
    rng = np.random.default_rng(seed)
    return relabel(g, np.concatenate([[0], 1 + rng.permutation(g.order - 1)]))


@given(specs)
def test_latin_square(spec):
    g = construct(spec)
    full = np.arange(g.order)
    assert all((np.sort(row) == full).all() for row in g.table)
    assert all((np.sort(col) == full).all() for col in g.table.T)
    assert (g.table[0] == full).all() and (g.table[:, 0] == full).all()


@given(specs, st.integers(0, 2**32 - 1))
def test_relabel_invariance(spec, seed):
    g = construct(spec)
    h = relabelling(g, seed)
    assert invariants(h) == invariants(g)
    assert fingerprint(h) == fingerprint(g)
    phi = find_isomorphism(g, h)
    assert phi is not None and verify_isomorphism(g, h, phi)
    assert len(enumerate_subgroups(h)) == len(enumerate_subgroups(g))


@given(specs)
def test_invariant_consistency(spec):
    inv = invariants(construct(spec))
    assert sum(inv.element_order_histogram.values()) == inv.order
    assert inv.exponent == math.lcm(*inv.element_order_histogram)
    assert (inv.abelian_type is not None) == inv.abelian
    if inv.abelian:
        assert math.prod(p ** sum(lam) for p, lam in inv.abelian_type.items()) == inv.order


@given(specs)
def test_lattice_invariants(spec):
    g = construct(spec)
    lat = enumerate_subgroups(g)
    assert lat.orders[0] == 1 and lat.orders[-1] == g.order
    assert all(g.order % int(o) == 0 for o in lat.orders)
    masks = {s.members for s in lat.subgroups}
    assert len(masks) == len(lat)
    t, inv = g.table, g.inverse
    for a in range(0, g.order, max(1, g.order // 6)):
        conj = t[t[inv[a]], a]
        for s in lat.subgroups:
            assert sum(1 << int(x) for x in conj[s.elements]) in masks


@given(specs)
def test_iso_poset_and_report(spec):
    ip = build_iso_poset(enumerate_subgroups(construct(spec)))
    leq = ip.poset.leq
    closure = (leq.astype(int) @ leq.astype(int)) > 0
    assert (closure == leq).all()
    assert not (leq & leq.T & ~np.eye(ip.size, dtype=bool)).any()
    r = properties(ip.poset)
    assert not r.is_chain or r.is_distributive
    assert not r.is_distributive or r.is_modular
    assert not r.is_modular or r.is_lattice
    assert not r.is_complemented or r.is_lattice
    assert validate_witnesses(ip.poset, r)


@given(specs, st.integers(0, 2**32 - 1))
def test_poset_isomorphism_witness(spec, seed):
    p = build_iso_poset(enumerate_subgroups(construct(spec))).poset
    q = np.random.default_rng(seed).permutation(p.size)
    shuffled = Poset(p.leq[np.ix_(q, q)])
    f = find_poset_isomorphism(p, shuffled)
    assert f is not None and verify_poset_isomorphism(p, shuffled, f)


@given(st.integers(1, 60))
def test_dihedral_counts_match_brute(n):
    ip = build_iso_poset(enumerate_subgroups(construct(Dihedral(2 * n))))
    assert (len(ip.lattice), ip.size) == dihedral_counts(n)


@given(st.integers(1, 40))
def test_dihedral_lattice_criterion(n):
    p = build_iso_poset(enumerate_subgroups(construct(Dihedral(2 * n)))).poset
    assert properties(p).is_lattice == dihedral_is_lattice(n)


abelian_types = st.dictionaries(
    st.sampled_from([2, 3, 5, 7]),
    st.lists(st.integers(1, 3), min_size=1, max_size=2),
    min_size=1, max_size=2,
).map(lambda d: AbelianType.of({p: tuple(v) for p, v in d.items()}))


@given(abelian_types)
def test_abelian_poset_is_distributive(t):
    r = properties(abelian_iso_poset(t))
    assert r.is_lattice and r.is_distributive


@given(abelian_types.filter(lambda t: t.order <= 300))
def test_abelian_analytic_matches_brute(t):
    factors = [p ** e for p, lam in t.parts for e in lam]
    brute = build_iso_poset(enumerate_subgroups(construct(Abelian(tuple(factors))))).poset
    assert poset_isomorphic(abelian_iso_poset(t), brute)


@given(st.integers(1, 1000))
def test_arithmetic_matches_sympy(n):
    t, s, _ = arithmetic(n)
    assert (t, s) == (sympy.divisor_count(n), sympy.divisor_sigma(n))


@given(st.integers(1, 5), st.integers(1, 5))
def test_chain_products_commute(a, b):
    p, q = product(chain(a), chain(b)), product(chain(b), chain(a))
    assert p.size == a * b and poset_isomorphic(p, q)


@given(specs)
def test_expression_round_trip(spec):
    # parsing normalises (Abelian((2,)) reads back as Z2), so compare normal forms and groups
    normal = parse_group_expr(format_spec(spec))
    assert parse_group_expr(format_spec(normal)) == normal
    assert fingerprint(construct(normal)) == fingerprint(construct(spec))

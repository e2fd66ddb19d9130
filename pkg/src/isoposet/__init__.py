"""Subgroup lattices and posets of isomorphism classes of subgroups of small finite groups."""
from .analytic import (
    AbelianType, abelian_iso_poset, arithmetic, dihedral_counts, dihedral_is_lattice,
    divisor_lattice, is_chain_group, twin_pair,
)
from .catalog import Catalog, CatalogEntry, default_catalog, load_catalog
from .errors import (
    InvalidSpec, IsoPosetError, NotALattice, NotBounded, OrderCapExceeded, SquareFreeOrder,
    SubgroupCountCapExceeded, Unresolvable,
)
from .group_core import (
    Abelian, Alternating, CatalogRef, Cyclic, Dicyclic, Dihedral, Group, Heisenberg, Metacyclic,
    Perm, Product, Semidihedral, Symmetric, construct, direct_product, invariants,
)
from .grpiso import find_isomorphism, fingerprint, is_isomorphic, partition_classes
from .poset import (
    IsoPoset, Poset, build_iso_poset, find_sublattice, poset_isomorphic, pq_property, product,
    properties, solitary_subposet,
)
from .subgrp import SubgroupLattice, enumerate_subgroups, lattice_meta, subgroup_as_group

__version__ = "0.1.0"

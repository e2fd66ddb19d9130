import numpy as np
import pytest

from isoposet import build_iso_poset, construct, default_catalog, enumerate_subgroups


@pytest.fixture(scope="session")
def catalog():
    return default_catalog()


def iso_of(spec):
    return build_iso_poset(enumerate_subgroups(construct(spec)))


def lattice_of(spec):
    return enumerate_subgroups(construct(spec))


def random_relabel(g, rng):
    """A permutation of 0..n-1 fixing the identity."""
    return np.concatenate([[0], 1 + rng.permutation(g.order - 1)])

"""Exception hierarchy shared by every module of the package."""


class IsoPosetError(Exception):
    """Base class for all package errors."""


class InvalidSpec(IsoPosetError, ValueError):
    """A group specification violates the invariants of its variant."""


class OrderCapExceeded(IsoPosetError):
    """A group would be larger than the configured table cap."""


class SubgroupCountCapExceeded(IsoPosetError):
    """Exhaustive subgroup enumeration produced too many subgroups."""


class NotALattice(IsoPosetError):
    """A lattice-only operation was applied to a poset that is not a lattice."""


class NotBounded(IsoPosetError):
    """A poset lacks a bottom or a top element."""


class Unresolvable(IsoPosetError):
    """A group specification cannot be decided from its family or its table."""


class SquareFreeOrder(IsoPosetError, ValueError):
    """A construction that needs a square factor received a square-free order."""

"""
Exception hierarchy for the star-graph library
"""


class StarKondoError(Exception):
    """Base class for every error raised by the library."""


class DimensionError(StarKondoError, ValueError):
    """Operands act on a different number of sites."""


class InvalidSiteError(StarKondoError, ValueError):
    """A leg, position or auxiliary site does not exist in the layout."""


class LayoutMismatchError(StarKondoError, ValueError):
    """A fermion family was paired with a layout it cannot live on."""


class SizeGuardError(StarKondoError):
    """A request would build an exponentially large object."""


class NonHermitianError(StarKondoError, ValueError):
    """A Hermitian routine received a non-Hermitian matrix."""


class SolverError(StarKondoError, RuntimeError):
    """A root search did not produce the expected number of roots."""

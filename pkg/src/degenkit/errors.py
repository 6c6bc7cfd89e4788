"""Exception types shared across the toolkit.

Domain errors (bad mathematical input) and parse errors (malformed files)
are kept distinct: the CLI maps the former to exit code 1 and the latter
to exit code 2.
"""


class DegenkitError(Exception):
    """Base class for all toolkit errors."""


class ParseError(DegenkitError):
    """Malformed file or expression text."""


class CatalogError(DegenkitError):
    """Inconsistent catalog data (bad expansions, cycles, duplicates)."""


class UnknownLabel(DegenkitError):
    """A class label is not registered in the catalog."""


class MalformedFVector(DegenkitError):
    """An f-vector does not describe a complete fan (f[0] != 1, bad length...)."""


class EmptyStratum(DegenkitError):
    """A stratum required to be nonempty is Empty."""


class InvalidCenter(DegenkitError):
    """A blow-up center is not an admissible closed stratum."""


class IdCollision(DegenkitError):
    """A fresh component id is already in use."""


class DimensionMismatch(DegenkitError):
    """Matrix or vector dimensions do not match the expected rank."""


class NotKulikov(DegenkitError):
    """(T - id)^3 != 0: the operator is not a Kulikov monodromy."""


class InvalidPeriod(DegenkitError):
    """A supposed period point violates the period-domain conditions."""


class ShapeMismatch(DegenkitError):
    """Block matrices with inconsistent shapes."""


class BadChain(DegenkitError):
    """Invalid type II chain data (r < 1, end Euler number < 3...)."""


class NotAComplex(DegenkitError):
    """Type III data is not a simplicial 2-complex."""


class BadOrbit(DegenkitError):
    """Invalid cone-orbit data for a Kunnemann model."""

"""Exception types raised by the library.

Every error message names the violated invariant so that CLI users can see
which precondition failed without reading a traceback.
"""


class LlgtwError(Exception):
    """Base class for all library errors."""


class ConfigError(LlgtwError):
    """Invalid or inconsistent run configuration."""


class DegenerateRegime(ConfigError):
    """K2 = H2 = H3 = 0: no anisotropy or transverse field selects a wall plane."""


class NonUnitVector(LlgtwError):
    """A magnetization vector deviates from unit length beyond tolerance."""


class PolarSingularity(LlgtwError):
    """A polar angle left (0, pi): the profile reached the hard axis."""


class InvalidField(LlgtwError):
    """Transverse field magnitude outside (0, 1)."""


class NoEquilibrium(LlgtwError):
    """Boundary-state search failed: no pair of tail-to-tail minima found."""


class WrongSign(LlgtwError):
    """A computed boundary state violates the tail-to-tail sign condition."""


class NoConvergence(LlgtwError):
    """Newton iteration failed to reach the residual tolerance."""


class Instability(LlgtwError):
    """Time integration produced non-physical growth (unit-length or energy)."""


class WallNearBoundary(LlgtwError):
    """The tracked wall came within 5 exchange lengths of the domain edge."""


class NoWall(LlgtwError):
    """A profile has no sign change in m1: nothing to track."""


class MultipleWalls(LlgtwError):
    """A profile has more than one sign change in m1."""

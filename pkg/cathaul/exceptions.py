"""Exception hierarchy shared by every cathaul module."""


class CathaulError(Exception):
    """Base class for cathaul errors"""


class NotComposable(CathaulError):
    """Target of the first morphism is not the source of the second"""


class EndpointMismatch(CathaulError):
    """Paths do not meet at the junction"""


class EmptyPath(CathaulError):
    """A path without samples"""


class IndexOutOfRange(CathaulError, IndexError):
    """Sample index outside 0..N"""


class LogBranch(CathaulError, ValueError):
    """Group element at or beyond the cut locus of the principal logarithm"""


class FiberMismatch(CathaulError):
    """Bundle point does not lie over the expected base point"""


class OutOfDomain(CathaulError):
    """Base point outside the box on which the coefficients are defined"""


class NotHorizontalInput(CathaulError):
    """Path handed in as horizontal is not horizontal"""


class FiberSolveFailed(CathaulError):
    """No structure-group element relates the two points"""


class ConfigError(CathaulError):
    """Invalid run configuration"""


class FixtureError(CathaulError):
    """Fixture file missing, unparseable or inconsistent"""


class NotSitting(CathaulError, ValueError):
    """Path without sitting ends where a composition needs them"""

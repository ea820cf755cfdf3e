"""Exception hierarchy for the zetastrips package."""


class ZetaError(Exception):
    """Base class for all zetastrips errors."""


class ConfigError(ZetaError):
    """A run configuration violates its invariants."""


class DomainError(ZetaError):
    """An input lies outside the operation's domain."""


class PoleError(ZetaError):
    """Evaluation requested within the pole exclusion radius of s = 1."""


class PrecisionError(ZetaError):
    """The truncation rule cannot meet the requested error bound."""


class NearZeroError(ZetaError):
    """Phase requested at a point where |zeta| is below the zero floor."""


class ScanResolutionError(ZetaError):
    """Zero scan missed sign changes; the count check did not reconcile."""


class SeedError(ZetaError):
    """Contour seed polishing diverged (sigma_right too small)."""


class StallError(ZetaError):
    """Contour corrector failed repeatedly even after step reduction."""


class NoCrossingError(ZetaError):
    """A trace never reaches the requested vertical line."""


class BranchError(ZetaError):
    """No phase-zero branch found within the launch radius of a zero."""


class PartitionError(ZetaError):
    """A zero falls too close to a strip boundary to be assigned."""


class MissingPrimaryError(ZetaError):
    """A primary trace terminated at a zero outside its own strip."""


class DegenerateError(ZetaError):
    """Least-squares input is degenerate (constant abscissae or too short)."""

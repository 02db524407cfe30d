"""Exception hierarchy shared across the package."""


class BtescanError(Exception):
    """Base class for all package errors."""


class OverflowDomain(BtescanError):
    """An intermediate magnitude left the representable range.

    The caller should rescale the computation (e.g. switch to the
    log-domain evaluator) rather than retry.
    """


class BranchCutViolation(BtescanError):
    """Argument lies on (or past) a branch cut of an auxiliary function."""


class DomainViolation(BtescanError):
    """Argument outside the documented domain of an operation."""


class QuadratureFailure(BtescanError):
    """Adaptive quadrature could not meet the requested tolerance."""


class BoundaryTooClose(BtescanError):
    """A contour passes too close to a zero for reliable phase tracking."""


class NoConvergence(BtescanError):
    """Newton refinement failed to converge inside the seed box."""


class PoleHit(BtescanError):
    """Evaluation point coincides with a pole of a Gamma factor."""


class TruncationInsufficient(BtescanError):
    """A truncated contour integral's tail bound exceeds the tolerance."""


class EmptyReport(BtescanError):
    """An operation requiring a nonempty eigenvalue report received none."""


class ConfigError(BtescanError):
    """Invalid or inconsistent run configuration."""

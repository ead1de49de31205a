"""Exception hierarchy.

``ValidationError`` covers every rejected input; subclasses name the
specific contract that failed so callers (and the CLI exit-code mapping)
can tell validation problems from resource caps.
"""


class MaxCorrError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(MaxCorrError, ValueError):
    """An input violates a documented precondition."""


class NegativeMass(ValidationError):
    """A probability table contains a meaningfully negative entry."""


class MassNotOne(ValidationError):
    """Total probability mass deviates from 1 beyond the repair tolerance."""


class EmptySupport(ValidationError):
    """No states with positive mass remain after pruning."""


class OutOfRange(ValidationError):
    """A scalar parameter lies outside its documented domain."""


class BadIndices(ValidationError):
    """Integer parameters violate their ordering constraints."""


class NotSymmetric(ValidationError):
    """A spectral measure lacks the required antipodal symmetry."""


class NotNested(ValidationError):
    """A subset-pair scheme puts mass on a non-nested pair."""


class DegenerateAxis(ValidationError):
    """An axis collapses to fewer than two states after binning."""


class UnsupportedMeasure(ValidationError):
    """A jump measure of a kind this package cannot reduce to finite form."""


class SpectrumAnomaly(MaxCorrError):
    """The top singular value of a normalized kernel is not 1.

    Signals numerical breakdown or a malformed joint that slipped past
    validation.
    """


class SizeOverflow(MaxCorrError):
    """A constructed state space exceeds the configured cell cap."""


class QuadratureFailure(MaxCorrError):
    """Adaptive quadrature could not meet its tolerance within budget."""


class MonotonicityViolation(MaxCorrError):
    """A censoring ladder failed to be monotone; the generator is suspect."""

"""Exception hierarchy for negcone.

The command line maps these onto exit codes: :class:`DomainError` exits with
2, :class:`RangeError` with 3.
"""


class NegconeError(Exception):
    """Base class for every error raised by negcone."""


class DomainError(NegconeError, ValueError):
    """An argument lies outside the domain of the operation."""


class NoPredictionError(DomainError):
    """No differential-length prediction exists for the requested coweight."""


class NoCorrespondenceError(DomainError):
    """A bidegree has no counterpart on the stunted projective side."""


class PoleSingularityError(DomainError):
    """The top-cell inverse was evaluated at the excluded pole."""


class LabelSyntaxError(DomainError):
    """A generator label does not follow the label grammar."""


class RangeError(NegconeError):
    """A computation window exceeds a ceiling or is not bounded."""


class ConventionError(NegconeError):
    """The Lambda algebra conventions failed a self-check."""


class CacheRejected(NegconeError):
    """A cached chart failed header or checksum validation."""

"""Exception taxonomy shared across the library.

Hypothesis *checks* are reported, not raised, wherever an operation's
contract says so; exceptions are reserved for arguments outside an
operation's domain, unsupported input families and resource guards.
"""


class LimsupLabError(Exception):
    """Base class for every error raised by this package."""


class DomainError(LimsupLabError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class RangeError(LimsupLabError, LookupError):
    """A sampled function was queried outside its tabulated support."""


class HypothesisError(LimsupLabError):
    """A required theorem hypothesis failed; carries the failed condition."""

    def __init__(self, condition: str):
        super().__init__(condition)
        self.condition = condition


class PreconditionError(LimsupLabError):
    """A caller-asserted precondition flag was not supplied."""


class DegenerateBallError(DomainError):
    """A transform produced a ball of non-positive radius."""


class UnsupportedError(LimsupLabError, NotImplementedError):
    """The input shape or family is outside what this artifact computes."""


class SizeError(LimsupLabError):
    """A desk-scale resource guard tripped before the work started."""

"""Exception hierarchy.

Two branches matter for the CLI contract: ``InputError`` subclasses map to
exit code 1 (bad scenario, infeasible request, out-of-range argument) and
``NumericalError`` subclasses map to exit code 2 (divergence, overflow,
degenerate differences, truncation).
"""


class EconEnsembleError(Exception):
    """Base class for every error raised by this package."""


class InputError(EconEnsembleError):
    """Invalid input or request; CLI exit code 1."""


class ParameterDomainError(InputError):
    """A parameter is outside its mathematical domain."""


class ResourceLimitError(InputError):
    """An enumeration cap would be exceeded."""


class InfeasibleError(InputError):
    """No configuration satisfies the requested constraints."""


class NoRootError(InputError):
    """The requested root does not lie in the bracketable range."""


class ConfigurationError(InputError):
    """A structurally invalid configuration (e.g. grid too coarse)."""


class ContractError(InputError):
    """An API precondition was violated by the caller."""


class NumericalError(EconEnsembleError):
    """Numerical failure during an otherwise valid computation; CLI exit code 2."""


class NumericalDomainError(NumericalError):
    """The requested quantity diverges or is numerically undefined."""


class OverflowRangeError(NumericalError):
    """An exponent left the representable range."""


class DegenerateDifferenceError(NumericalError):
    """A difference quotient has a vanishing denominator."""


class TruncationError(NumericalError):
    """A truncated sum's tail bound exceeds the requested tolerance."""

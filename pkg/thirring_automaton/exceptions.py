"""Exceptions raised by thirring_automaton.

All of them derive from ValueError so callers can keep catching ValueError.
"""


class InvalidLatticeError(ValueError):
    """Bad site count, site index, parity or model name."""


class StateSpaceTooLargeError(ValueError):
    """Exact computation requested on a state space above 2**24."""


class DimensionMismatchError(ValueError):
    """Operators or Grassmann elements of incompatible sizes."""


class PreconditionError(ValueError):
    """Input violates a documented precondition."""


class ExpansionError(ValueError):
    """A local factor has no expansion in the requested basis product."""


class ConfigurationError(ValueError):
    """Invalid scenario configuration."""

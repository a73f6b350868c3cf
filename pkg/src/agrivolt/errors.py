"""Exception types shared across the package.

The CLI maps these onto exit codes: invalid input exits with 2, a failure
during an otherwise valid computation exits with 3.
"""


class InputError(ValueError):
    """Invalid or inconsistent user input (weather, prices, config, raster)."""


class ComputationError(RuntimeError):
    """A simulation step failed after inputs passed validation."""

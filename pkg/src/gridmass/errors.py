"""Exception types shared across the package.

The CLI maps these onto exit codes: input/validation problems exit 2,
enumeration budget exhaustion exits 3.
"""

from __future__ import annotations

__all__ = [
    "GridmassError",
    "InputError",
    "VertexNotFoundError",
    "DisconnectedGraphError",
    "OutOfWindowError",
    "BudgetExceededError",
]


class GridmassError(Exception):
    """Base class for all package errors."""


class InputError(GridmassError, ValueError):
    """Malformed or inconsistent input (bad weights, bad parameters, bad files)."""


class VertexNotFoundError(InputError):
    """A vertex id is not present in the graph it was used with."""


class DisconnectedGraphError(InputError):
    """Construction rejected because the graph is not connected."""


class OutOfWindowError(InputError):
    """A grid query needs vertices or edges beyond the finite window."""


class BudgetExceededError(GridmassError):
    """An enumeration exceeded its configured search budget.

    Raised instead of silently truncating a search; callers may retry
    with a larger budget.
    """

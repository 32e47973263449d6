"""Numeric modes: exact rational arithmetic or floating point.

Every computation runs in one of two modes.  ``EXACT`` keeps all weights
and derived quantities as :class:`fractions.Fraction`, so identities that
hold mathematically hold bit-exactly and results are reproducible across
runs.  ``FLOAT`` uses machine floats with an epsilon for identity checks;
it exists for procedural weight fields whose values are irrational
(fractional powers, logarithms).

A single computation never mixes modes: containers carry their mode and
derived results inherit it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import InputError

__all__ = [
    "NumericMode",
    "EXACT",
    "FLOAT",
    "Weight",
    "parse_weight",
    "format_weight",
    "coerce_weight",
]

Weight = Union[Fraction, float]


@dataclass(frozen=True)
class NumericMode:
    """Arithmetic mode tag.

    Parameters
    ----------
    exact : bool
        True for exact rational arithmetic, False for floats.
    epsilon : float
        Tolerance used by identity checks in float mode.  Ignored (and
        zero) in exact mode.
    """

    exact: bool
    epsilon: float = 0.0

    def isclose(self, a, b) -> bool:
        """Equality up to the mode's tolerance (exact equality in EXACT)."""
        if self.exact:
            return a == b
        scale = max(1.0, abs(a), abs(b))
        return abs(a - b) <= self.epsilon * scale

    def leq(self, a, b) -> bool:
        """``a <= b`` up to the mode's tolerance."""
        if self.exact:
            return a <= b
        scale = max(1.0, abs(a), abs(b))
        return a <= b + self.epsilon * scale

    def zero(self) -> Weight:
        return Fraction(0) if self.exact else 0.0

    def one(self) -> Weight:
        return Fraction(1) if self.exact else 1.0


EXACT = NumericMode(exact=True, epsilon=0.0)
FLOAT = NumericMode(exact=False, epsilon=1e-9)


def parse_weight(value, mode: NumericMode) -> Weight:
    """Parse a JSON-level weight (``"p/q"`` string, int, or float).

    Strings and ints are exact; floats are only accepted in float mode.
    """
    if isinstance(value, str):
        try:
            w = Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational weight literal {value!r}") from exc
        return w if mode.exact else float(w)
    if isinstance(value, bool):
        raise InputError(f"bad weight {value!r}")
    if isinstance(value, int):
        return Fraction(value) if mode.exact else float(value)
    if isinstance(value, float):
        if mode.exact:
            raise InputError(
                f"float weight {value!r} not allowed in exact mode; "
                "use a 'p/q' string"
            )
        return value
    raise InputError(f"bad weight {value!r}")


def format_weight(w: Weight):
    """JSON-level representation: Fractions as 'p/q' strings, floats as-is."""
    if isinstance(w, Fraction):
        return str(w)
    if isinstance(w, int):
        return str(Fraction(w))
    return float(w)


def coerce_weight(w, mode: NumericMode) -> Weight:
    """Bring a Python number into the mode's representation.

    Exact mode accepts ints and Fractions; float mode accepts anything
    float() accepts.
    """
    if mode.exact:
        if isinstance(w, Fraction):
            return w
        if isinstance(w, int) and not isinstance(w, bool):
            return Fraction(w)
        raise InputError(f"weight {w!r} is not exact; use Fraction or int")
    return float(w)

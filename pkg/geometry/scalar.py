# File name: geometry/scalar.py

"""Precision profiles for the planar geometry kernel.

Every scalar in the toolkit is an `mpmath` ``mpf`` bound to a private
`mpmath.MPContext`. A profile owns exactly one context, so arithmetic between
two scalars of one profile stays in that profile.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, Union

from mpmath import MPContext

from kakeya_utils import frozen

#: Anything a profile can turn into one of its scalars.
Real = Union[int, float, str, Fraction, Any]

HARDWARE_BITS = 53
MIN_BIG_BITS = 64
GUARD_BITS = 12
HARDWARE_TOLERANCE = "1e-12"

_contexts: Dict[int, MPContext] = {}


def _context_for(bits: int) -> MPContext:
    context = _contexts.get(bits)
    if context is None:
        context = MPContext()
        context.prec = bits
        _contexts[bits] = context
    return context


@frozen
class Precision:
    """A precision profile: HARDWARE (53-bit mantissa) or BIG(bits).

    Attributes:
        kind (`str`): ``'HARDWARE'`` or ``'BIG'``.
        bits (`int`): mantissa width in bits.
    """

    kind: str
    bits: int

    def __init__(self, bits: int = HARDWARE_BITS, big: bool = False):
        """Initializes a profile.

        Parameters:
            bits: mantissa width; must be at least 64 for a BIG profile.
            big: whether this is a software big-mantissa profile.
        """
        if big:
            if bits < MIN_BIG_BITS:
                raise ValueError(f"BIG precision needs at least {MIN_BIG_BITS} bits, got {bits}")
            self.kind = "BIG"
        else:
            assert bits == HARDWARE_BITS
            self.kind = "HARDWARE"
        self.bits = bits

    @staticmethod
    def hardware() -> Precision:
        return Precision()

    @staticmethod
    def big(bits: int) -> Precision:
        return Precision(bits, big=True)

    @staticmethod
    def parse(text: str) -> Precision:
        """Parses ``'hw'`` or a bit count such as ``'256'``.

        Parameters:
            text: profile text as accepted on the command line.

        Returns:
            The described profile.
        """
        cleaned = text.strip().lower()
        if cleaned in ("hw", "hardware"):
            return Precision.hardware()
        if cleaned.startswith("big(") and cleaned.endswith(")"):
            cleaned = cleaned[4:-1]
        return Precision.big(int(cleaned))

    @staticmethod
    def of(value: Any) -> Precision:
        """Recovers the profile a scalar was created in.

        Parameters:
            value: an ``mpf`` created by some profile.

        Returns:
            The profile owning the value's context.
        """
        bits = value.context.prec
        return Precision.hardware() if bits == HARDWARE_BITS else Precision.big(bits)

    @property
    def context(self) -> MPContext:
        return _context_for(self.bits)

    @property
    def tolerance(self) -> Any:
        """The comparison tolerance: 10⁻¹² for HARDWARE, 2^-(bits-12) for BIG."""
        context = self.context
        if self.kind == "HARDWARE":
            return context.mpf(HARDWARE_TOLERANCE)
        return context.ldexp(context.mpf(1), -(self.bits - GUARD_BITS))

    @property
    def pi(self) -> Any:
        return +self.context.pi

    @property
    def digits(self) -> int:
        """Decimal digits needed to print a scalar without losing bits."""
        return int(self.bits * 0.30103) + 2

    def scalar(self, value: Real) -> Any:
        """Converts a number to a scalar of this profile.

        Parameters:
            value: integer, float, decimal string, `~fractions.Fraction` or
                ``mpf`` of any profile.

        Returns:
            The value rounded to this profile.
        """
        context = self.context
        if isinstance(value, Fraction):
            return context.mpf(value.numerator) / value.denominator
        return context.mpf(value)

    def render(self, value: Any) -> str:
        """Renders a scalar as a decimal string carrying the full precision."""
        return self.context.nstr(self.scalar(value), self.digits, strip_zeros=False)

    def __repr__(self) -> str:
        return "HARDWARE" if self.kind == "HARDWARE" else f"BIG({self.bits})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Precision) and self.kind == other.kind and self.bits == other.bits

    def __ne__(self, other: object) -> bool:
        return not self == other

    def __hash__(self) -> int:
        return hash(str(self))


def normalize_angle(angle: Any) -> Any:
    """Maps an angle into (−π, π], sending ties at ±π to +π.

    Parameters:
        angle: angle in radians.

    Returns:
        The equivalent angle in (−π, π].
    """
    context = angle.context
    full_turn = 2 * context.pi
    reduced = angle - full_turn * context.floor(angle / full_turn)
    if reduced > context.pi:
        reduced -= full_turn
    return reduced

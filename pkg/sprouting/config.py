# File name: sprouting/config.py

"""Parameters of a sprouting construction and the dyadic indices it is keyed by."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, List, Optional, Union

from kakeya_utils import frozen

from geometry.scalar import *

#: Default depth R of the ring system.
DEFAULT_R = "1.227"
#: Largest ε admitted by the strict regime.
STRICT_EPS_LIMIT = "1e-6"
#: Largest ratio h/ε admitted by the strict regime.
STRICT_RATIO_LIMIT = "1e-3"
#: Default precision of strict constructions.
STRICT_BITS = 256


class InvalidConfigError(ValueError):
    """Raised when construction parameters are out of range or violate the strict regime."""


@frozen
class DyadicIndex:
    """A dyadic fraction x = k/2ⁱ in [0, 1], kept in lowest terms.

    Attributes:
        level (`int`): the smallest i with x ∈ D_i.
        numerator (`int`): the numerator k over 2^`level`.
    """

    level: int
    numerator: int

    def __init__(self, numerator: int, level: int):
        """Initializes a `DyadicIndex`, reducing it to lowest terms.

        Parameters:
            numerator: k.
            level: i, non-negative.
        """
        assert level >= 0 and 0 <= numerator <= 2**level, f"{numerator}/2^{level} is not in [0, 1]"
        while level > 0 and numerator % 2 == 0:
            numerator //= 2
            level -= 1
        self.level = level
        self.numerator = numerator

    @staticmethod
    def of(value: Union[DyadicIndex, Fraction, int, str]) -> DyadicIndex:
        """Converts a fraction, an integer 0 or 1, or text such as ``'3/8'``."""
        if isinstance(value, DyadicIndex):
            return value
        fraction = Fraction(value)
        denominator = fraction.denominator
        level = denominator.bit_length() - 1
        if denominator != 2**level:
            raise ValueError(f"{value} is not a dyadic fraction")
        return DyadicIndex(fraction.numerator, level)

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, 2**self.level)

    def shifted(self, offset: Fraction) -> DyadicIndex:
        return DyadicIndex.of(self.value + offset)

    def __repr__(self) -> str:
        return str(self.value)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DyadicIndex) and self.value == other.value

    def __ne__(self, other: object) -> bool:
        return not self == other

    def __lt__(self, other: DyadicIndex) -> bool:
        return self.value < other.value

    def __hash__(self) -> int:
        return hash(self.value)


def dyadic_indices(level: int) -> List[DyadicIndex]:
    """D_i in ascending order."""
    assert level >= 0
    return [DyadicIndex(k, level) for k in range(2**level + 1)]


@frozen
class SproutConfig:
    """Parameters of one sprouting construction.

    Attributes:
        h: angle between the circles K₀ and K₁ at M.
        eps: radius ε of the tip arc.
        n (`int`): number of levels.
        R: depth of the outermost ring.
        precision (`~geometry.scalar.Precision`): profile of the construction.
        strict (`bool`): whether ε < 10⁻⁶ and h ≤ ε/10³ are enforced.
    """

    h: Any
    eps: Any
    n: int
    R: Any
    precision: Precision
    strict: bool

    def __init__(
        self,
        h: Real,
        eps: Real,
        n: int,
        R: Real = DEFAULT_R,
        precision: Optional[Precision] = None,
        strict: bool = True,
    ):
        """Initializes a `SproutConfig`.

        Parameters:
            h: crossing angle, in (0, π).
            eps: tip radius, positive.
            n: number of levels, non-negative.
            R: ring depth, in (0, 2 − 5ε).
            precision: profile; BIG(256) for strict and HARDWARE for relaxed
                configurations by default.
            strict: whether to enforce the strict regime.
        """
        if precision is None:
            precision = Precision.big(STRICT_BITS) if strict else Precision.hardware()
        self.precision = precision
        self.strict = bool(strict)
        self.h = precision.scalar(h)
        self.eps = precision.scalar(eps)
        self.R = precision.scalar(R)
        if not isinstance(n, int) or n < 0:
            raise InvalidConfigError(f"level count must be a non-negative integer, got {n}")
        self.n = n
        if not 0 < self.h < precision.pi:
            raise InvalidConfigError(f"h must lie in (0, π), got {self.h}")
        if not 0 < self.eps < precision.scalar("0.2"):
            raise InvalidConfigError(f"ε must lie in (0, 0.2), got {self.eps}")
        if not 0 < self.R < 2 - 5 * self.eps:
            raise InvalidConfigError(f"R must lie in (0, 2 − 5ε), got {self.R}")
        if self.strict:
            if not self.eps < precision.scalar(STRICT_EPS_LIMIT):
                raise InvalidConfigError(f"ε must be < 10⁻⁶ in strict mode, got {precision.render(self.eps)}")
            if not self.h <= self.eps * precision.scalar(STRICT_RATIO_LIMIT):
                raise InvalidConfigError(f"h must be ≤ ε/10³ in strict mode, got {precision.render(self.h)}")

    def ring_radius(self, level: int) -> Any:
        """r_i = i·R/n."""
        assert 0 <= level <= self.n
        if self.n == 0:
            return self.precision.scalar(0)
        return self.R * level / self.n

    def with_angle(self, h: Real, n: Optional[int] = None) -> SproutConfig:
        """The same configuration for another crossing angle, optionally with another level count."""
        return SproutConfig(h, self.eps, self.n if n is None else n, self.R, self.precision, self.strict)

    def to_json(self) -> dict:
        render = self.precision.render
        return {
            "h": render(self.h),
            "eps": render(self.eps),
            "n": self.n,
            "R": render(self.R),
            "precision": str(self.precision),
            "strict": self.strict,
        }

    def __repr__(self) -> str:
        regime = "strict" if self.strict else "relaxed"
        context = self.precision.context
        return (
            f"SproutConfig(h={context.nstr(self.h, 6)}, eps={context.nstr(self.eps, 6)}, n={self.n}, "
            f"R={context.nstr(self.R, 6)}, {self.precision}, {regime})"
        )

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SproutConfig) and self.to_json() == other.to_json()

    def __ne__(self, other: object) -> bool:
        return not self == other

    def __hash__(self) -> int:
        return hash(str(self.to_json()))

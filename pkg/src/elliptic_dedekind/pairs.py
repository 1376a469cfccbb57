"""Core value types: validated coprime pairs, provenance enums, sum records.

Exact sum values are plain ``fractions.Fraction`` throughout the package;
``Fraction`` already guarantees a reduced numerator over a positive
denominator, which is exactly the canonical form used for serialization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .errors import CoprimalityError, DomainError


class Route(Enum):
    """Which formula produced a value."""

    MAIN_RESULT = "main"
    RAO = "rao"
    EUCLIDEAN = "euclid"
    DEFINITION = "definition"


class SumKind(Enum):
    DEDEKIND_S = "s"
    HARDY_BERNDT_S = "S"
    Q_PART = "Q"
    M_PART = "M"


@dataclass(frozen=True)
class CoprimePair:
    """A pair (a; b) with gcd(a, b) = 1, b >= 1 and a != 0.

    ``in_U_odd`` is true exactly when a + b is odd, i.e. when the pair lies
    in the domain where the rational part Q(a; b) exists.
    """

    a: int
    b: int
    in_U_odd: bool = field(init=False)

    def __post_init__(self) -> None:
        if self.b < 1:
            raise DomainError(f"b must be a positive integer, got {self.b}")
        if self.a == 0:
            raise DomainError("a must be a nonzero integer")
        if math.gcd(self.a, self.b) != 1:
            raise CoprimalityError(f"gcd({self.a}, {self.b}) != 1")
        object.__setattr__(self, "in_U_odd", (self.a + self.b) % 2 == 1)

    def swapped(self) -> "CoprimePair":
        """(b; a); requires a > 0."""
        if self.a < 0:
            raise DomainError("cannot swap a pair with negative a")
        return CoprimePair(self.b, self.a)

    def as_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "in_U_odd": self.in_U_odd}


@dataclass(frozen=True)
class SumRecord:
    """One computed exact value together with its provenance."""

    pair: CoprimePair
    value: Fraction
    route: Route
    kind: SumKind

    def __post_init__(self) -> None:
        if self.kind is SumKind.M_PART and self.value.denominator != 1:
            raise DomainError("M values must be integers")

    def as_dict(self) -> dict:
        return {
            "a": self.pair.a,
            "b": self.pair.b,
            "kind": self.kind.value,
            "route": self.route.value,
            "value": rational_str(self.value),
        }


def rational_str(x: Fraction | int) -> str:
    """Canonical machine form p/q with q > 0 and gcd(|p|, q) = 1."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    """Inverse of :func:`rational_str`; also accepts bare integers."""
    return Fraction(text.strip())

"""Exact arithmetic engine: Dedekind sums, Hardy-Berndt sums, the rational
part Q(a; b) by three independent routes, and the integral part M(a; b).

All heavy inner loops run on machine/big integers and convert to a single
``Fraction`` at the end, so bulk verification over large ranges stays fast
while every returned value is exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import CoprimalityError, DomainError, UndefinedRationalPartError
from .pairs import CoprimePair, Route

from dataclasses import dataclass
from enum import Enum

ZERO = Fraction(0)


def _require_modulus(b: int) -> None:
    if b < 1:
        raise DomainError(f"modulus must be a positive integer, got {b}")


def _require_coprime(a: int, b: int) -> None:
    if math.gcd(a, b) != 1:
        raise CoprimalityError(f"gcd({a}, {b}) != 1")


def _require_u_odd(pair: CoprimePair) -> None:
    if not pair.in_U_odd:
        raise UndefinedRationalPartError(
            f"({pair.a}; {pair.b}) has a + b even: rational part undefined"
        )


def _sawtooth_numerator(a: int, b: int) -> int:
    # sum over v = 1..b-1 of (2r - b)(2v - b) with r = a*v mod b, dropping
    # terms with r = 0; equals 4 b^2 s(a; b) for the sawtooth convention
    # ((x)) = 0 at integers.
    a_mod = a % b
    total = 0
    r = 0
    for v in range(1, b):
        r += a_mod
        if r >= b:
            r -= b
        if r:
            total += (2 * r - b) * (2 * v - b)
    return total


def dedekind_sum(a: int, b: int) -> Fraction:
    """Classical Dedekind sum s(a; b) as an exact rational.

    Defined through the sawtooth function, so non-coprime inputs are
    accepted: lattice terms where a*v is a multiple of b contribute zero.
    s(a; 1) = 0, s(-a; b) = -s(a; b) and s(a + b; b) = s(a; b).
    """
    _require_modulus(b)
    if b == 1:
        return ZERO
    return Fraction(_sawtooth_numerator(a, b), 4 * b * b)


def hardy_berndt(a: int, b: int) -> int:
    """Alternating-sign sum S(a; b); integer valued, needs gcd(a, b) = 1."""
    _require_modulus(b)
    _require_coprime(a, b)
    if b == 1:
        return 0
    a_div, a_mod = divmod(a, b)
    total = 0
    r = 0
    f = 0  # floor(a*mu / b)
    for mu in range(1, b):
        r += a_mod
        f += a_div
        if r >= b:
            r -= b
            f += 1
        total += 1 if (mu + 1 + f) % 2 == 0 else -1
    return total


def reciprocity_constant(a: int, b: int) -> Fraction:
    """R(a; b) = (a^2 + b^2 + 1) / (4ab) for positive a, b."""
    if a < 1 or b < 1:
        raise DomainError("reciprocity constant needs positive arguments")
    return Fraction(a * a + b * b + 1, 4 * a * b)


# -- rational part ----------------------------------------------------------
#
# The Euclidean route normalizes a into (-b, b) using the period 2b and the
# odd symmetry, then swaps the arguments through the reciprocity law.  The
# modulus of the recursive call strictly decreases, so the recursion always
# bottoms out at b = 1.  Canonical states (0 < a < b) are memoized; the
# whole U^o box up to a few hundred costs one cheap step per distinct state.


def q_euclidean(a: int, b: int) -> Fraction:
    """Q(a; b) by parity/period reduction plus reciprocity descent."""
    _require_modulus(b)
    _require_coprime(a, b)
    if (a + b) % 2 == 0:
        raise UndefinedRationalPartError(f"({a}; {b}) has a + b even")
    return _q_reduce(a, b)


def _q_reduce(a: int, b: int) -> Fraction:
    if b == 1:
        return ZERO
    a %= 2 * b
    if a > b:
        a -= 2 * b
    if a < 0:
        return -_q_core(-a, b)
    return _q_core(a, b)


@lru_cache(maxsize=None)
def _q_core(a: int, b: int) -> Fraction:
    # 0 < a < b, gcd(a, b) = 1, a + b odd
    return reciprocity_constant(a, b) - _q_reduce(b, a)


def q_value(pair: CoprimePair, route: Route = Route.MAIN_RESULT) -> Fraction:
    """Rational part Q(a; b) of the elliptic lattice sum, exact.

    The three routes are mathematically equivalent and are kept independent
    so they can cross-check each other:

    * ``MAIN_RESULT``: 3 (s(a; b) + S(a; b) / 4)
    * ``RAO``:         6 (s(a; 2b) + s(2a; b) - 2 s(a; b))
    * ``EUCLIDEAN``:   parity + period-2b reduction + reciprocity descent
    """
    _require_u_odd(pair)
    a, b = pair.a, pair.b
    if route is Route.MAIN_RESULT:
        return 3 * (dedekind_sum(a, b) + Fraction(hardy_berndt(a, b), 4))
    if route is Route.RAO:
        return 6 * (dedekind_sum(a, 2 * b) + dedekind_sum(2 * a, b) - 2 * dedekind_sum(a, b))
    if route is Route.EUCLIDEAN:
        return _q_reduce(a, b)
    raise DomainError(f"route {route.value!r} does not compute the rational part")


# -- integral part ----------------------------------------------------------


def _m_positive(a: int, b: int) -> int:
    # a > 0; M(a; b) = a b^2 + 3 sum_{v<2b} floor(av/2b)(b - v)
    #                        + 3 sum_{v<b} (floor(2av/b) - 2 floor(av/b))(b - 2v)
    b2 = 2 * b
    d2, m2 = divmod(a, b2)
    s1 = 0
    r = 0
    f = 0
    for v in range(1, b2):
        r += m2
        f += d2
        if r >= b2:
            r -= b2
            f += 1
        s1 += f * (b - v)
    d1, m1 = divmod(a, b)
    d3, m3 = divmod(2 * a, b)
    s2 = 0
    r1 = 0
    f1 = 0
    r2 = 0
    f2 = 0
    for v in range(1, b):
        r1 += m1
        f1 += d1
        if r1 >= b:
            r1 -= b
            f1 += 1
        r2 += m3
        f2 += d3
        if r2 >= b:
            r2 -= b
            f2 += 1
        s2 += (f2 - 2 * f1) * (b - 2 * v)
    return a * b * b + 3 * s1 + 3 * s2


def m_value(pair: CoprimePair) -> int:
    """Integral part M(a; b), the integer with b Q(a; b) = a(1-3b)/2 + M(a; b).

    Evaluated by the explicit triple floor sum; negative a goes through the
    odd symmetry M(-a; b) = -M(a; b).
    """
    _require_u_odd(pair)
    if pair.a < 0:
        return -_m_positive(-pair.a, pair.b)
    return _m_positive(pair.a, pair.b)


def bq_from_m(a: int, b: int) -> int:
    """b Q(a; b) for even a > 0 and odd b, via the integral part only.

    Integer arithmetic throughout; this is the route the bulk scans use.
    """
    return a * (1 - 3 * b) // 2 + _m_positive(a, b)


# -- derived checks ---------------------------------------------------------


class DenominatorClass(Enum):
    INTEGER = "integer"
    HALF_INTEGER = "half-integer"


def denominator_class(pair: CoprimePair) -> DenominatorClass:
    """Predicted residue class of b Q(a; b): integral iff a is even."""
    _require_u_odd(pair)
    return DenominatorClass.HALF_INTEGER if pair.a % 2 else DenominatorClass.INTEGER


@dataclass(frozen=True)
class ZeroCharacterization:
    predicted_zero: bool
    actual_zero: bool


def zero_characterization(pair: CoprimePair) -> ZeroCharacterization:
    """Compare the congruence test b | a^2 + 1 against Q(a; b) = 0.

    Only defined for a even and b odd, the regime where Q can vanish at all.
    """
    if pair.a % 2 != 0 or pair.b % 2 == 0:
        raise DomainError("zero characterization needs a even and b odd")
    predicted = (pair.a * pair.a + 1) % pair.b == 0
    actual = q_euclidean(pair.a, pair.b) == 0
    return ZeroCharacterization(predicted, actual)


@dataclass(frozen=True)
class InversionCheck:
    applicable: bool
    sign: int
    holds: bool


def inversion_check(a: int, a_prime: int, b: int) -> InversionCheck:
    """Test Q(a; b) = +/- Q(a'; b) for a a' = +/-1 (mod b), odd b.

    Inapplicable inputs (even b, odd arguments, or no congruence) come back
    with ``applicable=False`` instead of an error.
    """
    _require_modulus(b)
    _require_coprime(a, b)
    _require_coprime(a_prime, b)
    if (a + b) % 2 == 0 or (a_prime + b) % 2 == 0:
        raise UndefinedRationalPartError("both pairs must have odd argument sum")
    if b % 2 == 0 or a % 2 or a_prime % 2:
        return InversionCheck(False, 0, False)
    product = (a * a_prime) % b
    if product == 1 % b:
        sign = 1
    elif product == (-1) % b:
        sign = -1
    else:
        return InversionCheck(False, 0, False)
    holds = q_euclidean(a, b) == sign * q_euclidean(a_prime, b)
    return InversionCheck(True, sign, holds)


def rao_identity_defect(pair: CoprimePair) -> Fraction:
    """S(a; b) - 8 s(a; 2b) - 8 s(2a; b) + 20 s(a; b); zero on all of U^o."""
    _require_u_odd(pair)
    a, b = pair.a, pair.b
    return (
        Fraction(hardy_berndt(a, b))
        - 8 * dedekind_sum(a, 2 * b)
        - 8 * dedekind_sum(2 * a, b)
        + 20 * dedekind_sum(a, b)
    )


def m_reciprocity_defect(a: int, b: int) -> Fraction:
    """a M(a; b) + b M(b; a) - (1 - a^2 - b^2 + 6ab(a + b)) / 4; zero."""
    if a < 1 or b < 1:
        raise DomainError("reciprocity defect needs positive arguments")
    left = a * m_value(CoprimePair(a, b)) + b * m_value(CoprimePair(b, a))
    return Fraction(left) - Fraction(1 - a * a - b * b + 6 * a * b * (a + b), 4)

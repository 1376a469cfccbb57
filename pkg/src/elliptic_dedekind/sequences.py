"""Generalized Fibonacci/Pell sequences and the zero pairs they generate.

The recurrence P[m+2] = N*P[m+1] + P[m] with seeds 0, 1 satisfies the
Cassini identity P[m+1]*P[m-1] - P[m]^2 = (-1)^m.  At even indices this
gives P[m]^2 = -1 modulo both neighbors, so whenever P[m] is also even the
pair (P[m]; P[m+-1]) is a zero of the rational part.  For even N that is
every even index; for odd N the even-valued terms sit at indices divisible
by 3, so the zero family lives at indices divisible by 6.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import DomainError
from .pairs import CoprimePair


class PairExpectation(Enum):
    ZERO = "zero"
    SIGN_RELATION = "sign-relation"


@dataclass(frozen=True)
class ZeroPairRecord:
    pair: CoprimePair
    expected: PairExpectation

    def as_dict(self) -> dict:
        return {"a": self.pair.a, "b": self.pair.b, "expected": self.expected.value}


@dataclass(frozen=True)
class SignRelation:
    """Q(left) is expected to equal sign * Q(right)."""

    left: CoprimePair
    right: CoprimePair
    sign: int


def p_sequence(multiplier: int, length: int) -> list[int]:
    """First ``length`` terms of the recurrence, exact."""
    if multiplier < 1:
        raise DomainError("recurrence multiplier must be >= 1")
    if length < 0:
        raise DomainError("length must be nonnegative")
    terms = [0, 1]
    while len(terms) < length:
        terms.append(multiplier * terms[-1] + terms[-2])
    return terms[:length]


def p_term(multiplier: int, index: int) -> int:
    """Term P[index] of the sequence with the given multiplier."""
    if index < 0:
        raise DomainError("index must be nonnegative")
    return p_sequence(multiplier, index + 1)[index]


def cassini_defect(multiplier: int, index: int) -> int:
    """P[m+1]*P[m-1] - P[m]^2 - (-1)^m; must be zero for every m >= 1."""
    if index < 1:
        raise DomainError("index must be >= 1")
    p = p_sequence(multiplier, index + 2)
    return p[index + 1] * p[index - 1] - p[index] ** 2 - (-1) ** index


def zero_pairs(multiplier: int, max_m: int) -> list[ZeroPairRecord]:
    """Pairs with a known rational-part value pattern, largest index first
    bounded by ``max_m``.

    ``ZERO`` entries satisfy Q(pair) = 0 exactly.  ``SIGN_RELATION`` entries
    mark the neighbor pairs whose values are tied to each other; the actual
    relation (including its sign) is spelled out by
    :func:`neighbor_sign_relations`.
    """
    if multiplier < 1 or max_m < 1:
        raise DomainError("arguments must be positive")
    stride = 2 if multiplier % 2 == 0 else 6
    top = stride * max_m
    p = p_sequence(multiplier, top + 2)
    records: list[ZeroPairRecord] = []
    for m in range(1, max_m + 1):
        i = stride * m
        for j in (i - 1, i + 1):
            records.append(
                ZeroPairRecord(CoprimePair(p[i], p[j]), PairExpectation.ZERO)
            )
    for rel in neighbor_sign_relations(multiplier, max_m):
        records.append(ZeroPairRecord(rel.left, PairExpectation.SIGN_RELATION))
        records.append(ZeroPairRecord(rel.right, PairExpectation.SIGN_RELATION))
    return records


def neighbor_sign_relations(multiplier: int, max_m: int) -> list[SignRelation]:
    """Expected relations between Q over the even-valued sequence terms.

    For even multipliers the two neighbors of an even-index term have equal
    values (they differ by a multiple of twice the modulus).  For odd
    multipliers the relation over P[3m] carries the sign (-1)^m; it is an
    observation to report, not an identity this package asserts.
    """
    if multiplier < 1 or max_m < 1:
        raise DomainError("arguments must be positive")
    stride = 2 if multiplier % 2 == 0 else 3
    top = stride * max_m
    p = p_sequence(multiplier, top + 2)
    relations = []
    for m in range(1, max_m + 1):
        i = stride * m
        sign = 1 if multiplier % 2 == 0 else (-1) ** m
        relations.append(
            SignRelation(
                CoprimePair(p[i + 1], p[i]),
                CoprimePair(p[i - 1], p[i]),
                sign,
            )
        )
    return relations

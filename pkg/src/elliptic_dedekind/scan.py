"""Range scans testing divisibility of b*Q(a; b).

Each qualifying pair costs one evaluation of the integral-part triple sum,
pure integer arithmetic with no shared state, so rows partition freely
across worker processes.  Reports merge associatively and the merged result
is independent of how the rectangle was split.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import repeat

from .errors import DomainError
from .exact import bq_from_m
from .pairs import rational_str

WORKERS_ENV = "ELLIPTIC_DEDEKIND_WORKERS"


class ScanLaw(Enum):
    MOD4 = "mod4"
    MOD12 = "mod12"


_LAW_MODULUS = {ScanLaw.MOD4: 4, ScanLaw.MOD12: 12}


@dataclass(frozen=True)
class ScanViolation:
    a: int
    b: int
    observed: str  # canonical rational string of b*Q(a; b)


@dataclass(frozen=True)
class ScanReport:
    law: ScanLaw
    a_min: int
    a_max: int
    b_min: int
    b_max: int
    checked: int
    violations: tuple
    elapsed_ms: int
    workers: int

    def as_dict(self) -> dict:
        return {
            "law": self.law.value,
            "range": {
                "a_min": self.a_min,
                "a_max": self.a_max,
                "b_min": self.b_min,
                "b_max": self.b_max,
            },
            "checked": self.checked,
            "violations": [
                {"a": v.a, "b": v.b, "observed": v.observed} for v in self.violations
            ],
            "elapsed_ms": self.elapsed_ms,
            "workers": self.workers,
        }


def qualifying_moduli(law: ScanLaw, b_min: int, b_max: int) -> list:
    """Odd moduli in range; the mod-12 law keeps only b = +/-1 mod 6."""
    values = []
    for b in range(b_min, b_max + 1):
        if b % 2 == 0:
            continue
        if law is ScanLaw.MOD12 and b % 6 not in (1, 5):
            continue
        values.append(b)
    return values


def _scan_rows(law: ScanLaw, b_values, a_min: int, a_max: int):
    modulus = _LAW_MODULUS[law]
    checked = 0
    violations = []
    for b in b_values:
        start = a_min if a_min % 2 == 0 else a_min + 1
        for a in range(start, a_max + 1, 2):
            if math.gcd(a, b) != 1:
                continue
            checked += 1
            bq = bq_from_m(a, b)
            if bq % modulus:
                violations.append(ScanViolation(a, b, rational_str(Fraction(bq))))
    return checked, violations


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def conjecture_scan(a_range, b_range, law: ScanLaw, workers: int | None = None) -> ScanReport:
    """Scan the rectangle for even a, odd b coprime pairs whose b*Q(a; b)
    breaks the divisibility law.  The report enumerates findings; an empty
    violation list is evidence, not a proof.
    """
    a_min, a_max = a_range
    b_min, b_max = b_range
    if a_min < 1 or b_min < 1 or a_max < a_min or b_max < b_min:
        raise DomainError("scan ranges must be positive and ordered")
    if workers is None:
        workers = default_workers()
    workers = max(1, workers)

    b_values = qualifying_moduli(law, b_min, b_max)
    start = time.perf_counter()
    if workers == 1 or len(b_values) <= 1:
        checked, violations = _scan_rows(law, b_values, a_min, a_max)
    else:
        # interleave rows by size so chunk workloads stay balanced
        ordered = sorted(b_values, reverse=True)
        n_chunks = min(len(ordered), workers * 4)
        chunks = [ordered[i::n_chunks] for i in range(n_chunks)]
        checked = 0
        violations = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part_checked, part_violations in pool.map(
                _scan_rows, repeat(law), chunks, repeat(a_min), repeat(a_max)
            ):
                checked += part_checked
                violations.extend(part_violations)
    violations.sort(key=lambda v: (v.b, v.a))
    elapsed_ms = int((time.perf_counter() - start) * 1000)
    return ScanReport(
        law=law,
        a_min=a_min,
        a_max=a_max,
        b_min=b_min,
        b_max=b_max,
        checked=checked,
        violations=tuple(violations),
        elapsed_ms=elapsed_ms,
        workers=workers,
    )


def merge_reports(reports) -> ScanReport:
    """Combine sub-rectangle reports; the merge is order independent."""
    reports = list(reports)
    if not reports:
        raise DomainError("nothing to merge")
    law = reports[0].law
    if any(r.law is not law for r in reports):
        raise DomainError("cannot merge reports for different laws")
    violations = sorted(
        (v for r in reports for v in r.violations), key=lambda v: (v.b, v.a)
    )
    return ScanReport(
        law=law,
        a_min=min(r.a_min for r in reports),
        a_max=max(r.a_max for r in reports),
        b_min=min(r.b_min for r in reports),
        b_max=max(r.b_max for r in reports),
        checked=sum(r.checked for r in reports),
        violations=tuple(violations),
        elapsed_ms=sum(r.elapsed_ms for r in reports),
        workers=max(r.workers for r in reports),
    )


def format_csv(report: ScanReport) -> str:
    lines = ["a,b,observed"]
    for v in report.violations:
        lines.append(f"{v.a},{v.b},{v.observed}")
    return "\n".join(lines) + "\n"

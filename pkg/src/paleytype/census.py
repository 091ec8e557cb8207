"""Counting representations z = a - b with a, b in QR_N.

Pairs are ordered pairs of residue values (a, b), not pairs of square roots.
With that convention the count at z = 0 is |QR_N| (the diagonal), which is
what the per-prime formulas (p-1)/2, (p-5)/4, (p-1)/4 describe.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .numtheory import (
    GlobalClass,
    PrimeSet,
    ResidueClass,
    ResidueProfile,
    classify,
    legendre,
    qr_bitmap,
)


def per_prime_count(z: int, p: int) -> int:
    z %= p
    if z == 0:
        return (p - 1) // 2
    if legendre(z, p) == 1:
        return (p - 5) // 4
    return (p - 1) // 4


def predicted_count(z: int, ps: PrimeSet) -> int:
    """Closed form: the product of the per-prime counts of the CRT coordinates."""
    return math.prod(per_prime_count(z % p, p) for p in ps.primes)


def case_formula_count(profile: ResidueProfile, ps: PrimeSet) -> int:
    """Closed form organised by the global class of z.

    Every class reduces to one expression: zero coordinates contribute
    (p-1)/2, QR coordinates (p-5)/4 and QNR coordinates (p-1)/4.  Written
    out per class so each case can be exercised separately.
    """
    cls = profile.global_class
    pairs = list(zip(profile.per_prime, ps.primes))
    if cls is GlobalClass.ZERO:
        return math.prod(p - 1 for p in ps.primes) // 2**ps.n
    if cls is GlobalClass.QR_N:
        return math.prod(p - 5 for p in ps.primes) // 4**ps.n
    if cls in (GlobalClass.JPLUS_NOT_QR, GlobalClass.JMINUS):
        num = math.prod((p - 1) if c is ResidueClass.QNR else (p - 5) for c, p in pairs)
        return num // 4**ps.n
    # non-unit, non-zero: some coordinates vanish
    zeros = [p for c, p in pairs if c is ResidueClass.ZERO]
    rest = [(c, p) for c, p in pairs if c is not ResidueClass.ZERO]
    num = math.prod(p - 1 for p in zeros) * math.prod(
        (p - 1) if c is ResidueClass.QNR else (p - 5) for c, p in rest
    )
    return num // (2 ** len(zeros) * 4 ** len(rest))


def oracle_count(z: int, ps: PrimeSet) -> int:
    """Exhaustive count of ordered (a, b) in QR_N x QR_N with a - b = z."""
    table = qr_bitmap(ps)
    N = ps.N
    return sum(1 for a in np.flatnonzero(table) if table[(int(a) - z) % N])


def difference_histogram(ps: PrimeSet) -> np.ndarray:
    """Oracle counts for every z at once, by enumerating all |QR_N|^2 pairs."""
    qr = np.flatnonzero(qr_bitmap(ps))
    diffs = (qr[:, None] - qr[None, :]) % ps.N
    return np.bincount(diffs.ravel(), minlength=ps.N)


@dataclass(frozen=True)
class CensusRecord:
    z: int
    case_label: GlobalClass
    per_prime: tuple[ResidueClass, ...]
    predicted: int
    observed: int

    @property
    def match(self) -> bool:
        return self.predicted == self.observed

    def to_dict(self) -> dict:
        return {
            "z": self.z,
            "caseLabel": self.case_label.value,
            "perPrime": [c.value for c in self.per_prime],
            "predicted": self.predicted,
            "observed": self.observed,
            "match": self.match,
        }


def full_census(ps: PrimeSet) -> list[CensusRecord]:
    observed = difference_histogram(ps)
    records = []
    for z in range(ps.N):
        prof = classify(z, ps)
        records.append(
            CensusRecord(z, prof.global_class, prof.per_prime, predicted_count(z, ps), int(observed[z]))
        )
    return records


def summarize(records: list[CensusRecord]) -> dict:
    by_case = Counter(r.case_label.value for r in records)
    return {
        "records": len(records),
        "mismatches": sum(not r.match for r in records),
        "byCase": dict(sorted(by_case.items())),
    }

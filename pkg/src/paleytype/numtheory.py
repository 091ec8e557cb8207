"""Exact arithmetic in Z_N for N a product of distinct primes p = 1 (mod 4).

Everything here is integer-only.  Quadratic residues are materialized as
boolean membership tables of length N so that adjacency tests in the graph
code are O(1) lookups.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import CoordOutOfRange, Duplicate, NotAscending, NotPrime, NotPythagorean

# Dense tables of length N are built everywhere; beyond this they stop being cheap.
MAX_MODULUS = 10**6


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    i = 5
    while i * i <= n:
        if n % i == 0 or n % (i + 2) == 0:
            return False
        i += 6
    return True


@dataclass(frozen=True)
class PrimeSet:
    """Ordered tuple of distinct Pythagorean primes p1 < p2 < ... < pn.

    Construction validates; an invalid list raises one of NotPrime,
    NotPythagorean, Duplicate or NotAscending naming the offending value.
    Unsorted input is rejected rather than sorted.
    """

    primes: tuple[int, ...]

    def __post_init__(self):
        primes = tuple(int(p) for p in self.primes)
        object.__setattr__(self, "primes", primes)
        if not primes:
            raise ValueError("at least one prime is required")
        seen = set()
        for i, p in enumerate(primes):
            if not is_prime(p):
                raise NotPrime(f"{p} is not prime", p)
            if p % 4 != 1:
                raise NotPythagorean(f"{p} is not congruent to 1 mod 4", p)
            if p in seen:
                raise Duplicate(f"{p} appears more than once", p)
            seen.add(p)
            if i and p < primes[i - 1]:
                raise NotAscending(f"{p} follows {primes[i - 1]}; primes must be ascending", p)
        if math.prod(primes) > MAX_MODULUS:
            raise ValueError(f"N = {math.prod(primes)} exceeds the supported bound {MAX_MODULUS}")

    @property
    def n(self) -> int:
        return len(self.primes)

    @property
    def N(self) -> int:
        return math.prod(self.primes)

    def __iter__(self):
        return iter(self.primes)

    def __str__(self):
        return ",".join(map(str, self.primes))


def validate_primes(raw: Iterable[int]) -> PrimeSet:
    return PrimeSet(tuple(raw))


def euler_phi(ps: PrimeSet) -> int:
    return math.prod(p - 1 for p in ps.primes)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) by Euler's criterion."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def jacobi_symbol(z: int, ps: PrimeSet) -> int:
    result = 1
    for p in ps.primes:
        result *= legendre(z, p)
        if result == 0:
            return 0
    return result


@lru_cache(maxsize=64)
def _unit_mask(ps: PrimeSet) -> np.ndarray:
    x = np.arange(ps.N, dtype=np.int64)
    mask = np.gcd(x, ps.N) == 1
    mask.flags.writeable = False
    return mask


@lru_cache(maxsize=64)
def qr_bitmap(ps: PrimeSet) -> np.ndarray:
    """Boolean table of length N, True exactly on QR_N.

    Built by squaring every unit; this is the reference definition every
    other membership test is compared against.
    """
    N = ps.N
    units = np.flatnonzero(_unit_mask(ps)).astype(np.int64)
    table = np.zeros(N, dtype=bool)
    table[(units * units) % N] = True
    table.flags.writeable = False
    return table


def units(ps: PrimeSet) -> np.ndarray:
    return np.flatnonzero(_unit_mask(ps))


def quadratic_residues(ps: PrimeSet) -> frozenset[int]:
    return frozenset(int(x) for x in np.flatnonzero(qr_bitmap(ps)))


def is_qr(z: int, ps: PrimeSet) -> bool:
    return bool(qr_bitmap(ps)[z % ps.N])


def minus_one_is_qr(ps: PrimeSet) -> bool:
    return is_qr(ps.N - 1, ps)


def crt_split(z: int, ps: PrimeSet) -> list[int]:
    if not 0 <= z < ps.N:
        raise CoordOutOfRange(f"{z} is outside [0, {ps.N})")
    return [z % p for p in ps.primes]


def crt_join(coords: Sequence[int], ps: PrimeSet) -> int:
    if len(coords) != ps.n:
        raise CoordOutOfRange(f"expected {ps.n} coordinates, got {len(coords)}")
    N = ps.N
    z = 0
    for c, p in zip(coords, ps.primes):
        if not 0 <= c < p:
            raise CoordOutOfRange(f"coordinate {c} is outside [0, {p})")
        m = N // p
        z += c * m * pow(m, -1, p)
    return z % N


class ResidueClass(str, enum.Enum):
    ZERO = "Zero"
    QR = "QR"
    QNR = "QNR"


class GlobalClass(str, enum.Enum):
    ZERO = "Zero"
    NON_UNIT_NON_ZERO = "NonUnitNonZero"
    QR_N = "QR_N"
    JPLUS_NOT_QR = "JplusNotQR"
    JMINUS = "Jminus"


@dataclass(frozen=True)
class ResidueProfile:
    z: int
    per_prime: tuple[ResidueClass, ...]
    unit: bool
    jacobi: int
    global_class: GlobalClass

    @cached_property
    def qnr_count(self) -> int:
        return sum(c is ResidueClass.QNR for c in self.per_prime)

    def to_dict(self) -> dict:
        return {
            "z": self.z,
            "perPrime": [c.value for c in self.per_prime],
            "unit": self.unit,
            "jacobi": self.jacobi,
            "globalClass": self.global_class.value,
        }


def classify(z: int, ps: PrimeSet) -> ResidueProfile:
    if not 0 <= z < ps.N:
        raise CoordOutOfRange(f"{z} is outside [0, {ps.N})")
    per_prime = []
    for p in ps.primes:
        ls = legendre(z, p)
        per_prime.append(
            ResidueClass.ZERO if ls == 0 else ResidueClass.QR if ls == 1 else ResidueClass.QNR
        )
    unit = ResidueClass.ZERO not in per_prime
    qnr = sum(c is ResidueClass.QNR for c in per_prime)
    jacobi = (-1) ** qnr if unit else 0
    if z == 0:
        cls = GlobalClass.ZERO
    elif not unit:
        cls = GlobalClass.NON_UNIT_NON_ZERO
    elif qnr == 0:
        cls = GlobalClass.QR_N
    elif qnr % 2 == 0:
        cls = GlobalClass.JPLUS_NOT_QR
    else:
        cls = GlobalClass.JMINUS
    return ResidueProfile(z, tuple(per_prime), unit, jacobi, cls)


def class_counts(ps: PrimeSet) -> dict[GlobalClass, int]:
    """Tally the global class of every z in Z_N."""
    counts = {c: 0 for c in GlobalClass}
    for z in range(ps.N):
        counts[classify(z, ps).global_class] += 1
    return counts

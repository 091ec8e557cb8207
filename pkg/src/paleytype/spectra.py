"""Closed-form and numerical adjacency spectra of Paley-type graphs.

Each prime factor p contributes one of three branches: Plain (the degree
factor p - 1), PlusRoot (sqrt(p) - 1) or MinusRoot (-sqrt(p) - 1).  An
eigenvalue of Gamma_N is the product of the chosen factors over 2^n, with
multiplicity the product of (p - 1)/2 over root branches.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .eigen import jacobi_eigenvalues
from .errors import MismatchedMultiplicity, TooLarge, ValueGap, VerificationFailed
from .graphs import Graph
from .numtheory import PrimeSet, euler_phi

MAX_EIGEN_V = 1200


class Branch(str, enum.Enum):
    PLAIN = "Plain"
    PLUS_ROOT = "PlusRoot"
    MINUS_ROOT = "MinusRoot"


def _factor(branch: Branch, p: int) -> float:
    if branch is Branch.PLAIN:
        return float(p - 1)
    r = math.sqrt(p)
    return r - 1.0 if branch is Branch.PLUS_ROOT else -r - 1.0


def _factor_text(branch: Branch, p: int) -> str:
    if branch is Branch.PLAIN:
        return f"({p}-1)"
    return f"({'' if branch is Branch.PLUS_ROOT else '-'}sqrt{p}-1)"


@dataclass(frozen=True)
class SpectrumEntry:
    branch: tuple[Branch, ...]
    primes: tuple[int, ...]
    value: float
    multiplicity: int

    @property
    def exact_factors(self) -> tuple[tuple[str, int], ...]:
        """(kind, prime) pairs; kind is 'plain', '+root' or '-root'."""
        kinds = {Branch.PLAIN: "plain", Branch.PLUS_ROOT: "+root", Branch.MINUS_ROOT: "-root"}
        return tuple((kinds[b], p) for b, p in zip(self.branch, self.primes))

    @property
    def radical(self) -> str:
        body = "".join(_factor_text(b, p) for b, p in zip(self.branch, self.primes))
        return f"{body}/{2 ** len(self.primes)}"

    def to_dict(self) -> dict:
        return {
            "branch": [b.value for b in self.branch],
            "radical": self.radical,
            "value": self.value,
            "multiplicity": self.multiplicity,
        }


@dataclass(frozen=True)
class SpectrumTable:
    ps: PrimeSet
    entries: tuple[SpectrumEntry, ...]

    @property
    def n(self) -> int:
        return self.ps.n

    def values(self) -> np.ndarray:
        return np.array([e.value for e in self.entries])

    def multiplicities(self) -> np.ndarray:
        return np.array([e.multiplicity for e in self.entries])

    def min_gap(self) -> float:
        v = np.sort(self.values())
        return float(np.min(np.diff(v))) if len(v) > 1 else math.inf

    def collisions(self, eps: float = 1e-9) -> list[tuple[SpectrumEntry, SpectrumEntry]]:
        """Adjacent entries (by value) closer than eps; empty when all 3^n values are distinct."""
        es = sorted(self.entries, key=lambda e: e.value)
        return [(a, b) for a, b in zip(es, es[1:]) if b.value - a.value <= eps]

    def moments(self) -> tuple[int, float, float]:
        """(sum of multiplicities, trace, trace of A^2)."""
        v, m = self.values(), self.multiplicities()
        return int(m.sum()), float((v * m).sum()), float((v * v * m).sum())

    def to_dict(self) -> dict:
        return {
            "primes": list(self.ps.primes),
            "N": self.ps.N,
            "entries": [e.to_dict() for e in self.entries],
        }


def closed_form_spectrum(ps: PrimeSet) -> SpectrumTable:
    entries = []
    for branch in itertools.product(list(Branch), repeat=ps.n):
        value = math.prod(_factor(b, p) for b, p in zip(branch, ps.primes)) / 2**ps.n
        mult = math.prod((p - 1) // 2 for b, p in zip(branch, ps.primes) if b is not Branch.PLAIN)
        entries.append(SpectrumEntry(tuple(branch), ps.primes, value, mult))
    entries.sort(key=lambda e: -e.value)
    return SpectrumTable(ps, tuple(entries))


def eigenvalues(g: Graph, tol: float = 1e-12, max_vertices: int = MAX_EIGEN_V) -> np.ndarray:
    """All adjacency eigenvalues, ascending, each within tol of the true value."""
    if g.order > max_vertices:
        raise TooLarge(f"V = {g.order} exceeds the eigensolver guard {max_vertices}")
    return jacobi_eigenvalues(g.adjacency, atol=tol)


def cluster(values, spacing: float) -> list[tuple[float, int]]:
    """Group sorted values whose consecutive gaps are at most spacing; (mean, count) per group."""
    v = np.sort(np.asarray(values, dtype=float))
    if len(v) == 0:
        return []
    breaks = np.flatnonzero(np.diff(v) > spacing) + 1
    return [(float(c.mean()), len(c)) for c in np.split(v, breaks)]


def numeric_spectrum(g: Graph, tol: float = 1e-6, max_vertices: int = MAX_EIGEN_V) -> list[tuple[float, int]]:
    """(value, multiplicity) clusters, descending by value.

    The eigensolver runs until every value is within tol/10; clusters are
    formed at spacing 10 * tol.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    vals = eigenvalues(g, tol / 10, max_vertices)
    return sorted(cluster(vals, 10 * tol), key=lambda c: -c[0])


@dataclass
class ReconcileReport:
    tol: float
    pairs: list[tuple[SpectrumEntry, float, int]] = field(default_factory=list)

    @property
    def max_deviation(self) -> float:
        return max((abs(e.value - v) for e, v, _ in self.pairs), default=0.0)

    def to_dict(self) -> dict:
        return {
            "tol": self.tol,
            "matched": len(self.pairs),
            "maxDeviation": self.max_deviation,
            "pairs": [
                {**e.to_dict(), "numericValue": v, "numericMultiplicity": m} for e, v, m in self.pairs
            ],
        }


def reconcile(table: SpectrumTable, numeric: list[tuple[float, int]], tol: float) -> ReconcileReport:
    """Match each closed-form entry to its nearest unused numeric cluster.

    Raises ValueGap when the nearest cluster is farther than tol (or none
    is left) and MismatchedMultiplicity when the counts differ.
    """
    remaining = list(numeric)
    report = ReconcileReport(tol)
    for entry in table.entries:
        if not remaining:
            raise ValueGap(f"no numeric cluster left for {entry.radical}", entry)
        k = min(range(len(remaining)), key=lambda i: abs(remaining[i][0] - entry.value))
        value, mult = remaining.pop(k)
        if abs(value - entry.value) > tol:
            raise ValueGap(
                f"{entry.radical} = {entry.value:.12g}: nearest cluster {value:.12g} is off by "
                f"{abs(value - entry.value):.3e} > {tol:g}",
                entry,
            )
        if mult != entry.multiplicity:
            raise MismatchedMultiplicity(
                f"{entry.radical}: multiplicity {entry.multiplicity} predicted, {mult} observed", entry
            )
        report.pairs.append((entry, value, mult))
    if remaining:
        raise ValueGap(f"{len(remaining)} numeric clusters have no closed-form partner")
    return report


def least_eigenvalue(ps: PrimeSet) -> SpectrumEntry:
    table = closed_form_spectrum(ps)
    least = min(table.entries, key=lambda e: e.value)
    expected = (Branch.MINUS_ROOT,) + (Branch.PLAIN,) * (ps.n - 1)
    if least.branch != expected:
        raise VerificationFailed(f"least eigenvalue sits on branch {least.branch}, not {expected}")
    degree = euler_phi(ps) // 2**ps.n
    if not least.value > -degree:
        raise VerificationFailed(f"least eigenvalue {least.value} is not above -{degree}")
    return least

"""The full check suite behind ``paleytype verify``.

Each check returns a status (pass / fail / skipped) plus details.  Checks
whose cost grows too fast are skipped above configurable vertex guards;
a skip never counts as a failure.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from . import __version__
from .census import full_census, summarize
from .cycles import DEFAULT_CYCLE_BUDGET, MAX_PANCYCLIC_V, hamiltonian_check, pancyclicity_sweep
from .errors import Inconclusive, PaleyError
from .graphs import (
    MAX_CONNECTIVITY_V,
    build_paley_type,
    crt_isomorphism,
    edge_connectivity,
    is_connected,
    is_eulerian,
    is_r_thin,
    is_regular,
    is_self_complementary_refuted,
    is_strongly_regular,
    srg_witness,
    vertex_connectivity,
)
from .numtheory import (
    GlobalClass,
    PrimeSet,
    ResidueClass,
    class_counts,
    classify,
    euler_phi,
    minus_one_is_qr,
    quadratic_residues,
)
from .spectra import MAX_EIGEN_V, closed_form_spectrum, least_eigenvalue, numeric_spectrum, reconcile
from .symmetry import (
    DEFAULT_AUT_BUDGET,
    MAX_AUT_V,
    affine_automorphisms,
    aut_formula,
    hammack_assembly,
    transitivity_check,
)

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class SuiteConfig:
    tol: float = 1e-6
    aut_budget: int = DEFAULT_AUT_BUDGET
    cycle_budget: int = DEFAULT_CYCLE_BUDGET
    max_aut_v: int = MAX_AUT_V
    max_conn_v: int = MAX_CONNECTIVITY_V
    max_cycle_v: int = MAX_PANCYCLIC_V
    max_eig_v: int = MAX_EIGEN_V
    witnesses: bool = False


def _ok(cond: bool) -> str:
    return PASS if cond else FAIL


class _Suite:
    def __init__(self, ps: PrimeSet, cfg: SuiteConfig):
        self.ps = ps
        self.cfg = cfg
        self.g = build_paley_type(ps)
        self.degree = euler_phi(ps) // 2**ps.n
        self.numeric = None
        self.spectrum_tol = cfg.tol

    def minus_one(self):
        return _ok(minus_one_is_qr(self.ps)), {"minusOneIsQR": minus_one_is_qr(self.ps)}

    def cardinalities(self):
        ps = self.ps
        counts = class_counts(ps)
        phi = euler_phi(ps)
        units = sum(v for k, v in counts.items() if k not in (GlobalClass.ZERO, GlobalClass.NON_UNIT_NON_ZERO))
        qr = quadratic_residues(ps)
        jplus = counts[GlobalClass.QR_N] + counts[GlobalClass.JPLUS_NOT_QR]
        jminus = counts[GlobalClass.JMINUS]
        per_prime_agrees = all(
            (z in qr) == all(c is ResidueClass.QR for c in classify(z, ps).per_prime) for z in range(ps.N)
        )
        ok = (
            units == phi
            and len(qr) == phi // 2**ps.n
            and counts[GlobalClass.QR_N] == len(qr)
            and jplus == jminus == phi // 2
            and per_prime_agrees
        )
        return _ok(ok), {
            "phi": phi,
            "units": units,
            "QR": len(qr),
            "Jplus": jplus,
            "Jminus": jminus,
            "qrIffPerPrimeQR": per_prime_agrees,
        }

    def kronecker_iso(self):
        w = crt_isomorphism(self.ps)
        return _ok(w.verified), {"pairsChecked": self.ps.N * (self.ps.N - 1) // 2, "discrepancies": w.discrepancies}

    def regular_eulerian(self):
        deg = is_regular(self.g)
        eul = is_eulerian(self.g)
        return _ok(deg == self.degree and eul), {"degree": deg, "expected": self.degree, "eulerian": eul}

    def connectivity(self):
        if self.g.order > self.cfg.max_conn_v:
            return SKIPPED, {"reason": f"V > {self.cfg.max_conn_v}"}
        kappa = vertex_connectivity(self.g, self.cfg.max_conn_v)
        lam = edge_connectivity(self.g, self.cfg.max_conn_v)
        return _ok(kappa == lam == self.degree), {"vertex": kappa, "edge": lam, "expected": self.degree}

    def census(self):
        summary = summarize(full_census(self.ps))
        return _ok(summary["mismatches"] == 0), summary

    def spectrum(self):
        table = closed_form_spectrum(self.ps)
        total, trace, trace2 = table.moments()
        collisions = table.collisions()
        details = {
            "distinct": len(table.entries) - len(collisions),
            "expectedDistinct": 3**self.ps.n,
            "minGap": table.min_gap(),
            "multiplicitySum": total,
            "trace": trace,
            "traceOfSquare": trace2,
            "twiceEdges": 2 * self.g.size,
        }
        ok = (
            not collisions
            and total == self.ps.N
            and abs(trace) < 1e-6
            and abs(trace2 - 2 * self.g.size) < 1e-6
        )
        if self.g.order > self.cfg.max_eig_v:
            details["numeric"] = f"skipped: V > {self.cfg.max_eig_v}"
            return _ok(ok), details
        tol = self.cfg.tol if self.g.order <= 500 else max(self.cfg.tol, 1e-5)
        self.spectrum_tol = tol
        self.numeric = numeric_spectrum(self.g, tol, self.cfg.max_eig_v)
        try:
            rep = reconcile(table, self.numeric, tol)
            details.update(reconcileTol=tol, maxDeviation=rep.max_deviation, clusters=len(self.numeric))
        except PaleyError as exc:
            details.update(reconcileTol=tol, reconcileError=str(exc))
            ok = False
        return _ok(ok), details

    def least_eig(self):
        least = least_eigenvalue(self.ps)
        details = {"branch": [b.value for b in least.branch], "radical": least.radical, "value": least.value}
        ok = least.value > -self.degree
        if self.numeric:
            observed = min(v for v, _ in self.numeric)
            details["numericMinimum"] = observed
            ok = ok and abs(observed - least.value) <= self.spectrum_tol
        return _ok(ok), details

    def r_thin(self):
        return _ok(is_r_thin(self.g)), {"rThin": is_r_thin(self.g)}

    def aut_count(self):
        if self.g.order > self.cfg.max_aut_v:
            return SKIPPED, {"reason": f"V > {self.cfg.max_aut_v}", "formulaCount": aut_formula(self.ps)}
        formula = aut_formula(self.ps)
        affine = len(affine_automorphisms(self.ps, self.g))
        asm = hammack_assembly(self.ps, self.cfg.aut_budget, self.cfg.max_aut_v)
        brute = asm.product_count
        ok = formula == affine == brute and asm.holds
        return _ok(ok), {
            "formulaCount": formula,
            "affineCount": affine,
            "bruteForceCount": brute,
            "factorCounts": asm.factor_counts,
            "assemblyHolds": asm.holds,
        }

    def transitivity(self):
        maps = affine_automorphisms(self.ps, self.g)
        tr = transitivity_check(self.g, maps)
        return _ok(tr.vertex_transitive and tr.edge_transitive), {
            "vertexTransitive": tr.vertex_transitive,
            "edgeTransitive": tr.edge_transitive,
            "maps": len(maps),
        }

    def structure_note(self):
        if self.ps.n == 1:
            return SKIPPED, {"reason": "n = 1: classical Paley graph, strongly regular and self-complementary"}
        srg = is_strongly_regular(self.g)
        witness = srg_witness(self.g)
        try:
            refuted = is_self_complementary_refuted(self.g)
        except Inconclusive:
            refuted = False
        return _ok(srg is None and witness is not None and refuted), {
            "stronglyRegular": srg is not None,
            "witness": witness.to_dict() if witness else None,
            "selfComplementarityRefuted": refuted,
            "degree": self.degree,
            "complementDegree": self.ps.N - 1 - self.degree,
        }

    def hamiltonian(self):
        res = hamiltonian_check(self.g, self.cfg.cycle_budget)
        details = {"status": res.status.value, "nodes": res.nodes}
        if self.cfg.witnesses and res.cycle:
            details["cycle"] = list(res.cycle)
        return _ok(res.cycle is not None and is_connected(self.g)), details

    def pancyclicity(self):
        if self.g.order > self.cfg.max_cycle_v:
            return SKIPPED, {"reason": f"V > {self.cfg.max_cycle_v}"}
        rep = pancyclicity_sweep(self.g, self.cfg.cycle_budget, vertex_transitive=True)
        details = rep.to_dict(witnesses=self.cfg.witnesses)
        details["missing"] = {str(k): s.value for k, s in rep.missing.items()}
        if self.ps.primes[0] <= 5:
            details["reason"] = "outside the p1 > 5 hypothesis"
            return SKIPPED, details
        return _ok(rep.pancyclic), details


CHECKS: list[tuple[str, Callable]] = [
    ("Lemma1.minus_one_is_qr", _Suite.minus_one),
    ("Lemma4.cardinalities", _Suite.cardinalities),
    ("Theorem2.kronecker_isomorphism", _Suite.kronecker_iso),
    ("Theorem4.regular_eulerian", _Suite.regular_eulerian),
    ("Theorem6.connectivity", _Suite.connectivity),
    ("Lemma5.difference_census", _Suite.census),
    ("Theorem7.spectrum", _Suite.spectrum),
    ("Corollary1.least_eigenvalue", _Suite.least_eig),
    ("Lemma6.r_thin", _Suite.r_thin),
    ("Theorem8.automorphism_count", _Suite.aut_count),
    ("Theorem5.transitivity", _Suite.transitivity),
    ("Note.not_srg_not_self_complementary", _Suite.structure_note),
    ("Theorem3.hamiltonian", _Suite.hamiltonian),
    ("Theorem10.pancyclicity", _Suite.pancyclicity),
]


def run_suite(ps: PrimeSet, cfg: SuiteConfig | None = None, only: list[str] | None = None) -> dict:
    cfg = cfg or SuiteConfig()
    suite = _Suite(ps, cfg)
    checks = []
    for name, fn in CHECKS:
        if only and name not in only:
            continue
        t0 = time.perf_counter()
        try:
            status, details = fn(suite)
        except PaleyError as exc:
            status, details = FAIL, {"error": f"{type(exc).__name__}: {exc}"}
        checks.append({"id": name, "status": status, "details": details, "seconds": round(time.perf_counter() - t0, 4)})
    counts = {s: sum(c["status"] == s for c in checks) for s in (PASS, FAIL, SKIPPED)}
    return {
        "tool": "paleytype",
        "version": __version__,
        "primes": list(ps.primes),
        "N": ps.N,
        "checks": checks,
        "summary": counts,
        "ok": counts[FAIL] == 0,
    }

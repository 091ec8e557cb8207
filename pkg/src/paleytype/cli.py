"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import __version__
from .census import full_census, summarize
from .cycles import (
    DEFAULT_CYCLE_BUDGET,
    MAX_PANCYCLIC_V,
    CycleReport,
    hamiltonian_check,
    pancyclicity_sweep,
)
from .errors import PaleyError, PrimeSetError
from .formats import to_dot, to_edgelist, to_graph6
from .graphs import MAX_CONNECTIVITY_V, build_paley_type, is_regular
from .numtheory import PrimeSet, quadratic_residues
from .spectra import MAX_EIGEN_V, closed_form_spectrum, numeric_spectrum, reconcile
from .symmetry import DEFAULT_AUT_BUDGET, MAX_AUT_V, aut_report, affine_automorphisms
from .verify import SuiteConfig, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

FORMATS = {
    "construct": ("text", "json", "edgelist", "graph6", "dot"),
    "spectrum": ("text", "json"),
    "census": ("csv", "json", "text"),
    "aut": ("text", "json"),
    "cycles": ("text", "json"),
    "verify": ("json", "text"),
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    primes: list[int]
    command: str
    format: str
    tolerance: float = 1e-6
    budget: Optional[int] = None
    output: Optional[str] = None
    witnesses: bool = True
    numeric: bool = False
    generators: bool = False
    max_aut_v: int = MAX_AUT_V
    max_conn_v: int = MAX_CONNECTIVITY_V
    max_cycle_v: int = MAX_PANCYCLIC_V
    max_eig_v: int = MAX_EIGEN_V

    def __post_init__(self):
        allowed = FORMATS[self.command]
        if self.format is None:
            self.format = allowed[0]
        if self.format not in allowed:
            raise UsageError(f"format {self.format!r} is not available for {self.command}; choose from {', '.join(allowed)}")
        if self.tolerance <= 0:
            raise UsageError("--tol must be positive")

    @property
    def prime_set(self) -> PrimeSet:
        return PrimeSet(tuple(self.primes))


def _parse_primes(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _plain(o):
    """numpy scalars and arrays leak into report details; hand json the Python equivalents."""
    if isinstance(o, (np.generic, np.ndarray)):
        return o.tolist()
    raise TypeError(f"{type(o).__name__} is not JSON serializable")


def _json(obj) -> str:
    return json.dumps(obj, indent=2, default=_plain) + "\n"


def cmd_construct(cfg: RunConfig) -> tuple[str, int]:
    ps = cfg.prime_set
    g = build_paley_type(ps)
    if cfg.format == "edgelist":
        return to_edgelist(g), EXIT_OK
    if cfg.format == "graph6":
        return to_graph6(g) + "\n", EXIT_OK
    if cfg.format == "dot":
        return to_dot(g, f"Gamma_{ps.N}"), EXIT_OK
    qr = sorted(quadratic_residues(ps))
    info = {"primes": list(ps.primes), "N": ps.N, "V": g.order, "E": g.size, "degree": is_regular(g), "QR": qr}
    if cfg.format == "json":
        return _json(info), EXIT_OK
    lines = [
        f"Gamma_{ps.N}  primes={ps}",
        f"V = {g.order}",
        f"|E| = {g.size}",
        f"degree = {info['degree']}",
        f"QR_{ps.N} ({len(qr)}) = {' '.join(map(str, qr))}",
    ]
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_spectrum(cfg: RunConfig) -> tuple[str, int]:
    ps = cfg.prime_set
    table = closed_form_spectrum(ps)
    out = table.to_dict()
    total, trace, trace2 = table.moments()
    out.update(distinct=len(table.entries) - len(table.collisions()), multiplicitySum=total, trace=trace, traceOfSquare=trace2)
    code = EXIT_OK
    if cfg.numeric:
        g = build_paley_type(ps)
        if g.order > cfg.max_eig_v:
            out["numeric"] = f"skipped: V > {cfg.max_eig_v}"
        else:
            try:
                rep = reconcile(table, numeric_spectrum(g, cfg.tolerance, cfg.max_eig_v), cfg.tolerance)
                out["numeric"] = {"ok": True, "maxDeviation": rep.max_deviation, "tol": cfg.tolerance}
            except PaleyError as exc:
                out["numeric"] = {"ok": False, "error": str(exc), "tol": cfg.tolerance}
                code = EXIT_FAIL
    if cfg.format == "json":
        return _json(out), code
    width = max(len(e.radical) for e in table.entries)
    lines = [f"{'eigenvalue':<{width}}  {'value':>14}  mult"]
    lines += [f"{e.radical:<{width}}  {e.value:>14.6f}  {e.multiplicity}" for e in table.entries]
    lines.append(f"distinct = {out['distinct']}  sum(mult) = {total}  trace = {trace:.3g}")
    if cfg.numeric:
        lines.append(f"numeric: {out['numeric']}")
    return "\n".join(lines) + "\n", code


def cmd_census(cfg: RunConfig) -> tuple[str, int]:
    ps = cfg.prime_set
    records = full_census(ps)
    code = EXIT_OK if all(r.match for r in records) else EXIT_FAIL
    if cfg.format == "json":
        return _json({"primes": list(ps.primes), "N": ps.N, "summary": summarize(records), "records": [r.to_dict() for r in records]}), code
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["z", "caseLabel", "perPrime", "predicted", "observed", "match"])
        for r in records:
            w.writerow([r.z, r.case_label.value, ";".join(c.value for c in r.per_prime), r.predicted, r.observed, str(r.match).lower()])
        return buf.getvalue(), code
    s = summarize(records)
    lines = [f"census for N = {ps.N}: {s['records']} records, {s['mismatches']} mismatches"]
    lines += [f"  {k}: {v}" for k, v in s["byCase"].items()]
    return "\n".join(lines) + "\n", code


def cmd_aut(cfg: RunConfig) -> tuple[str, int]:
    ps = cfg.prime_set
    budget = cfg.budget or DEFAULT_AUT_BUDGET
    rep = aut_report(ps, budget, cfg.max_aut_v)
    out = {"primes": list(ps.primes), "N": ps.N, **rep.to_dict()}
    if cfg.generators:
        out["affineMaps"] = [[m.s, m.t] for m in affine_automorphisms(ps)]
    ok = rep.formula_count == rep.affine_count and rep.brute_force_count in (None, rep.formula_count)
    code = EXIT_OK if ok and rep.vertex_transitive and rep.edge_transitive else EXIT_FAIL
    if cfg.format == "json":
        return _json(out), code
    bf = "skipped (guard)" if rep.brute_force_count is None else rep.brute_force_count
    lines = [
        f"|Aut(Gamma_{ps.N})| formula     = {rep.formula_count}",
        f"affine maps verified        = {rep.affine_count}",
        f"backtracking count          = {bf}",
        f"vertex / edge transitive    = {rep.vertex_transitive} / {rep.edge_transitive}",
    ]
    return "\n".join(lines) + "\n", code


def cmd_cycles(cfg: RunConfig) -> tuple[str, int]:
    ps = cfg.prime_set
    g = build_paley_type(ps)
    budget = cfg.budget or DEFAULT_CYCLE_BUDGET
    if g.order <= cfg.max_cycle_v:
        rep = pancyclicity_sweep(g, budget, vertex_transitive=True)
    else:
        rep = CycleReport(g.order)
        rep.add(hamiltonian_check(g, budget), g)
    out = {"primes": list(ps.primes), "N": ps.N, **rep.to_dict(witnesses=cfg.witnesses)}
    out["hypothesis"] = "p1 > 5" if ps.primes[0] > 5 else "outside the p1 > 5 hypothesis"
    code = EXIT_OK if g.order in rep.found else EXIT_FAIL
    if cfg.format == "json":
        return _json(out), code
    lines = [f"Gamma_{ps.N}: lengths searched {min(rep.results)}..{max(rep.results)}"]
    lines.append(f"found {len(rep.found)}, missing {len(rep.missing)}, pancyclic = {rep.pancyclic}")
    lines += [f"  k={k}: {s.value}" for k, s in sorted(rep.missing.items())]
    if cfg.witnesses and g.order in rep.found:
        lines.append("hamiltonian cycle: " + " ".join(map(str, rep.found[g.order])))
    return "\n".join(lines) + "\n", code


def cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    suite_cfg = SuiteConfig(
        tol=cfg.tolerance,
        aut_budget=cfg.budget or DEFAULT_AUT_BUDGET,
        cycle_budget=cfg.budget or DEFAULT_CYCLE_BUDGET,
        max_aut_v=cfg.max_aut_v,
        max_conn_v=cfg.max_conn_v,
        max_cycle_v=cfg.max_cycle_v,
        max_eig_v=cfg.max_eig_v,
        witnesses=cfg.witnesses,
    )
    report = run_suite(cfg.prime_set, suite_cfg)
    code = EXIT_OK if report["ok"] else EXIT_FAIL
    if cfg.format == "json":
        return _json(report), code
    lines = [f"verify N = {report['N']} (primes {','.join(map(str, report['primes']))})"]
    lines += [f"  {c['status']:<8} {c['id']:<40} {c['seconds']:.3f}s" for c in report["checks"]]
    s = report["summary"]
    lines.append(f"{s['pass']} pass, {s['fail']} fail, {s['skipped']} skipped")
    return "\n".join(lines) + "\n", code


COMMANDS = {
    "construct": cmd_construct,
    "spectrum": cmd_spectrum,
    "census": cmd_census,
    "aut": cmd_aut,
    "cycles": cmd_cycles,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--primes", required=True, type=_parse_primes, help="ascending distinct primes = 1 mod 4, e.g. 5,13")
    common.add_argument("--format", default=None)
    common.add_argument("--tol", type=float, default=1e-6, help="spectral tolerance (default 1e-6)")
    common.add_argument("--budget", type=int, default=None, help="search-node budget for aut/cycle searches")
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    common.add_argument("--no-witness", action="store_true", help="omit cycle witnesses from reports")
    common.add_argument("--max-aut-v", type=int, default=MAX_AUT_V)
    common.add_argument("--max-conn-v", type=int, default=MAX_CONNECTIVITY_V)
    common.add_argument("--max-cycle-v", type=int, default=MAX_PANCYCLIC_V)
    common.add_argument("--max-eig-v", type=int, default=MAX_EIGEN_V)

    parser = argparse.ArgumentParser(prog="paleytype", description="Paley-type graphs modulo N = p1 p2 ... pn")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common], help=f"{name} ({'/'.join(FORMATS[name])})")
        if name == "spectrum":
            p.add_argument("--numeric", action="store_true", help="also eigensolve and reconcile")
        if name == "aut":
            p.add_argument("--generators", action="store_true", help="dump every affine map as (s, t)")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            primes=args.primes,
            command=args.command,
            format=args.format,
            tolerance=args.tol,
            budget=args.budget,
            output=args.out,
            witnesses=not args.no_witness,
            numeric=getattr(args, "numeric", False),
            generators=getattr(args, "generators", False),
            max_aut_v=args.max_aut_v,
            max_conn_v=args.max_conn_v,
            max_cycle_v=args.max_cycle_v,
            max_eig_v=args.max_eig_v,
        )
        cfg.prime_set
    except UsageError as exc:
        print(f"paleytype: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PrimeSetError, ValueError) as exc:
        print(f"paleytype: error: invalid primes: {exc}", file=sys.stderr)
        return EXIT_USAGE

    t0 = time.perf_counter()
    try:
        text, code = COMMANDS[cfg.command](cfg)
    except PaleyError as exc:
        print(f"paleytype: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    try:
        if cfg.output:
            with open(cfg.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
            sys.stdout.flush()
    except OSError as exc:
        print(f"paleytype: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    if cfg.format == "text":
        print(f"({time.perf_counter() - t0:.2f}s)", file=sys.stderr)
    return code

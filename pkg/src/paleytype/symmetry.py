"""Automorphisms of Paley-type graphs.

The affine maps x -> s*x + t (s in QR_N, t in Z_N) give N*phi(N)/2^n
automorphisms.  ``brute_force_aut_count`` counts the full group of an
arbitrary graph by individualization and refinement, independently of any
algebraic structure, so the two can be compared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import BudgetExceeded, PreconditionFailed, TooLarge, VerificationFailed
from .graphs import Graph, build_paley_type, is_connected, is_r_thin, paley_graph
from .numtheory import PrimeSet, euler_phi, qr_bitmap

MAX_AUT_V = 250
DEFAULT_AUT_BUDGET = 200_000
# affine maps are each checked against every edge up to this order; above it
# the generators are checked on the whole graph and a fixed sample directly
EXHAUSTIVE_MAP_CHECK_V = 300
SAMPLE_SIZE = 200


@dataclass(frozen=True)
class AffineMap:
    s: int
    t: int
    N: int

    def __getitem__(self, x):
        return (self.s * x + self.t) % self.N

    def __len__(self):
        return self.N

    def as_array(self) -> np.ndarray:
        return (self.s * np.arange(self.N, dtype=np.int64) + self.t) % self.N

    def compose(self, other: "AffineMap") -> "AffineMap":
        """self after other."""
        return AffineMap(self.s * other.s % self.N, (self.s * other.t + self.t) % self.N, self.N)


def preserves_adjacency(g: Graph, perm: np.ndarray, edges: Optional[np.ndarray] = None) -> bool:
    """A bijection is an automorphism iff it maps every edge to an edge (|E| is finite)."""
    perm = np.asarray(perm)
    if len(np.unique(perm)) != g.order:
        return False
    e = g.edges() if edges is None else edges
    return bool(g.adjacency[perm[e[:, 0]], perm[e[:, 1]]].all())


def affine_automorphisms(ps: PrimeSet, g: Optional[Graph] = None) -> list[AffineMap]:
    """All maps x -> s*x + t with s in QR_N, each verified on the graph.

    Up to EXHAUSTIVE_MAP_CHECK_V vertices every map is checked edge by edge.
    Beyond that, each multiplier x -> s*x and the unit translation are
    checked exhaustively (every affine map is a composition of those), and
    a deterministic sample of maps is additionally checked directly.
    """
    N = ps.N
    g = build_paley_type(ps) if g is None else g
    mults = [int(s) for s in np.flatnonzero(qr_bitmap(ps))]
    maps = [AffineMap(s, t, N) for s in mults for t in range(N)]
    edges = g.edges()
    if N <= EXHAUSTIVE_MAP_CHECK_V:
        checked = maps
    else:
        gens = [AffineMap(s, 0, N) for s in mults] + [AffineMap(1, 1, N)]
        step = max(1, len(maps) // SAMPLE_SIZE)
        checked = gens + maps[::step]
    for m in checked:
        if not preserves_adjacency(g, m.as_array(), edges):
            raise VerificationFailed(f"x -> {m.s}x + {m.t} is not an automorphism")
    # distinct as functions: (image of 0, image of 1) = (t, s + t) determines (s, t)
    if len({(m[0], m[1]) for m in maps}) != len(maps):
        raise VerificationFailed("affine maps are not pairwise distinct")
    return maps


_MIX = np.random.default_rng(0x5EED).integers(1, 2**40, size=4096, dtype=np.int64)


def _refine(adj: np.ndarray, colors: np.ndarray):
    """Iterated neighbour-colour refinement.

    A vertex's signature is its colour plus a fixed pseudo-random weight
    summed over its neighbours' colours (int64, wrapping).  Cell labels are
    ranks of sorted signatures, so the result is a function of the coloured
    graph alone: two colourings related by an automorphism refine to
    colourings related by the same automorphism.  A hash collision can only
    make the partition coarser, never break that property.  Returns
    (colors, trace); compatible branches have identical traces.
    """
    trace = []
    k = int(colors.max()) + 1
    n = len(colors)
    while True:
        weights = _MIX[colors % len(_MIX)] ^ colors
        sig = colors * np.int64(1_000_003) + adj @ weights
        uniq, new, counts = np.unique(sig, return_inverse=True, return_counts=True)
        trace.append(uniq.tobytes() + counts.tobytes())
        if len(uniq) == k or len(uniq) == n:
            return new.ravel(), trace
        colors, k = new.ravel(), len(uniq)


def _individualize(colors: np.ndarray, v: int) -> np.ndarray:
    out = 2 * colors + 1
    out[v] = 2 * colors[v]
    return np.unique(out, return_inverse=True)[1].ravel()


def brute_force_aut_count(
    g: Graph, budget: int = DEFAULT_AUT_BUDGET, max_vertices: int = MAX_AUT_V
) -> int:
    """Exact |Aut(g)| by backtracking over vertex images with partition refinement.

    The domain side always individualizes the lowest-indexed vertex of the
    first largest non-singleton cell; every vertex in the matching cell of
    the image side is tried.  Each leaf is a complete bijection, kept only if
    it preserves adjacency, so each automorphism is counted exactly once.
    Raises BudgetExceeded once more than ``budget`` search nodes are visited.
    """
    if g.order > max_vertices:
        raise TooLarge(f"V = {g.order} exceeds the automorphism guard {max_vertices}")
    n = g.order
    if n == 0:
        return 1
    adj = g.adjacency.astype(np.int64)
    edges = g.edges()
    start, _ = _refine(adj, np.zeros(n, dtype=np.int64))
    nodes = 0
    count = 0

    def search(dom: np.ndarray, img: np.ndarray):
        nonlocal nodes, count
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"automorphism search exceeded {budget} nodes", nodes)
        sizes = np.bincount(dom)
        if sizes.max() == 1:
            perm = np.empty(n, dtype=np.int64)
            # dom and img are both discrete with the same labels: v -> the img vertex of its label
            perm[np.argsort(dom)] = np.argsort(img)
            if preserves_adjacency(g, perm, edges):
                count += 1
            return
        cell = int(np.argmax(sizes))
        v = int(np.flatnonzero(dom == cell)[0])
        dom2, dom_trace = _refine(adj, _individualize(dom, v))
        for w in np.flatnonzero(img == cell):
            img2, img_trace = _refine(adj, _individualize(img, int(w)))
            if img_trace == dom_trace:
                search(dom2, img2)

    search(start, start.copy())
    return count


def aut_formula(ps: PrimeSet) -> int:
    return ps.N * euler_phi(ps) // 2**ps.n


@dataclass(frozen=True)
class Transitivity:
    vertex_transitive: bool
    edge_transitive: bool


def transitivity_check(g: Graph, auts: Iterable[Sequence[int]], edge: Optional[tuple[int, int]] = None) -> Transitivity:
    """Orbit of vertex 0 and of one fixed edge under the given automorphisms.

    ``edge`` defaults to (0, smallest neighbour of 0).  Each automorphism is
    anything indexable by vertex (permutation array or AffineMap).
    """
    n = g.order
    if edge is None:
        nbrs = g.neighbors(0)
        edge = (0, int(nbrs[0])) if len(nbrs) else None
    vorbit = set()
    eorbit = set()
    for m in auts:
        vorbit.add(int(m[0]))
        if edge is not None:
            a, b = int(m[edge[0]]), int(m[edge[1]])
            eorbit.add((a, b) if a < b else (b, a))
    edge_t = edge is not None and len(eorbit) == g.size
    return Transitivity(len(vorbit) == n, bool(edge_t))


def all_automorphisms(g: Graph, budget: int = DEFAULT_AUT_BUDGET) -> list[np.ndarray]:
    """Every automorphism as a permutation array (small graphs only; plain backtracking)."""
    n = g.order
    a = g.adjacency
    out = []
    nodes = 0
    perm = [-1] * n
    used = [False] * n

    def extend(v: int):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"automorphism enumeration exceeded {budget} nodes", nodes)
        if v == n:
            out.append(np.array(perm))
            return
        for w in range(n):
            if used[w]:
                continue
            if all(a[v, u] == a[w, perm[u]] for u in range(v)):
                perm[v], used[w] = w, True
                extend(v + 1)
                perm[v], used[w] = -1, False

    extend(0)
    return out


@dataclass
class AutReport:
    formula_count: int
    affine_count: int
    brute_force_count: Optional[int]
    vertex_transitive: bool
    edge_transitive: bool

    def to_dict(self) -> dict:
        return {
            "formulaCount": self.formula_count,
            "affineCount": self.affine_count,
            "bruteForceCount": self.brute_force_count,
            "vertexTransitive": self.vertex_transitive,
            "edgeTransitive": self.edge_transitive,
        }


def aut_report(
    ps: PrimeSet, budget: int = DEFAULT_AUT_BUDGET, max_vertices: int = MAX_AUT_V
) -> AutReport:
    g = build_paley_type(ps)
    maps = affine_automorphisms(ps, g)
    tr = transitivity_check(g, maps)
    bf = brute_force_aut_count(g, budget, max_vertices) if g.order <= max_vertices else None
    return AutReport(aut_formula(ps), len(maps), bf, tr.vertex_transitive, tr.edge_transitive)


@dataclass
class AssemblyCheck:
    product_count: int
    factor_counts: list[int]
    connected: bool
    non_bipartite: bool
    r_thin: bool

    @property
    def holds(self) -> bool:
        return self.product_count == math.prod(self.factor_counts)


def hammack_assembly(
    ps: PrimeSet, budget: int = DEFAULT_AUT_BUDGET, max_vertices: int = MAX_AUT_V
) -> AssemblyCheck:
    """Check |Aut(Gamma_N)| equals the product of the factor group orders, hypotheses first.

    Hypotheses: connected, non-bipartite (closed-form least eigenvalue
    strictly above -degree) and R-thin.  Distinct primes give pairwise
    non-isomorphic factors, so no factor transpositions arise.
    """
    from .spectra import least_eigenvalue

    g = build_paley_type(ps)
    if not is_connected(g):
        raise PreconditionFailed(f"Gamma_{ps.N} is not connected", "connected")
    degree = euler_phi(ps) // 2**ps.n
    try:
        least = least_eigenvalue(ps).value
    except VerificationFailed as exc:
        raise PreconditionFailed(str(exc), "non-bipartite") from exc
    if not least > -degree:
        raise PreconditionFailed(f"least eigenvalue {least} equals -{degree}", "non-bipartite")
    if not is_r_thin(g):
        raise PreconditionFailed(f"Gamma_{ps.N} is not R-thin", "R-thin")
    total = brute_force_aut_count(g, budget, max_vertices)
    factors = [brute_force_aut_count(paley_graph(p), budget, max_vertices) for p in ps.primes]
    return AssemblyCheck(total, factors, True, True, True)


def hammack_assembly_check(
    ps: PrimeSet, budget: int = DEFAULT_AUT_BUDGET, max_vertices: int = MAX_AUT_V
) -> bool:
    return hammack_assembly(ps, budget, max_vertices).holds

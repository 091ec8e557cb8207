"""Dense undirected simple graphs, Paley-type constructions and predicates.

A graph is a read-only V x V boolean adjacency matrix.  Kronecker products
index vertex (x, y) as x * Vh + y (row-major), which is also what
``numpy.kron`` produces.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import reduce
from typing import Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from .errors import Inconclusive, TooLarge, VerificationFailed
from .numtheory import PrimeSet, qr_bitmap

MAX_CONSTRUCT_V = 10_000
MAX_CONNECTIVITY_V = 300


@dataclass(frozen=True, eq=False)
class Graph:
    adjacency: np.ndarray
    label: str = ""

    def __post_init__(self):
        a = np.array(self.adjacency, dtype=bool, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency must be a square matrix")
        if a.diagonal().any():
            raise ValueError("self-loops are not allowed")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency must be symmetric")
        a.flags.writeable = False
        object.__setattr__(self, "adjacency", a)

    @property
    def order(self) -> int:
        return self.adjacency.shape[0]

    @property
    def size(self) -> int:
        return int(self.adjacency.sum()) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u, v])

    def neighbors(self, v: int) -> np.ndarray:
        return np.flatnonzero(self.adjacency[v])

    def edges(self) -> np.ndarray:
        """Edges as an (|E|, 2) array with u < v, sorted lexicographically."""
        u, v = np.nonzero(np.triu(self.adjacency, 1))
        return np.column_stack([u, v])

    def complement(self) -> "Graph":
        c = ~self.adjacency
        np.fill_diagonal(c, False)
        return Graph(c, f"complement({self.label})")

    @classmethod
    def from_edges(cls, n: int, edges, label: str = "") -> "Graph":
        a = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            a[u, v] = a[v, u] = True
        return cls(a, label)

    def __eq__(self, other):
        return isinstance(other, Graph) and np.array_equal(self.adjacency, other.adjacency)

    __hash__ = None


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], f"C{n}")


def complete_graph(n: int) -> Graph:
    return Graph(~np.eye(n, dtype=bool), f"K{n}")


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], f"P{n}")


def cayley_graph(n: int, connection_set: np.ndarray, label: str = "") -> Graph:
    """Cayley graph on (Z_n, +): a ~ b iff (a - b) mod n is in the set.

    ``connection_set`` is a boolean table of length n; it must be closed
    under negation and exclude 0.
    """
    idx = np.arange(n)
    diff = (idx[:, None] - idx[None, :]) % n
    return Graph(connection_set[diff], label)


def build_paley_type(ps: PrimeSet, max_vertices: int = MAX_CONSTRUCT_V) -> Graph:
    if ps.N > max_vertices:
        raise TooLarge(f"N = {ps.N} exceeds the construction guard {max_vertices}")
    return cayley_graph(ps.N, qr_bitmap(ps), f"Gamma_{ps.N}")


def paley_graph(p: int) -> Graph:
    return build_paley_type(PrimeSet((p,)))


def kronecker_product(g: Graph, h: Graph) -> Graph:
    return Graph(np.kron(g.adjacency, h.adjacency), f"{g.label}x{h.label}")


@dataclass(frozen=True)
class IsoWitness:
    mapping: np.ndarray
    verified: bool
    discrepancies: int = 0


def crt_index_map(ps: PrimeSet) -> np.ndarray:
    """z -> row-major flat index of (z mod p1, ..., z mod pn)."""
    z = np.arange(ps.N)
    idx = np.zeros(ps.N, dtype=np.int64)
    for p in ps.primes:
        idx = idx * p + z % p
    return idx


def crt_isomorphism(ps: PrimeSet) -> IsoWitness:
    """Map Gamma_N onto the Kronecker product of its prime Paley factors and check every pair."""
    g = build_paley_type(ps)
    prod = reduce(kronecker_product, (paley_graph(p) for p in ps.primes))
    m = crt_index_map(ps)
    if len(np.unique(m)) != ps.N:
        raise VerificationFailed("CRT map is not a bijection")
    image = prod.adjacency[np.ix_(m, m)]
    bad = int(np.count_nonzero(image != g.adjacency)) // 2
    if bad:
        raise VerificationFailed(f"{bad} vertex pairs disagree under the CRT map")
    return IsoWitness(m, True, 0)


def verify_isomorphism(g: Graph, h: Graph, mapping: np.ndarray) -> int:
    """Number of vertex pairs {u, v} whose adjacency in g differs from h at (m[u], m[v])."""
    m = np.asarray(mapping)
    return int(np.count_nonzero(h.adjacency[np.ix_(m, m)] != g.adjacency)) // 2


def degree_sequence(g: Graph) -> list[int]:
    return g.adjacency.sum(axis=1).tolist()


def is_regular(g: Graph) -> Optional[int]:
    deg = g.adjacency.sum(axis=1)
    if len(deg) == 0 or (deg == deg[0]).all():
        return int(deg[0]) if len(deg) else 0
    return None


def is_connected(g: Graph) -> bool:
    n = g.order
    if n == 0:
        return True
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    queue = deque([0])
    while queue:
        v = queue.popleft()
        fresh = np.flatnonzero(g.adjacency[v] & ~seen)
        seen[fresh] = True
        queue.extend(fresh.tolist())
    return bool(seen.all())


def is_eulerian(g: Graph) -> bool:
    deg = g.adjacency.sum(axis=1)
    return bool((deg % 2 == 0).all()) and is_connected(g)


def _flow_network(g: Graph, split: bool) -> csr_matrix:
    n = g.order
    u, v = np.nonzero(g.adjacency)
    if not split:
        return csr_matrix((np.ones(len(u), dtype=np.int32), (u, v)), shape=(n, n))
    # vertex x becomes x_in = x and x_out = x + n joined by a unit arc
    big = n
    rows = np.concatenate([np.arange(n), u + n])
    cols = np.concatenate([np.arange(n) + n, v])
    caps = np.concatenate([np.ones(n, dtype=np.int32), np.full(len(u), big, dtype=np.int32)])
    return csr_matrix((caps, (rows, cols)), shape=(2 * n, 2 * n))


def _check_guard(g: Graph, max_vertices: int):
    if g.order > max_vertices:
        raise TooLarge(f"V = {g.order} exceeds the connectivity guard {max_vertices}")


def edge_connectivity(g: Graph, max_vertices: int = MAX_CONNECTIVITY_V) -> int:
    """Minimum over t of the unit-capacity max flow from vertex 0 to t."""
    _check_guard(g, max_vertices)
    if g.order < 2 or not is_connected(g):
        return 0
    net = _flow_network(g, split=False)
    return min(maximum_flow(net, 0, t).flow_value for t in range(1, g.order))


def local_vertex_connectivity(net: csr_matrix, n: int, s: int, t: int) -> int:
    return maximum_flow(net, s + n, t).flow_value


def vertex_connectivity(g: Graph, max_vertices: int = MAX_CONNECTIVITY_V) -> int:
    """Exact vertex connectivity on the vertex-split flow network.

    Pairs are scanned in Even's order: some vertex among the first
    kappa + 1 lies outside any minimum separator, so sources beyond the
    current best bound can be skipped.
    """
    _check_guard(g, max_vertices)
    n = g.order
    if n < 2 or not is_connected(g):
        return 0
    a = g.adjacency
    best = n - 1
    net = _flow_network(g, split=True)
    i = 0
    while i <= best and i < n:
        for j in range(i + 1, n):
            if not a[i, j]:
                best = min(best, local_vertex_connectivity(net, n, i, j))
        i += 1
    return best


def is_r_thin(g: Graph) -> bool:
    rows = np.packbits(g.adjacency, axis=1)
    return len(np.unique(rows, axis=0)) == g.order


def common_neighbor_counts(g: Graph) -> np.ndarray:
    a = g.adjacency.astype(np.int32)
    return a @ a


def is_strongly_regular(g: Graph) -> Optional[tuple[int, int]]:
    if is_regular(g) is None:
        return None
    cn = common_neighbor_counts(g)
    a = g.adjacency
    off = ~np.eye(g.order, dtype=bool)
    adj_vals = np.unique(cn[a])
    non_vals = np.unique(cn[off & ~a])
    if len(adj_vals) > 1 or len(non_vals) > 1:
        return None
    lam = int(adj_vals[0]) if len(adj_vals) else 0
    mu = int(non_vals[0]) if len(non_vals) else 0
    return lam, mu


@dataclass(frozen=True)
class SRGWitness:
    """Two vertex pairs of the same adjacency type with different common-neighbor counts."""

    adjacent: bool
    first: tuple[int, int]
    second: tuple[int, int]
    first_count: int
    second_count: int

    def to_dict(self) -> dict:
        return {
            "pairType": "adjacent" if self.adjacent else "non-adjacent",
            "first": list(self.first),
            "firstCommonNeighbors": self.first_count,
            "second": list(self.second),
            "secondCommonNeighbors": self.second_count,
        }


def srg_witness(g: Graph) -> Optional[SRGWitness]:
    """A pair of pairs refuting strong regularity, or None when none exists."""
    cn = common_neighbor_counts(g)
    a = g.adjacency
    iu, ju = np.triu_indices(g.order, 1)
    for adjacent in (True, False):
        sel = a[iu, ju] == adjacent
        if not sel.any():
            continue
        us, vs = iu[sel], ju[sel]
        vals = cn[us, vs]
        lo, hi = int(np.argmin(vals)), int(np.argmax(vals))
        if vals[lo] != vals[hi]:
            return SRGWitness(
                adjacent,
                (int(us[lo]), int(vs[lo])),
                (int(us[hi]), int(vs[hi])),
                int(vals[lo]),
                int(vals[hi]),
            )
    return None


def is_self_complementary_refuted(g: Graph) -> bool:
    """True when an invariant certificate rules out g being isomorphic to its complement.

    Raises Inconclusive if the edge count and degree sequence both agree
    with the complement's.
    """
    n = g.order
    if 4 * g.size != n * (n - 1):
        return True
    deg = np.sort(g.adjacency.sum(axis=1))
    cdeg = np.sort((n - 1) - deg)
    if not np.array_equal(deg, cdeg):
        return True
    raise Inconclusive("edge count and degree sequence match the complement")


def is_translation_invariant(g: Graph, shifts=None) -> bool:
    """Check x -> x + t (mod V) preserves adjacency for each shift t (all shifts by default)."""
    n = g.order
    a = g.adjacency
    shifts = range(n) if shifts is None else shifts
    for t in shifts:
        perm = (np.arange(n) + t) % n
        if not np.array_equal(a[np.ix_(perm, perm)], a):
            return False
    return True

"""Deterministic backtracking search for cycles of a prescribed length."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .graphs import Graph, is_connected

DEFAULT_CYCLE_BUDGET = 10_000_000
MAX_PANCYCLIC_V = 250


class CycleStatus(str, enum.Enum):
    FOUND = "Found"
    EXHAUSTED = "ExhaustedNoCycle"
    BUDGET = "BudgetExceeded"


@dataclass(frozen=True)
class CycleResult:
    length: int
    status: CycleStatus
    cycle: Optional[tuple[int, ...]]
    nodes: int


def is_valid_cycle(g: Graph, cycle: Sequence[int], k: Optional[int] = None) -> bool:
    """k distinct vertices, consecutive ones adjacent, last adjacent to first."""
    c = list(cycle)
    if k is not None and len(c) != k:
        return False
    if len(c) < 3 or len(set(c)) != len(c):
        return False
    if any(not 0 <= v < g.order for v in c):
        return False
    return all(g.has_edge(c[i], c[(i + 1) % len(c)]) for i in range(len(c)))


def _search_from(nbrs, closes, start: int, k: int, budget: int):
    """Iterative DFS for a k-vertex path start -> ... -> x with x adjacent to start.

    Only vertices >= start are used, so a cycle is found from its smallest
    vertex exactly once across starts.  Returns (cycle or None, nodes, exhausted).
    """
    n = len(nbrs)
    on_path = bytearray(n)
    path = [start]
    on_path[start] = 1
    stack = [iter(nbrs[start])]
    nodes = 1
    while stack:
        if nodes > budget:
            return None, nodes, False
        depth = len(path)
        advanced = False
        for w in stack[-1]:
            if w < start or on_path[w]:
                continue
            if depth == k - 1 and not closes[w]:
                continue
            nodes += 1
            if depth == k - 1:
                return tuple(path + [w]), nodes, True
            path.append(w)
            on_path[w] = 1
            stack.append(iter(nbrs[w]))
            advanced = True
            break
        if not advanced:
            stack.pop()
            on_path[path.pop()] = 0
    return None, nodes, True


def find_cycle_of_length(
    g: Graph,
    k: int,
    budget: int = DEFAULT_CYCLE_BUDGET,
    starts: Optional[Sequence[int]] = None,
) -> CycleResult:
    """Search for a simple cycle on exactly k vertices.

    Start vertices are tried in ascending order (all of them by default;
    pass ``starts=[0]`` for vertex-transitive graphs), neighbours in
    ascending index order.  The budget counts search nodes over all starts.
    """
    n = g.order
    if not 3 <= k <= n:
        raise ValueError(f"cycle length {k} is outside [3, {n}]")
    nbrs = [g.neighbors(v).tolist() for v in range(n)]
    starts = range(n) if starts is None else starts
    used = 0
    for s in starts:
        closes = g.adjacency[s]
        cycle, nodes, exhausted = _search_from(nbrs, closes, s, k, budget - used)
        used += nodes
        if cycle is not None:
            if not is_valid_cycle(g, cycle, k):
                raise AssertionError(f"search produced an invalid cycle {cycle}")
            return CycleResult(k, CycleStatus.FOUND, cycle, used)
        if not exhausted:
            return CycleResult(k, CycleStatus.BUDGET, None, used)
    return CycleResult(k, CycleStatus.EXHAUSTED, None, used)


def hamiltonian_check(g: Graph, budget: int = DEFAULT_CYCLE_BUDGET, starts=None) -> CycleResult:
    if not is_connected(g):
        return CycleResult(g.order, CycleStatus.EXHAUSTED, None, 0)
    return find_cycle_of_length(g, g.order, budget, starts=starts if starts is not None else [0])


@dataclass
class CycleReport:
    order: int
    results: dict[int, CycleResult] = field(default_factory=dict)

    def add(self, res: CycleResult, g: Graph):
        if res.cycle is not None and not is_valid_cycle(g, res.cycle, res.length):
            raise ValueError(f"witness for length {res.length} is not a valid cycle")
        self.results[res.length] = res

    @property
    def found(self) -> dict[int, tuple[int, ...]]:
        return {k: r.cycle for k, r in self.results.items() if r.status is CycleStatus.FOUND}

    @property
    def missing(self) -> dict[int, CycleStatus]:
        return {k: r.status for k, r in self.results.items() if r.status is not CycleStatus.FOUND}

    @property
    def pancyclic(self) -> bool:
        return set(self.found) == set(range(3, self.order + 1))

    def to_dict(self, witnesses: bool = True) -> dict:
        out = {
            "order": self.order,
            "pancyclic": self.pancyclic,
            "lengths": {
                str(k): {
                    "status": r.status.value,
                    "nodes": r.nodes,
                    **({"cycle": list(r.cycle)} if witnesses and r.cycle is not None else {}),
                }
                for k, r in sorted(self.results.items())
            },
        }
        return out


def pancyclicity_sweep(
    g: Graph,
    per_length_budget: int = DEFAULT_CYCLE_BUDGET,
    vertex_transitive: bool = False,
) -> CycleReport:
    """Search every length 3..V.

    With ``vertex_transitive`` the search starts from vertex 0 only; any
    cycle can be moved through 0, so the answer is unchanged.
    """
    starts = [0] if vertex_transitive else None
    report = CycleReport(g.order)
    for k in range(3, g.order + 1):
        report.add(find_cycle_of_length(g, k, per_length_budget, starts), g)
    return report


def product_cycle(cycle_g: Sequence[int], cycle_h: Sequence[int], order_h: int) -> list[int]:
    """Diagonal cycle (x_i, y_i) in the Kronecker product, in row-major vertex indexing."""
    if len(cycle_g) != len(cycle_h):
        raise ValueError("cycles must have the same length")
    return [x * order_h + y for x, y in zip(cycle_g, cycle_h)]

"""Text encodings of graphs: edge list, graph6 and DOT."""

from __future__ import annotations

import numpy as np

from .graphs import Graph

GRAPH6_HEADER = ">>graph6<<"


def to_edgelist(g: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.edges())


def read_edgelist(text: str, vertex_count: int | None = None, label: str = "") -> Graph:
    """Parse "u v" lines (blank lines and '#' comments ignored)."""
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected two vertex ids, got {line!r}")
        edges.append((int(parts[0]), int(parts[1])))
    n = max((max(e) for e in edges), default=-1) + 1
    if vertex_count is not None:
        if vertex_count < n:
            raise ValueError(f"edge list mentions vertex {n - 1} but vertex_count is {vertex_count}")
        n = vertex_count
    return Graph.from_edges(n, edges, label)


def _encode_n(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def to_graph6(g: Graph, header: bool = False) -> str:
    n = g.order
    # upper triangle, column by column: (0,1), (0,2), (1,2), (0,3), ...
    j, i = np.triu_indices(n, 1)[::-1]
    order = np.lexsort((i, j))
    bits = g.adjacency[i[order], j[order]].astype(np.uint8)
    pad = (-len(bits)) % 6
    bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)])
    groups = bits.reshape(-1, 6) @ np.array([32, 16, 8, 4, 2, 1], dtype=np.int64)
    body = bytes((groups + 63).astype(np.uint8).tolist())
    out = _encode_n(n) + body
    return (GRAPH6_HEADER if header else "") + out.decode("ascii")


def from_graph6(text: str, label: str = "") -> Graph:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    data = [c - 63 for c in s.encode("ascii")]
    if any(not 0 <= c < 64 for c in data):
        raise ValueError("graph6 string contains characters outside '?'..'~'")
    if data[0] != 63:
        n, body = data[0], data[1:]
    elif data[1] != 63:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    else:
        n = 0
        for c in data[2:8]:
            n = (n << 6) | c
        body = data[8:]
    m = n * (n - 1) // 2
    if len(body) != (m + 5) // 6:
        raise ValueError(f"graph6 body has {len(body)} bytes, expected {(m + 5) // 6}")
    bits = np.unpackbits(np.array(body, dtype=np.uint8)[:, None], axis=1)[:, 2:].ravel()[:m]
    a = np.zeros((n, n), dtype=bool)
    k = 0
    for j in range(1, n):
        a[:j, j] = bits[k:k + j]
        k += j
    a |= a.T
    return Graph(a, label)


def to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in range(g.order)]
    lines += [f"  {u} -- {v};" for u, v in g.edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"

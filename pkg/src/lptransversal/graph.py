"""Simple undirected graphs on vertices ``0..n-1`` and connectivity checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np

__all__ = [
    "Graph",
    "GraphFormatError",
    "ConnectivityReport",
    "parse_graph",
    "serialize_graph",
    "read_graph",
    "connectivity",
    "induced_subgraph",
    "components_of_mask",
    "bits",
    "mask_of",
]


class GraphFormatError(ValueError):
    """Malformed edge-list text.  ``line`` is 1-based, or ``None``."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """An undirected simple graph.  ``edges`` holds pairs ``(a, b)`` with ``a < b``."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        norm = set()
        for a, b in self.edges:
            a, b = int(a), int(b)
            if a == b:
                raise ValueError(f"self-loop at vertex {a}")
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise ValueError(f"edge ({a}, {b}) has an endpoint outside 0..{self.n - 1}")
            norm.add((a, b) if a < b else (b, a))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        return cls(n, frozenset(tuple(e) for e in edges))

    @cached_property
    def adj(self) -> tuple[int, ...]:
        """Neighbourhood bitmask of every vertex."""
        a = [0] * self.n
        for u, v in self.edges:
            a[u] |= 1 << v
            a[v] |= 1 << u
        return tuple(a)

    @cached_property
    def adj_array(self) -> np.ndarray:
        return np.array(self.adj, dtype=np.int64)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def neighbors(self, v: int) -> list[int]:
        return bits(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def relabel(self, perm) -> "Graph":
        """The graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph(self.n, frozenset((perm[a], perm[b]) for a, b in self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph induced by ``vertices``, relabelled ``0..k-1`` in increasing
    order.  Returns the subgraph and the list mapping new labels to old."""
    old = sorted(set(vertices))
    new = {v: i for i, v in enumerate(old)}
    edges = [(new[a], new[b]) for a, b in g.edges if a in new and b in new]
    return Graph.from_edges(len(old), edges), old


def components_of_mask(adj, mask: int) -> list[int]:
    """Connected components of the subgraph induced by ``mask`` as bitmasks,
    ordered by lowest vertex."""
    comps = []
    rest = mask
    while rest:
        seed = rest & -rest
        seen = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            nxt &= mask
            frontier = nxt & ~seen
            seen |= nxt
        comps.append(seen)
        rest &= ~seen
    return comps


# ---------------------------------------------------------------------------
# text format


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format: the first non-comment line is the vertex
    count, every further line holds two endpoints.  ``#`` starts a comment
    line.  Duplicate edges are collapsed."""
    n = None
    edges = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        try:
            values = [int(t) for t in tokens]
        except ValueError:
            bad = next(t for t in tokens if not _is_int(t))
            raise GraphFormatError(f"unparseable token {bad!r}", lineno) from None
        if n is None:
            if len(values) != 1:
                raise GraphFormatError("expected a single vertex count", lineno)
            n = values[0]
            if n <= 0:
                raise GraphFormatError("vertex count must be at least 1", lineno)
            continue
        if len(values) != 2:
            raise GraphFormatError(f"expected two endpoints, got {len(values)} tokens", lineno)
        a, b = values
        for x in (a, b):
            if not 0 <= x < n:
                raise GraphFormatError(f"endpoint {x} out of range 0..{n - 1}", lineno)
        if a == b:
            raise GraphFormatError(f"self-loop at vertex {a}", lineno)
        edges.add((min(a, b), max(a, b)))
    if n is None:
        raise GraphFormatError("missing vertex count")
    return Graph(n, frozenset(edges))


def _is_int(token: str) -> bool:
    try:
        int(token)
    except ValueError:
        return False
    return True


def serialize_graph(g: Graph) -> str:
    lines = [str(g.n)]
    lines.extend(f"{a} {b}" for a, b in g.sorted_edges())
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    with open(path) as fh:
        return parse_graph(fh.read())


# ---------------------------------------------------------------------------
# connectivity


@dataclass(frozen=True)
class ConnectivityReport:
    is_connected: bool
    is_two_connected: bool
    components: tuple[frozenset, ...]
    cut_vertices: frozenset


def _cut_vertices(g: Graph) -> set[int]:
    """Articulation points by iterative low-link DFS."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    cuts = set()
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        stack = [(root, -1, iter(g.neighbors(root)))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, iter(g.neighbors(w))))
                    advanced = True
                    break
                if w != parent:
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[v])
                if parent != root and low[v] >= disc[parent]:
                    cuts.add(parent)
        if root_children >= 2:
            cuts.add(root)
    return cuts


def connectivity(g: Graph) -> ConnectivityReport:
    comps = components_of_mask(g.adj, g.full_mask)
    connected = len(comps) == 1
    cuts = frozenset(_cut_vertices(g))
    return ConnectivityReport(
        is_connected=connected,
        is_two_connected=connected and g.n >= 3 and not cuts,
        components=tuple(frozenset(bits(c)) for c in comps),
        cut_vertices=cuts,
    )

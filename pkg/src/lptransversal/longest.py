"""Exact enumeration of longest paths and longest cycles.

The counting work is a dynamic programme over vertex subsets (see
``_kernels``): ``cnt[S, v]`` counts the simple paths with vertex set ``S``
ending at ``v``.  From it we read off the maximum order, the family of
vertex sets carrying a longest path/cycle, how many distinct paths/cycles
each such set carries, and the per-vertex incidence counts.  Explicit
sequences are produced on demand by a DFS restricted to one vertex set.

Paths are unoriented (a path and its reverse are one object); cycles are
taken up to rotation and reflection.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np

from . import _kernels
from .errors import BudgetExceeded
from .graph import Graph, bits

__all__ = [
    "DEFAULT_BUDGET",
    "PathCollection",
    "longest_paths",
    "longest_cycles",
    "longest_paths_dfs",
    "longest_cycles_dfs",
    "collection",
    "canonical_path",
    "canonical_cycle",
    "spanning_sequences",
    "first_spanning_sequence",
    "pairwise_intersection_check",
]

DEFAULT_BUDGET = 10**8


def canonical_path(seq) -> tuple[int, ...]:
    seq = tuple(seq)
    rev = seq[::-1]
    return min(seq, rev)


def canonical_cycle(seq) -> tuple[int, ...]:
    """Rotate to start at the smallest vertex, then pick the direction whose
    second vertex is smaller."""
    seq = tuple(seq)
    i = seq.index(min(seq))
    rot = seq[i:] + seq[:i]
    rev = (rot[0],) + rot[:0:-1]
    return min(rot, rev)


@dataclass(frozen=True)
class PathCollection:
    """All longest paths (``mode == "path"``) or longest cycles
    (``mode == "cycle"``) of ``graph``, grouped by vertex set.

    ``masks[i]`` is a vertex-set bitmask carrying ``mask_counts[i]`` distinct
    longest paths/cycles.  ``length`` is the order ℓ (0 for an acyclic graph
    in cycle mode).
    """

    graph: Graph
    mode: str
    length: int
    masks: tuple[int, ...]
    mask_counts: tuple[int, ...]

    @property
    def count(self) -> int:
        """Number of distinct longest paths/cycles."""
        return sum(self.mask_counts)

    @cached_property
    def per_vertex_counts(self) -> tuple[int, ...]:
        pv = [0] * self.graph.n
        for m, c in zip(self.masks, self.mask_counts):
            for v in bits(m):
                pv[v] += c
        return tuple(pv)

    @property
    def vertex_sets(self) -> list[frozenset]:
        return [frozenset(bits(m)) for m in self.masks]

    def is_empty(self) -> bool:
        return not self.masks

    @cached_property
    def paths(self) -> tuple[tuple[int, ...], ...]:
        """Every member as a canonical vertex sequence, sorted."""
        closed = self.mode == "cycle"
        out = []
        for m in self.masks:
            out.extend(spanning_sequences(self.graph.adj, m, closed))
        return tuple(sorted(out))

    def members_avoiding(self, vertices) -> list[int]:
        hit = 0
        for v in vertices:
            hit |= 1 << v
        return [m for m in self.masks if not m & hit]


# ---------------------------------------------------------------------------
# counting via the subset DP


def _check_budget(g: Graph, budget: int) -> None:
    if g.n > _kernels.MAX_SUBSET_VERTICES:
        raise BudgetExceeded(f"{g.n} vertices exceed the exact-enumeration limit of {_kernels.MAX_SUBSET_VERTICES}")
    states = (1 << g.n) * max(g.n, 1)
    if states > budget:
        raise BudgetExceeded(f"enumeration needs {states} states, budget is {budget}")


def _popcounts(size: int) -> np.ndarray:
    masks = np.arange(size, dtype=np.int64)
    pc = np.zeros(size, dtype=np.int64)
    for bit in range(size.bit_length()):
        pc += (masks >> bit) & 1
    return pc


def longest_paths(g: Graph, budget: int = DEFAULT_BUDGET) -> PathCollection:
    """All longest paths of ``g`` (order = number of vertices)."""
    if g.n < 1:
        raise ValueError("longest paths need at least one vertex")
    _check_budget(g, budget)
    cnt = _kernels.path_counts(g.adj_array)
    directed = cnt.sum(axis=1)
    pc = _popcounts(1 << g.n)
    length = int(pc[directed > 0].max())
    sel = np.nonzero((directed > 0) & (pc == length))[0]
    per = directed[sel] if length == 1 else directed[sel] // 2
    return PathCollection(g, "path", length, tuple(int(m) for m in sel), tuple(int(c) for c in per))


def longest_cycles(g: Graph, budget: int = DEFAULT_BUDGET) -> PathCollection:
    """All longest cycles of ``g``; an empty collection of length 0 when ``g``
    is a forest."""
    if g.n < 3:
        raise ValueError("longest cycles need at least three vertices")
    _check_budget(g, budget)
    cnt = _kernels.cycle_counts(g.adj_array)
    size = 1 << g.n
    pc = _popcounts(size)
    masks = np.arange(size, dtype=np.int64)
    closed = np.zeros(size, dtype=np.int64)
    for s in range(g.n):
        nbrs = g.neighbors(s)
        if not nbrs:
            continue
        sel = masks[((masks & -masks) == (1 << s)) & (pc >= 3)]
        closed[sel] = cnt[np.ix_(sel, np.array(nbrs, dtype=np.int64))].sum(axis=1)
    if not closed.any():
        return PathCollection(g, "cycle", 0, (), ())
    length = int(pc[closed > 0].max())
    sel = np.nonzero((closed > 0) & (pc == length))[0]
    return PathCollection(g, "cycle", length, tuple(int(m) for m in sel), tuple(int(c) // 2 for c in closed[sel]))


def collection(g: Graph, mode: str, budget: int = DEFAULT_BUDGET) -> PathCollection:
    if mode == "path":
        return longest_paths(g, budget)
    if mode == "cycle":
        return longest_cycles(g, budget)
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# explicit sequences


def spanning_sequences(adj, mask: int, closed: bool) -> list[tuple[int, ...]]:
    """All canonical paths (or cycles) whose vertex set is exactly ``mask``."""
    verts = bits(mask)
    k = len(verts)
    if closed and k < 3:
        return []
    found = set()
    starts = verts[:1] if closed else verts
    for s in starts:
        seq = [s]

        def extend(v: int, used: int) -> None:
            if used == mask:
                if not closed:
                    found.add(canonical_path(seq))
                elif (adj[v] >> s) & 1:
                    found.add(canonical_cycle(seq))
                return
            for w in bits(adj[v] & mask & ~used):
                seq.append(w)
                extend(w, used | (1 << w))
                seq.pop()

        extend(s, 1 << s)
    return sorted(found)


def first_spanning_sequence(adj, mask: int, closed: bool) -> tuple[int, ...] | None:
    """The lexicographically least path (or cycle, starting at its smallest
    vertex) with vertex set ``mask``.  It is canonical by construction."""
    verts = bits(mask)
    if closed and len(verts) < 3:
        return None
    starts = verts[:1] if closed else verts
    for s in starts:
        seq = [s]

        def extend(v: int, used: int) -> bool:
            if used == mask:
                return (not closed) or bool((adj[v] >> s) & 1)
            for w in bits(adj[v] & mask & ~used):
                seq.append(w)
                if extend(w, used | (1 << w)):
                    return True
                seq.pop()
            return False

        if extend(s, 1 << s):
            return tuple(seq)
    return None


def _dfs_longest(g: Graph, budget: int, closed: bool) -> tuple[int, set]:
    best = 0 if closed else 1
    found: set = set()
    expansions = 0
    adj = g.adj

    def visit(seq: list[int], used: int) -> None:
        nonlocal best, found, expansions
        expansions += 1
        if expansions > budget:
            raise BudgetExceeded(f"DFS exceeded {budget} node expansions")
        v = seq[-1]
        k = len(seq)
        if closed:
            if k >= 3 and (adj[v] >> seq[0]) & 1:
                if k > best:
                    best, found = k, set()
                if k == best:
                    found.add(canonical_cycle(seq))
            nxt = adj[v] & ~used & ~((1 << (seq[0] + 1)) - 1)
        else:
            if k > best:
                best, found = k, set()
            if k == best:
                found.add(canonical_path(seq))
            nxt = adj[v] & ~used
        for w in bits(nxt):
            seq.append(w)
            visit(seq, used | (1 << w))
            seq.pop()

    for s in range(g.n):
        visit([s], 1 << s)
    return best, found


def longest_paths_dfs(g: Graph, budget: int = DEFAULT_BUDGET) -> tuple[int, list[tuple[int, ...]]]:
    """Backtracking enumeration of every simple path; the budget caps node
    expansions.  Returns ``(order, sorted canonical longest paths)``."""
    best, found = _dfs_longest(g, budget, closed=False)
    return best, sorted(found)


def longest_cycles_dfs(g: Graph, budget: int = DEFAULT_BUDGET) -> tuple[int, list[tuple[int, ...]]]:
    best, found = _dfs_longest(g, budget, closed=True)
    return best, sorted(found)


# ---------------------------------------------------------------------------


def pairwise_intersection_check(coll: PathCollection):
    """``(True, None)`` if every two members share a vertex, otherwise
    ``(False, (first, second))`` with two disjoint members as sequences."""
    masks = coll.masks
    for a, b in combinations(range(len(masks)), 2):
        if not masks[a] & masks[b]:
            closed = coll.mode == "cycle"
            adj = coll.graph.adj
            return False, (first_spanning_sequence(adj, masks[a], closed),
                           first_spanning_sequence(adj, masks[b], closed))
    return True, None

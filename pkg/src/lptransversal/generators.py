"""Instance generators: exhaustive small graphs, seeded random families,
triangle chains, partial k-trees with their decompositions, random arc
models and random ladder matchings."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, permutations

import numpy as np

from . import _kernels
from .arcs import Arc, ArcModel
from .graph import Graph, bits, connectivity
from .separator import TreeDecomposition
from .weave import BlockMatching, LadderInstance

__all__ = [
    "MAX_EXHAUSTIVE_N",
    "connected_graphs",
    "labelled_connected_graphs",
    "canonical_code",
    "random_connected",
    "random_two_connected",
    "triangle_chain",
    "partial_ktree",
    "random_arc_model",
    "random_block_matching",
    "random_span_ladder",
]

MAX_EXHAUSTIVE_N = 7


def _pair_table(n: int) -> tuple[np.ndarray, np.ndarray]:
    pairs = list(combinations(range(n), 2))
    pos = np.zeros((max(n, 1), max(n, 1)), dtype=np.int64)
    for k, (a, b) in enumerate(pairs):
        pos[a, b] = pos[b, a] = k
    return np.array(pairs, dtype=np.int64).reshape(-1, 2), pos


def _graph_from_code(n: int, code: int, pairs: np.ndarray) -> Graph:
    return Graph.from_edges(n, [tuple(int(x) for x in pairs[k]) for k in bits(code)])


def canonical_code(g: Graph) -> int:
    """Smallest edge bitmask over all relabellings (pairs ordered
    lexicographically).  Equal codes mean isomorphic graphs."""
    return int(_canonical_codes(g.n, [g])[0])


def _canonical_codes(n: int, graphs: list[Graph]) -> np.ndarray:
    pairs, pos = _pair_table(n)
    perms = np.array(list(permutations(range(n))), dtype=np.int64).reshape(-1, max(n, 1))
    width = max((len(g.edges) for g in graphs), default=0)
    edge_lists = np.zeros((len(graphs), max(width, 1), 2), dtype=np.int64)
    counts = np.zeros(len(graphs), dtype=np.int64)
    for i, g in enumerate(graphs):
        es = g.sorted_edges()
        counts[i] = len(es)
        if es:
            edge_lists[i, : len(es)] = es
    return _kernels.canonical_masks(edge_lists, counts, perms, pos)


def connected_graphs(n: int) -> list[Graph]:
    """One representative per isomorphism class of connected graphs on
    ``n`` vertices, in canonical labelling, sorted by canonical code.

    Built by adding a vertex with every non-empty neighbourhood to each
    class on ``n - 1`` vertices: deleting a non-cut vertex (one always
    exists) leaves a connected graph, so every class is reached.
    """
    if not 1 <= n <= MAX_EXHAUSTIVE_N:
        raise ValueError(f"exhaustive generation supports 1 <= n <= {MAX_EXHAUSTIVE_N}")
    reps = [Graph(1)]
    for size in range(2, n + 1):
        cands = []
        for g in reps:
            for nb in range(1, 1 << (size - 1)):
                cands.append(Graph.from_edges(size, list(g.edges) + [(v, size - 1) for v in bits(nb)]))
        codes = _canonical_codes(size, cands)
        pairs, _ = _pair_table(size)
        reps = [_graph_from_code(size, int(c), pairs) for c in sorted(set(codes.tolist()))]
    return reps


def labelled_connected_graphs(n: int) -> list[Graph]:
    """Every connected graph on vertex set ``0..n-1`` (no isomorphism
    reduction), by a sweep over all edge bitmasks."""
    if not 1 <= n <= MAX_EXHAUSTIVE_N:
        raise ValueError(f"exhaustive generation supports 1 <= n <= {MAX_EXHAUSTIVE_N}")
    pairs, _ = _pair_table(n)
    masks = np.arange(1 << len(pairs), dtype=np.int64)
    ok = _kernels.is_connected_masks(masks, n, pairs)
    return [_graph_from_code(n, int(c), pairs) for c in masks[ok]]


# ---------------------------------------------------------------------------
# random graphs


def _gnp(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [(a, b) for a, b in combinations(range(n), 2) if rng.random() < p])


def random_connected(n: int, p: float, seed: int, max_tries: int = 100000) -> Graph:
    """G(n, p) resampled until connected."""
    rng = random.Random(seed)
    for _ in range(max_tries):
        g = _gnp(n, p, rng)
        if connectivity(g).is_connected:
            return g
    raise ValueError(f"no connected G({n}, {p}) within {max_tries} tries")


def random_two_connected(n: int, p: float, seed: int, max_tries: int = 100000) -> Graph:
    """G(n, p) resampled until 2-connected."""
    if n < 3:
        raise ValueError("2-connected graphs need at least 3 vertices")
    rng = random.Random(seed)
    for _ in range(max_tries):
        g = _gnp(n, p, rng)
        if connectivity(g).is_two_connected:
            return g
    raise ValueError(f"no 2-connected G({n}, {p}) within {max_tries} tries")


def triangle_chain(t: int) -> Graph:
    """``t`` disjoint triangles joined in a row by bridges (``n = 3t``)."""
    if t < 1:
        raise ValueError("need at least one triangle")
    edges = []
    for i in range(t):
        a, b, c = 3 * i, 3 * i + 1, 3 * i + 2
        edges += [(a, b), (b, c), (a, c)]
        if i:
            edges.append((3 * i - 1, a))
    return Graph.from_edges(3 * t, edges)


def partial_ktree(k: int, n: int, seed: int, drop: float = 0.3) -> tuple[Graph, TreeDecomposition]:
    """A random connected partial k-tree with a width-k decomposition.

    Grow a k-tree from a (k+1)-clique, attaching each new vertex to k
    vertices of a random existing bag, then delete edges with probability
    ``drop`` as long as the graph stays connected.
    """
    if k < 1 or n < k + 1:
        raise ValueError("need k >= 1 and n >= k + 1")
    rng = random.Random(seed)
    bags = [frozenset(range(k + 1))]
    tree = []
    edges = set(combinations(range(k + 1), 2))
    for v in range(k + 1, n):
        t = rng.randrange(len(bags))
        base = sorted(bags[t])
        keep = rng.sample(base, k)
        bags.append(frozenset(keep + [v]))
        tree.append((t, len(bags) - 1))
        edges.update((u, v) for u in keep)
    order = sorted(edges)
    rng.shuffle(order)
    current = set(edges)
    for e in order:
        if rng.random() >= drop:
            continue
        trial = current - {e}
        if connectivity(Graph.from_edges(n, trial)).is_connected:
            current = trial
    return Graph.from_edges(n, current), TreeDecomposition(tuple(bags), tuple(tree))


# ---------------------------------------------------------------------------
# arc models


def random_arc_model(m: int, seed: int, grid: int = 720, max_tries: int = 100000) -> ArcModel:
    """``m`` arcs with endpoints on a ``1/grid`` lattice, all endpoints
    distinct, resampled until the arcs cover the circle."""
    if m < 1 or 2 * m > grid:
        raise ValueError("need 1 <= m <= grid / 2")
    rng = random.Random(seed)
    for _ in range(max_tries):
        longest = rng.uniform(max(1.2 / m, 0.1), 0.75)
        used: set[int] = set()
        arcs = []
        for _ in range(m):
            while True:
                s = rng.randrange(grid)
                length = max(1, int(rng.uniform(0.02, longest) * grid))
                e = (s + length) % grid
                if s not in used and e not in used and s != e:
                    break
            used.update((s, e))
            arcs.append(Arc(Fraction(s, grid), Fraction(e, grid)))
        model = ArcModel(tuple(arcs))
        if model.covers_circle():
            return model
    raise ValueError(f"no covering model with {m} arcs within {max_tries} tries")


# ---------------------------------------------------------------------------
# ladders


def random_block_matching(tau: int, rng: random.Random) -> BlockMatching:
    """A uniformly shaped random matching satisfying the block conditions.

    Choose matched positions on both paths, cut the sorted positions into
    blocks of size 1 or even, and pair each block's first coordinates
    increasing with its second coordinates decreasing.
    """
    size = rng.randint(0, tau)
    ps = sorted(rng.sample(range(1, tau + 1), size))
    qs = sorted(rng.sample(range(1, tau + 1), size))
    blocks = []
    k = 0
    while k < size:
        left = size - k
        options = [1] + [s for s in range(2, left + 1, 2)]
        s = rng.choice(options)
        blocks.append(list(zip(ps[k:k + s], reversed(qs[k:k + s]))))
        k += s
    return BlockMatching.of(tau, blocks)


def random_span_ladder(tau: int, span: int, rng: random.Random, density: float | None = None) -> LadderInstance:
    """A random matching with ``|j - i| <= span`` on every edge."""
    density = rng.random() if density is None else density
    free = set(range(1, tau + 1))
    edges = []
    for i in range(1, tau + 1):
        if rng.random() >= density:
            continue
        choices = [j for j in range(max(1, i - span), min(tau, i + span) + 1) if j in free]
        if choices:
            j = rng.choice(choices)
            free.discard(j)
            edges.append((i, j))
    return LadderInstance(tau, frozenset(edges))

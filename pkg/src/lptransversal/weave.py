"""Weaving two paths along a block-structured matching, and the matching
refinement steps that produce such matchings.

Two paths ``u_1 .. u_tau`` and ``v_1 .. v_tau`` are joined by matching
edges ``(i, j)`` meaning ``u_i v_j`` (1-based).  Two edges ``(i1, j1)`` and
``(i2, j2)`` *cross* when ``(i2 - i1)(j2 - j1) < 0`` and are *parallel*
when the product is positive.
"""

from __future__ import annotations

import bisect
import re
from dataclasses import dataclass
from typing import Sequence

__all__ = [
    "Edge",
    "LadderInstance",
    "BlockMatching",
    "WovenPath",
    "WeaveResult",
    "crossing",
    "parallel",
    "validate_block_matching",
    "weave",
    "bucket_matching",
    "keep_alternate_blocks",
    "extract_monotone",
    "parity_fix",
    "refine_matching",
    "koenig_cover",
    "parse_ladder",
    "format_ladder",
    "reference_blocks",
]

Edge = tuple[int, int]


def _product(e: Edge, f: Edge) -> int:
    return (f[0] - e[0]) * (f[1] - e[1])


def crossing(e: Edge, f: Edge) -> bool:
    return _product(e, f) < 0


def parallel(e: Edge, f: Edge) -> bool:
    return _product(e, f) > 0


@dataclass(frozen=True)
class LadderInstance:
    tau: int
    matching: frozenset

    def __post_init__(self):
        if self.tau < 1:
            raise ValueError("tau must be at least 1")
        firsts, seconds = set(), set()
        for i, j in self.matching:
            if not (1 <= i <= self.tau and 1 <= j <= self.tau):
                raise ValueError(f"edge ({i}, {j}) outside 1..{self.tau}")
            if i in firsts or j in seconds:
                raise ValueError(f"edge ({i}, {j}) shares an endpoint with another edge")
            firsts.add(i)
            seconds.add(j)


@dataclass(frozen=True)
class BlockMatching:
    tau: int
    blocks: tuple[tuple[Edge, ...], ...]

    @classmethod
    def of(cls, tau: int, blocks: Sequence[Sequence[Edge]]) -> "BlockMatching":
        return cls(tau, tuple(tuple(sorted(tuple(e) for e in b)) for b in blocks))

    @property
    def edges(self) -> list[Edge]:
        return sorted(e for b in self.blocks for e in b)

    @property
    def size(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def instance(self) -> LadderInstance:
        return LadderInstance(self.tau, frozenset(self.edges))


def validate_block_matching(bm: BlockMatching) -> tuple[bool, str | None]:
    """Check the block conditions: sizes are 1 or even; edges inside a block
    pairwise cross; edges of distinct blocks are pairwise parallel."""
    try:
        bm.instance
    except ValueError as exc:
        return False, f"not a matching: {exc}"
    for k, block in enumerate(bm.blocks):
        if len(block) != 1 and len(block) % 2:
            return False, f"block {k} has odd size {len(block)}"
    for k, block in enumerate(bm.blocks):
        for a in range(len(block)):
            for b in range(a + 1, len(block)):
                if not crossing(block[a], block[b]):
                    return False, f"edges {block[a]} and {block[b]} of block {k} do not cross"
    for k in range(len(bm.blocks)):
        for l in range(k + 1, len(bm.blocks)):
            for e in bm.blocks[k]:
                for f in bm.blocks[l]:
                    if not parallel(e, f):
                        return False, f"edges {e} (block {k}) and {f} (block {l}) are not parallel"
    return True, None


# ---------------------------------------------------------------------------
# weaving

Vertex = tuple[str, int]  # ("u", i) on the first path, ("v", j) on the second


@dataclass(frozen=True)
class WovenPath:
    vertices: tuple[Vertex, ...]

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def endpoints(self) -> tuple[Vertex, Vertex]:
        return self.vertices[0], self.vertices[-1]

    def label(self) -> str:
        return " ".join(f"{s}{i}" for s, i in self.vertices)


@dataclass(frozen=True)
class WeaveResult:
    p_prime: WovenPath
    q_prime: WovenPath
    longer: WovenPath


def _segments(matched: list[int], tau: int) -> list[tuple[int, int]]:
    """Segment ``j`` runs from ``i_j`` to ``i_{j+1}`` with ``i_0 = 1`` and
    ``i_{|M|+1} = tau``."""
    cuts = [1] + matched + [tau]
    return [(cuts[j], cuts[j + 1]) for j in range(len(cuts) - 1)]


def _collect(side: str, segs: list[tuple[int, int]], parity: int, verts: set, edges: set) -> None:
    for j, (a, b) in enumerate(segs):
        if j % 2 != parity:
            continue
        for x in range(a, b + 1):
            verts.add((side, x))
        for x in range(a, b):
            edges.add(frozenset({(side, x), (side, x + 1)}))


def _walk(tau: int, verts: set, edges: set) -> WovenPath:
    adj: dict[Vertex, list[Vertex]] = {v: [] for v in verts}
    for e in edges:
        a, b = tuple(e)
        adj[a].append(b)
        adj[b].append(a)
    if any(len(nb) > 2 for nb in adj.values()):
        raise AssertionError("woven subgraph has a vertex of degree > 2")
    ends = sorted((v for v, nb in adj.items() if len(nb) < 2), key=lambda v: (v[1], v[0]))
    if len(verts) == 1:
        return WovenPath(tuple(verts))
    start = next((v for v in ends if v in {("u", 1), ("v", 1)}), None)
    if start is None:
        raise AssertionError("woven subgraph has no endpoint at index 1")
    seq = [start]
    prev = None
    while True:
        nxt = [w for w in adj[seq[-1]] if w != prev]
        if not nxt:
            break
        prev = seq[-1]
        seq.append(nxt[0])
        if len(seq) > len(verts):
            raise AssertionError("woven subgraph contains a cycle")
    if len(seq) != len(verts):
        raise AssertionError("woven subgraph is disconnected")
    if seq[-1] not in {("u", tau), ("v", tau)}:
        raise AssertionError(f"woven path ends at {seq[-1]}, not at index {tau}")
    return WovenPath(tuple(seq))


def weave(bm: BlockMatching) -> WeaveResult:
    """Build ``P'`` (odd segments of the first path, the matching, even
    segments of the second) and ``Q'`` (the complementary choice).

    A matched vertex at index 1 or ``tau`` yields a one-vertex segment,
    which contributes just that vertex.
    """
    ok, why = validate_block_matching(bm)
    if not ok:
        raise ValueError(f"invalid block matching: {why}")
    tau = bm.tau
    edges = bm.edges
    p_segs = _segments(sorted(i for i, _ in edges), tau)
    q_segs = _segments(sorted(j for _, j in edges), tau)
    m_edges = {frozenset({("u", i), ("v", j)}) for i, j in edges}
    m_verts = {("u", i) for i, _ in edges} | {("v", j) for _, j in edges}

    paths = []
    for p_parity in (1, 0):
        verts = set(m_verts)
        es = set(m_edges)
        _collect("u", p_segs, p_parity, verts, es)
        _collect("v", q_segs, 1 - p_parity, verts, es)
        paths.append(_walk(tau, verts, es))
    p_prime, q_prime = paths
    if q_prime.order > p_prime.order:
        longer = q_prime
    elif p_prime.order > q_prime.order:
        longer = p_prime
    else:
        longer = q_prime if q_prime.vertices[0] == ("u", 1) else p_prime
    return WeaveResult(p_prime, q_prime, longer)


# ---------------------------------------------------------------------------
# refinement pipeline


def bucket_matching(inst: LadderInstance, window: int) -> list[list[Edge]]:
    """Split edges into windows of ``window`` consecutive first coordinates.

    Requires ``2 |j - i| <= window`` for every edge so that edges in blocks
    two or more windows apart are parallel.
    """
    if window <= 0:
        raise ValueError("window must be positive")
    for i, j in inst.matching:
        if 2 * abs(j - i) > window:
            raise ValueError(f"edge ({i}, {j}) spans {abs(j - i)} > window/2 = {window / 2}")
    k = -(-inst.tau // window)
    blocks: list[list[Edge]] = [[] for _ in range(k)]
    for e in sorted(inst.matching):
        blocks[(e[0] - 1) // window].append(e)
    return blocks


def keep_alternate_blocks(blocks: list[list[Edge]]) -> list[list[Edge]]:
    """Odd-numbered (1st, 3rd, ...) or even-numbered blocks, whichever holds
    more edges; ties go to the odd ones."""
    odd = blocks[0::2]
    even = blocks[1::2]
    if sum(map(len, even)) > sum(map(len, odd)):
        return even
    return odd


def _longest_monotone(values: list[int], increasing: bool) -> list[int]:
    """Indices of a longest strictly monotone subsequence (patience sorting)."""
    seq = values if increasing else [-x for x in values]
    tails: list[int] = []
    tail_idx: list[int] = []
    prev = [-1] * len(seq)
    for idx, x in enumerate(seq):
        pos = bisect.bisect_left(tails, x)
        if pos == len(tails):
            tails.append(x)
            tail_idx.append(idx)
        else:
            tails[pos] = x
            tail_idx[pos] = idx
        prev[idx] = tail_idx[pos - 1] if pos else -1
    out = []
    cur = tail_idx[-1] if tail_idx else -1
    while cur != -1:
        out.append(cur)
        cur = prev[cur]
    return out[::-1]


def extract_monotone(block: Sequence[Edge]) -> list[Edge]:
    """Largest pairwise-crossing or pairwise-parallel subset found as the
    longer of the longest decreasing / increasing runs of second coordinates
    (sorted by first coordinate).  Ties prefer the crossing set."""
    edges = sorted(block)
    if not edges:
        return []
    seconds = [j for _, j in edges]
    dec = _longest_monotone(seconds, increasing=False)
    inc = _longest_monotone(seconds, increasing=True)
    pick = dec if len(dec) >= len(inc) else inc
    return [edges[k] for k in pick]


def parity_fix(blocks: Sequence[Sequence[Edge]], tau: int) -> tuple[BlockMatching, list[Edge]]:
    """Turn monotone blocks into a valid :class:`BlockMatching`.

    Parallel blocks become singletons; an odd crossing block of size >= 3
    loses the edge at its median first coordinate.  Returns the matching and
    the removed edges.
    """
    out: list[tuple[Edge, ...]] = []
    removed: list[Edge] = []
    for block in blocks:
        block = sorted(block)
        if len(block) <= 1:
            out.extend((e,) for e in block)
            continue
        pairs = [(a, b) for a in range(len(block)) for b in range(a + 1, len(block))]
        if all(crossing(block[a], block[b]) for a, b in pairs):
            if len(block) % 2:
                mid = len(block) // 2
                removed.append(block[mid])
                block = block[:mid] + block[mid + 1:]
            out.append(tuple(block))
        elif all(parallel(block[a], block[b]) for a, b in pairs):
            out.extend((e,) for e in block)
        else:
            raise ValueError(f"block {block} is neither pairwise crossing nor pairwise parallel")
    out.sort(key=lambda b: b[0][0])
    bm = BlockMatching(tau, tuple(out))
    ok, why = validate_block_matching(bm)
    if not ok:
        raise ValueError(f"blocks are not mutually parallel: {why}")
    return bm, removed


@dataclass(frozen=True)
class Refinement:
    buckets: tuple
    kept: tuple
    monotone: tuple
    removed: tuple
    result: BlockMatching


def refine_matching(inst: LadderInstance, window: int) -> Refinement:
    """bucket -> keep the heavier alternate half -> monotone subset per
    bucket -> parity repair."""
    buckets = bucket_matching(inst, window)
    kept = keep_alternate_blocks(buckets)
    mono = [extract_monotone(b) for b in kept if b]
    bm, removed = parity_fix(mono, inst.tau)
    return Refinement(tuple(map(tuple, buckets)), tuple(map(tuple, kept)), tuple(map(tuple, mono)),
                      tuple(removed), bm)


# ---------------------------------------------------------------------------
# König


def koenig_cover(left, right, edges):
    """Maximum matching and a minimum vertex cover of a bipartite graph.

    Augmenting paths from every left vertex give the matching; the cover is
    ``(L - Z) | (R & Z)`` where ``Z`` is everything reachable from unmatched
    left vertices along alternating paths.
    """
    left = list(left)
    right = list(right)
    lset, rset = set(left), set(right)
    if lset & rset:
        raise ValueError("sides must be disjoint")
    nbrs: dict = {u: [] for u in left}
    for a, b in edges:
        if a in lset and b in rset:
            u, w = a, b
        elif b in lset and a in rset:
            u, w = b, a
        else:
            raise ValueError(f"edge ({a}, {b}) does not join the two sides")
        if w not in nbrs[u]:
            nbrs[u].append(w)
    mate_l: dict = {}
    mate_r: dict = {}

    def augment(u, seen) -> bool:
        for w in nbrs[u]:
            if w in seen:
                continue
            seen.add(w)
            if w not in mate_r or augment(mate_r[w], seen):
                mate_l[u] = w
                mate_r[w] = u
                return True
        return False

    for u in left:
        augment(u, set())

    z_left = {u for u in left if u not in mate_l}
    z_right: set = set()
    stack = list(z_left)
    while stack:
        u = stack.pop()
        for w in nbrs[u]:
            if w in z_right:
                continue
            z_right.add(w)
            x = mate_r.get(w)
            if x is not None and x not in z_left:
                z_left.add(x)
                stack.append(x)
    cover = (lset - z_left) | z_right
    matching = sorted(((u, w) for u, w in mate_l.items()), key=repr)
    return matching, cover


# ---------------------------------------------------------------------------
# ladder files


def reference_blocks() -> BlockMatching:
    """The ten-vertex example with blocks of sizes 1, 2, 4, 1."""
    return BlockMatching.of(10, [
        [(2, 2)],
        [(3, 4), (4, 3)],
        [(5, 8), (6, 7), (7, 6), (8, 5)],
        [(9, 9)],
    ])


_PAIR = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


def parse_ladder(text: str) -> BlockMatching:
    """First non-comment line: tau.  Each further line: one block as
    ``(i,j)`` pairs."""
    tau = None
    blocks = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if tau is None:
            try:
                tau = int(line)
            except ValueError:
                raise ValueError(f"line {lineno}: expected tau, got {line!r}") from None
            continue
        pairs = _PAIR.findall(line)
        leftover = _PAIR.sub("", line).strip()
        if not pairs or leftover:
            raise ValueError(f"line {lineno}: expected (i,j) pairs, got {line!r}")
        blocks.append([(int(a), int(b)) for a, b in pairs])
    if tau is None:
        raise ValueError("missing tau")
    return BlockMatching.of(tau, blocks)


def format_ladder(bm: BlockMatching) -> str:
    lines = [str(bm.tau)]
    for b in bm.blocks:
        lines.append(" ".join(f"({i},{j})" for i, j in b))
    return "\n".join(lines) + "\n"

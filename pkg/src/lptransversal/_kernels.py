"""Hot inner loops over vertex subsets.

Every kernel exists twice: a numba ``@njit`` version and a pure-numpy
version with identical outputs.  The public names at the bottom of the
module dispatch to one of them; set ``LPTRANSVERSAL_DISABLE_NUMBA=1`` to
force the numpy path (numba is also skipped when it cannot be imported).

Graphs are passed as ``adj``: an int64 array where bit ``w`` of ``adj[v]``
is set iff ``vw`` is an edge.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

_DISABLED = os.environ.get("LPTRANSVERSAL_DISABLE_NUMBA", "").strip().lower() in {
    "1",
    "true",
    "yes",
    "on",
}
USE_NUMBA = HAVE_NUMBA and not _DISABLED

MAX_SUBSET_VERTICES = 20  # 20! still fits in int64 path counts


# ---------------------------------------------------------------------------
# numpy implementations


def _popcounts(size: int) -> np.ndarray:
    pc = np.zeros(size, dtype=np.int64)
    for bit in range(max(size.bit_length() - 1, 0)):
        pc += (np.arange(size, dtype=np.int64) >> bit) & 1
    return pc


def _lowest_bits(size: int) -> np.ndarray:
    masks = np.arange(size, dtype=np.int64)
    low = np.full(size, -1, dtype=np.int64)
    for bit in range(max(size.bit_length() - 1, 0) - 1, -1, -1):
        low[(masks >> bit) & 1 == 1] = bit
    return low


def _neighbor_lists(adj: np.ndarray) -> list[np.ndarray]:
    n = adj.shape[0]
    return [np.array([v for v in range(n) if (int(adj[w]) >> v) & 1], dtype=np.int64) for w in range(n)]


def path_counts_numpy(adj: np.ndarray) -> np.ndarray:
    """``cnt[mask, v]`` = number of directed simple paths with vertex set
    ``mask`` that end at ``v``."""
    n = adj.shape[0]
    size = 1 << n
    cnt = np.zeros((size, n), dtype=np.int64)
    for v in range(n):
        cnt[1 << v, v] = 1
    masks = np.arange(size, dtype=np.int64)
    pc = _popcounts(size)
    nbrs = _neighbor_lists(adj)
    for k in range(1, n):
        layer = masks[pc == k]
        for w in range(n):
            if nbrs[w].size == 0:
                continue
            sel = layer[(layer >> w) & 1 == 0]
            if sel.size == 0:
                continue
            contrib = cnt[np.ix_(sel, nbrs[w])].sum(axis=1)
            cnt[sel | (1 << w), w] += contrib
    return cnt


def cycle_counts_numpy(adj: np.ndarray) -> np.ndarray:
    """``cnt[mask, v]`` = number of simple paths from the lowest vertex of
    ``mask`` to ``v`` using exactly the vertices of ``mask``."""
    n = adj.shape[0]
    size = 1 << n
    cnt = np.zeros((size, n), dtype=np.int64)
    for v in range(n):
        cnt[1 << v, v] = 1
    masks = np.arange(size, dtype=np.int64)
    pc = _popcounts(size)
    low = _lowest_bits(size)
    nbrs = _neighbor_lists(adj)
    for k in range(1, n):
        layer = masks[pc == k]
        for w in range(1, n):
            if nbrs[w].size == 0:
                continue
            sel = layer[((layer >> w) & 1 == 0) & (low[layer] < w)]
            if sel.size == 0:
                continue
            contrib = cnt[np.ix_(sel, nbrs[w])].sum(axis=1)
            cnt[sel | (1 << w), w] += contrib
    return cnt


def canonical_masks_numpy(edge_lists: np.ndarray, edge_counts: np.ndarray, perms: np.ndarray,
                          pos: np.ndarray) -> np.ndarray:
    """Minimum relabelled edge bitmask of each graph over all permutations.

    ``edge_lists[g, :edge_counts[g]]`` holds the edges of graph ``g`` as
    ``(a, b)`` rows; ``pos[a, b]`` is the bit index of pair ``ab``.
    """
    out = np.zeros(edge_lists.shape[0], dtype=np.int64)
    for g in range(edge_lists.shape[0]):
        m = edge_counts[g]
        if m == 0:
            continue
        e = edge_lists[g, :m]
        pa = perms[:, e[:, 0]]
        pb = perms[:, e[:, 1]]
        bits = np.left_shift(np.int64(1), pos[pa, pb])
        out[g] = bits.sum(axis=1).min()
    return out


def is_connected_masks_numpy(edge_masks: np.ndarray, n: int, pairs: np.ndarray) -> np.ndarray:
    """Connectivity of every labelled graph given as an edge-pair bitmask."""
    count = edge_masks.shape[0]
    adj = np.zeros((count, n), dtype=np.int64)
    for bit in range(pairs.shape[0]):
        a, b = int(pairs[bit, 0]), int(pairs[bit, 1])
        on = (edge_masks >> bit) & 1
        adj[:, a] |= on << b
        adj[:, b] |= on << a
    full = (1 << n) - 1
    seen = np.ones(count, dtype=np.int64)
    for _ in range(n):
        grow = seen.copy()
        for v in range(n):
            has = (seen >> v) & 1
            grow |= np.where(has == 1, adj[:, v], 0)
        if np.array_equal(grow, seen):
            break
        seen = grow
    return seen == full


# ---------------------------------------------------------------------------
# numba implementations

if HAVE_NUMBA:

    @njit(cache=True)
    def path_counts_numba(adj):
        n = adj.shape[0]
        size = 1 << n
        cnt = np.zeros((size, n), dtype=np.int64)
        for v in range(n):
            cnt[1 << v, v] = 1
        for mask in range(1, size):
            for v in range(n):
                c = cnt[mask, v]
                if c == 0:
                    continue
                nb = adj[v] & ~mask
                while nb:
                    low = nb & -nb
                    w = 0
                    while (low >> w) != 1:
                        w += 1
                    cnt[mask | low, w] += c
                    nb ^= low
        return cnt

    @njit(cache=True)
    def cycle_counts_numba(adj):
        n = adj.shape[0]
        size = 1 << n
        cnt = np.zeros((size, n), dtype=np.int64)
        for v in range(n):
            cnt[1 << v, v] = 1
        for mask in range(1, size):
            lowest = mask & -mask
            keep_above = ~((lowest << 1) - 1)
            for v in range(n):
                c = cnt[mask, v]
                if c == 0:
                    continue
                nb = adj[v] & ~mask & keep_above
                while nb:
                    low = nb & -nb
                    w = 0
                    while (low >> w) != 1:
                        w += 1
                    cnt[mask | low, w] += c
                    nb ^= low
        return cnt

    @njit(cache=True)
    def canonical_masks_numba(edge_lists, edge_counts, perms, pos):
        out = np.zeros(edge_lists.shape[0], dtype=np.int64)
        for g in range(edge_lists.shape[0]):
            m = edge_counts[g]
            best = -1
            for p in range(perms.shape[0]):
                code = 0
                for e in range(m):
                    code |= np.int64(1) << pos[perms[p, edge_lists[g, e, 0]], perms[p, edge_lists[g, e, 1]]]
                if best < 0 or code < best:
                    best = code
            out[g] = max(best, 0)
        return out

    @njit(cache=True)
    def is_connected_masks_numba(edge_masks, n, pairs):
        count = edge_masks.shape[0]
        out = np.zeros(count, dtype=np.bool_)
        full = (1 << n) - 1
        adj = np.zeros(n, dtype=np.int64)
        for g in range(count):
            em = edge_masks[g]
            for v in range(n):
                adj[v] = 0
            for bit in range(pairs.shape[0]):
                if (em >> bit) & 1:
                    a = pairs[bit, 0]
                    b = pairs[bit, 1]
                    adj[a] |= 1 << b
                    adj[b] |= 1 << a
            seen = 1
            frontier = 1
            while frontier:
                nxt = 0
                for v in range(n):
                    if (frontier >> v) & 1:
                        nxt |= adj[v]
                frontier = nxt & ~seen
                seen |= nxt
            out[g] = seen == full
        return out

else:  # pragma: no cover
    path_counts_numba = path_counts_numpy
    cycle_counts_numba = cycle_counts_numpy
    canonical_masks_numba = canonical_masks_numpy
    is_connected_masks_numba = is_connected_masks_numpy


if USE_NUMBA:
    path_counts = path_counts_numba
    cycle_counts = cycle_counts_numba
    canonical_masks = canonical_masks_numba
    is_connected_masks = is_connected_masks_numba
else:
    path_counts = path_counts_numpy
    cycle_counts = cycle_counts_numpy
    canonical_masks = canonical_masks_numpy
    is_connected_masks = is_connected_masks_numpy


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"

"""Deliberately naive reference implementations.

None of these import the package's algorithms; they only read the raw
edge set of a graph, so agreement with the package is meaningful.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations, permutations


def edge_set(g):
    return {frozenset(e) for e in g.edges}


def _is_path(seq, es):
    return all(frozenset((a, b)) in es for a, b in zip(seq, seq[1:]))


def naive_longest_paths(g):
    """(order, set of canonical vertex sequences) by trying every ordered
    sequence of distinct vertices, longest first."""
    es = edge_set(g)
    for k in range(g.n, 0, -1):
        found = set()
        for seq in permutations(range(g.n), k):
            if _is_path(seq, es):
                found.add(min(seq, seq[::-1]))
        if found:
            return k, found
    return 0, set()


def naive_longest_cycles(g):
    es = edge_set(g)
    for k in range(g.n, 2, -1):
        found = set()
        for seq in permutations(range(g.n), k):
            if seq[0] != min(seq):
                continue
            if _is_path(seq, es) and frozenset((seq[-1], seq[0])) in es:
                rev = (seq[0],) + seq[:0:-1]
                found.add(min(seq, rev))
        if found:
            return k, found
    return 0, set()


def naive_hitting_set_size(families, n):
    """Smallest k such that some k-subset of range(n) meets every family
    member (members given as vertex collections)."""
    sets = [set(f) for f in families]
    for k in range(n + 1):
        for combo in combinations(range(n), k):
            c = set(combo)
            if all(s & c for s in sets):
                return k, combo
    raise AssertionError("unreachable")


def naive_connected(n, es, removed=frozenset()):
    alive = [v for v in range(n) if v not in removed]
    if not alive:
        return True
    seen = {alive[0]}
    q = deque([alive[0]])
    while q:
        v = q.popleft()
        for w in alive:
            if w not in seen and frozenset((v, w)) in es:
                seen.add(w)
                q.append(w)
    return len(seen) == len(alive)


def naive_two_connected(g):
    es = edge_set(g)
    if g.n < 3 or not naive_connected(g.n, es):
        return False
    return all(naive_connected(g.n, es, frozenset({v})) for v in range(g.n))


def brute_min_vertex_cover(vertices, edges):
    vs = list(vertices)
    for k in range(len(vs) + 1):
        for combo in combinations(vs, k):
            c = set(combo)
            if all(a in c or b in c for a, b in edges):
                return k
    raise AssertionError("unreachable")


def brute_max_matching(edges):
    edges = list(edges)
    best = 0
    top = min(len(edges), len({x for e in edges for x in e}) // 2)
    for k in range(top, 0, -1):
        for combo in combinations(edges, k):
            ends = [x for e in combo for x in e]
            if len(ends) == len(set(ends)):
                return k
    return best


def is_simple_woven_path(seq, tau, matching):
    """Check a ("u"/"v", idx) sequence uses only ladder or matching edges
    and repeats no vertex."""
    if len(set(seq)) != len(seq):
        return False
    mset = {(i, j) for i, j in matching}
    for (s, a), (t, b) in zip(seq, seq[1:]):
        if s == t:
            if abs(a - b) != 1 or not (1 <= a <= tau and 1 <= b <= tau):
                return False
        else:
            pair = (a, b) if s == "u" else (b, a)
            if pair not in mset:
                return False
    return True

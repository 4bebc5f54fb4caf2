"""Exact and constructive longest-path/cycle transversals."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import isqrt

from .errors import BudgetExceeded, FalsificationAlarm
from .exact import as_fraction, is_square, le_sqrt, sq_le
from .graph import Graph, bits, components_of_mask, connectivity, induced_subgraph, mask_of
from .longest import (
    DEFAULT_BUDGET,
    PathCollection,
    collection,
    first_spanning_sequence,
    longest_paths,
)

__all__ = [
    "Transversal",
    "FractionalTransversal",
    "min_hitting_set",
    "exact_lpt",
    "exact_lct",
    "exact_transversal",
    "fractional_lpt",
    "greedy_alpha_transversal",
    "verify_transversal",
    "hits_all",
]


@dataclass(frozen=True)
class Transversal:
    vertices: frozenset
    mode: str
    certified_minimum: bool = False
    trace: tuple = field(default=(), compare=False)

    @property
    def size(self) -> int:
        return len(self.vertices)

    def sorted(self) -> list[int]:
        return sorted(self.vertices)


def hits_all(masks, chosen: int) -> bool:
    return all(m & chosen for m in masks)


def _packing_bound(masks: list[int]) -> int:
    """Size of a greedy family of pairwise disjoint members."""
    used = 0
    k = 0
    for m in sorted(masks, key=int.bit_count):
        if not m & used:
            used |= m
            k += 1
    return k


def _greedy_cover(masks: list[int]) -> int:
    chosen = 0
    remaining = list(masks)
    while remaining:
        freq: dict[int, int] = {}
        for m in remaining:
            for v in bits(m):
                freq[v] = freq.get(v, 0) + 1
        v = min(freq, key=lambda u: (-freq[u], u))
        chosen |= 1 << v
        remaining = [m for m in remaining if not (m >> v) & 1]
    return chosen


def min_hitting_set(masks, n: int, budget: int = DEFAULT_BUDGET) -> int:
    """Lexicographically least minimum hitting set of the bitmask family,
    returned as a bitmask.

    Branch and bound finds the optimum size (branching on the uncovered
    member with fewest vertices, greedy incumbent, disjoint-packing lower
    bound); a lexicographic sweep over subsets of that size then picks the
    canonical optimum.
    """
    masks = sorted(set(masks))
    if not masks:
        return 0
    if any(m == 0 for m in masks):
        raise ValueError("empty member cannot be hit")
    best = _greedy_cover(masks)
    best_size = best.bit_count()
    nodes = 0

    def search(chosen: int, size: int, remaining: list[int]) -> None:
        nonlocal best, best_size, nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"hitting-set search exceeded {budget} nodes")
        if not remaining:
            if size < best_size:
                best, best_size = chosen, size
            return
        if size + _packing_bound(remaining) >= best_size:
            return
        pivot = min(remaining, key=lambda m: (m.bit_count(), m))
        for v in bits(pivot):
            search(chosen | (1 << v), size + 1, [m for m in remaining if not (m >> v) & 1])

    search(0, 0, masks)
    support = bits(mask_of(v for m in masks for v in bits(m)))
    for combo in combinations(support, best_size):
        cand = mask_of(combo)
        if hits_all(masks, cand):
            return cand
    raise AssertionError("lexicographic sweep found no optimum")  # pragma: no cover


def exact_transversal(g: Graph, mode: str, budget: int = DEFAULT_BUDGET,
                      coll: PathCollection | None = None) -> Transversal:
    coll = coll if coll is not None else collection(g, mode, budget)
    if coll.is_empty():
        raise ValueError("graph has no cycle" if mode == "cycle" else "graph has no path")
    best = min_hitting_set(coll.masks, g.n, budget)
    return Transversal(frozenset(bits(best)), mode, certified_minimum=True)


def exact_lpt(g: Graph, budget: int = DEFAULT_BUDGET) -> Transversal:
    """Minimum longest-path transversal.  Disconnected graphs are allowed:
    every longest path of ``g`` is hit, whichever component it lies in."""
    return exact_transversal(g, "path", budget)


def exact_lct(g: Graph, budget: int = DEFAULT_BUDGET) -> Transversal:
    if g.n < 3:
        raise ValueError("graph has no cycle")
    return exact_transversal(g, "cycle", budget)


def verify_transversal(g: Graph, candidate, mode: str, budget: int = DEFAULT_BUDGET,
                       coll: PathCollection | None = None):
    """``(True, None)`` if ``candidate`` meets every longest path/cycle,
    else ``(False, uncovered member as a vertex sequence)``."""
    coll = coll if coll is not None else collection(g, mode, budget)
    chosen = mask_of(candidate)
    for m in coll.masks:
        if not m & chosen:
            return False, first_spanning_sequence(g.adj, m, mode == "cycle")
    return True, None


# ---------------------------------------------------------------------------
# fractional construction


@dataclass(frozen=True)
class FractionalTransversal:
    """Vertex weights ``numerators[v] / sqrt(radicand)``.

    Keeping the radical symbolic lets both constraints be checked exactly
    when ``n`` is not a perfect square.
    """

    numerators: tuple[Fraction, ...]
    radicand: int
    n: int

    def weight(self, v: int) -> float:
        return float(self.numerators[v]) / self.radicand**0.5

    @property
    def weights(self) -> dict[int, float]:
        return {v: self.weight(v) for v in range(self.n)}

    @property
    def total_numerator(self) -> Fraction:
        return sum(self.numerators, Fraction(0))

    @property
    def total(self) -> float:
        return float(self.total_numerator) / self.radicand**0.5

    def total_within_sqrt_n(self) -> bool:
        # sum(w)/sqrt(r) <= sqrt(n)  <=>  sum(w) <= sqrt(n r)
        return le_sqrt(self.total_numerator, self.n * self.radicand)

    def in_unit_interval(self) -> bool:
        return all(w >= 0 and w * w <= self.radicand for w in self.numerators)

    def path_weight_numerator(self, mask: int) -> Fraction:
        return sum((self.numerators[v] for v in bits(mask)), Fraction(0))

    def covers(self, mask: int) -> bool:
        # sum_P(w)/sqrt(r) >= 1  <=>  sum_P(w) >= sqrt(r)
        return sq_le(self.path_weight_numerator(mask), self.radicand)

    def check(self, coll: PathCollection) -> bool:
        return (self.in_unit_interval() and self.total_within_sqrt_n()
                and all(self.covers(m) for m in coll.masks))


def fractional_lpt(g: Graph, budget: int = DEFAULT_BUDGET,
                   coll: PathCollection | None = None) -> FractionalTransversal:
    """Characteristic function of one longest path when ``ℓ <= sqrt(n)``,
    otherwise the constant ``1/sqrt(n)``."""
    coll = coll if coll is not None else longest_paths(g, budget)
    n = g.n
    if coll.length * coll.length <= n:
        chosen = coll.masks[0]
        nums = tuple(Fraction(1) if (chosen >> v) & 1 else Fraction(0) for v in range(n))
        ft = FractionalTransversal(nums, 1, n)
    elif is_square(n):
        ft = FractionalTransversal((Fraction(1, isqrt(n)),) * n, 1, n)
    else:
        ft = FractionalTransversal((Fraction(1),) * n, n, n)
    if not ft.check(coll):
        raise FalsificationAlarm(f"fractional construction violates a constraint on {g!r}")
    return ft


# ---------------------------------------------------------------------------
# counting argument


def greedy_alpha_transversal(g: Graph, alpha=2, budget: int = DEFAULT_BUDGET) -> Transversal:
    """Longest-path transversal of size at most ``|P(G)|/alpha + sqrt(alpha n)``.

    Per level: few longest paths -> one vertex per path; a vertex with
    ``p_v >= alpha`` that alone meets every longest path -> that vertex;
    short longest paths -> the vertices of one of them; otherwise delete
    the vertex of largest ``p_v >= alpha`` and continue in the component of
    ``G - v`` that still holds paths of order ``ℓ``.
    """
    alpha = as_fraction(alpha)
    if alpha < 2:
        raise ValueError("alpha must be at least 2")
    if not connectivity(g).is_connected:
        raise ValueError("graph must be connected")
    chosen: list[int] = []
    trace = []
    current = list(range(g.n))
    while True:
        h, old = induced_subgraph(g, current)
        n = h.n
        if n == 1:
            chosen.append(old[0])
            trace.append({"n": 1, "case": "single-vertex"})
            break
        coll = longest_paths(h, budget)
        ell, count = coll.length, coll.count
        level = {"n": n, "length": ell, "count": count}
        if count * count <= alpha * n:
            hit = 0
            for m in coll.masks:
                if not m & hit:
                    hit |= m & -m
            chosen.extend(old[v] for v in bits(hit))
            trace.append({**level, "case": "few-paths", "added": len(bits(hit))})
            break
        pv = coll.per_vertex_counts
        cands = sorted((v for v in range(n) if pv[v] >= alpha), key=lambda v: (-pv[v], v))
        if cands and pv[cands[0]] == count:
            chosen.append(old[cands[0]])
            trace.append({**level, "case": "single-transversal", "vertex": old[cands[0]]})
            break
        if ell * ell <= alpha * n:
            chosen.extend(old[v] for v in bits(coll.masks[0]))
            trace.append({**level, "case": "short-paths", "added": ell})
            break
        if not cands:
            raise FalsificationAlarm(
                f"no vertex lies on {alpha} longest paths although ℓ|P| = {ell * count} > alpha n")
        v = cands[0]
        chosen.append(old[v])
        rest = h.full_mask & ~(1 << v)
        holders = []
        for comp in components_of_mask(h.adj, rest):
            sub, _ = induced_subgraph(h, bits(comp))
            if longest_paths(sub, budget).length == ell:
                holders.append(comp)
        if len(holders) != 1:
            raise FalsificationAlarm(f"paths of order {ell} in {len(holders)} components after deleting a vertex")
        trace.append({**level, "case": "delete-and-recurse", "vertex": old[v], "p_v": pv[v]})
        current = [old[u] for u in bits(holders[0])]
    return Transversal(frozenset(chosen), "path", certified_minimum=False, trace=tuple(trace))

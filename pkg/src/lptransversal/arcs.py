"""Circular-arc models and a longest-path (or longest-cycle) transversal of
at most three arcs.

Arcs are open, run counterclockwise from ``start`` to ``end`` on the unit
circle ``[0, 1)`` and wrap through 0 when ``end < start``.  All endpoints
are exact :class:`~fractions.Fraction` values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import FalsificationAlarm
from .graph import Graph, bits, connectivity, mask_of
from .longest import DEFAULT_BUDGET, PathCollection, collection, first_spanning_sequence
from .transversal import Transversal

__all__ = [
    "Arc",
    "ArcModel",
    "ArcModelError",
    "CoverFamily",
    "ChainProjection",
    "Chain",
    "parse_arc_model",
    "format_arc_model",
    "arc_intersection_graph",
    "covering_family",
    "longest_chains",
    "chain_projection",
    "theorem6_transversal",
    "cyclic_interval",
]


class ArcModelError(ValueError):
    pass


@dataclass(frozen=True)
class Arc:
    start: Fraction | None
    end: Fraction | None

    @property
    def full(self) -> bool:
        return self.start is None

    def unrolled(self) -> tuple[Fraction, Fraction]:
        """The arc as an open interval ``(s, e)`` of the line with ``s`` in
        ``[0, 1)`` and ``s < e < s + 1``."""
        if self.start < self.end:
            return self.start, self.end
        return self.start, self.end + 1

    def contains_point(self, x: Fraction) -> bool:
        if self.full:
            return True
        s, e = self.unrolled()
        return s < x < e or s < x + 1 < e

    def __str__(self):
        return "FULL" if self.full else f"({self.start}, {self.end})"


FULL = Arc(None, None)


@dataclass(frozen=True)
class ArcModel:
    arcs: tuple[Arc, ...]

    def __post_init__(self):
        seen = set()
        for i, a in enumerate(self.arcs):
            if a.full:
                continue
            if a.start == a.end:
                raise ArcModelError(f"arc {i} is degenerate: start equals end {a.start}")
            for x in (a.start, a.end):
                if not 0 <= x < 1:
                    raise ArcModelError(f"arc {i} endpoint {x} outside [0, 1)")
                if x in seen:
                    raise ArcModelError(f"duplicate endpoint {x} (arc {i})")
                seen.add(x)

    @classmethod
    def of(cls, pairs) -> "ArcModel":
        arcs = []
        for p in pairs:
            if p is None or p == "FULL":
                arcs.append(FULL)
            else:
                arcs.append(Arc(Fraction(p[0]), Fraction(p[1])))
        return cls(tuple(arcs))

    def __len__(self):
        return len(self.arcs)

    def intersects(self, i: int, j: int) -> bool:
        a, b = self.arcs[i], self.arcs[j]
        if a.full or b.full:
            return True
        s1, e1 = a.unrolled()
        s2, e2 = b.unrolled()
        return any(max(s1, s2 + k) < min(e1, e2 + k) for k in (-1, 0, 1))

    def properly_contains(self, i: int, j: int) -> bool:
        """Whether arc ``i`` properly contains arc ``j``."""
        if i == j:
            return False
        a, b = self.arcs[i], self.arcs[j]
        if b.full:
            return False
        if a.full:
            return True
        s1, e1 = a.unrolled()
        s2, e2 = b.unrolled()
        return any(s1 <= s2 + k and e2 + k <= e1 for k in (-1, 0, 1))

    def maximal_arcs(self) -> list[int]:
        return [j for j in range(len(self.arcs))
                if not any(self.properly_contains(i, j) for i in range(len(self.arcs)))]

    def covers_circle(self) -> bool:
        if any(a.full for a in self.arcs):
            return True
        pts = sorted({x for a in self.arcs for x in (a.start, a.end)})
        if not pts:
            return False
        probes = list(pts)
        for k, x in enumerate(pts):
            y = pts[k + 1] if k + 1 < len(pts) else pts[0] + 1
            mid = (x + y) / 2
            probes.append(mid - 1 if mid >= 1 else mid)
        return all(any(a.contains_point(x) for a in self.arcs) for x in probes)


# ---------------------------------------------------------------------------
# text format


def parse_arc_model(text: str) -> ArcModel:
    """One arc per line: ``id start end`` with exact rationals (``3/8`` or
    ``0.375``), or ``id FULL``.  Ids must be ``0..m-1``."""
    found: dict[int, Arc] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        try:
            idx = int(tok[0])
            if len(tok) == 2 and tok[1].upper() == "FULL":
                arc = FULL
            elif len(tok) == 3:
                arc = Arc(Fraction(tok[1]), Fraction(tok[2]))
            else:
                raise ArcModelError(f"line {lineno}: expected 'id start end' or 'id FULL'")
        except (ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, ArcModelError):
                raise
            raise ArcModelError(f"line {lineno}: unparseable {line!r}") from None
        if idx in found:
            raise ArcModelError(f"line {lineno}: arc id {idx} repeated")
        found[idx] = arc
    if sorted(found) != list(range(len(found))):
        raise ArcModelError(f"arc ids must be 0..{len(found) - 1}")
    return ArcModel(tuple(found[i] for i in range(len(found))))


def format_arc_model(model: ArcModel) -> str:
    lines = []
    for i, a in enumerate(model.arcs):
        lines.append(f"{i} FULL" if a.full else f"{i} {a.start} {a.end}")
    return "\n".join(lines) + "\n"


def arc_intersection_graph(model: ArcModel) -> Graph:
    m = len(model)
    return Graph.from_edges(m, [(i, j) for i, j in combinations(range(m), 2) if model.intersects(i, j)])


# ---------------------------------------------------------------------------
# covering family


@dataclass(frozen=True)
class CoverFamily:
    """Arc ids ``K_0 .. K_{n-1}`` in counterclockwise order of start point."""

    members: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.members)

    def index(self) -> dict[int, int]:
        return {arc: i for i, arc in enumerate(self.members)}


def _greedy_cover_from(model: ArcModel, first: int, pool: list[int]) -> list[int] | None:
    s0, reach = model.arcs[first].unrolled()
    target = s0 + 1
    chosen = [first]
    while reach <= target:
        best = None
        for j in pool:
            s, e = model.arcs[j].unrolled()
            for k in (0, 1):
                if s + k < reach < e + k and (best is None or e + k > best[0]):
                    best = (e + k, j)
        if best is None or best[0] <= reach or len(chosen) > len(pool):
            return None
        reach = best[0]
        chosen.append(best[1])
    return chosen


def covering_family(model: ArcModel) -> CoverFamily | None:
    """A minimum-cardinality covering family of maximal arcs, or ``None``
    when the arcs do not cover the circle.

    Greedy farthest-reach extension is optimal once the first arc is fixed,
    so trying every maximal arc as the first one gives the global minimum.
    """
    if not model.covers_circle():
        return None
    full = [i for i, a in enumerate(model.arcs) if a.full]
    if full:
        return CoverFamily((full[0],))
    pool = sorted(model.maximal_arcs(), key=lambda j: model.arcs[j].start)
    best = None
    for first in pool:
        cover = _greedy_cover_from(model, first, pool)
        if cover is not None and (best is None or len(cover) < len(best)):
            best = cover
    if best is None:  # pragma: no cover - covers_circle() guarantees a cover
        raise AssertionError("covered circle without a covering family")
    return CoverFamily(tuple(sorted(set(best), key=lambda j: model.arcs[j].start)))


# ---------------------------------------------------------------------------
# chains


@dataclass(frozen=True)
class Chain:
    arcs: tuple[int, ...]
    closed: bool = False


def longest_chains(model: ArcModel, closed: bool = False, budget: int = DEFAULT_BUDGET) -> list[Chain]:
    """Every longest (closed) chain, as canonical arc-id sequences."""
    g = arc_intersection_graph(model)
    if closed and g.n < 3:
        return []
    coll = collection(g, "cycle" if closed else "path", budget)
    return [Chain(seq, closed) for seq in coll.paths]


def cyclic_interval(indices, n: int) -> tuple[int, int] | None:
    """``(first, last)`` if ``indices`` is a non-empty cyclic interval of
    ``Z_n`` read in increasing direction, else ``None``.  The whole of
    ``Z_n`` reads as ``(0, n - 1)``."""
    s = set(indices)
    if not s:
        return None
    if len(s) == n:
        return 0, n - 1
    starts = [i for i in s if (i - 1) % n not in s]
    if len(starts) != 1:
        return None
    first = starts[0]
    last = first
    while (last + 1) % n in s:
        last = (last + 1) % n
    return first, last


@dataclass(frozen=True)
class ChainProjection:
    indices: frozenset
    interval: tuple[int, int] | None  # None: empty or not contiguous

    @property
    def contiguous(self) -> bool:
        return self.interval is not None


def chain_projection(arcs, k: CoverFamily) -> ChainProjection:
    """Indices ``i`` with ``K_i`` among ``arcs`` and whether they form a
    cyclic interval.  ``arcs`` may be a :class:`Chain` or any arc-id
    collection."""
    ids = arcs.arcs if isinstance(arcs, Chain) else arcs
    where = k.index()
    idx = frozenset(where[a] for a in ids if a in where)
    return ChainProjection(idx, cyclic_interval(idx, k.n))


# ---------------------------------------------------------------------------
# cascade


@dataclass
class CascadeTrace:
    mode: str
    step: str = ""
    family: tuple = ()
    orientation: str = "forward"
    chains: dict = field(default_factory=dict)
    intervals: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "mode": self.mode,
            "step": self.step,
            "family": list(self.family),
            "orientation": self.orientation,
            "chains": {k: list(v) for k, v in self.chains.items()},
            "intervals": {k: list(v) for k, v in self.intervals.items()},
            "checks": list(self.checks),
        }


def _pick(coll: PathCollection, candidates: list[int], proj_size, closed: bool):
    """Member minimising the projection size, ties to the lexicographically
    least arc sequence."""
    best = None
    for m in candidates:
        seq = first_spanning_sequence(coll.graph.adj, m, closed)
        key = (proj_size(m), seq)
        if best is None or key < best[0]:
            best = (key, m, seq)
    return best[1], best[2]


def theorem6_transversal(model: ArcModel, mode: str = "path", budget: int = DEFAULT_BUDGET) -> Transversal:
    """At most three arcs meeting every longest chain (``mode="path"``) or
    every longest closed chain (``mode="cycle"``).

    Steps: (i) no covering family, or a single covering arc: a vertex common
    to all longest chains; (ii) the two end arcs of the projection of a
    longest chain ``P`` with the smallest projection; (iii) those plus the
    far end of the smallest projection among chains ``Q`` avoiding both;
    (iv) the first arcs of the projections of ``P``, ``Q`` and of the
    smallest-projection chain ``R`` avoiding the three.  Every candidate is
    checked against the enumerated chains; contradictions with the
    guarantees raise :class:`FalsificationAlarm`.
    """
    if mode not in ("path", "cycle"):
        raise ValueError(f"unknown mode {mode!r}")
    closed = mode == "cycle"
    g = arc_intersection_graph(model)
    rep = connectivity(g)
    if not closed and not rep.is_connected:
        raise ValueError("intersection graph is not connected")
    if closed and not rep.is_two_connected:
        raise ValueError("intersection graph is not 2-connected")
    coll = collection(g, mode, budget)
    masks = coll.masks
    trace = CascadeTrace(mode)

    def done(arcs, step):
        chosen = mask_of(arcs)
        trace.step = step
        if not all(m & chosen for m in masks):
            raise FalsificationAlarm(f"step {step} candidate {sorted(arcs)} misses a longest chain")
        return Transversal(frozenset(arcs), mode, certified_minimum=False, trace=(trace.as_dict(),))

    fam = covering_family(model)
    if fam is None or fam.n == 1:
        common = coll.graph.full_mask
        for m in masks:
            common &= m
        if common:
            return done([bits(common)[0]], "i-interval" if fam is None else "i-universal")
        if fam is not None or not closed:
            raise FalsificationAlarm("no arc lies on every longest chain")
        # closed chains of a non-covering model: fall back to an exact optimum
        from .transversal import min_hitting_set

        best = bits(min_hitting_set(masks, g.n, budget))
        if len(best) > 3:
            raise FalsificationAlarm(f"closed chains of an interval model need {len(best)} arcs")
        return done(best, "i-interval-exact")

    n = fam.n
    K = fam.members
    trace.family = K
    where = fam.index()

    def proj(m: int) -> frozenset:
        return frozenset(where[a] for a in bits(m) if a in where)

    for m in masks:
        if cyclic_interval(proj(m), n) is None:
            raise FalsificationAlarm(
                f"projection {sorted(proj(m))} of a longest chain is not a non-empty cyclic interval")
    trace.checks.append(f"contiguity: {len(masks)} longest chains contiguous")

    def size(m):
        return len(proj(m))

    # (ii)
    p_mask, p_seq = _pick(coll, list(masks), size, closed)
    pf, pl = cyclic_interval(proj(p_mask), n)
    trace.chains["P"] = p_seq
    trace.intervals["P"] = (pf, pl)
    cand = {K[pf], K[pl]}
    if all(m & mask_of(cand) for m in masks):
        return done(sorted(cand), "ii")

    # (iii)
    avoid = mask_of(cand)
    q_mask, q_seq = _pick(coll, [m for m in masks if not m & avoid], size, closed)
    q_idx = proj(q_mask)
    trace.chains["Q"] = q_seq
    if q_idx & proj(p_mask):
        raise FalsificationAlarm("projections of P and Q intersect despite the minimal choice of P")
    qf, ql = cyclic_interval(q_idx, n)
    if qf == (pl + 1) % n:
        orient = 1
    elif ql == (pf - 1) % n:
        orient = -1
        trace.orientation = "reversed"
    else:
        raise FalsificationAlarm(f"P interval {(pf, pl)} and Q interval {(qf, ql)} are not adjacent")

    def o(i: int) -> int:
        return i % n if orient == 1 else (-i) % n

    # indices below live in the oriented copy of Z_n; o() maps both ways
    pf_, pl_ = cyclic_interval({o(i) for i in proj(p_mask)}, n)
    qf_, ql_ = cyclic_interval({o(i) for i in q_idx}, n)
    if len(proj(p_mask)) == n:  # pragma: no cover - Q cannot exist then
        raise FalsificationAlarm("Q exists although P projects onto the whole family")
    trace.intervals["Q"] = (o(qf_), o(ql_))
    trace.checks.append("assertion: P and Q disjoint and adjacent")
    cand = {K[o(pf_)], K[o(pl_)], K[o(ql_)]}
    if all(m & mask_of(cand) for m in masks):
        return done(sorted(cand), "iii")

    # (iv)
    avoid = mask_of(cand)
    r_mask, r_seq = _pick(coll, [m for m in masks if not m & avoid], size, closed)
    trace.chains["R"] = r_seq
    r_idx = {o(i) for i in proj(r_mask)}
    if r_idx & ({o(i) for i in proj(p_mask)} | {o(i) for i in q_idx}):
        raise FalsificationAlarm("projection of R meets those of P or Q")
    rf_, rl_ = cyclic_interval(r_idx, n)
    trace.intervals["R"] = (o(rf_), o(rl_))
    if rf_ != (ql_ + 1) % n or rl_ != (pf_ - 1) % n:
        raise FalsificationAlarm("projections of P, Q, R do not partition the covering family")
    trace.checks.append("assertion: P, Q, R partition the covering family")
    return done(sorted({K[o(pf_)], K[o(qf_)], K[o(rf_)]}), "iv")

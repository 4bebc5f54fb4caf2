"""Separator-driven longest-path transversals.

Remove a balanced separator; if it misses some longest path, all longest
paths that survive lie in one component, so recurse there.  Separators
come from an exhaustive search (smallest set leaving components of at most
``fraction * n`` vertices) or from a bag of a supplied tree decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import BudgetExceeded, FalsificationAlarm
from .graph import Graph, bits, components_of_mask, connectivity, induced_subgraph, mask_of
from .longest import DEFAULT_BUDGET, longest_paths
from .transversal import Transversal, verify_transversal

__all__ = [
    "TreeDecomposition",
    "TreeDecompositionError",
    "SeparatorResult",
    "parse_tree_decomposition",
    "format_tree_decomposition",
    "balanced_separator",
    "separator_transversal",
]


class TreeDecompositionError(ValueError):
    pass


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset, ...]
    tree_edges: tuple[tuple[int, int], ...]  # 0-based bag indices

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def tree_neighbors(self) -> list[list[int]]:
        nb: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.tree_edges:
            nb[a].append(b)
            nb[b].append(a)
        return nb

    def validate_tree(self) -> None:
        k = len(self.bags)
        if k == 0:
            raise TreeDecompositionError("decomposition has no bags")
        if len(self.tree_edges) != k - 1:
            raise TreeDecompositionError(f"{k} bags need {k - 1} tree edges, got {len(self.tree_edges)}")
        for a, b in self.tree_edges:
            if not (0 <= a < k and 0 <= b < k) or a == b:
                raise TreeDecompositionError(f"bad tree edge ({a + 1}, {b + 1})")
        if len(self._reach(0, set(range(k)))) != k:
            raise TreeDecompositionError("tree edges do not connect all bags")

    def _reach(self, start: int, allowed: set) -> set:
        nb = self.tree_neighbors()
        seen = {start}
        stack = [start]
        while stack:
            t = stack.pop()
            for s in nb[t]:
                if s in allowed and s not in seen:
                    seen.add(s)
                    stack.append(s)
        return seen

    def validate(self, g: Graph) -> None:
        """Check the three decomposition axioms against ``g``."""
        self.validate_tree()
        for bag in self.bags:
            for v in bag:
                if not 0 <= v < g.n:
                    raise TreeDecompositionError(f"bag vertex {v} outside 0..{g.n - 1}")
        covered = set().union(*self.bags)
        for v in range(g.n):
            if v not in covered:
                raise TreeDecompositionError(f"vertex {v} is in no bag")
        for a, b in g.sorted_edges():
            if not any(a in bag and b in bag for bag in self.bags):
                raise TreeDecompositionError(f"edge ({a}, {b}) is in no bag")
        for v in range(g.n):
            holding = {t for t, bag in enumerate(self.bags) if v in bag}
            if len(self._reach(min(holding), holding)) != len(holding):
                raise TreeDecompositionError(f"bags containing vertex {v} do not form a subtree")

    def restrict(self, old: list[int]) -> "TreeDecomposition":
        """Decomposition of the subgraph induced by ``old``, relabelled to
        ``0..len(old)-1`` as :func:`induced_subgraph` does."""
        new = {v: i for i, v in enumerate(old)}
        return TreeDecomposition(
            tuple(frozenset(new[v] for v in bag if v in new) for bag in self.bags),
            self.tree_edges,
        )


def parse_tree_decomposition(text: str, g: Graph | None = None) -> TreeDecomposition:
    """Read ``s td <bags> <width+1> <n>`` / ``b <i> <v...>`` / ``<i> <j>``
    lines.  Bag indices are 1-based, vertices 0-based.  Lines starting with
    ``c`` or ``#`` are comments."""
    header = None
    bags: dict[int, frozenset] = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "c#":
            continue
        tok = line.split()
        try:
            if tok[0] == "s":
                if tok[1:2] != ["td"] or len(tok) != 5:
                    raise TreeDecompositionError(f"line {lineno}: malformed header")
                header = tuple(int(t) for t in tok[2:])
            elif tok[0] == "b":
                idx = int(tok[1])
                if idx in bags:
                    raise TreeDecompositionError(f"line {lineno}: bag {idx} defined twice")
                bags[idx] = frozenset(int(t) for t in tok[2:])
            else:
                if len(tok) != 2:
                    raise TreeDecompositionError(f"line {lineno}: expected a tree edge")
                edges.append((int(tok[0]), int(tok[1])))
        except (ValueError, IndexError) as exc:
            if isinstance(exc, TreeDecompositionError):
                raise
            raise TreeDecompositionError(f"line {lineno}: unparseable {line!r}") from None
    if header is None:
        raise TreeDecompositionError("missing 's td' header")
    nbags, max_bag, nverts = header
    if sorted(bags) != list(range(1, nbags + 1)):
        raise TreeDecompositionError(f"expected bags 1..{nbags}, got {sorted(bags)}")
    td = TreeDecomposition(tuple(bags[i] for i in range(1, nbags + 1)),
                           tuple((a - 1, b - 1) for a, b in edges))
    if td.width + 1 != max_bag:
        raise TreeDecompositionError(f"header declares bag size {max_bag}, largest bag has {td.width + 1}")
    if g is not None:
        if g.n != nverts:
            raise TreeDecompositionError(f"header declares {nverts} vertices, graph has {g.n}")
        td.validate(g)
    else:
        td.validate_tree()
    return td


def format_tree_decomposition(td: TreeDecomposition, n: int) -> str:
    lines = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    for i, bag in enumerate(td.bags, start=1):
        lines.append(" ".join(["b", str(i)] + [str(v) for v in sorted(bag)]))
    for a, b in td.tree_edges:
        lines.append(f"{a + 1} {b + 1}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SeparatorResult:
    separator: frozenset
    components: tuple[frozenset, ...]
    balance: Fraction


def _result(g: Graph, sep_mask: int) -> SeparatorResult:
    comps = components_of_mask(g.adj, g.full_mask & ~sep_mask)
    largest = max((c.bit_count() for c in comps), default=0)
    return SeparatorResult(
        frozenset(bits(sep_mask)),
        tuple(frozenset(bits(c)) for c in comps),
        Fraction(largest, g.n) if g.n else Fraction(0),
    )


def _balanced(g: Graph, sep_mask: int, fraction: Fraction) -> bool:
    rest = g.full_mask & ~sep_mask
    return all(c.bit_count() * fraction.denominator <= fraction.numerator * g.n
               for c in components_of_mask(g.adj, rest))


def _brute_separator(g: Graph, fraction: Fraction, budget: int) -> int:
    tried = 0
    for k in range(g.n + 1):
        for combo in combinations(range(g.n), k):
            tried += 1
            if tried > budget:
                raise BudgetExceeded(f"separator search exceeded {budget} subsets")
            m = mask_of(combo)
            if _balanced(g, m, fraction):
                return m
    raise AssertionError("removing every vertex is always balanced")  # pragma: no cover


def _bag_separator(g: Graph, td: TreeDecomposition) -> int:
    """Walk the tree toward the branch holding the unique oversized
    component until a bag leaves only components of at most ``n/2``."""
    half = Fraction(1, 2)
    nb = td.tree_neighbors()
    t = 0
    prev = None
    for _ in range(len(td.bags)):
        bag = mask_of(td.bags[t])
        comps = components_of_mask(g.adj, g.full_mask & ~bag)
        big = [c for c in comps if 2 * c.bit_count() > g.n]
        if not big:
            return bag
        target = big[0]
        step = None
        for s in nb[t]:
            branch = td._reach(s, set(range(len(td.bags))) - {t})
            if mask_of(v for b in branch for v in td.bags[b]) & target:
                step = s
                break
        if step is None or step == prev:
            break
        prev, t = t, step
    for bag in td.bags:  # not reached for a valid decomposition
        if _balanced(g, mask_of(bag), half):
            return mask_of(bag)
    raise TreeDecompositionError("no bag is a balanced separator; decomposition is invalid")


def balanced_separator(g: Graph, strategy: str = "brute", fraction=Fraction(2, 3),
                       td: TreeDecomposition | None = None,
                       budget: int = DEFAULT_BUDGET) -> SeparatorResult:
    """``strategy="brute"``: a minimum vertex set leaving components of at
    most ``fraction * n`` vertices (first in lexicographic order).
    ``strategy="decomposition"``: a bag of ``td`` leaving components of at
    most ``n / 2`` vertices."""
    if strategy == "brute":
        return _result(g, _brute_separator(g, Fraction(fraction), budget))
    if strategy == "decomposition":
        if td is None:
            raise ValueError("decomposition strategy needs a tree decomposition")
        return _result(g, _bag_separator(g, td))
    raise ValueError(f"unknown strategy {strategy!r}")


def separator_transversal(g: Graph, strategy: str = "brute", fraction=Fraction(2, 3),
                          td: TreeDecomposition | None = None,
                          budget: int = DEFAULT_BUDGET) -> Transversal:
    """Union of the separators along the chain of components that still
    hold longest paths.  ``trace`` has one entry per level."""
    if g.n < 2 or not connectivity(g).is_connected:
        raise ValueError("graph must be connected with at least two vertices")
    fraction = Fraction(fraction) if strategy == "brute" else Fraction(1, 2)
    chosen: set[int] = set()
    trace = []
    current = list(range(g.n))
    while True:
        h, old = induced_subgraph(g, current)
        if h.n < 2:
            chosen.add(old[0])
            trace.append({"n": h.n, "separator": [old[0]], "stop": "single-vertex"})
            break
        coll = longest_paths(h, budget)
        sub_td = td.restrict(old) if td is not None else None
        sep = balanced_separator(h, strategy, fraction, sub_td, budget)
        sep_mask = mask_of(sep.separator)
        chosen.update(old[v] for v in sep.separator)
        level = {
            "n": h.n,
            "length": coll.length,
            "separator": sorted(old[v] for v in sep.separator),
            "components": sorted((len(c) for c in sep.components), reverse=True),
        }
        if all(m & sep_mask for m in coll.masks):
            trace.append({**level, "stop": "separator-hits-all"})
            break
        holders = []
        for comp in sep.components:
            sub, _ = induced_subgraph(h, comp)
            if longest_paths(sub, budget).length == coll.length:
                holders.append(comp)
        if len(holders) != 1:
            raise FalsificationAlarm(
                f"paths of order {coll.length} survive in {len(holders)} components of G - X")
        trace.append({**level, "holder": len(holders[0])})
        current = [old[v] for v in sorted(holders[0])]
    result = Transversal(frozenset(chosen), "path", certified_minimum=False, trace=tuple(trace))
    ok, witness = verify_transversal(g, result.vertices, "path", budget)
    if not ok:
        raise FalsificationAlarm(f"separator recursion missed longest path {witness}")
    return result

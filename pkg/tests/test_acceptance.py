"""Acceptance suite: the eleven release criteria, each at its stated scale.

Every criterion records one PASS/FAIL line; the lines are printed in the
pytest terminal summary and by ``python tests/test_acceptance.py``.
"""

import random
import time
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product
from math import isqrt

import pytest

from builders import petersen_pendants
from lptransversal import exact
from lptransversal.arcs import arc_intersection_graph, chain_projection, covering_family, theorem6_transversal
from lptransversal.generators import (
    connected_graphs,
    partial_ktree,
    random_arc_model,
    random_block_matching,
    random_connected,
    random_span_ladder,
    random_two_connected,
    triangle_chain,
)
from lptransversal.graph import Graph, connectivity
from lptransversal.longest import longest_cycles, longest_paths, pairwise_intersection_check
from lptransversal.separator import separator_transversal
from lptransversal.transversal import (
    exact_lct,
    exact_lpt,
    fractional_lpt,
    greedy_alpha_transversal,
    verify_transversal,
)
from lptransversal.weave import reference_blocks, koenig_cover, refine_matching, validate_block_matching, weave
from oracles import (
    brute_max_matching,
    brute_min_vertex_cover,
    is_simple_woven_path,
    naive_hitting_set_size,
    naive_longest_cycles,
    naive_longest_paths,
)

RESULTS: dict[int, str] = {}


def record(number, ok, detail):
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[number] = line
    print(line)
    assert ok, line


def _ceil_sqrt(s):
    r = isqrt(s)
    return r if r * r == s else r + 1


@lru_cache(maxsize=None)
def exhaustive():
    return tuple(g for n in range(1, 8) for g in connected_graphs(n))


@lru_cache(maxsize=None)
def bound_suite():
    """Criterion 5's suite: every connected graph up to 7 vertices, 560
    seeded random graphs on 8..14 vertices, and a graph whose longest
    paths admit no single-vertex transversal."""
    rng = random.Random(20240605)
    rand = []
    for i in range(400):
        rand.append(random_connected(rng.randint(8, 14), rng.uniform(0.12, 0.6), 1000 + i))
    for i in range(160):
        rand.append(random_two_connected(rng.randint(8, 14), rng.uniform(0.25, 0.6), 5000 + i))
    rand.append(petersen_pendants())
    return exhaustive() + tuple(rand), len(rand)


@lru_cache(maxsize=None)
def paths_of(g):
    return longest_paths(g)


@lru_cache(maxsize=None)
def cycles_of(g):
    return longest_cycles(g)


def test_criterion_01_intersection_facts():
    start = time.perf_counter()
    paths_checked = cycles_checked = bad = 0
    for g in exhaustive():
        rep = connectivity(g)
        coll = paths_of(g)
        ok = pairwise_intersection_check(coll)[0]
        ok_raw = all(a & b for a, b in combinations(coll.masks, 2))
        bad += (not ok) + (not ok_raw)
        paths_checked += 1
        if rep.is_two_connected:
            cyc = cycles_of(g)
            ok = pairwise_intersection_check(cyc)[0] and all(a & b for a, b in combinations(cyc.masks, 2))
            bad += not ok
            cycles_checked += 1
    elapsed = time.perf_counter() - start
    record(1, bad == 0 and elapsed <= 300,
           f"{paths_checked} connected / {cycles_checked} 2-connected graphs, {bad} failures, {elapsed:.1f}s")


def test_criterion_02_weave():
    rng = random.Random(2)
    bad = 0
    for _ in range(1000):
        bm = random_block_matching(rng.randint(1, 30), rng)
        if not validate_block_matching(bm)[0]:
            bad += 1
            continue
        res = weave(bm)
        tau, m = bm.tau, bm.size
        for p in (res.p_prime, res.q_prime):
            if not is_simple_woven_path(p.vertices, tau, bm.edges):
                bad += 1
            if p.vertices[0][1] != 1 or p.vertices[-1][1] != tau:
                bad += 1
        starts = {res.p_prime.vertices[0], res.q_prime.vertices[0]}
        if tau > 1 and starts != {("u", 1), ("v", 1)}:
            bad += 1
        if res.p_prime.order + res.q_prime.order != 2 * tau + 2 * m:
            bad += 1
        if max(res.p_prime.order, res.q_prime.order) < tau + m:
            bad += 1
    ref = weave(reference_blocks())
    ref_order = max(ref.p_prime.order, ref.q_prime.order)
    record(2, bad == 0 and ref_order == 18, f"1000 block matchings, {bad} failures, reference instance order {ref_order}")


def test_criterion_03_refinement_pipeline():
    rng = random.Random(3)
    bad = blocks = 0
    for _ in range(1000):
        span = rng.randint(1, 6)
        inst = random_span_ladder(rng.randint(1, 80), span, rng)
        ref = refine_matching(inst, 2 * span)
        bm = ref.result
        total = len(inst.matching)
        if not validate_block_matching(bm)[0]:
            bad += 1
        # |M| >= |N| / (3 sqrt(2 span)), squared to stay in integers
        if 9 * bm.size ** 2 * 2 * span < total ** 2:
            bad += 1
        for block, mono in zip([b for b in ref.kept if b], ref.monotone):
            blocks += 1
            if len(mono) < _ceil_sqrt(len(block)):
                bad += 1
    record(3, bad == 0, f"1000 ladders, {blocks} blocks, {bad} failures")


def test_criterion_04_koenig():
    rng = random.Random(4)
    bad = 0
    for _ in range(1000):
        a = rng.randint(1, 9)
        b = rng.randint(1, 10 - a)
        left, right = list(range(a)), list(range(a, a + b))
        pairs = [(u, w) for u in left for w in right]
        edges = rng.sample(pairs, rng.randint(0, min(20, len(pairs))))
        matching, cover = koenig_cover(left, right, edges)
        used = [x for e in matching for x in e]
        ok = (len(used) == len(set(used)) and set(map(tuple, matching)) <= set(edges)
              and all(u in cover or w in cover for u, w in edges)
              and len(matching) == len(cover)
              == brute_min_vertex_cover(left + right, edges) == brute_max_matching(edges))
        bad += not ok
    record(4, bad == 0, f"1000 bipartite graphs (<=10 vertices, <=20 edges), {bad} failures")


def test_criterion_05_bounds():
    start = time.perf_counter()
    suite, n_random = bound_suite()
    bad = lpt_rows = lct2_rows = cyc_rows = 0
    for g in suite:
        n = g.n
        rep = connectivity(g)
        t = exact_lpt(g)
        lpt_rows += 1
        bad += t.size > exact.lpt_bound(n)
        if n >= 3 and not cycles_of(g).is_empty():
            c = exact_lct(g).size
            cyc_rows += 1
            bad += c > exact.thomassen_bound(n)
            if rep.is_two_connected:
                lct2_rows += 1
                bad += c > exact.lct_two_connected_bound(n)
    elapsed = time.perf_counter() - start
    record(5, bad == 0 and n_random >= 500 and elapsed <= 900,
           f"{lpt_rows} graphs ({n_random} random), {lct2_rows} 2-connected, {cyc_rows} with a cycle, "
           f"{bad} failures, {elapsed:.1f}s")


def test_criterion_06_sharpness():
    got = {t: exact_lct(triangle_chain(t)).size for t in (2, 3, 4)}
    ok = all(v == t == exact.thomassen_bound(3 * t) for t, v in got.items())
    record(6, ok, "lct of triangle chains " + ", ".join(f"t={t}: {v}" for t, v in got.items()))


def test_criterion_07_fractional():
    suite, _ = bound_suite()
    bad = 0
    for g in suite:
        coll = paths_of(g)
        ft = fractional_lpt(g, coll=coll)
        ok = ft.total_within_sqrt_n() and all(ft.covers(m) for m in coll.masks) and ft.in_unit_interval()
        bad += not ok
    record(7, bad == 0, f"{len(suite)} graphs, {bad} failures")


def test_criterion_08_counting_transversal():
    suite, _ = bound_suite()
    bad = runs = 0
    for g in suite:
        coll = paths_of(g)
        for alpha in (2, 3, 5):
            t = greedy_alpha_transversal(g, alpha)
            runs += 1
            ok = (verify_transversal(g, t.vertices, "path", coll=coll)[0]
                  and exact.le_plus_sqrt(t.size, Fraction(coll.count, alpha), alpha * g.n))
            bad += not ok
    record(8, bad == 0, f"{runs} runs over alpha in {{2, 3, 5}}, {bad} failures")


def test_criterion_09_separators():
    suite, _ = bound_suite()
    bad = brute_runs = 0
    for g in suite:
        if g.n < 2:
            continue
        coll = paths_of(g)
        t = separator_transversal(g, "brute", Fraction(2, 3))
        brute_runs += 1
        bad += not verify_transversal(g, t.vertices, "path", coll=coll)[0]
        if all(len(lv["separator"]) ** 2 <= 8 * lv["n"] for lv in t.trace):
            bad += not exact.le_9_sqrt_n_log2_n(t.size, g.n)
    ktrees = 0
    for seed in range(200):
        k = 1 + seed % 3
        n = random.Random(seed).randint(k + 1, 14)
        g, td = partial_ktree(k, max(n, 2), seed)
        td.validate(g)
        t = separator_transversal(g, "decomposition", td=td)
        ktrees += 1
        ok = verify_transversal(g, t.vertices, "path")[0] and exact.le_3k_log2(t.size, k, g.n)
        bad += not ok
    record(9, bad == 0, f"{brute_runs} brute-separator runs, {ktrees} partial k-trees, {bad} failures")


def test_criterion_10_arc_models():
    bad = models = two_conn = chains = 0
    seed = 0
    steps = set()
    while models < 300:
        model = random_arc_model(3 + seed % 8, 70000 + seed)
        seed += 1
        g = arc_intersection_graph(model)
        rep = connectivity(g)
        if not rep.is_connected:
            continue
        models += 1
        fam = covering_family(model)
        coll = paths_of(g)
        t = theorem6_transversal(model, "path")
        steps.add(t.trace[0]["step"])
        bad += t.size > 3 or not verify_transversal(g, t.vertices, "path", coll=coll)[0]
        for arcs in coll.vertex_sets:
            pr = chain_projection(arcs, fam)
            chains += 1
            bad += not (pr.indices and pr.contiguous)
        if rep.is_two_connected:
            two_conn += 1
            cyc = cycles_of(g)
            t = theorem6_transversal(model, "cycle")
            bad += t.size > 3 or not verify_transversal(g, t.vertices, "cycle", coll=cyc)[0]
            for arcs in cyc.vertex_sets:
                pr = chain_projection(arcs, fam)
                chains += 1
                bad += not (pr.indices and pr.contiguous)
    record(10, bad == 0, f"{models} connected models ({two_conn} 2-connected), {chains} chain arc-sets, "
           f"steps {sorted(steps)}, {bad} failures")


def _all_graphs(n):
    """Every graph on n vertices up to isomorphism, as disjoint unions of
    connected classes taken as multisets."""
    def parts(total, smallest):
        if total == 0:
            yield []
            return
        for size in range(smallest, total + 1):
            for rest in parts(total - size, size):
                yield [size] + rest

    out = []
    for sizes in parts(n, 1):
        pools = []
        for s in sorted(set(sizes)):
            pools.append(list(combinations_with_replacement(connected_graphs(s), sizes.count(s))))
        for choice in product(*pools):
            comps = [g for group in choice for g in group]
            edges, off = [], 0
            for c in comps:
                edges += [(a + off, b + off) for a, b in c.edges]
                off += c.n
            out.append(Graph.from_edges(n, edges))
    return out


def test_criterion_11_oracle_agreement():
    counts = {n: len(_all_graphs(n)) for n in range(1, 7)}
    bad = checked = 0
    for n in range(1, 7):
        for g in _all_graphs(n):
            _, paths = naive_longest_paths(g)
            checked += 1
            bad += exact_lpt(g).size != naive_hitting_set_size(paths, n)[0]
            clen, cycles = naive_longest_cycles(g)
            if clen:
                bad += exact_lct(g).size != naive_hitting_set_size(cycles, n)[0]
    expected = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156}
    record(11, bad == 0 and counts == expected, f"{checked} graphs on <= 6 vertices, {bad} discrepancies")


if __name__ == "__main__":  # pragma: no cover
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)

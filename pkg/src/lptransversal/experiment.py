"""Experiment runner: sweep an instance family, run bound checks, write
TSV and JSON reports.

Config files are ``key = value`` lines (``#`` comments)::

    name = thm1-exhaustive
    family = exhaustive-connected
    n = 3..7
    checks = thm1, thm2, frac, intersect
    alpha = 2, 3, 5

Families: ``exhaustive-connected`` (n), ``random-connected`` /
``random-2connected`` (n, p, seed, count), ``triangle-chain`` (t),
``random-arc-model`` (m, seed, count), ``partial-ktree`` (k, n, seed,
count).  ``n``, ``t``, ``m`` and ``k`` accept ``a..b`` ranges.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterator

from . import exact
from .arcs import ArcModel, arc_intersection_graph, theorem6_transversal
from .errors import BudgetExceeded, FalsificationAlarm
from .graph import Graph, connectivity
from .longest import DEFAULT_BUDGET, longest_cycles, longest_paths, pairwise_intersection_check
from .separator import TreeDecomposition, separator_transversal
from .transversal import (
    exact_transversal,
    fractional_lpt,
    greedy_alpha_transversal,
    verify_transversal,
)
from . import generators

__all__ = ["ExperimentConfig", "ConfigError", "Instance", "Report", "parse_config", "instances",
           "run_experiment", "write_report", "FAMILIES", "CHECKS"]

FAMILIES = (
    "exhaustive-connected",
    "random-connected",
    "random-2connected",
    "triangle-chain",
    "random-arc-model",
    "partial-ktree",
)
CHECKS = ("thm1", "thm2", "thomassen", "prop3", "prop4", "prop5", "thm6", "frac", "intersect")
COLUMNS = ("instance", "n", "check", "length", "count", "bound", "measured", "status", "detail")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    family: str
    checks: tuple[str, ...]
    sizes: tuple[int, ...] = ()
    p: float = 0.5
    seed: int = 0
    count: int = 1
    k: tuple[int, ...] = (1,)
    alphas: tuple[Fraction, ...] = (Fraction(2), Fraction(3), Fraction(5))
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigError(f"unknown family {self.family!r}")
        for c in self.checks:
            if c not in CHECKS:
                raise ConfigError(f"unknown check {c!r}")
        if not self.sizes:
            raise ConfigError("family size parameter missing")
        limit = generators.MAX_EXHAUSTIVE_N if self.family == "exhaustive-connected" else 20
        if self.family in ("exhaustive-connected", "random-connected", "random-2connected", "partial-ktree"):
            if min(self.sizes) < 1 or max(self.sizes) > limit:
                raise ConfigError(f"n must lie in 1..{limit} for {self.family}")
        if self.count < 1:
            raise ConfigError("count must be positive")
        if any(a < 2 for a in self.alphas):
            raise ConfigError("alpha must be at least 2")


def _int_range(text: str) -> tuple[int, ...]:
    text = text.strip()
    if ".." in text:
        lo, hi = (int(x) for x in text.split(".."))
        if lo > hi:
            raise ConfigError(f"empty range {text!r}")
        return tuple(range(lo, hi + 1))
    return tuple(int(x) for x in text.replace(",", " ").split())


def parse_config(text: str) -> ExperimentConfig:
    kv: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        kv[key.lower()] = value
    try:
        family = kv.pop("family")
        checks = tuple(c.strip() for c in kv.pop("checks").split(",") if c.strip())
    except KeyError as exc:
        raise ConfigError(f"missing key {exc.args[0]!r}") from None
    size_key = {"triangle-chain": "t", "random-arc-model": "m"}.get(family, "n")
    try:
        cfg = ExperimentConfig(
            name=kv.pop("name", "experiment"),
            family=family,
            checks=checks,
            sizes=_int_range(kv.pop(size_key, "")) if size_key in kv else (),
            p=float(kv.pop("p", "0.5")),
            seed=int(kv.pop("seed", "0")),
            count=int(kv.pop("count", "1")),
            k=_int_range(kv.pop("k", "1")),
            alphas=tuple(Fraction(a.strip()) for a in kv.pop("alpha", "2, 3, 5").split(",")),
            budget=int(kv.pop("budget", str(DEFAULT_BUDGET))),
        )
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from None
    if kv:
        raise ConfigError(f"unknown keys: {', '.join(sorted(kv))}")
    return cfg


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Instance:
    ident: str
    graph: Graph
    model: ArcModel | None = None
    td: TreeDecomposition | None = None
    width: int | None = None


def instances(cfg: ExperimentConfig) -> Iterator[Instance]:
    fam = cfg.family
    if fam == "exhaustive-connected":
        for n in cfg.sizes:
            for i, g in enumerate(generators.connected_graphs(n)):
                yield Instance(f"exh{n}-{i:04d}", g)
    elif fam == "triangle-chain":
        for t in cfg.sizes:
            yield Instance(f"tri{t}", generators.triangle_chain(t))
    elif fam in ("random-connected", "random-2connected"):
        make = generators.random_connected if fam == "random-connected" else generators.random_two_connected
        for i in range(cfg.count):
            n = cfg.sizes[i % len(cfg.sizes)]
            seed = cfg.seed + i
            yield Instance(f"{fam}-n{n}-s{seed}", make(n, cfg.p, seed))
    elif fam == "random-arc-model":
        for i in range(cfg.count):
            m = cfg.sizes[i % len(cfg.sizes)]
            seed = cfg.seed + i
            model = generators.random_arc_model(m, seed)
            yield Instance(f"arcs-m{m}-s{seed}", arc_intersection_graph(model), model=model)
    elif fam == "partial-ktree":
        combos = [(k, n) for k in cfg.k for n in cfg.sizes if n >= k + 1]
        if not combos:
            raise ConfigError("no (k, n) pair with n >= k + 1")
        for i in range(cfg.count):
            k, n = combos[i % len(combos)]
            seed = cfg.seed + i
            g, td = generators.partial_ktree(k, n, seed)
            yield Instance(f"ktree-k{k}-n{n}-s{seed}", g, td=td, width=k)


# ---------------------------------------------------------------------------


@dataclass
class Report:
    config: ExperimentConfig
    rows: list[dict] = field(default_factory=list)

    @property
    def failures(self) -> list[dict]:
        return [r for r in self.rows if r["status"] == "fail"]

    @property
    def skipped(self) -> list[dict]:
        return [r for r in self.rows if r["status"] == "skip"]

    def summary(self) -> dict:
        ratios = [Fraction(r["measured"]) / Fraction(r["bound"]) for r in self.rows
                  if r["status"] != "skip" and _is_number(r["measured"]) and _is_number(r["bound"])
                  and Fraction(r["bound"]) > 0]
        return {
            "instances": len({r["instance"] for r in self.rows}),
            "rows": len(self.rows),
            "failures": len(self.failures),
            "skipped": len(self.skipped),
            "max_ratio": f"{float(max(ratios)):.6f}" if ratios else None,
        }


def _is_number(x) -> bool:
    try:
        Fraction(x)
    except (TypeError, ValueError):
        return False
    return True


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return f"{x:.6f}"
    return str(x)


def _row(inst: Instance, check: str, length, count, bound, measured, ok: bool, detail: str = "") -> dict:
    return {
        "instance": inst.ident,
        "n": inst.graph.n,
        "check": check,
        "length": length,
        "count": count,
        "bound": _fmt(bound),
        "measured": _fmt(measured),
        "status": "pass" if ok else "fail",
        "detail": detail,
    }


def _check_instance(inst: Instance, cfg: ExperimentConfig) -> list[dict]:
    g = inst.graph
    n = g.n
    budget = cfg.budget
    rows: list[dict] = []
    rep = connectivity(g)
    paths = longest_paths(g, budget)
    cycles = longest_cycles(g, budget) if n >= 3 else None
    has_cycle = cycles is not None and not cycles.is_empty()

    for check in cfg.checks:
        try:
            if check == "thm1" and rep.is_connected:
                t = exact_transversal(g, "path", budget, coll=paths)
                b = exact.lpt_bound(n)
                rows.append(_row(inst, check, paths.length, paths.count, b, t.size, t.size <= b,
                                 " ".join(map(str, t.sorted()))))
            elif check == "thm2" and rep.is_two_connected:
                t = exact_transversal(g, "cycle", budget, coll=cycles)
                b = exact.lct_two_connected_bound(n)
                rows.append(_row(inst, check, cycles.length, cycles.count, b, t.size, t.size <= b,
                                 " ".join(map(str, t.sorted()))))
            elif check == "thomassen" and has_cycle:
                t = exact_transversal(g, "cycle", budget, coll=cycles)
                b = exact.thomassen_bound(n)
                rows.append(_row(inst, check, cycles.length, cycles.count, b, t.size, t.size <= b,
                                 " ".join(map(str, t.sorted()))))
            elif check == "frac" and rep.is_connected:
                ft = fractional_lpt(g, budget, coll=paths)
                ok = ft.check(paths)
                rows.append(_row(inst, check, paths.length, paths.count, f"sqrt({n})", ft.total, ok,
                                 "characteristic" if ft.radicand == 1 and paths.length ** 2 <= n else "constant"))
            elif check == "prop3" and rep.is_connected:
                for a in cfg.alphas:
                    t = greedy_alpha_transversal(g, a, budget)
                    verified, _ = verify_transversal(g, t.vertices, "path", budget, coll=paths)
                    ok = verified and exact.le_plus_sqrt(t.size, Fraction(paths.count) / a, a * n)
                    bound = float(Fraction(paths.count) / a) + float(a * n) ** 0.5
                    rows.append(_row(inst, f"prop3(alpha={_fmt(a)})", paths.length, paths.count, bound,
                                     t.size, ok, "verified" if verified else "not a transversal"))
            elif check == "prop4" and rep.is_connected and n >= 2:
                t = separator_transversal(g, "brute", Fraction(2, 3), budget=budget)
                applicable = all(len(lv["separator"]) ** 2 <= 8 * lv["n"] for lv in t.trace)
                ok = not applicable or exact.le_9_sqrt_n_log2_n(t.size, n)
                bound = 9 * n ** 0.5 * _log2(n)
                rows.append(_row(inst, check, paths.length, paths.count, bound, t.size, ok,
                                 f"levels={len(t.trace)}" + ("" if applicable else " bound-not-applicable")))
            elif check == "prop5" and inst.td is not None and rep.is_connected and n >= 2:
                k = inst.width
                t = separator_transversal(g, "decomposition", td=inst.td, budget=budget)
                ok = exact.le_3k_log2(t.size, k, n)
                rows.append(_row(inst, check, paths.length, paths.count, 3 * k * _log2(n), t.size, ok,
                                 f"k={k} levels={len(t.trace)}"))
            elif check == "thm6" and inst.model is not None and rep.is_connected:
                t = theorem6_transversal(inst.model, "path", budget)
                ex = exact_transversal(g, "path", budget, coll=paths)
                ok = t.size <= 3 and ex.size <= t.size
                rows.append(_row(inst, "thm6(path)", paths.length, paths.count, 3, t.size, ok,
                                 f"step={t.trace[0]['step']} exact={ex.size}"))
                if rep.is_two_connected:
                    t = theorem6_transversal(inst.model, "cycle", budget)
                    ex = exact_transversal(g, "cycle", budget, coll=cycles)
                    ok = t.size <= 3 and ex.size <= t.size
                    rows.append(_row(inst, "thm6(cycle)", cycles.length, cycles.count, 3, t.size, ok,
                                     f"step={t.trace[0]['step']} exact={ex.size}"))
            elif check == "intersect":
                if rep.is_connected:
                    ok, wit = pairwise_intersection_check(paths)
                    rows.append(_row(inst, "intersect(path)", paths.length, paths.count, "-", "ok" if ok else "disjoint",
                                     ok, "" if ok else f"{wit}"))
                if rep.is_two_connected:
                    ok, wit = pairwise_intersection_check(cycles)
                    rows.append(_row(inst, "intersect(cycle)", cycles.length, cycles.count, "-",
                                     "ok" if ok else "disjoint", ok, "" if ok else f"{wit}"))
        except BudgetExceeded as exc:
            rows.append({**_row(inst, check, "", "", "", "", True, str(exc)), "status": "skip"})
        except FalsificationAlarm as exc:
            rows.append(_row(inst, check, "", "", "", "", False, f"ALARM: {exc}"))
    return rows


def _log2(n: int) -> float:
    import math

    return math.log2(n)


def run_experiment(cfg: ExperimentConfig) -> Report:
    report = Report(cfg)
    for inst in instances(cfg):
        try:
            report.rows.extend(_check_instance(inst, cfg))
        except BudgetExceeded as exc:
            report.rows.append({**_row(inst, "enumeration", "", "", "", "", True, str(exc)), "status": "skip"})
    return report


def write_report(report: Report, out_dir=".") -> tuple[Path, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    tsv = out / f"{report.config.name}.tsv"
    js = out / f"{report.config.name}.json"
    lines = ["\t".join(COLUMNS)]
    for r in report.rows:
        lines.append("\t".join(str(r[c]) for c in COLUMNS))
    tsv.write_text("\n".join(lines) + "\n")
    cfg = report.config
    payload = {
        "config": {
            "name": cfg.name,
            "family": cfg.family,
            "checks": list(cfg.checks),
            "sizes": list(cfg.sizes),
            "p": cfg.p,
            "seed": cfg.seed,
            "count": cfg.count,
            "k": list(cfg.k),
            "alpha": [_fmt(a) for a in cfg.alphas],
            "budget": cfg.budget,
        },
        "summary": report.summary(),
        "rows": report.rows,
    }
    js.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return tsv, js

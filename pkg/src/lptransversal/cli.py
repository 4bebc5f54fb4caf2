"""Command-line entry point (``lptrans``).

Exit codes: 0 success, 1 a guaranteed property failed (falsification),
2 usage error (bad arguments, malformed input, budget exhausted).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import exact
from .arcs import ArcModelError, arc_intersection_graph, chain_projection, covering_family, parse_arc_model, theorem6_transversal
from .errors import BudgetExceeded, FalsificationAlarm
from .experiment import ConfigError, parse_config, run_experiment, write_report
from .graph import GraphFormatError, read_graph
from .longest import DEFAULT_BUDGET, collection, first_spanning_sequence, longest_paths
from .separator import TreeDecompositionError, parse_tree_decomposition, separator_transversal
from .transversal import exact_lct, exact_lpt, fractional_lpt, greedy_alpha_transversal, verify_transversal
from .weave import parse_ladder, validate_block_matching, weave

EXIT_OK, EXIT_FALSIFIED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _emit(payload: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return
    for key, value in payload.items():
        if isinstance(value, (list, tuple)) and any(isinstance(x, dict) for x in value):
            value = "; ".join(json.dumps(x, sort_keys=True) for x in value)
        elif isinstance(value, (list, tuple)):
            value = " ".join(str(x) for x in value)
        elif isinstance(value, dict):
            value = json.dumps(value, sort_keys=True)
        out.write(f"{key}\t{value}\n")


def _graph(path):
    try:
        return read_graph(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


# ---------------------------------------------------------------------------
# subcommands


def cmd_enum(args, out):
    g = _graph(args.graph)
    mode = "cycle" if args.cycles else "path"
    coll = collection(g, mode, args.budget)
    out.write(f"mode\t{mode}\n")
    out.write(f"length\t{coll.length}\n")
    out.write(f"count\t{coll.count}\n")
    out.write("vertex\tcount\n")
    for v, c in enumerate(coll.per_vertex_counts):
        out.write(f"{v}\t{c}\n")
    return EXIT_OK


def cmd_weave(args, out):
    try:
        bm = parse_ladder(_read(args.ladder))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ok, why = validate_block_matching(bm)
    if not ok:
        raise UsageError(f"invalid block matching: {why}")
    res = weave(bm)
    tau, size = bm.tau, bm.size
    out.write(f"tau\t{tau}\n")
    out.write(f"matching\t{size}\n")
    out.write(f"P'\t{res.p_prime.order}\t{res.p_prime.label()}\n")
    out.write(f"Q'\t{res.q_prime.order}\t{res.q_prime.label()}\n")
    total = res.p_prime.order + res.q_prime.order
    sum_ok = total == 2 * tau + 2 * size
    max_ok = res.longer.order >= tau + size
    out.write(f"certificate\torder(P')+order(Q')={total} 2tau+2|M|={2 * tau + 2 * size} "
              f"{'ok' if sum_ok else 'FAIL'}\n")
    out.write(f"certificate\tmax order={res.longer.order} tau+|M|={tau + size} {'ok' if max_ok else 'FAIL'}\n")
    if not (sum_ok and max_ok):
        raise FalsificationAlarm("woven orders violate the certificate")
    return EXIT_OK


def _transversal_payload(g, t, mode, budget, bound=None):
    ok, witness = verify_transversal(g, t.vertices, mode, budget)
    payload = {
        "mode": mode,
        "size": t.size,
        "vertices": t.sorted(),
        "verified": ok,
        "minimum": t.certified_minimum,
    }
    if bound is not None:
        payload["bound"] = bound
    if not ok:
        payload["missed"] = list(witness)
    return payload, ok


def cmd_lpt(args, out):
    g = _graph(args.graph)
    t = exact_lpt(g, args.budget)
    payload, ok = _transversal_payload(g, t, "path", args.budget, exact.lpt_bound(g.n))
    _emit(payload, args.format, out)
    return EXIT_OK if ok else EXIT_FALSIFIED


def cmd_lct(args, out):
    g = _graph(args.graph)
    try:
        t = exact_lct(g, args.budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    payload, ok = _transversal_payload(g, t, "cycle", args.budget, exact.thomassen_bound(g.n))
    _emit(payload, args.format, out)
    return EXIT_OK if ok else EXIT_FALSIFIED


def cmd_frac(args, out):
    g = _graph(args.graph)
    coll = longest_paths(g, args.budget)
    ft = fractional_lpt(g, args.budget, coll=coll)
    scale = "" if ft.radicand == 1 else f"/sqrt({ft.radicand})"
    payload = {
        "length": coll.length,
        "weights": [f"{w}{scale}" if w else "0" for w in ft.numerators],
        "total": f"{ft.total:.6f}",
        "total_le_sqrt_n": ft.total_within_sqrt_n(),
        "every_path_weight_ge_1": all(ft.covers(m) for m in coll.masks),
    }
    _emit(payload, args.format, out)
    return EXIT_OK


def cmd_alpha(args, out):
    g = _graph(args.graph)
    try:
        alpha = Fraction(args.alpha)
        t = greedy_alpha_transversal(g, alpha, args.budget)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None
    coll = longest_paths(g, args.budget)
    payload, ok = _transversal_payload(g, t, "path", args.budget)
    within = exact.le_plus_sqrt(t.size, Fraction(coll.count) / alpha, alpha * g.n)
    payload.update(alpha=str(alpha), paths=coll.count, within_bound=within, trace=list(t.trace))
    _emit(payload, args.format, out)
    return EXIT_OK if ok and within else EXIT_FALSIFIED


def cmd_septrans(args, out):
    g = _graph(args.graph)
    td = None
    if args.td:
        try:
            td = parse_tree_decomposition(_read(args.td), g)
        except TreeDecompositionError as exc:
            raise UsageError(str(exc)) from None
    strategy = "decomposition" if td is not None else "brute"
    try:
        t = separator_transversal(g, strategy, Fraction(args.fraction), td, args.budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    payload, ok = _transversal_payload(g, t, "path", args.budget)
    payload["strategy"] = strategy
    if td is not None:
        payload["width"] = td.width
        payload["within_3k_log2_n"] = exact.le_3k_log2(t.size, max(td.width, 1), g.n)
    payload["levels"] = list(t.trace)
    _emit(payload, args.format, out)
    return EXIT_OK if ok else EXIT_FALSIFIED


def cmd_circ(args, out):
    try:
        model = parse_arc_model(_read(args.model))
    except ArcModelError as exc:
        raise UsageError(str(exc)) from None
    try:
        t = theorem6_transversal(model, args.mode, args.budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    g = arc_intersection_graph(model)
    coll = collection(g, args.mode, args.budget)
    ok, _ = verify_transversal(g, t.vertices, args.mode, args.budget, coll=coll)
    trace = t.trace[0]
    fam = covering_family(model)
    log = []
    if fam is not None:
        # the projection depends only on the arc set: one line per set
        for m, count in zip(coll.masks, coll.mask_counts):
            seq = first_spanning_sequence(g.adj, m, args.mode == "cycle")
            pr = chain_projection(seq, fam)
            log.append(f"{' '.join(map(str, seq))} (+{count - 1} on the same arcs) -> {sorted(pr.indices)} "
                       f"{'contiguous' if pr.contiguous else 'NOT CONTIGUOUS'}")
    payload = {
        "mode": args.mode,
        "transversal": t.sorted(),
        "size": t.size,
        "verified": ok,
        "step": trace["step"],
        "trace": trace,
        "contiguity": log,
    }
    if args.format == "json":
        _emit(payload, "json", out)
    else:
        contiguity = payload.pop("contiguity")
        _emit(payload, "tsv", out)
        for line in contiguity:
            out.write(f"contiguity\t{line}\n")
    return EXIT_OK if ok and t.size <= 3 else EXIT_FALSIFIED


def cmd_experiment(args, out):
    try:
        cfg = parse_config(_read(args.config))
    except ConfigError as exc:
        raise UsageError(f"config: {exc}") from None
    report = run_experiment(cfg)
    tsv, js = write_report(report, args.out_dir)
    s = report.summary()
    out.write(f"wrote\t{tsv}\t{js}\n")
    out.write(f"rows\t{s['rows']}\nfailures\t{s['failures']}\nskipped\t{s['skipped']}\nmax_ratio\t{s['max_ratio']}\n")
    return EXIT_FALSIFIED if report.failures else EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lptrans", description="Longest path and cycle transversals at desk scale.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, fmt=True):
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        if fmt:
            sp.add_argument("--format", choices=("tsv", "json"), default="tsv")

    sp = sub.add_parser("enum", help="count longest paths or cycles")
    which = sp.add_mutually_exclusive_group(required=True)
    which.add_argument("--paths", action="store_true")
    which.add_argument("--cycles", action="store_true")
    sp.add_argument("graph")
    common(sp, fmt=False)
    sp.set_defaults(func=cmd_enum)

    sp = sub.add_parser("weave", help="weave two paths along a block matching")
    sp.add_argument("ladder")
    sp.set_defaults(func=cmd_weave)

    for name, func, text in (("lpt", cmd_lpt, "minimum longest-path transversal"),
                             ("lct", cmd_lct, "minimum longest-cycle transversal"),
                             ("frac", cmd_frac, "fractional longest-path transversal")):
        sp = sub.add_parser(name, help=text)
        sp.add_argument("graph")
        common(sp)
        sp.set_defaults(func=func)

    sp = sub.add_parser("alpha", help="counting-based transversal")
    sp.add_argument("graph")
    sp.add_argument("--alpha", required=True)
    common(sp)
    sp.set_defaults(func=cmd_alpha)

    sp = sub.add_parser("septrans", help="separator-based transversal")
    sp.add_argument("graph")
    sp.add_argument("--td")
    sp.add_argument("--fraction", choices=("1/2", "2/3"), default="2/3")
    common(sp)
    sp.set_defaults(func=cmd_septrans)

    sp = sub.add_parser("circ", help="transversal of a circular-arc model")
    sp.add_argument("model")
    sp.add_argument("--mode", choices=("path", "cycle"), default="path")
    common(sp)
    sp.set_defaults(func=cmd_circ)

    sp = sub.add_parser("experiment", help="run a configured sweep")
    sp.add_argument("--config", required=True)
    sp.add_argument("--out-dir", default=".")
    sp.set_defaults(func=cmd_experiment)
    return p


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        print(f"lptrans: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GraphFormatError as exc:
        print(f"lptrans: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"lptrans: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FalsificationAlarm as exc:
        print(f"lptrans: FALSIFICATION: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

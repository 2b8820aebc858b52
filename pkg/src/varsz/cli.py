"""Command-line interface.

Exit codes: 0 success, 1 degenerate analysis (complete graph), 2 input error,
3 random-generation retry cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field, fields
from typing import Sequence

from .critical import (
    DEFAULT_HI,
    DEFAULT_LO,
    DEFAULT_STEP,
    find_roots,
    make_grid,
    strong_conjecture_verdict,
    weak_conjecture_check,
)
from .gkl import GklParams, build_gkl, closed_form_gap, search_multiroot
from .graph import Graph, GraphError, is_connected, parse_edge_list
from .invariants import build_profile
from .randgen import (
    InfeasibleParametersError,
    RetryCapExceeded,
    random_gnm_connected,
    random_gnp_connected,
    random_tree_plus_edges,
)

EXIT_OK, EXIT_DEGENERATE, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


@dataclass
class AnalysisRecord:
    input: str
    n: int
    m: int
    N: int
    diameter: int | None = None
    W: int | None = None
    Sz: int | None = None
    evaluations: list[list[float]] = field(default_factory=list)  # [alpha, W^a, Sz^a, h]
    roots: list[float] = field(default_factory=list)
    tangencies: list[list[float]] = field(default_factory=list)
    verdict: str | None = None
    alpha_g: float | None = None
    certificate: str | None = None
    checks: dict[str, bool] = field(default_factory=dict)
    weak_check: bool | None = None
    seed: int | None = None
    timing: float = 0.0

    def to_json(self) -> str:
        return json.dumps(asdict(self), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "AnalysisRecord":
        return cls(**json.loads(text))

    def to_kv(self) -> str:
        """One ``key=value`` line per field; non-string values are JSON."""
        lines = []
        for f in fields(self):
            v = getattr(self, f.name)
            if f.name == "evaluations":
                continue
            lines.append(f"{f.name}={v}" if f.name == "input" else f"{f.name}={json.dumps(v)}")
        for a, w, s, h in self.evaluations:
            lines.append(f"alpha={fmt(a)} W_alpha={fmt(w)} Sz_alpha={fmt(s)} h={fmt(h)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_kv(cls, text: str) -> "AnalysisRecord":
        kw: dict = {"evaluations": []}
        for line in text.splitlines():
            if line.startswith("alpha="):
                parts = dict(tok.split("=", 1) for tok in line.split())
                kw["evaluations"].append(
                    [float(parts[k]) for k in ("alpha", "W_alpha", "Sz_alpha", "h")]
                )
                continue
            key, _, value = line.partition("=")
            kw[key] = value if key == "input" else json.loads(value)
        return cls(**kw)


def _parse_scan(text: str) -> tuple[float, float, float]:
    try:
        lo, hi, step = (float(t) for t in text.split(":"))
    except ValueError:
        raise UsageError(f"--scan expects lo:hi:step, got {text!r}") from None
    if step <= 0:
        raise UsageError(f"scan step must be positive, got {step}")
    if not lo < hi:
        raise UsageError(f"scan interval needs lo < hi, got {lo}:{hi}")
    return lo, hi, step


def _parse_range(text: str) -> range:
    try:
        if ":" in text:
            a, b = (int(t) for t in text.split(":"))
        else:
            a = b = int(text)
    except ValueError:
        raise UsageError(f"range expects a:b, got {text!r}") from None
    return range(a, b + 1)


def _load_graph(args) -> tuple[Graph, str]:
    if args.gkl is not None:
        k, ell = args.gkl
        try:
            return build_gkl(GklParams(k, ell)), f"gkl({k},{ell})"
        except ValueError as e:
            raise UsageError(str(e)) from None
    if args.path is None:
        raise UsageError("give an edge-list path or --gkl K L")
    try:
        with open(args.path, "rb") as fh:
            data = fh.read()
    except OSError as e:
        raise GraphError(f"cannot read {args.path}: {e.strerror}") from None
    return parse_edge_list(data), args.path


def _base_record(g: Graph, descriptor: str, alphas: Sequence[float] = ()) -> AnalysisRecord:
    if not is_connected(g):
        raise GraphError("graph not connected")
    p = build_profile(g)
    h = p.gap_function
    rec = AnalysisRecord(input=descriptor, n=p.n, m=p.m, N=p.N, diameter=p.diam,
                         W=p.wiener, Sz=p.szeged)
    for a in alphas:
        rec.evaluations.append([float(a), h.wiener_alpha(a), h.szeged_alpha(a), h(a)])
    return rec, p


def _analyze(g: Graph, descriptor: str, scan=(DEFAULT_LO, DEFAULT_HI, DEFAULT_STEP)) -> AnalysisRecord:
    t0 = time.perf_counter()
    rec, p = _base_record(g, descriptor)
    lo, hi, step = scan
    report = find_roots(p.gap_function, lo, hi, step)
    if report.degenerate:
        rec.verdict = "degenerate"
        rec.timing = time.perf_counter() - t0
        return rec
    rec.roots = report.alphas
    rec.tangencies = [list(t) for t in report.suspected_tangencies]
    verdict = strong_conjecture_verdict(p, report)
    rec.verdict = verdict.kind.value
    rec.alpha_g = verdict.alpha_g
    if verdict.certificate is not None:
        rec.certificate = verdict.certificate.name
        rec.checks = verdict.certificate.detail.get("checks", {})
    rec.weak_check = weak_conjecture_check(p.gap_function)
    rec.timing = time.perf_counter() - t0
    return rec


def _emit(rec: AnalysisRecord, as_json: bool, out) -> None:
    out.write(rec.to_json() + "\n" if as_json else rec.to_kv())


def cmd_index(args, out) -> int:
    g, desc = _load_graph(args)
    t0 = time.perf_counter()
    rec, _ = _base_record(g, desc, args.alpha or [1.0])
    rec.timing = time.perf_counter() - t0
    _emit(rec, args.json, out)
    return EXIT_OK


def cmd_analyze(args, out) -> int:
    g, desc = _load_graph(args)
    scan = _parse_scan(args.scan) if args.scan else (DEFAULT_LO, DEFAULT_HI, DEFAULT_STEP)
    if scan[0] <= 0:
        raise UsageError("analysis scan must start above 0")
    rec = _analyze(g, desc, scan)
    _emit(rec, args.json, out)
    if rec.verdict == "degenerate":
        print("degenerate: h ≡ 0 (complete graph)", file=sys.stderr)
        return EXIT_DEGENERATE
    return EXIT_OK


def cmd_curve(args, out) -> int:
    lo, hi, step = _parse_scan(args.scan) if args.scan else (0.0, 1.0, DEFAULT_STEP)
    if args.gkl is not None:
        try:
            h = closed_form_gap(GklParams(*args.gkl))
        except ValueError as e:
            raise UsageError(str(e)) from None
    else:
        g, _ = _load_graph(args)
        if not is_connected(g):
            raise GraphError("graph not connected")
        h = build_profile(g).gap_function
    grid = make_grid(lo, hi, step)
    vals = h.many(grid)
    out.write("alpha,h\n")
    for a, v in zip(grid, vals):
        out.write(f"{fmt(float(a))},{fmt(float(v))}\n")
    return EXIT_OK


def cmd_search(args, out) -> int:
    lo, hi, step = _parse_scan(args.scan) if args.scan else (DEFAULT_LO, 1.0, DEFAULT_STEP)
    hits = search_multiroot(_parse_range(args.k), _parse_range(args.ell), lo, hi, step)
    for p, count in hits:
        if args.json:
            out.write(json.dumps({"k": p.k, "ell": p.ell, "roots": count}) + "\n")
        else:
            out.write(f"k={p.k} ell={p.ell} roots={count}\n")
    return EXIT_OK


def cmd_random(args, out) -> int:
    if (args.m is None) == (args.p is None):
        raise UsageError("give exactly one of --m or --p")
    if args.p is not None:
        if args.method != "rejection":
            raise UsageError("--method tree needs --m")
        g = random_gnp_connected(args.n, args.p, args.seed)
        desc = f"gnp(n={args.n},p={args.p},seed={args.seed})"
    elif args.method == "tree":
        g = random_tree_plus_edges(args.n, args.m, args.seed)
        desc = f"tree_plus(n={args.n},m={args.m},seed={args.seed})"
    else:
        g = random_gnm_connected(args.n, args.m, args.seed)
        desc = f"gnm(n={args.n},m={args.m},seed={args.seed})"
    if args.write:
        with open(args.write, "w") as fh:
            fh.write(g.to_edge_list())
    if args.analyze:
        rec = _analyze(g, desc)
    else:
        rec, _ = _base_record(g, desc)
    rec.seed = args.seed
    _emit(rec, args.json, out)
    if rec.verdict == "degenerate":
        return EXIT_DEGENERATE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="varsz", description="Variable Wiener and Szeged indices and their critical exponents."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_source(sp):
        sp.add_argument("path", nargs="?", help="edge-list file")
        sp.add_argument("--gkl", nargs=2, type=int, metavar=("K", "ELL"),
                        help="use the counterexample graph G(K, ELL) instead of a file")

    sp = sub.add_parser("index", help="classical and variable indices")
    graph_source(sp)
    sp.add_argument("--alpha", type=float, action="append", help="exponent (repeatable)")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_index)

    sp = sub.add_parser("analyze", help="roots of h, conjecture verdicts and certificates")
    graph_source(sp)
    sp.add_argument("--scan", help="lo:hi:step (default 0.001:1.5:0.001)")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("curve", help="CSV of h(alpha) on a grid")
    graph_source(sp)
    sp.add_argument("--scan", help="lo:hi:step, both ends included (default 0:1:0.001)")
    sp.set_defaults(func=cmd_curve)

    sp = sub.add_parser("search", help="G(k, ell) cells with at least three roots")
    sp.add_argument("--k", required=True, help="inclusive range a:b")
    sp.add_argument("--ell", required=True, help="inclusive range a:b")
    sp.add_argument("--scan", help="lo:hi:step (default 0.001:1:0.001)")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("random", help="seeded random connected graph")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int)
    sp.add_argument("--p", type=float)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--method", choices=("rejection", "tree"), default="rejection",
                    help="rejection: uniform G(n,m)/G(n,p) given connected; "
                         "tree: random spanning tree plus extra edges")
    sp.add_argument("--analyze", action="store_true")
    sp.add_argument("--write", metavar="PATH", help="also write the edge list here")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_random)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return args.func(args, out)
    except RetryCapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, GraphError, InfeasibleParametersError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

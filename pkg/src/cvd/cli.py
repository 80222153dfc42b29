"""Command-line surface: solve, exact, certify, gap, gen, bench.

Reports are structured text with a stable field order; every rational is
printed exactly as ``p/q`` (or a plain integer).  Timing fields carry a
``time_`` prefix so tooling can strip them; everything else is
byte-reproducible for a fixed ``--seed``.

Exit codes: 0 success, 1 input error, 2 internal invariant violation.
"""

import argparse
import math
import sys
import time
from fractions import Fraction
from multiprocessing import Pool
from pathlib import Path

from .certificates import find_2good, verify_certificate
from .errors import ContractError, GraphParseError, InvariantError
from .graphs import graph_to_text, parse_graph
from .instances import NAMED, gnp, parse_costs
from .localratio import cluster_vd_apx, cluster_vd_exact, opt_value, unit_costs
from .sa import sa_value

_ORACLE_LIMIT = 20


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise GraphParseError(f"cannot read {path}: {exc.strerror}") from exc


def _load_instance(args):
    g = parse_graph(_read(args.graph))
    if args.costs:
        costs = parse_costs(_read(args.costs), g.n)
    else:
        costs = unit_costs(g.n)
    return g, costs


def _emit(lines, out):
    text = "".join(f"{line}\n" for line in lines)
    sys.stdout.write(text)
    if out:
        Path(out).write_text(text)


def _fmt(q) -> str:
    return str(Fraction(q))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_solve(args) -> int:
    g, costs = _load_instance(args)
    if args.verify and g.n > _ORACLE_LIMIT:
        raise ContractError(f"--verify needs the exact oracle, refused for n={g.n} > {_ORACLE_LIMIT}")
    start = time.perf_counter()
    hs = cluster_vd_apx(g, costs)
    elapsed = time.perf_counter() - start
    lines = [
        f"instance: {args.graph}",
        f"n: {g.n}",
        f"m: {g.edge_count()}",
        "algorithm: local-ratio-2apx",
        "hitting_set: " + " ".join(map(str, hs.vertices)),
        f"cost: {_fmt(hs.cost)}",
        f"minimal: {str(hs.minimal).lower()}",
    ]
    if args.verify:
        opt = opt_value(g, costs)
        lines.append(f"opt: {_fmt(opt)}")
        if opt > 0:
            ratio = hs.cost / opt
            assert ratio <= 2, "approximation ratio above 2"
            lines.append(f"ratio: {_fmt(ratio)}")
    lines.append(f"time_wall_ms: {elapsed * 1000:.3f}")
    _emit(lines, args.out)
    return 0


def _cmd_exact(args) -> int:
    g, costs = _load_instance(args)
    start = time.perf_counter()
    hs = cluster_vd_exact(g, costs)
    elapsed = time.perf_counter() - start
    _emit(
        [
            f"instance: {args.graph}",
            f"n: {g.n}",
            f"m: {g.edge_count()}",
            "algorithm: exact-subset-enumeration",
            "hitting_set: " + " ".join(map(str, hs.vertices)),
            f"cost: {_fmt(hs.cost)}",
            f"minimal: {str(hs.minimal).lower()}",
            f"time_wall_ms: {elapsed * 1000:.3f}",
        ],
        args.out,
    )
    return 0


def _cmd_certify(args) -> int:
    g = parse_graph(_read(args.graph))
    if not 0 <= args.root < g.n:
        raise ContractError(f"root {args.root} out of range for n={g.n}")
    start = time.perf_counter()
    cert = find_2good(g, args.root)
    verdict = verify_certificate(g, cert, opt_value)
    elapsed = time.perf_counter() - start
    _emit(
        [
            f"instance: {args.graph}",
            f"root: {args.root}",
            f"kind: {cert.kind}",
            "vertices: " + " ".join(map(str, cert.vertices)),
            "costs: " + " ".join(map(str, cert.costs)),
            f"total_cost: {cert.total()}",
            f"verified: {str(verdict).lower()}",
            f"time_wall_ms: {elapsed * 1000:.3f}",
        ],
        args.out,
    )
    return 0 if verdict else 2


def _cmd_gap(args) -> int:
    g, costs = _load_instance(args)
    if g.n > _ORACLE_LIMIT:
        raise ContractError(f"gap needs the exact oracle, refused for n={g.n} > {_ORACLE_LIMIT}")
    start = time.perf_counter()
    opt = opt_value(g, costs)
    value = sa_value(g, costs, args.r)
    if opt == 0:
        gap = Fraction(1)  # convention: trivial instances carry no information
    else:
        gap = opt / value
    elapsed = time.perf_counter() - start
    _emit(
        [
            f"instance: {args.graph}",
            f"n: {g.n}",
            f"m: {g.edge_count()}",
            f"r: {args.r}",
            f"lp_value: {_fmt(value)}",
            f"opt: {_fmt(opt)}",
            f"gap: {_fmt(gap)}",
            f"time_wall_ms: {elapsed * 1000:.3f}",
        ],
        args.out,
    )
    return 0


def _cmd_gen(args) -> int:
    name = args.family
    if name == "gnp":
        if args.n is None or args.p is None:
            raise ContractError("gnp needs --n and --p")
        g = gnp(args.n, args.p, args.seed)
    else:
        builder = NAMED[name]
        g = builder(n=args.n) if args.n is not None else builder()
    text = graph_to_text(g)
    sys.stdout.write(text)
    if args.out:
        Path(args.out).write_text(text)
    return 0


def _bench_one(path: str):
    try:
        g = parse_graph(Path(path).read_text())
        start = time.perf_counter()
        hs = cluster_vd_apx(g, unit_costs(g.n))
        elapsed = time.perf_counter() - start
        return (path, g.n, g.edge_count(), str(hs.cost), elapsed, "ok")
    except Exception as exc:  # noqa: BLE001 - a corrupt file must not kill the run
        return (path, 0, 0, "-", 0.0, f"failed ({type(exc).__name__})")


def _cmd_bench(args) -> int:
    corpus = sorted(str(p) for p in Path(args.corpus).glob("*") if p.is_file())
    if not corpus:
        raise ContractError(f"no instance files in {args.corpus}")
    jobs = args.jobs or 1
    if jobs > 1:
        with Pool(jobs) as pool:
            rows = pool.map(_bench_one, corpus)
    else:
        rows = [_bench_one(path) for path in corpus]
    rows.sort(key=lambda r: r[0])
    lines = ["file\tn\tm\tcost\ttime_ms\tstatus"]
    for path, n, m, cost, elapsed, status in rows:
        lines.append(f"{path}\t{n}\t{m}\t{cost}\t{elapsed * 1000:.3f}\t{status}")
    good = [(n, t) for _, n, _, _, t, status in rows if status == "ok" and n > 1 and t > 0]
    lines.append(f"instances: {len(rows)}")
    lines.append(f"solved: {len(good)}")
    slope = _loglog_slope(good)
    lines.append(f"time_loglog_slope: {slope:.3f}" if slope is not None else "time_loglog_slope: n/a")
    _emit(lines, args.out)
    return 0


def _loglog_slope(points):
    """Least-squares slope of log(time) against log(n)."""
    if len({n for n, _ in points}) < 2:
        return None
    xs = [math.log(n) for n, _ in points]
    ys = [math.log(t) for _, t in points]
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    return sxy / sxx


# ---------------------------------------------------------------------------
# wiring
# ---------------------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(prog="cvd", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, costs=True):
        p.add_argument("--seed", type=int, default=0, help="RNG seed (u64)")
        p.add_argument("--out", help="also write the report to this file")
        if costs:
            p.add_argument("--costs", help="cost file: lines 'v p/q', default cost 1")

    p = sub.add_parser("solve", help="2-approximation on an edge-list file")
    p.add_argument("graph")
    p.add_argument("--verify", action="store_true", help="cross-check with the exact oracle (n <= 20)")
    common(p)
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("exact", help="exact optimum by subset enumeration (n <= 20)")
    p.add_argument("graph")
    common(p)
    p.set_defaults(fn=_cmd_exact)

    p = sub.add_parser("certify", help="build and verify a 2-good certificate for a root")
    p.add_argument("graph")
    p.add_argument("--root", type=int, required=True, help="root vertex")
    common(p, costs=False)
    p.set_defaults(fn=_cmd_certify)

    p = sub.add_parser("gap", help="exact LP value, optimum, and integrality gap")
    p.add_argument("graph")
    p.add_argument("--r", type=int, choices=(0, 1), default=0, help="relaxation level")
    common(p)
    p.set_defaults(fn=_cmd_gap)

    p = sub.add_parser("gen", help="emit a named or random instance as an edge list")
    p.add_argument("family", choices=sorted(NAMED) + ["gnp"])
    p.add_argument("--n", type=int, help="vertex count (families that take one)")
    p.add_argument("--p", type=Fraction, help="edge probability for gnp, e.g. 1/2")
    common(p, costs=False)
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("bench", help="run the solver over a corpus directory")
    p.add_argument("corpus")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers")
    common(p, costs=False)
    p.set_defaults(fn=_cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (GraphParseError, ContractError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (InvariantError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

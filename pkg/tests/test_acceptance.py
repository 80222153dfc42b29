"""Acceptance gate: exhaustive small-scale verification plus exact regressions.

Each test prints one ``ACCEPTANCE <k> PASS/FAIL`` line (run pytest with
``-s`` to see them live).  The exhaustive sweeps fan out over a process
pool; ``CVD_ACCEPT_WORKERS`` overrides the worker count.
"""

import os
import random
import subprocess
import sys
from fractions import Fraction
from itertools import combinations
from multiprocessing import get_context

import pytest

from cvd.certificates import base_case_certificate, find_2good, lift_cost, peel_vertex, verify_certificate
from cvd.chordal import Hole
from cvd.errors import ContractError
from cvd.graphs import Graph, induced
from cvd.instances import cycle, figure3, figure4, gnp, path, petersen, two_p3_apex, wheel
from cvd.localratio import (
    branch_opt_value,
    cluster_vd_apx,
    cluster_vd_exact,
    opt_value,
    unit_costs,
    validate,
)
from cvd.certificates import wheel_certificate, two_p3_certificate
from cvd.chordal import TwoP3
from cvd.graphs import P3Witness
from cvd.sa import integrality_gap, lb_point, sa_value

WORKERS = max(1, int(os.environ.get("CVD_ACCEPT_WORKERS", os.cpu_count() or 1)))

PAIRS = {n: list(combinations(range(n), 2)) for n in range(9)}


def _graph(n, code):
    pairs = PAIRS[n]
    return Graph(n, [pairs[i] for i in range(len(pairs)) if code >> i & 1])


def _chunks(n):
    total = 1 << len(PAIRS[n])
    step = max(1, total // (WORKERS * 16))
    return [(n, lo, min(lo + step, total)) for lo in range(0, total, step)]


def _pmap(fn, work):
    if WORKERS == 1 or len(work) <= 1:
        return [fn(item) for item in work]
    with get_context("fork").Pool(WORKERS) as pool:
        return pool.map(fn, work)


def _report(num, ok, detail):
    line = f"ACCEPTANCE {num} {'PASS' if ok else 'FAIL'}: {detail}"
    print(line, flush=True)
    assert ok, line


# -- criterion 1: approximation soundness ------------------------------------


def _apx_check(g, costs):
    hs = cluster_vd_apx(g, costs)
    hitting, minimal, cost = validate(g, costs, hs.vertices)
    if not (hitting and minimal and cost == hs.cost):
        return "invalid hitting set"
    if cost > 2 * opt_value(g, costs):
        return "ratio above 2"
    return None


def _apx_exhaustive_chunk(args):
    n, lo, hi = args
    ones = [Fraction(1)] * n
    for code in range(lo, hi):
        bad = _apx_check(_graph(n, code), ones)
        if bad:
            return (n, code, bad)
    return None


def _apx_random_chunk(specs):
    for n, num, seed in specs:
        g = gnp(n, Fraction(num, 10), seed)
        rng = random.Random(seed ^ 0x5EED)
        costs = [Fraction(rng.randint(0, 10)) for _ in range(n)]
        bad = _apx_check(g, costs)
        if bad:
            return (n, num, seed, bad)
    return None


def test_criterion_01_approximation_soundness():
    work = []
    for n in range(1, 7):
        work.extend(_chunks(n))
    failures = [r for r in _pmap(_apx_exhaustive_chunk, work) if r]

    master = random.Random(94021)
    specs = [
        (7 + i % 8, master.randint(1, 9), master.getrandbits(48))
        for i in range(10_000)
    ]
    step = max(1, len(specs) // (WORKERS * 16))
    rand_chunks = [specs[i : i + step] for i in range(0, len(specs), step)]
    failures += [r for r in _pmap(_apx_random_chunk, rand_chunks) if r]

    _report(
        1,
        not failures,
        f"all labeled graphs n<=6 plus {len(specs)} random weighted instances, "
        f"minimal hitting sets within ratio 2" + (f"; failures: {failures[:3]}" if failures else ""),
    )


# -- criterion 2: certificates for every root --------------------------------


def _cert_chunk(args):
    n, lo, hi = args
    pairs = PAIRS[n]
    npairs = len(pairs)
    checked = 0
    for code in range(lo, hi):
        edges = [pairs[i] for i in range(npairs) if code >> i & 1]
        rows = [0] * n
        for u, v in edges:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        # connected?
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            m = frontier
            while m:
                b = m & -m
                m ^= b
                nxt |= rows[b.bit_length() - 1]
            frontier = nxt & ~seen
            seen |= nxt
        if seen != (1 << n) - 1:
            continue
        # twin-free?
        closed = [rows[v] | 1 << v for v in range(n)]
        if any(closed[u] == closed[v] for u, v in pairs):
            continue
        g = Graph(n, edges)
        for v0 in range(n):
            cert = find_2good(g, v0)
            if not verify_certificate(g, cert, branch_opt_value):
                return (code, v0, None)
            checked += 1
    return (None, None, checked)


def test_criterion_02_certificates_all_roots_n7():
    work = []
    for n in range(1, 8):
        work.extend(_chunks(n))
    results = _pmap(_cert_chunk, work)
    failures = [(code, v0) for code, v0, _ in results if code is not None]
    total = sum(c for code, _, c in results if code is None)
    _report(
        2,
        not failures and total > 0,
        f"{total} (graph, root) certificates over all connected twin-free graphs n<=7, zero failures"
        + (f"; failures: {failures[:3]}" if failures else ""),
    )


# -- criterion 3: figure-exact regressions ------------------------------------


def test_criterion_03_reference_cost_vectors():
    ok3 = base_case_certificate(figure3(), 0).costs == (6, 1, 1, 1, 1, 3, 3, 3)
    g4 = figure4()
    h2, step = peel_vertex(g4, 0, 5)
    inner = base_case_certificate(h2, 0)
    lifted = lift_cost(step, inner.costs)
    ok4 = lifted == (1, 1, 1, 1, 1, 2) and lifted[5] == 2
    ok4 = ok4 and find_2good(g4, 0).costs == (1, 1, 1, 1, 1, 2)
    _report(
        3,
        ok3 and ok4,
        "hitting-clique instance gives (6,1,1,1,1,3,3,3); peel+lift gives (1,1,1,1,1,2) with 2 on the peeled vertex",
    )


# -- criterion 4: wheel numbers ------------------------------------------------


def test_criterion_04_wheel_certificates():
    ok = True
    for k in range(5, 11):
        w = wheel(k)
        cert = wheel_certificate(w, Hole(tuple(range(1, k))), 0)
        sub, vmap = induced(w, cert.vertices)
        lookup = cert.cost_map()
        opt = opt_value(sub, [lookup[v] for v in vmap])
        ok = ok and cert.total() == 2 * (k - 3) and opt == k - 3
    _report(4, ok, "wheels k=5..10: certificate total 2(k-3), local optimum k-3, exact")


# -- criterion 5: 2P3 numbers ----------------------------------------------------


def test_criterion_05_two_p3_certificate():
    g = two_p3_apex()
    cert = two_p3_certificate(g, TwoP3(P3Witness(1, (0, 2)), P3Witness(4, (3, 5))), 6)
    opt = opt_value(g, [cert.cost_map().get(v, 0) for v in range(7)])
    _report(5, cert.total() == 8 and opt == 4, "apex-over-2P3 certificate totals 8 with local optimum 4, exact")


# -- criterion 6: level-0 LP structure -------------------------------------------


def test_criterion_06_sa0_structure():
    ok = all(
        sa_value(cycle(n), unit_costs(n), 0) == Fraction(n, 3) for n in range(4, 10)
    )
    for n in range(1, 11):
        value = sa_value(path(n), unit_costs(n), 0)
        ok = ok and value.denominator == 1 and value == opt_value(path(n), unit_costs(n))
    _report(6, ok, "cycles n=4..9 give exact n/3; paths n<=10 solve integrally at the optimum")


# -- criterion 7: level-1 gap bound at desk scale --------------------------------


def _gap_chunk(args):
    n, lo, hi = args
    bound = Fraction(5, 2)
    worst = Fraction(0)
    for code in range(lo, hi):
        g = _graph(n, code)
        gap = integrality_gap(g, unit_costs(n), 1)
        if gap > bound:
            return (n, code, str(gap))
        worst = max(worst, gap)
    return (None, None, str(worst))


def test_criterion_07_sa1_gap_at_most_5_halves():
    work = []
    for n in range(1, 7):
        work.extend(_chunks(n))
    results = _pmap(_gap_chunk, work)
    failures = [r for r in results if r[0] is not None]
    worst = max(Fraction(r[2]) for r in results if r[0] is None)
    _report(
        7,
        not failures,
        f"level-1 gap <= 5/2 on every labeled graph n<=6 (worst seen {worst})"
        + (f"; failures: {failures[:3]}" if failures else ""),
    )


# -- criterion 8: the 2/5 lower-bound point ---------------------------------------


def test_criterion_08_lb_point():
    _, rep_p, obj_p = lb_point(petersen())
    _, rep_c, obj_c = lb_point(cycle(5))
    ok = rep_p.feasible and obj_p == 4 and rep_c.feasible and obj_c == 2
    try:
        lb_point(Graph(3, [(0, 1), (1, 2), (0, 2)]))
        ok = False
    except ContractError:
        pass
    _report(8, ok, "2/5 point feasible with objectives 4 (Petersen) and 2 (C5); girth-3 input rejected")


# -- criterion 9: oracle self-consistency ------------------------------------------


def _oracle_exhaustive_chunk(args):
    n, lo, hi = args
    ones = [Fraction(1)] * n
    for code in range(lo, hi):
        g = _graph(n, code)
        a = cluster_vd_exact(g, ones).cost
        if a != branch_opt_value(g, [1] * n) or a != opt_value(g, ones):
            return (n, code)
    return None


def _oracle_random_chunk(specs):
    for n, num, seed in specs:
        g = gnp(n, Fraction(num, 10), seed)
        ones = [Fraction(1)] * n
        a = cluster_vd_exact(g, ones).cost
        if a != branch_opt_value(g, [1] * n) or a != opt_value(g, ones):
            return (n, num, seed)
    return None


def test_criterion_09_oracle_self_consistency():
    # Exhaustive at n<=6; all 2^28 labeled graphs at n=8 are out of reach,
    # so n in {7, 8} is covered by a large seeded sample across densities.
    work = []
    for n in range(1, 7):
        work.extend(_chunks(n))
    failures = [r for r in _pmap(_oracle_exhaustive_chunk, work) if r]

    master = random.Random(5150)
    specs = [(7 + i % 2, master.randint(1, 9), master.getrandbits(48)) for i in range(6000)]
    step = max(1, len(specs) // (WORKERS * 8))
    chunks = [specs[i : i + step] for i in range(0, len(specs), step)]
    failures += [r for r in _pmap(_oracle_random_chunk, chunks) if r]
    _report(
        9,
        not failures,
        "subset-enumeration and P3-branching solvers agree on all graphs n<=6 "
        "and 6000 seeded samples at n in {7,8}, unit costs"
        + (f"; failures: {failures[:3]}" if failures else ""),
    )


# -- criterion 10: CLI determinism ---------------------------------------------------


def _run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "cvd", *args], capture_output=True, text=True
    )


def _strip_timing(text):
    return "\n".join(
        line
        for line in text.splitlines()
        if not line.split(":")[0].startswith("time_") and "\ttime_" not in line
    )


def _strip_bench_timing(text):
    out = []
    for line in text.splitlines():
        cells = line.split("\t")
        if len(cells) == 6:
            cells[4] = "-"
        if line.startswith("time_loglog_slope"):
            continue
        out.append("\t".join(cells))
    return "\n".join(out)


def test_criterion_10_cli_determinism(tmp_path):
    p3 = tmp_path / "p3.txt"
    p3.write_text("3 2\n0 1\n1 2\n")
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    for n, seed in ((10, 1), (14, 2)):
        out = _run_cli("gen", "gnp", "--n", str(n), "--p", "2/5", "--seed", str(seed))
        (corpus / f"g{n}.txt").write_text(out.stdout)

    commands = [
        ("solve", str(p3), "--verify", "--seed", "4"),
        ("exact", str(p3), "--seed", "4"),
        ("certify", str(p3), "--root", "1", "--seed", "4"),
        ("gap", str(p3), "--r", "0", "--seed", "4"),
        ("gap", str(p3), "--r", "1", "--seed", "4"),
        ("gen", "gnp", "--n", "12", "--p", "1/3", "--seed", "4"),
        ("gen", "figure3", "--seed", "4"),
        ("bench", str(corpus), "--jobs", "2", "--seed", "4"),
    ]
    ok = True
    detail = "every verb byte-identical modulo timing fields over repeated runs"
    for args in commands:
        a, b = _run_cli(*args), _run_cli(*args)
        same = (
            a.returncode == b.returncode == 0
            and _strip_bench_timing(_strip_timing(a.stdout))
            == _strip_bench_timing(_strip_timing(b.stdout))
        )
        if not same:
            ok = False
            detail = f"verb {args[0]} differs between runs"
            break
    _report(10, ok, detail)

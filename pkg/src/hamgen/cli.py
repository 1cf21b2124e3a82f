"""Command-line driver: ``hamgen generate``, ``hamgen count-hc``, ``hamgen verify``.

Graphs go to standard output, reports to standard error. Exit status is 0 on
success, 1 when an invariant check fails and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Callable, Optional

from .generate import ConfigError, GenConfig, Mode, OutputFilters, RunStats, generate, generate_parallel
from .graph import Graph, Graph6Error
from .hamilton import count_hc

EXIT_OK, EXIT_BREACH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _mod(text: str) -> tuple[int, int]:
    try:
        r, m = (int(x) for x in text.split("/"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected RES/MOD, got {text!r}")
    if m < 1 or not 0 <= r < m:
        raise argparse.ArgumentTypeError(f"need 0 <= RES < MOD, got {text!r}")
    return r, m


def _add_generate(sub) -> None:
    p = sub.add_parser("generate", help="generate graphs up to isomorphism")
    p.add_argument("-n", type=int, required=True, help="order")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("-k", type=int, help="exactly K hamiltonian cycles")
    mode.add_argument("--at-most", type=int, metavar="K", help="between 1 and K hamiltonian cycles")
    mode.add_argument("--non-hamiltonian", action="store_true")
    mode.add_argument("--all", action="store_true", help="no restriction on the cycle count")
    p.add_argument("-g", type=int, dest="girth", help="minimum girth")
    p.add_argument("--planar", action="store_true")
    p.add_argument("--max-deg", type=int)
    p.add_argument("--min-deg", type=int, default=0)
    p.add_argument("--regular", type=int)
    p.add_argument("--nearly-cubic", action="store_true")
    p.add_argument("--connected", action="store_true")
    p.add_argument("--triangle-free", action="store_true")
    p.add_argument("--no-n-minus-1-cycle", action="store_true")
    p.add_argument("--mod", type=_mod, default=(0, 1), metavar="RES/MOD")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--format", choices=("graph6", "adj"), default="graph6")


def config_from_args(a) -> GenConfig:
    k = 1
    h_min, h_max = 0, None
    if a.non_hamiltonian:
        mode = Mode.NON_HAMILTONIAN
    elif a.all:
        mode = Mode.UNRESTRICTED
    elif a.at_most is not None:
        mode, k = Mode.AT_MOST, a.at_most
    elif a.k is not None and a.k > 1:
        mode, k, h_min, h_max = Mode.AT_MOST, a.k, a.k, a.k
    elif a.k is not None and a.k < 1:
        raise UsageError("-k must be at least 1; use --non-hamiltonian for 0")
    else:
        mode = Mode.EXACTLY_ONE
    filters = OutputFilters(
        connected=a.connected,
        min_degree=a.min_deg,
        regular=a.regular,
        nearly_cubic=a.nearly_cubic,
        triangle_free=a.triangle_free,
        no_n_minus_1_cycle=a.no_n_minus_1_cycle,
        h_min=h_min,
        h_max=h_max,
    )
    res, mod = a.mod
    cfg = GenConfig(a.n, mode, k=k, girth_min=a.girth, planar=a.planar, max_degree=a.max_deg,
                    nearly_cubic=a.nearly_cubic, filters=filters, res=res, mod=mod)
    try:
        cfg.validate()
    except ConfigError as e:
        raise UsageError(str(e))
    return cfg


def _adj_text(g: Graph) -> str:
    rows = [f"{v}: " + " ".join(map(str, g.neighbours(v))) for v in range(g.n)]
    return f"Graph n={g.n} m={g.m}\n" + "\n".join(rows) + "\n\n"


def _report(stats: RunStats, seconds: float, err) -> None:
    rep = {
        "emitted": stats.emitted,
        "nodes": stats.nodes,
        "rejected": stats.rejected,
        "seconds": round(seconds, 3),
    }
    print(json.dumps(rep), file=err)


def cmd_generate(a, out, err) -> int:
    cfg = config_from_args(a)
    start = time.time()
    workers = int(os.environ.get("HAMGEN_WORKERS", "1"))
    if workers > 1 and cfg.mod == 1:
        stats, lines = generate_parallel(cfg, workers=workers, collect=not a.count_only)
        graphs = (Graph.from_graph6(x) for x in lines)
    else:
        collected: list[Graph] = []
        stats = generate(cfg, None if a.count_only else collected.append)
        graphs = iter(collected)
    if a.count_only:
        print(stats.emitted, file=out)
    else:
        for g in graphs:
            out.write(_adj_text(g) if a.format == "adj" else g.to_graph6().decode() + "\n")
    _report(stats, time.time() - start, err)
    if stats.emitted > stats.nodes:
        print("invariant breach: more graphs emitted than search nodes", file=err)
        return EXIT_BREACH
    return EXIT_OK


def cmd_count_hc(a, inp, out, err) -> int:
    cap = a.cap
    status = EXIT_OK
    for lineno, raw in enumerate(inp, 1):
        line = raw.strip()
        if not line:
            continue
        try:
            g = Graph.from_graph6(line)
        except Graph6Error as e:
            print(f"line {lineno}: {e}", file=err)
            status = EXIT_USAGE
            continue
        if g.n < 3:
            print(0, file=out)
            continue
        r = count_hc(g, cap)
        print(f"≥{cap}" if r.saturated else r.count, file=out)
    return status


# -- verify suites -------------------------------------------------------------


def _g6(g: Graph) -> str:
    return g.to_graph6().decode()


def _suite_bondy_jackson(max_n: int) -> tuple[bool, dict, list]:
    from .generate import iter_graphs
    from .props import verify_bondy_jackson

    bad = []
    seen = {}
    for n in range(3, max_n + 1):
        graphs = [g for g, _ in iter_graphs(GenConfig(n, Mode.EXACTLY_ONE, planar=True))]
        seen[n] = len(graphs)
        bad += verify_bondy_jackson(graphs)
    return not bad, {"planar_uh": seen}, bad


def _suite_thomassen(max_n: int) -> tuple[bool, dict, list]:
    from .generate import iter_graphs
    from .props import verify_thomassen

    bad = []
    checked = {}
    for n in range(4, max_n + 1):
        cfg = GenConfig(n, Mode.EXACTLY_ONE, filters=OutputFilters(min_degree=3))
        graphs = [g for g, _ in iter_graphs(cfg)]
        multi = [g for g, _ in iter_graphs(GenConfig(n, Mode.AT_MOST, k=3, filters=OutputFilters(h_min=2)))]
        checked[n] = [len(graphs), len(multi)]
        bad += verify_thomassen(graphs + multi)
    return not bad, {"uh_min_degree_3_and_multi": checked}, bad


def _suite_sheehan(max_n: int) -> tuple[bool, dict, list]:
    from .props import regular_uh

    bad = []
    for n in range(5, max_n + 1):
        bad += regular_uh(n, 4)
    return not bad, {"orders": [5, max_n]}, bad


def _suite_cantoni(max_n: int) -> tuple[bool, dict, list]:
    from .props import cantoni_scan

    bad = []
    counts = {}
    for n in range(4, max_n + 1, 2):
        r = cantoni_scan(n)
        counts[n] = [r.cubic_three_cycles, r.planar]
        bad += r.triangle_free_planar
    return not bad, {"cubic_h3_and_planar": counts}, bad


def _suite_parity(max_n: int) -> tuple[bool, dict, list]:
    from .props import cubic_graphs, verify_cubic_parity

    bad = []
    counts = {}
    for n in range(4, max_n + 1, 2):
        graphs = cubic_graphs(n)
        counts[n] = len(graphs)
        bad += verify_cubic_parity(graphs)
    return not bad, {"cubic_graphs": counts}, bad


def _suite_extremal(max_n: int) -> tuple[bool, dict, list]:
    from .props import extremal_counts, uh_extremal_formula, ut_extremal_formula

    ok = True
    rows = {}
    for n in range(7, max_n + 1):
        r = extremal_counts(n, "UH")
        good = r.size == r.bound and r.count == uh_extremal_formula(n)
        rows[f"UH{n}"] = [r.size, r.count, good]
        ok &= good
    for n in range(5, max_n + 1):
        r = extremal_counts(n, "UT")
        good = r.size == r.bound and r.count == ut_extremal_formula(n)
        rows[f"UT{n}"] = [r.size, r.count, good]
        ok &= good
    return ok, rows, []


def _suite_schwenk(max_n: int) -> tuple[bool, dict, list]:
    from .props import gp, schwenk_table

    table = schwenk_table(5, max_n)
    bad = [gp(n, 2) for n, hv in table.items() if (hv == 3) != (n % 6 == 3)]
    return not bad, {"h_gp_n_2": table}, bad


def _suite_oracle(max_n: int) -> tuple[bool, dict, list]:
    from .props import oracle_check

    if max_n > 7:
        raise UsageError("the oracle suite supports --max-n up to 7")
    rows = {}
    ok = True
    modes = [(Mode.EXACTLY_ONE, 1), (Mode.AT_MOST, 2), (Mode.AT_MOST, 3),
             (Mode.NON_HAMILTONIAN, 1), (Mode.UNRESTRICTED, 1)]
    for n in range(3, max_n + 1):
        for mode, k in modes:
            r = oracle_check(n, mode, k)
            rows[f"{mode.name}/{k}/n{n}"] = [r.labelled_from_generator, r.labelled_bruteforce, r.ok]
            ok &= r.ok
    return ok, rows, []


SUITES: dict[str, Callable[[int], tuple[bool, dict, list]]] = {
    "bondy-jackson": _suite_bondy_jackson,
    "thomassen": _suite_thomassen,
    "sheehan": _suite_sheehan,
    "cantoni": _suite_cantoni,
    "parity": _suite_parity,
    "extremal": _suite_extremal,
    "schwenk": _suite_schwenk,
    "oracle": _suite_oracle,
}

_DEFAULT_MAX_N = {"bondy-jackson": 9, "thomassen": 9, "sheehan": 10, "cantoni": 12,
                  "parity": 12, "extremal": 9, "schwenk": 15, "oracle": 6}


def cmd_verify(a, out, err) -> int:
    max_n = a.max_n if a.max_n is not None else _DEFAULT_MAX_N[a.suite]
    start = time.time()
    ok, details, bad = SUITES[a.suite](max_n)
    rep = {"suite": a.suite, "max_n": max_n, "result": "pass" if ok else "fail",
           "details": details, "counterexamples": [_g6(g) for g in bad],
           "seconds": round(time.time() - start, 3)}
    print(json.dumps(rep), file=out)
    return EXIT_OK if ok else EXIT_BREACH


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hamgen", description="Generate graphs by number of hamiltonian cycles.")
    sub = p.add_subparsers(dest="command", required=True)
    _add_generate(sub)
    c = sub.add_parser("count-hc", help="count hamiltonian cycles of graph6 lines on standard input")
    c.add_argument("--cap", type=int, default=1 << 40)
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--max-n", type=int)
    return p


def main(argv: Optional[list[str]] = None, stdin=None, stdout=None, stderr=None) -> int:
    inp = stdin or sys.stdin
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        if a.command == "generate":
            return cmd_generate(a, out, err)
        if a.command == "count-hc":
            if a.cap < 1:
                raise UsageError("--cap must be positive")
            return cmd_count_hc(a, inp, out, err)
        return cmd_verify(a, out, err)
    except UsageError as e:
        print(f"hamgen: {e}", file=err)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

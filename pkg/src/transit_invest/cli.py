"""Command-line front end.

Data goes to stdout (JSON records) or to ``--out`` files (JSON instances,
CSV tables); wall times go to stderr and optionally to a ``--timing-log``
file, never into the data itself.  Exit codes: 0 success, 1 bad input,
2 a size guard refused the work.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from contextlib import contextmanager

from . import jsonio as io
from .budget_dijkstra import TRACE_FIELDS, budget_dijkstra, trace_rows
from .core import NTPInstance, Objective, PTPInstance, format_rational, to_rational
from .errors import TooLargeError, TransitError
from .greedy import (RATIO_FIELDS, AdversarialParams, greedy_down, greedy_ratio_rows,
                     greedy_up, make_adversarial)
from .multi_agent import solve_exact
from .oracles import oracle
from .ptp_solvers import ptp_egalitarian_exact, ptp_utilitarian_dp
from .reductions import (SetCoverInstance, VertexCoverInstance, ntp_to_rdp, setcover_to_ntp,
                         vertexcover_to_ptp)
from .report import plot_greedy_ratio, write_csv

log = logging.getLogger("transit_invest.cli")


class UsageError(Exception):
    """Bad command-line input detected after argument parsing."""


def _read(path):
    if path == "-":
        return io.parse_instance(sys.stdin.buffer.read())
    return io.load_instance(path)


def _load(path, *kinds):
    instance = _read(path)
    if not isinstance(instance, kinds):
        names = " or ".join(k.__name__ for k in kinds)
        raise UsageError(f"{path}: expected {names}, got a {instance.model} instance")
    return instance


def _emit(obj, out=None):
    text = io.dumps(obj)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


@contextmanager
def _timed(args, label):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    log.info("%s wall time %.6f s", label, elapsed)
    if args.timing_log:
        with open(args.timing_log, "a", encoding="utf-8") as fh:
            fh.write(json.dumps({"command": label, "wall_time_s": round(elapsed, 6)}) + "\n")


def _record(instance, solution, solver, objective):
    return io.result_record(instance, solution, solver, objective)


# subcommand handlers ---------------------------------------------------------

def cmd_solve(args):
    objective = Objective.parse(args.objective)
    if args.model == "ptp":
        instance = _load(args.instance, PTPInstance)
        method = args.method or ("dp" if objective is Objective.UTILITARIAN else "exact")
        if method == "dp":
            if objective is not Objective.UTILITARIAN:
                raise UsageError("the dp method solves the utilitarian objective only")
            solution, solver = ptp_utilitarian_dp(instance), "ptp-dp"
        elif objective is Objective.EGALITARIAN:
            solution, solver = ptp_egalitarian_exact(instance), "ptp-exact"
        else:
            report = oracle(instance, objective, cap=args.cap)
            solution = _witness_solution(instance, report)
            solver = "ptp-exact"
    else:
        instance = _load(args.instance, NTPInstance)
        if args.method not in (None, "exact"):
            raise UsageError("ntp supports --method exact only")
        if args.agents is not None and args.agents != len(instance.agents):
            raise UsageError(f"--agents {args.agents} but the instance has "
                             f"{len(instance.agents)} agents")
        solution, solver = solve_exact(instance, objective), "ntp-exact"
    _emit(_record(instance, solution, solver, objective))


def _witness_solution(instance, report):
    from .core import evaluate

    return evaluate(instance, report.witnesses[0], report.objective)


def cmd_greedy(args):
    objective = Objective.parse(args.objective)
    instance = _load(args.instance, NTPInstance)
    run = greedy_up if args.direction == "up" else greedy_down
    _emit(_record(instance, run(instance, objective), f"greedy-{args.direction}", objective))


def cmd_oracle(args):
    objective = Objective.parse(args.objective)
    kind = PTPInstance if args.model == "ptp" else NTPInstance
    instance = _load(args.instance, kind)
    report = oracle(instance, objective, cap=args.cap, max_witnesses=args.max_witnesses)
    record = _record(instance, _witness_solution(instance, report), f"oracle-{args.model}",
                     objective)
    record["optimum"] = format_rational(report.optimum)
    record["explored"] = report.explored
    record["witnesses"] = [io.selection_to_json(instance, w) for w in report.witnesses]
    _emit(record)


def cmd_reduce(args):
    if args.problem == "setcover":
        source = _load(args.input, SetCoverInstance)
        if args.alpha is None:
            raise UsageError("reduce setcover needs --alpha")
        instance, kappa_eg, kappa_ut = setcover_to_ntp(source, to_rational(args.alpha, "alpha"))
        extra = {"kappa_eg": format_rational(kappa_eg), "kappa_ut": format_rational(kappa_ut)}
    else:
        source = _load(args.input, VertexCoverInstance)
        instance, kappa = vertexcover_to_ptp(source)
        extra = {"kappa_eg": format_rational(kappa)}
    _write_instance(instance, args.out, extra)


def cmd_convert(args):
    _write_instance(ntp_to_rdp(_load(args.instance, NTPInstance)), args.out, {})


def cmd_gen(args):
    params = AdversarialParams.canonical(to_rational(args.alpha, "alpha"), args.beta)
    adv = make_adversarial(params)
    extra = {
        "epsilons": [format_rational(e) for e in params.epsilons],
        "greedy_solution": io.selection_to_json(adv.instance, adv.greedy_solution),
        "motorway_solution": io.selection_to_json(adv.instance, adv.motorway_solution),
    }
    _write_instance(adv.instance, args.out, extra)


def _write_instance(instance, out, extra):
    """With ``--out`` the file holds only the instance; stdout gets the rest."""
    if out:
        _emit(io.to_dict(instance), out)
        _emit({"instance": io.instance_id(instance), "written": out, **extra})
    else:
        _emit({"instance": io.to_dict(instance), **extra})


def cmd_trace(args):
    instance = _load(args.instance, NTPInstance)
    source = args.source if args.source is not None else instance.agents[0][0] \
        if instance.agents else None
    if source is None:
        raise UsageError("no --source given and the instance has no agents")
    source = _vertex_arg(instance, source)
    table = budget_dijkstra(instance, source, beta=args.beta, record_trace=True)
    rows = trace_rows(instance, table)
    _write_table(rows, TRACE_FIELDS, args.out)


def _vertex_arg(instance, raw):
    if raw in instance.index:
        return raw
    try:
        as_int = int(raw)
    except ValueError:
        return raw
    return as_int if as_int in instance.index else raw


def _parse_betas(text):
    betas = []
    for part in text.split(","):
        lo, sep, hi = part.partition("-")
        try:
            betas.extend(range(int(lo), int(hi) + 1) if sep else [int(lo)])
        except ValueError as exc:
            raise UsageError(f"cannot read budgets from {text!r}") from exc
    if not betas or min(betas) < 1:
        raise UsageError("budgets must be positive integers")
    return betas


def cmd_bench(args):
    rows = greedy_ratio_rows(to_rational(args.alpha, "alpha"), _parse_betas(args.betas),
                             Objective.parse(args.objective))
    _write_table(rows, RATIO_FIELDS, args.out)
    if args.figure:
        plot_greedy_ratio(rows, args.figure)


def _write_table(rows, fields, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            write_csv(rows, fields, fh)
    else:
        write_csv(rows, fields, sys.stdout)


# parser ----------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(prog="transit-invest",
                                     description="Budgeted transit investment on lines and graphs.")
    parser.add_argument("--timing-log", metavar="FILE",
                        help="append wall times as JSON lines to FILE")
    parser.add_argument("-v", "--verbose", action="store_true", help="log wall times to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def objective(p, default="ut"):
        p.add_argument("--objective", choices=["eg", "ut"], default=default)

    def cap(p):
        p.add_argument("--cap", type=int, help="subset cap (default TRANSIT_ORACLE_CAP or 10^6)")

    solve = sub.add_parser("solve", help="exact solvers")
    solve.add_argument("model", choices=["ptp", "ntp"])
    solve.add_argument("instance", help="instance JSON file, or - for stdin")
    objective(solve)
    solve.add_argument("--method", choices=["dp", "exact"])
    solve.add_argument("--agents", type=int, help="expected number of agents (ntp)")
    cap(solve)
    solve.set_defaults(func=cmd_solve)

    greedy = sub.add_parser("greedy", help="greedy heuristics on a graph instance")
    greedy.add_argument("direction", choices=["up", "down"])
    greedy.add_argument("instance")
    objective(greedy, "eg")
    greedy.set_defaults(func=cmd_greedy)

    orc = sub.add_parser("oracle", help="exhaustive optimum")
    orc.add_argument("model", choices=["ptp", "ntp"])
    orc.add_argument("instance")
    objective(orc)
    cap(orc)
    orc.add_argument("--max-witnesses", type=int, default=16)
    orc.set_defaults(func=cmd_oracle)

    red = sub.add_parser("reduce", help="hardness gadgets")
    red.add_argument("problem", choices=["setcover", "vertexcover"])
    red.add_argument("--in", dest="input", required=True)
    red.add_argument("--alpha")
    red.add_argument("--out")
    red.set_defaults(func=cmd_reduce)

    conv = sub.add_parser("convert", help="model conversions")
    conv.add_argument("conversion", choices=["ntp-to-rdp"])
    conv.add_argument("instance")
    conv.add_argument("--out")
    conv.set_defaults(func=cmd_convert)

    gen = sub.add_parser("gen", help="instance generators")
    gen.add_argument("family", choices=["adversarial"])
    gen.add_argument("--alpha", required=True)
    gen.add_argument("--beta", type=int, required=True)
    gen.add_argument("--out")
    gen.set_defaults(func=cmd_gen)

    trace = sub.add_parser("trace", help="iteration-by-iteration tables")
    trace.add_argument("algorithm", choices=["dijkstra"])
    trace.add_argument("instance")
    trace.add_argument("--source", help="source vertex (default: first agent's origin)")
    trace.add_argument("--beta", type=int, help="budget (default: the instance's)")
    trace.add_argument("--out", help="CSV file (default stdout)")
    trace.set_defaults(func=cmd_trace)

    bench = sub.add_parser("bench", help="benchmarks")
    bench.add_argument("suite", choices=["greedy-ratio"])
    bench.add_argument("--alpha", default="1/2")
    bench.add_argument("--betas", default="2-8", help="e.g. 2-8 or 2,4,6")
    objective(bench, "eg")
    bench.add_argument("--out", help="CSV file (default stdout)")
    bench.add_argument("--figure", help="also render the ratio curve to this image file")
    bench.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        with _timed(args, " ".join(a for a in (argv if argv is not None else sys.argv[1:]))):
            args.func(args)
    except TooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (TransitError, UsageError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

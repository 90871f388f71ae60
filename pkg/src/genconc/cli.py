"""Command line entry point: ``genconc <subcommand> ...``.

Exit status is 0 on success, 1 on a domain error (reported on stderr as
``error: <code>: <message>``) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from pathlib import Path

from . import bench, measure, qstate, search, selftest
from .errors import GenConcError
from .ketparse import parse_ket, render_ket


def parse_dims(text: str) -> tuple[int, ...]:
    parts = [p for p in re.split(r"[,x\s]+", text.strip()) if p]
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dims {text!r}; use e.g. 2,2,3") from None


def _add_gen_args(p: argparse.ArgumentParser, required_name: bool) -> None:
    if required_name:
        p.add_argument("name", choices=qstate.STANDARD_NAMES)
    p.add_argument("--n", type=int, default=None, help="particle count")
    p.add_argument("--d", type=int, default=2, help="local dimension (default 2)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="genconc", description="Generalized concurrence of pure states.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("measure", help="entanglement report for a state")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--state", metavar="FILE", help=".qs state file")
    src.add_argument("--ket", metavar="EXPR", help="ket expression, e.g. '(|00>+|11>)/sqrt(2)'")
    src.add_argument("--gen", metavar="NAME", choices=qstate.STANDARD_NAMES, help="named state")
    p.add_argument("--dims", type=parse_dims, help="dimensions for --ket, e.g. 2,3")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--d", type=int, default=2)
    which = p.add_mutually_exclusive_group()
    which.add_argument("--cut", metavar="I+J", help="single cut, 0-based indices joined by '+'")
    which.add_argument("--all", action="store_true", help="all canonical cuts (default)")
    p.add_argument("--route", choices=measure.ROUTES, default=measure.DEFAULT_ROUTE)
    p.add_argument("--eps", type=float, default=measure.DEFAULT_SEP_EPSILON, help="separability threshold on E^2")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p = sub.add_parser("gen", help="write a named state")
    _add_gen_args(p, required_name=True)
    p.add_argument("--emit-state", metavar="FILE", help="write .qs here instead of stdout")

    p = sub.add_parser("search", help="hill-climb the global measure")
    p.add_argument("--dims", type=parse_dims, required=True)
    p.add_argument("--restarts", type=int, default=16)
    p.add_argument("--iters", type=int, default=5000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--step", type=float, default=0.3)
    p.add_argument("--decay", type=float, default=0.97)
    p.add_argument("--route", choices=measure.ROUTES, default=measure.DEFAULT_ROUTE)
    p.add_argument("--out", metavar="FILE", help="write best state (.qs) and report (.json)")

    p = sub.add_parser("bench", help="time wedge route against trace route")
    p.add_argument("--dims-list", type=parse_dims, nargs="+", required=True, metavar="DIMS")
    p.add_argument("--cuts", nargs="+", required=True, metavar="CUT")
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("selftest", help="randomized identity checks")
    p.add_argument("--lagrange", action="store_true", help="fuzz Lagrange's identity")
    p.add_argument("--routes", action="store_true", help="fuzz agreement of the three routes")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--max-m", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("parse", help="evaluate a ket expression")
    p.add_argument("--ket", required=True, metavar="EXPR")
    p.add_argument("--dims", type=parse_dims)
    p.add_argument("--format", choices=("qs", "ket", "json"), default="qs")
    return parser


def _load_state(args) -> qstate.PureState:
    if args.state:
        return qstate.read_qs(args.state)
    if args.ket:
        state = parse_ket(args.ket, args.dims)
        _warn_normalized(state)
        return state
    return _generate(args.gen, args.n, args.d)


def _generate(name: str, n: int | None, d: int) -> qstate.PureState:
    if n is None:
        n = {"bell": 2, "hs": 4}.get(name, 3)
    return qstate.standard_state(name, n, d)


def _warn_normalized(state: qstate.PureState) -> None:
    if state.was_normalized:
        print("warning: input was not normalized; amplitudes rescaled to unit norm", file=sys.stderr)


def cmd_measure(args, out) -> int:
    state = _load_state(args)
    cuts = None
    if args.cut:
        cuts = [measure.Bipartition.parse(state.n, args.cut)]
    report = measure.global_report(state, args.route, args.eps, cuts=cuts)
    if args.format == "json":
        out.write(report.to_json() + "\n")
    elif args.format == "csv":
        out.write(report.to_csv())
    else:
        out.write(report.format_text() + "\n")
    return 0


def cmd_gen(args, out) -> int:
    state = _generate(args.name, args.n, args.d)
    comment = f"{args.name} n={state.n} d={args.d}"
    if args.emit_state:
        qstate.write_qs(args.emit_state, state, comment)
    else:
        out.write(qstate.format_qs(state, comment))
    return 0


def cmd_search(args, out) -> int:
    config = search.SearchConfig(
        dims=args.dims,
        restarts=args.restarts,
        iters_per_restart=args.iters,
        initial_step=args.step,
        decay=args.decay,
        seed=args.seed,
        route=args.route,
    )
    result = search.maximize(config)
    payload = {
        "dims": list(config.dims),
        "restarts": config.restarts,
        "iters_per_restart": config.iters_per_restart,
        "seed": config.seed,
        "best_restart": result.best_restart,
        "trajectory": result.trajectory,
        "evaluations": result.evaluations,
        "max_evaluated": result.max_evaluated,
        "upper_bound": search.global_upper_bound(config.dims),
        "report": result.best_report.to_dict(),
    }
    text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        path = Path(args.out)
        state_path = path if path.suffix == ".qs" else path.with_suffix(".qs")
        qstate.write_qs(state_path, result.best_state, f"search seed={config.seed} global_E={result.best_report.global_E!r}")
        state_path.with_suffix(".json").write_text(result.best_report.to_json() + "\n", encoding="utf-8")
    out.write(text)
    return 0


def cmd_bench(args, out) -> int:
    rows = bench.run_bench(args.dims_list, args.cuts, reps=args.reps, seed=args.seed)
    out.write(bench.rows_to_csv(rows))
    gap = bench.echo_gap(rows)
    if gap > 1e-9:
        raise GenConcError(f"routes disagree by {gap:.3g}")
    return 0


def cmd_selftest(args, out) -> int:
    if not (args.lagrange or args.routes):
        raise _Usage("selftest needs --lagrange and/or --routes")
    ok = True
    if args.lagrange:
        res = selftest.lagrange_fuzz(args.samples, args.max_m, args.seed)
        out.write(f"lagrange samples={res.samples} max_m={args.max_m} max_rel_gap={res.worst:.3e} "
                  f"tol={res.tol:.0e} {'PASS' if res.passed else 'FAIL'}\n")
        ok &= res.passed
    if args.routes:
        res = selftest.route_fuzz(args.samples, args.seed)
        out.write(f"routes samples={res.samples} max_abs_diff={res.worst:.3e} "
                  f"tol={res.tol:.0e} {'PASS' if res.passed else 'FAIL'}\n")
        ok &= res.passed
    if not ok:
        raise _SelftestFailed("tolerance exceeded")
    return 0


def cmd_parse(args, out) -> int:
    state = parse_ket(args.ket, args.dims)
    _warn_normalized(state)
    if args.format == "ket":
        out.write(render_ket(state) + "\n")
    elif args.format == "json":
        amps = [[float(a.real), float(a.imag)] for a in state.amplitudes]
        out.write(json.dumps({"dims": list(state.dims), "amplitudes": amps}) + "\n")
    else:
        out.write(qstate.format_qs(state))
    return 0


class _Usage(Exception):
    pass


class _SelftestFailed(GenConcError):
    code = "selftest"


COMMANDS = {
    "measure": cmd_measure,
    "gen": cmd_gen,
    "search": cmd_search,
    "bench": cmd_bench,
    "selftest": cmd_selftest,
    "parse": cmd_parse,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "search":
        logging.basicConfig(level=logging.INFO, format="%(message)s", stream=sys.stderr)
    try:
        return COMMANDS[args.command](args, out)
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        print(f"genconc: error: {exc}", file=sys.stderr)
        return 2
    except GenConcError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: value: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())

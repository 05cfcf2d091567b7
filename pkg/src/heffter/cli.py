"""
Command line entry point: ``heffter {generate,verify,search,compose,catalog}``.

Exit codes: 0 success, 1 verification failure (or proven infeasible search),
2 inadmissible parameters, 3 unsupported parameters, 4 solver timeout,
64 command line usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import io as gio
from .core import (
    HeffterParams,
    IhsParams,
    InadmissibleError,
    UnsupportedError,
    verify_heffter,
    verify_ihs,
)
from .heffter_builder import construct_with_route, diagonal_compose
from .ihs_builder import build_ihs, route_ihs
from .solver import SolverTimeout, SolveTask, Status, base_skeleton, probe_open, solve, split_blocks

EXIT_OK, EXIT_INVALID, EXIT_INADMISSIBLE, EXIT_UNSUPPORTED, EXIT_TIMEOUT, EXIT_USAGE = 0, 1, 2, 3, 4, 64


class _Parser(argparse.ArgumentParser):
    # argparse's own exit status 2 would collide with "inadmissible"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(text: str, output: str | None):
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _note(msg: str):
    print(msg, file=sys.stderr)


def cmd_generate(args) -> int:
    if args.c is not None:
        if args.s is not None or args.k is not None:
            raise _Usage("give either --c or --s/--k, not both")
        p = IhsParams(args.m, args.n, args.c)
        route = route_ihs(p)
        blocks = build_ihs(p)
        _note(f"route: {route}")
        if args.format == "csv":
            raise _Usage("CSV holds a single grid; use JSON for an IHS")
        _emit(gio.dumps_set(blocks, {"params": [p.m, p.n, p.c], "route": route}), args.output)
        return EXIT_OK
    if args.s is None or args.k is None:
        raise _Usage("generate needs --s and --k, or --c")
    g, route = construct_with_route(args.m, args.n, args.s, args.k, args.fixtures_dir, args.seed, args.budget_ms)
    _note(f"route: {route}")
    if args.format == "csv":
        _emit(gio.dumps_csv(g), args.output)
    else:
        _emit(gio.dumps_grid(g, {"params": [args.m, args.n, args.s, args.k], "route": route, "seed": args.seed}), args.output)
    return EXIT_OK


def _infer_heffter(g, args) -> HeffterParams:
    s = args.s if args.s is not None else g.row_counts()[0]
    k = args.k if args.k is not None else g.col_counts()[0]
    return HeffterParams(g.rows, g.cols, max(s, 1), max(k, 1))


def cmd_verify(args) -> int:
    if str(args.file).lower().endswith(".csv"):
        docs = [gio.read_grid(args.file, "csv")]
    else:
        docs = gio.read_set(args.file)
        with open(args.file) as fh:
            is_set = json.load(fh).get("schema") == gio.SET_SCHEMA
        if is_set:
            m, n = docs[0].shape
            p = IhsParams(m, n, len(docs))
            report = verify_ihs(docs, p)
            _print_report(report, str(p), args.json)
            return EXIT_OK if report.valid else EXIT_INVALID
    g = docs[0]
    p = _infer_heffter(g, args)
    report = verify_heffter(g, p)
    _print_report(report, str(p), args.json)
    return EXIT_OK if report.valid else EXIT_INVALID


def _print_report(report, label: str, as_json: bool):
    if as_json:
        print(json.dumps({"params": label, **report.to_dict()}, indent=1))
    else:
        print(f"{label}: {report}")


def cmd_search(args) -> int:
    budget = args.budget_ms
    if args.open:
        if args.m is None or args.n is None or args.c is None:
            raise _Usage("--open needs --m, --n and --c")
        outcome = probe_open(args.m, args.n, args.c, budget_ms=budget, seed=args.seed, fixtures_dir=args.fixtures_dir)
        _note(f"outcome: {outcome}")
        if outcome.found:
            _emit(gio.dumps_set(split_blocks(outcome.grid, args.m, args.n, args.c), {"params": [args.m, args.n, args.c], "route": "solver", "seed": args.seed}), args.output)
        return _search_exit(outcome)
    seed = None if args.exhaustive else args.seed
    if args.base is not None:
        N = args.base
        task = SolveTask(4 * N, 4 * N, base_skeleton(N), seed=seed, budget_ms=budget)
    elif args.skeleton:
        g = gio.read_grid(args.skeleton)
        task = SolveTask(g.rows, g.cols, frozenset(g.skeleton()), seed=seed, budget_ms=budget)
    elif args.m is not None and args.n is not None:
        c = args.c or 1
        p = IhsParams(args.m, args.n, c)
        if not p.admissible():
            raise InadmissibleError(f"{p} is not admissible: " + "; ".join(p.failures()))
        task = SolveTask.block_diagonal(args.m, args.n, c, seed=seed, budget_ms=budget)
    else:
        raise _Usage("search needs --base N, --skeleton FILE, or --m/--n [--c]")
    outcome = solve(task)
    _note(f"outcome: {outcome}")
    if outcome.found:
        meta = {"route": "solver", "seed": seed, "nodes": outcome.nodes}
        if args.m is not None and args.base is None and not args.skeleton:
            c = args.c or 1
            _emit(gio.dumps_set(split_blocks(outcome.grid, args.m, args.n, c), meta), args.output)
        else:
            _emit(gio.dumps_grid(outcome.grid, meta), args.output)
    return _search_exit(outcome)


def _search_exit(outcome) -> int:
    return {Status.FOUND: EXIT_OK, Status.INFEASIBLE: EXIT_INVALID, Status.TIMED_OUT: EXIT_TIMEOUT}[outcome.status]


def cmd_compose(args) -> int:
    blocks = []
    for f in args.files:
        blocks += gio.read_set(f)
    try:
        g = diagonal_compose(blocks)
    except ValueError as exc:
        _note(str(exc))
        return EXIT_INVALID
    k, s = blocks[0].shape
    c = len(blocks)
    _note(f"route: diagonal-compose of IHS({k},{s};{c})")
    if args.format == "csv":
        _emit(gio.dumps_csv(g), args.output)
    else:
        _emit(gio.dumps_grid(g, {"params": [c * k, c * s, s, k], "route": "diagonal-compose"}), args.output)
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.action == "list":
        for name, path in gio.list_fixtures(args.fixtures_dir):
            print(f"{name}\t{path}")
        return EXIT_OK
    if args.action == "install":
        if not args.file:
            raise _Usage("catalog install needs FILE")
        dest = gio.install_fixture(args.file, args.name or os.path.basename(args.file), args.fixtures_dir)
        print(dest)
        return EXIT_OK
    if not args.file:
        raise _Usage("catalog show needs a fixture NAME")
    path = gio.find_fixture(args.file, args.fixtures_dir)
    if path is None:
        _note(f"no fixture named {args.file}")
        return EXIT_INVALID
    sys.stdout.write(path.read_text())
    return EXIT_OK


class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="heffter", description="Integer Heffter arrays and Heffter array sets.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fixtures-dir", default=None, help=f"fixture catalog directory (default: ${gio.FIXTURES_ENV})")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget-ms", type=int, default=600_000)
    common.add_argument("--output", "-o", default=None, help="write the document here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", parents=[common], help="build an H(m,n;s,k) or IHS(m,n;c)")
    for name in ("m", "n"):
        g.add_argument(f"--{name}", type=int, required=True)
    for name in ("s", "k", "c"):
        g.add_argument(f"--{name}", type=int)
    g.add_argument("--format", choices=("json", "csv"), default="json")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", parents=[common], help="verify a grid or set document")
    v.add_argument("file")
    v.add_argument("--s", type=int)
    v.add_argument("--k", type=int)
    v.add_argument("--json", action="store_true", help="print the report as JSON")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", parents=[common], help="run the exact search")
    s.add_argument("--base", type=int, metavar="N", help="diagonal skeleton of an H(4N;5)")
    s.add_argument("--skeleton", metavar="FILE", help="use the filled cells of a grid document")
    for name in ("m", "n", "c"):
        s.add_argument(f"--{name}", type=int)
    s.add_argument("--open", action="store_true", help="probe the open IHS(m,3;c) / IHS(m,5;c) families")
    s.add_argument("--exhaustive", action="store_true", help="fixed value order, can prove infeasibility")
    s.set_defaults(func=cmd_search, budget_ms=60_000)

    c = sub.add_parser("compose", parents=[common], help="diagonal composition of IHS documents")
    c.add_argument("files", nargs="+")
    c.add_argument("--format", choices=("json", "csv"), default="json")
    c.set_defaults(func=cmd_compose)

    k = sub.add_parser("catalog", parents=[common], help="list, show or install fixtures")
    k.add_argument("action", choices=("list", "show", "install"))
    k.add_argument("file", nargs="?")
    k.add_argument("--name")
    k.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        _note(f"heffter: error: {exc}")
        return EXIT_USAGE
    except InadmissibleError as exc:
        _note(f"inadmissible: {exc}")
        return EXIT_INADMISSIBLE
    except UnsupportedError as exc:
        _note(f"unsupported: {exc}" + (f" (covered by {exc.covered_by})" if exc.covered_by else ""))
        return EXIT_UNSUPPORTED
    except SolverTimeout as exc:
        _note(f"timeout: {exc}")
        return EXIT_TIMEOUT
    except (gio.GridFormatError, OSError) as exc:
        _note(f"error: {exc}")
        return EXIT_INVALID
    except ValueError as exc:
        _note(f"heffter: error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

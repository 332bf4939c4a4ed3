"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 validation failure, 3 cap exceeded.
Results go to standard output or files, diagnostics to standard error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from typing import List, Optional

from . import __version__
from .alignment import conformance_bounds
from .behavior_net import build_behavior_net
from .discovery import MAX, MIN, compute_udfg, filter_udfg, im_discover, tree_to_net
from .errors import CapExceededError, SchemaError, ShorthandSyntaxError, StrongUncertaintyError
from .event_model import UncertainLog, validate
from .injection import InjectionConfig, inject
from .log_io import (
    FORMATS,
    export_dot_net,
    export_dot_udfg,
    export_xes,
    guess_format,
    load_net,
    parse_log,
    render_shorthand,
    to_json,
)
from .realizations import DEFAULT_CAP, DEFAULT_SAMPLES, Realization, enumerate_realizations, realization_distribution

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_CAP = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("%s: error: %s\n" % (self.prog, message))
        raise SystemExit(EXIT_USAGE)


class _Run:
    """Collects what goes into the run report."""

    def __init__(self, argv):
        self.argv = list(argv)
        self.inputs = {}
        self.results = {}
        self.seed = None
        self.started = time.perf_counter()

    def read(self, path: str) -> str:
        try:
            with open(path, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            raise UsageError("cannot read %s: %s" % (path, exc.strerror)) from exc
        self.inputs[path] = hashlib.sha256(data).hexdigest()
        return data.decode("utf-8")

    def report(self) -> dict:
        return {
            "command": self.argv,
            "inputs": self.inputs,
            "results": self.results,
            "seed": self.seed,
            "elapsed_ms": round((time.perf_counter() - self.started) * 1000.0, 3),
        }


def _write(path: str, text: str, run: _Run) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    run.results.setdefault("files", []).append(path)


def _load_log(run: _Run, path: str, fmt: Optional[str] = None, check: bool = True) -> UncertainLog:
    log = parse_log(run.read(path), fmt or guess_format(path))
    if check:
        violations = validate(log)
        if violations:
            raise _Invalid(violations)
    return log


class _Invalid(Exception):
    def __init__(self, violations):
        self.violations = violations


def _trace(log: UncertainLog, case_id: str):
    try:
        return log.trace(case_id)
    except KeyError:
        raise UsageError("no trace with case id %r" % case_id) from None


def _fmt_realization(r: Realization) -> str:
    text = "<%s>" % ", ".join(r.activities)
    if r.excluded:
        text += "  absent: %s" % ", ".join(sorted(r.excluded))
    return text


def cmd_parse(args, run):
    log = _load_log(run, args.input, args.format)
    if args.out == "json":
        sys.stdout.write(to_json(log, indent=2) + "\n")
    elif args.out == "shorthand":
        sys.stdout.write(render_shorthand(log) + "\n")
    else:
        sys.stdout.write(export_xes(log))
    run.results["traces"] = len(log)
    return EXIT_OK


def cmd_stats(args, run):
    log = _load_log(run, args.input)
    n_events = sum(len(t) for t, _ in log.traces)
    print("traces: %d" % len(log))
    print("weighted traces: %d" % sum(w for _, w in log.traces))
    print("events: %d" % n_events)
    code = EXIT_OK
    per_trace = {}
    for trace, weight in log.traces:
        try:
            count = str(len(enumerate_realizations(trace, args.cap)))
        except CapExceededError:
            count = ">%d" % args.cap
            code = EXIT_CAP
        per_trace[trace.case_id] = count
        print("%s\tevents=%d\tweight=%d\trealizations=%s" % (trace.case_id, len(trace), weight, count))
    run.results.update(traces=len(log), events=n_events, realizations=per_trace)
    if code == EXIT_CAP:
        sys.stderr.write("realization cap %d exceeded for some traces\n" % args.cap)
    return code


def cmd_bnet(args, run):
    log = _load_log(run, args.input)
    net = build_behavior_net(_trace(log, args.trace))
    _write(args.dot, export_dot_net(net), run)
    run.results.update(places=len(net.places), transitions=len(net.transitions))
    return EXIT_OK


def cmd_realize(args, run):
    log = _load_log(run, args.input)
    trace = _trace(log, args.trace)
    if args.probs:
        run.seed = args.seed
        dist = realization_distribution(trace, args.samples, args.seed, args.cap, args.defaults)
        for r, p in dist:
            print("%.6f\t%s" % (p, _fmt_realization(r)))
        run.results["realizations"] = len(dist)
    else:
        rs = sorted(enumerate_realizations(trace, args.cap), key=Realization.sort_key)
        for r in rs:
            print(_fmt_realization(r))
        run.results["realizations"] = len(rs)
    return EXIT_OK


def cmd_align(args, run):
    log = _load_log(run, args.log)
    model = load_net(run.read(args.model), name=args.model)
    code = EXIT_OK
    rows = {}
    for trace, _ in log.traces:
        try:
            b = conformance_bounds(trace, model, args.cap)
        except CapExceededError as exc:
            b = exc.partial
            code = EXIT_CAP
            sys.stderr.write("%s\n" % exc)
        print(b.as_row())
        print("  best case (cost %d):" % b.lower_witness.cost)
        print("\n".join("    " + line for line in b.lower_witness.render().splitlines()))
        if b.upper_witness is not None:
            print("  worst case (cost %d):" % b.upper_witness.cost)
            print("\n".join("    " + line for line in b.upper_witness.render().splitlines()))
        rows[trace.case_id] = {"lower": b.lower, "upper": b.upper}
    run.results["bounds"] = rows
    return code


def cmd_udfg(args, run):
    log = _load_log(run, args.input)
    g = compute_udfg(log, args.cap)
    _write(args.dot, export_dot_udfg(g), run)
    run.results["edges"] = len(g.edges)
    return EXIT_OK


def cmd_discover(args, run):
    log = _load_log(run, args.input)
    dfg = filter_udfg(compute_udfg(log, args.cap), args.mode, args.threshold)
    tree = im_discover(dfg)
    if args.tree or not args.dot:
        print(str(tree))
    if args.dot:
        _write(args.dot, export_dot_net(tree_to_net(tree)), run)
    run.results["tree"] = str(tree)
    return EXIT_OK


def cmd_inject(args, run):
    log = _load_log(run, args.input)
    try:
        config = InjectionConfig.from_json(run.read(args.config))
    except (ValueError, TypeError) as exc:
        raise SchemaError(str(exc), "$") from exc
    run.seed = config.seed
    out = inject(log, config)
    _write(args.out, to_json(out, indent=2) + "\n", run)
    run.results["traces"] = len(out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", metavar="PATH", help="write a JSON run report to PATH")

    p = _Parser(prog="uncertain-pm", description="Process mining over uncertain event data.")
    p.add_argument("--version", action="version", version="%(prog)s " + __version__)
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("parse", parents=[common], help="validate and normalize a log")
    s.add_argument("input")
    s.add_argument("--format", choices=FORMATS)
    s.add_argument("--out", choices=("json", "shorthand", "xes"), default="json")
    s.set_defaults(func=cmd_parse)

    s = sub.add_parser("stats", parents=[common], help="trace/event/realization counts")
    s.add_argument("input")
    s.add_argument("--cap", type=int, default=DEFAULT_CAP)
    s.set_defaults(func=cmd_stats)

    s = sub.add_parser("bnet", parents=[common], help="behavior net of one trace as DOT")
    s.add_argument("input")
    s.add_argument("--trace", required=True, metavar="CASE_ID")
    s.add_argument("--dot", required=True, metavar="OUT")
    s.set_defaults(func=cmd_bnet)

    s = sub.add_parser("realize", parents=[common], help="list the realizations of one trace")
    s.add_argument("input")
    s.add_argument("--trace", required=True, metavar="CASE_ID")
    s.add_argument("--cap", type=int, default=DEFAULT_CAP)
    s.add_argument("--probs", action="store_true", help="also estimate probabilities")
    s.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--defaults", action="store_true", help="uniform defaults for strongly uncertain attributes")
    s.set_defaults(func=cmd_realize)

    s = sub.add_parser("align", parents=[common], help="conformance bounds against a reference net")
    s.add_argument("log")
    s.add_argument("--model", required=True, metavar="NET_JSON")
    s.add_argument("--cap", type=int, default=DEFAULT_CAP)
    s.set_defaults(func=cmd_align)

    s = sub.add_parser("udfg", parents=[common], help="uncertain directly-follows graph as DOT")
    s.add_argument("input")
    s.add_argument("--dot", required=True, metavar="OUT")
    s.add_argument("--cap", type=int, default=DEFAULT_CAP)
    s.set_defaults(func=cmd_udfg)

    s = sub.add_parser("discover", parents=[common], help="inductive mining over a filtered UDFG")
    s.add_argument("input")
    s.add_argument("--mode", choices=(MIN, MAX), required=True)
    s.add_argument("--threshold", type=int, required=True)
    s.add_argument("--tree", action="store_true", help="print the process tree")
    s.add_argument("--dot", metavar="OUT", help="write the Petri net as DOT")
    s.add_argument("--cap", type=int, default=DEFAULT_CAP)
    s.set_defaults(func=cmd_discover)

    s = sub.add_parser("inject", parents=[common], help="add synthetic uncertainty to a log")
    s.add_argument("input")
    s.add_argument("--config", required=True, metavar="CFG_JSON")
    s.add_argument("--out", required=True, metavar="OUT")
    s.set_defaults(func=cmd_inject)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    run = _Run(argv)
    for name in ("cap", "samples", "threshold"):
        if getattr(args, name, 1) is not None and getattr(args, name, 1) < (0 if name == "threshold" else 1):
            sys.stderr.write("--%s must be positive\n" % name)
            return EXIT_USAGE
    try:
        code = args.func(args, run)
    except UsageError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_USAGE
    except _Invalid as exc:
        for v in exc.violations:
            sys.stderr.write("violation: %s\n" % v)
        return EXIT_INVALID
    except (SchemaError, ShorthandSyntaxError, StrongUncertaintyError, ValueError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_INVALID
    except CapExceededError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_CAP
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(run.report(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())

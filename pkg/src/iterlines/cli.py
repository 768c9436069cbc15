"""Command-line front end.

Exit status: 0 on success, 1 on any error, 2 on bad usage, 3 when a budget
cap was hit, 4 when ``verify-trace`` rejects a trace.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Sequence, TextIO

from .classify import classify
from .closure import Budget, BudgetExceeded, PointSet, growth_stats, iterate, order, spanned_lines, t_step
from .density import FiniteOrderError, approximate_point
from .kernel import DegenerateError, Point
from .rational import ReachError, reach
from .svg import emit_svg
from .trace import TraceError, dumps, loads, parse_rational, verify_trace

EXIT_OK, EXIT_ERROR, EXIT_USAGE, EXIT_BUDGET, EXIT_INVALID = 0, 1, 2, 3, 4

ENV_PREFIX = "ITERLINES_"
_BUDGET_FIELDS = {
    "max_points": int,
    "max_bits": int,
    "max_seconds": float,
    "max_iterations": int,
    "max_steps": int,
}


class ParseError(ValueError):
    def __init__(self, line: int, column: int, reason: str):
        super().__init__(f"line {line}, column {column}: {reason}")
        self.line = line
        self.column = column
        self.reason = reason


def parse_points(text: str) -> PointSet:
    """One ``x y`` pair per line; blank lines and ``#`` comments are skipped."""
    pts = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        toks = []
        col = 0
        for tok in body.split():
            col = body.index(tok, col)
            toks.append((col + 1, tok))
            col += len(tok)
        if not toks:
            continue
        if len(toks) != 2:
            where = toks[2][0] if len(toks) > 2 else len(body.rstrip()) + 1
            raise ParseError(lineno, where, f"expected 2 coordinates, found {len(toks)}")
        coords = []
        for column, tok in toks:
            try:
                coords.append(parse_rational(tok))
            except ValueError as exc:
                raise ParseError(lineno, column, str(exc)) from None
        pts.append(Point._make(*coords))
    return PointSet(pts)


def format_value(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def format_points(s) -> str:
    return "".join(f"{format_value(p[0])} {format_value(p[1])}\n" for p in s)


def _json_points(s) -> list[list[str]]:
    return [[format_value(p[0]), format_value(p[1])] for p in s]


@dataclass
class CommandConfig:
    subcommand: str
    input_path: Optional[str] = None
    inline_points: Optional[str] = None
    budget: Budget = field(default_factory=Budget)
    fmt: str = "text"
    n: int = 1
    target: Optional[Point] = None
    eps_sq: Optional[Fraction] = None
    output: Optional[str] = None
    trace_file: Optional[str] = None
    draw_lines: bool = False

    def __post_init__(self):
        needs_points = self.subcommand != "verify-trace"
        sources = (self.input_path is not None) + (self.inline_points is not None)
        if needs_points and sources != 1:
            raise ValueError("give exactly one input: a file (or '-') or --points")


def budget_from_env(environ=None) -> Budget:
    environ = os.environ if environ is None else environ
    kw = {}
    for name, kind in _BUDGET_FIELDS.items():
        raw = environ.get(ENV_PREFIX + name.upper())
        if raw is not None:
            try:
                kw[name] = kind(raw)
            except ValueError:
                raise ValueError(f"{ENV_PREFIX + name.upper()} is not a number: {raw!r}") from None
    return Budget(**kw)


def _read_input(cfg: CommandConfig, stdin: TextIO) -> PointSet:
    if cfg.inline_points is not None:
        return parse_points(cfg.inline_points.replace(";", "\n"))
    if cfg.input_path == "-":
        return parse_points(stdin.read())
    with open(cfg.input_path, encoding="utf-8") as fh:
        return parse_points(fh.read())


def _emit(out: TextIO, cfg: CommandConfig, text: str, record: dict) -> None:
    if cfg.fmt == "json":
        out.write(json.dumps(record, sort_keys=True) + "\n")
    else:
        out.write(text)


def _cmd_classify(cfg, s, out):
    conf = classify(s)
    status = "fixed" if conf.fixed else "not fixed"
    _emit(out, cfg, f"{conf.kind.value}, {status}\n",
          {"command": "classify", "kind": conf.kind.value, "fixed": conf.fixed,
           "finite_order": conf.finite_order})


def _point_result(cfg, name, s, res, out):
    if cfg.fmt == "svg":
        lines = spanned_lines(s) if cfg.draw_lines else ()
        out.write(emit_svg(s, res, lines))
        return
    _emit(out, cfg, format_points(res),
          {"command": name, "size": len(res), "points": _json_points(res)})


def _cmd_step(cfg, s, out):
    _point_result(cfg, "step", s, t_step(s, cfg.budget), out)


def _cmd_iterate(cfg, s, out):
    _point_result(cfg, "iterate", s, iterate(s, cfg.n, cfg.budget), out)


def _cmd_svg(cfg, s, out):
    res = iterate(s, cfg.n, cfg.budget) if cfg.n else PointSet()
    lines = spanned_lines(s) if cfg.draw_lines else ()
    out.write(emit_svg(s, res, lines))


def _cmd_order(cfg, s, out):
    res = order(s, cfg.budget)
    counts = res.stats.counts
    if res.finite:
        _emit(out, cfg, f"finite {res.order}\n",
              {"command": "order", "finite": True, "order": res.order, "counts": counts})
        return EXIT_OK
    _emit(out, cfg, f"unknown ({res.stats.stopped} after {len(counts) - 1} iterations)\n",
          {"command": "order", "finite": False, "order": None, "stopped": res.stats.stopped,
           "counts": counts})
    return EXIT_BUDGET


def _cmd_growth(cfg, s, out):
    stats = growth_stats(s, cfg.n, cfg.budget)
    if cfg.fmt == "json":
        # timings are left out so that structured output is reproducible
        recs = [{"iteration": r.index, "points": r.points, "lines": r.lines, "max_bits": r.max_bits}
                for r in stats.records]
        _emit(out, cfg, "", {"command": "growth", "records": recs, "stopped": stats.stopped})
    else:
        out.write("iteration points lines max_bits seconds\n")
        for r in stats.records:
            out.write(f"{r.index} {r.points} {r.lines} {r.max_bits} {r.seconds:.4f}\n")
        out.write(f"stopped: {stats.stopped}\n")
    return EXIT_OK if stats.stopped in ("fixpoint", "max-iterations") else EXIT_BUDGET


def _write_trace(cfg, text: str) -> None:
    with open(cfg.output, "w", encoding="utf-8") as fh:
        fh.write(text)


def _cmd_reach(cfg, s, out):
    trace = reach(s, cfg.target, cfg.budget)
    text = dumps(trace)
    depth = trace.depth()
    if cfg.output:
        _write_trace(cfg, text)
    summary = f"steps {len(trace.steps)} depth {depth}\n"
    _emit(out, cfg, summary if cfg.output else text,
          {"command": "reach", "steps": len(trace.steps), "depth": depth, "trace": text})


def _cmd_density(cfg, s, out):
    approx = approximate_point(s, cfg.target, cfg.eps_sq, cfg.budget)
    text = dumps(approx.trace)
    if cfg.output:
        _write_trace(cfg, text)
    p = approx.point
    _emit(out, cfg,
          f"point {format_value(p[0])} {format_value(p[1])}\n"
          f"distance_sq {format_value(approx.distance_sq)}\n"
          f"depth {approx.depth} steps {len(approx.trace.steps)}\n",
          {"command": "density-demo", "point": _json_points([p])[0],
           "distance_sq": format_value(approx.distance_sq), "depth": approx.depth,
           "steps": len(approx.trace.steps), "trace": text})


def _cmd_verify(cfg, out):
    with open(cfg.trace_file, encoding="utf-8") as fh:
        raw = fh.read()
    try:
        trace = loads(raw)
    except TraceError as exc:
        _emit(out, cfg, f"invalid: {exc}\n", {"command": "verify-trace", "valid": False, "reason": str(exc)})
        return EXIT_INVALID
    res = verify_trace(trace)
    if res.valid:
        _emit(out, cfg, f"valid: {len(trace.steps)} steps, depth {trace.depth()}\n",
              {"command": "verify-trace", "valid": True, "steps": len(trace.steps),
               "depth": trace.depth()})
        return EXIT_OK
    _emit(out, cfg, f"invalid at step {res.step}: {res.reason}\n",
          {"command": "verify-trace", "valid": False, "step": res.step, "reason": res.reason})
    return EXIT_INVALID


_COMMANDS = {
    "classify": _cmd_classify,
    "step": _cmd_step,
    "iterate": _cmd_iterate,
    "order": _cmd_order,
    "growth": _cmd_growth,
    "reach": _cmd_reach,
    "density-demo": _cmd_density,
    "svg": _cmd_svg,
}
_SVG_OK = {"step", "iterate", "svg"}


def run(cfg: CommandConfig, stdin: TextIO = None, stdout: TextIO = None, stderr: TextIO = None) -> int:
    stdin = stdin or sys.stdin
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    if cfg.fmt == "svg" and cfg.subcommand not in _SVG_OK:
        err.write(f"error: --format svg is not available for {cfg.subcommand}\n")
        return EXIT_ERROR
    try:
        if cfg.subcommand == "verify-trace":
            return _cmd_verify(cfg, out)
        s = _read_input(cfg, stdin)
        status = _COMMANDS[cfg.subcommand](cfg, s, out)
        return EXIT_OK if status is None else status
    except BudgetExceeded as exc:
        err.write(f"budget exceeded: {exc.reason}\n")
        return EXIT_BUDGET
    except ReachError as exc:
        err.write(f"reach failed at {exc.stage}: {exc.reason}\n")
        return EXIT_BUDGET if exc.exhausted else EXIT_ERROR
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
        return EXIT_ERROR
    except (FiniteOrderError, DegenerateError, TraceError, ValueError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_ERROR


def _rational_arg(tok: str) -> Fraction:
    try:
        return parse_rational(tok)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(kind):
    def conv(tok: str):
        try:
            v = kind(tok)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a number: {tok!r}") from None
        if v <= 0:
            raise argparse.ArgumentTypeError("must be positive")
        return v
    return conv


def _nonneg_int(tok: str) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {tok!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


_NEGATIVE_RATIONAL = re.compile(r"^-\d+(/\d+)?$")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("text", "json", "svg"), default="text")
    bud = common.add_argument_group("budget (defaults from ITERLINES_MAX_* environment variables)")
    for name, kind in _BUDGET_FIELDS.items():
        bud.add_argument("--" + name.replace("_", "-"), dest=name, type=_positive(kind), default=None)

    pointed = argparse.ArgumentParser(add_help=False, parents=[common])
    pointed.add_argument("input", nargs="?", help="point file, or '-' for stdin")
    pointed.add_argument("--points", dest="inline_points",
                         help="inline points, separated by newlines or ';'")

    parser = argparse.ArgumentParser(prog="iterlines", description="Iterated line intersections.")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("classify", parents=[pointed], help="closed-form order classification")
    sub.add_parser("step", parents=[pointed], help="one application of the operator")
    for name in ("iterate", "growth"):
        p = sub.add_parser(name, parents=[pointed])
        p.add_argument("-n", type=_nonneg_int, required=True)
    sub.add_parser("order", parents=[pointed], help="order by iteration, within budget")
    for name in ("reach", "density-demo"):
        p = sub.add_parser(name, parents=[pointed])
        p.add_argument("--target", nargs=2, type=_rational_arg, required=True, metavar=("X", "Y"))
        p.add_argument("--output", "-o", help="write the trace to this file")
        if name == "density-demo":
            p.add_argument("--eps-sq", type=_rational_arg, required=True)
    p = sub.add_parser("verify-trace", parents=[common])
    p.add_argument("trace_file", metavar="FILE")
    p = sub.add_parser("svg", parents=[pointed], help="render the input and its iterate")
    p.add_argument("-n", type=_nonneg_int, default=1, help="iterate to highlight (0 for none)")
    p.add_argument("--lines", dest="draw_lines", action="store_true", help="draw spanned lines")
    for name in ("step", "iterate"):
        sub.choices[name].add_argument("--lines", dest="draw_lines", action="store_true")
    # let negative rationals such as -5/2 through as values
    for prs in (parser, *sub.choices.values()):
        prs._negative_number_matcher = _NEGATIVE_RATIONAL
    return parser


def config_from_args(ns: argparse.Namespace, environ=None) -> CommandConfig:
    budget = budget_from_env(environ)
    overrides = {k: getattr(ns, k) for k in _BUDGET_FIELDS if getattr(ns, k, None) is not None}
    if overrides:
        budget = replace(budget, **overrides)
    target = getattr(ns, "target", None)
    return CommandConfig(
        subcommand=ns.subcommand,
        input_path=getattr(ns, "input", None),
        inline_points=getattr(ns, "inline_points", None),
        budget=budget,
        fmt=ns.fmt,
        n=getattr(ns, "n", 1),
        target=Point._make(*target) if target else None,
        eps_sq=getattr(ns, "eps_sq", None),
        output=getattr(ns, "output", None),
        trace_file=getattr(ns, "trace_file", None),
        draw_lines=getattr(ns, "draw_lines", False),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except ValueError as exc:
        parser.error(str(exc))
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())

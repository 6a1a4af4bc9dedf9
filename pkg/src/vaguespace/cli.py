"""``vaguespace`` command line.

Exit codes: 0 success, 1 a verdict failed (axiom or law), 2 usage or I/O
error.  A file argument of the form ``@name`` refers to a bundled fixture
(``@age``, ``@interval``, ``@older_man``, ``@process``).
"""

from __future__ import annotations

import argparse
import contextlib
import math
import os
import sys
from importlib import resources
from pathlib import Path

from . import io, settings
from .errors import VagueSpaceError
from .expr import parse_expr
from .partition import check_partition, fuzzy_set_of, global_conditional, separation_degree
from .product import ProductSpace
from .props import verify_laws
from .space import Status, conditional_degree, evaluate
from .variables import balanced_value, cdf, cdf_curve

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def resolve_path(arg: str) -> Path:
    if arg.startswith("@"):
        ref = resources.files("vaguespace") / "data" / f"{arg[1:]}.json"
        if not ref.is_file():
            raise UsageError(f"no bundled fixture named {arg[1:]!r}")
        return Path(str(ref))
    return Path(arg)


def _real(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}") from None
    if math.isnan(value):
        raise argparse.ArgumentTypeError("NaN is not allowed")
    return value


def _grid(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must be min:max:step")
    lo, hi, step = (_real(p) for p in parts)
    if step <= 0 or hi < lo or not all(math.isfinite(v) for v in (lo, hi, step)):
        raise argparse.ArgumentTypeError("grid needs finite min <= max and step > 0")
    return lo, hi, step


def _grid_points(lo: float, hi: float, step: float) -> list[float]:
    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [lo + i * step for i in range(n)]


_VALUE_FLAGS = ("--x", "--at", "--grid", "--tol")


def _join_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--at -inf`` into ``--at=-inf`` so argparse does not read it as a flag."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            elif nxt.startswith("-") and not nxt.startswith("--"):
                out.append(f"{tok}={nxt}")
            else:
                out.extend([tok, nxt])
        else:
            out.append(tok)
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vaguespace", description="Vague membership spaces: checks, degrees, CDFs.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=_real, help="equality tolerance (default 1e-9)")
    common.add_argument("-o", dest="output", help="write output to this path instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        return p

    p = add("check", "run the axiom checker on every universe sample")
    p.add_argument("file")
    p.add_argument("--strict", action="store_true", help="also require the bounded-sum axiom")

    p = add("eval", "degree of an attribute expression")
    p.add_argument("file")
    p.add_argument("--expr", required=True)
    p.add_argument("--x", type=_real)

    p = add("residuum", "conditional degree of --expr given --given")
    p.add_argument("file")
    p.add_argument("--given", required=True)
    p.add_argument("--expr", required=True)
    p.add_argument("--x", type=_real, help="pointwise; omitted means the minimum over the universe")

    p = add("cdf", "membership-degree CDF of a vague variable")
    p.add_argument("file")
    p.add_argument("--variable", required=True)
    p.add_argument("--x", type=_real)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--at", type=_real)
    g.add_argument("--grid", type=_grid)

    p = add("balanced", "balanced value of a vague variable")
    p.add_argument("file")
    p.add_argument("--variable", required=True)
    p.add_argument("--x", type=_real)

    p = add("fuzzyset", "membership function of one attribute as x,mu CSV")
    p.add_argument("file")
    p.add_argument("--attribute", required=True)

    p = add("separation", "degree of separation of a partition")
    p.add_argument("file")

    p = add("product", "combine space files into a product file")
    p.add_argument("files", nargs="+")
    p.add_argument("--strict", action="store_true")

    p = add("verify-props", "randomized law checks over valid degree tables")
    p.add_argument("file")
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--strict", action="store_true")
    return parser


# -- helpers ----------------------------------------------------------------------

def _load_space(arg: str) -> io.SpaceFile:
    return io.load_space(resolve_path(arg))


def _space(model: io.SpaceFile, x: float | None):
    part = model.partition
    if x is None:
        if len(part) != 1:
            raise UsageError("--x is required for a multi-point universe")
        return part.spaces[0]
    return part.space_at(x)


def _emit(text: str, output: str | None, out) -> None:
    if output:
        try:
            Path(output).write_text(text, encoding="utf-8", newline="\n")
        except OSError as exc:
            raise UsageError(f"cannot write {output}: {exc.strerror or exc}") from None
    else:
        out.write(text)


def _failure_lines(report, label: str = "") -> list[str]:
    lines = []
    for r in report.failing():
        for name, v in r.verdicts.items():
            if v.status is Status.FAIL:
                where = f"x={io.fmt(r.x)}" if r.x is not None else "space"
                lines.append(f"{label}{where}: axiom {name} fails ({v.witness})")
    return lines


def _summary(report) -> str:
    head = "all axioms pass" if report.valid else "axiom failures"
    return "; ".join([head, "regular" if report.regular else "not regular", "normal" if report.normal else "not normal"])


# -- commands ---------------------------------------------------------------------

def cmd_check(args, out) -> int:
    model = io.load(resolve_path(args.file))
    if isinstance(model, io.SpaceFile):
        parts = [("", model.partition, args.strict or model.strict)]
    elif isinstance(model, io.ProductFile):
        parts = [(f"component {i}: ", c.partition, args.strict or c.strict) for i, c in enumerate(model.components)]
    else:
        parts = [(f"t={t}: ", p, args.strict) for t, p in zip(model.process.index, model.process.partitions)]
    ok = True
    lines = []
    for label, part, strict in parts:
        report = check_partition(part, strict, args.tol)
        ok = ok and report.valid
        lines.append(f"{label}{_summary(report)}")
        lines.extend(_failure_lines(report, label))
    _emit("\n".join(lines) + "\n", args.output, out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_eval(args, out) -> int:
    model = _load_space(args.file)
    expr = parse_expr(args.expr, model.partition.omega)
    if args.x is None and len(model.partition) > 1:
        rows = ((io.fmt(s.x), io.fmt(evaluate(s, expr))) for s in model.partition.spaces)
        _emit(io._csv(["x", "degree"], rows), args.output, out)
    else:
        _emit(io.fmt(evaluate(_space(model, args.x), expr)) + "\n", args.output, out)
    return EXIT_OK


def cmd_residuum(args, out) -> int:
    model = _load_space(args.file)
    omega = model.partition.omega
    given, target = parse_expr(args.given, omega), parse_expr(args.expr, omega)
    if args.x is None:
        value = global_conditional(model.partition, given, target)
    else:
        value = conditional_degree(model.partition.space_at(args.x), given, target)
    _emit(io.fmt(value) + "\n", args.output, out)
    return EXIT_OK


def cmd_cdf(args, out) -> int:
    model = _load_space(args.file)
    space = _space(model, args.x)
    var = model.variable(args.variable)
    if args.at is not None:
        _emit(io.fmt(cdf(space, var, args.at)) + "\n", args.output, out)
    elif args.grid is not None:
        pts = [(t, cdf(space, var, t)) for t in _grid_points(*args.grid)]
        _emit(io.cdf_csv(pts), args.output, out)
    else:
        _emit(io.curve_csv(cdf_curve(space, var)), args.output, out)
    return EXIT_OK


def cmd_balanced(args, out) -> int:
    model = _load_space(args.file)
    var = model.variable(args.variable)
    if args.x is None and len(model.partition) > 1:
        rows = ((io.fmt(s.x), io.fmt(balanced_value(s, var))) for s in model.partition.spaces)
        _emit(io._csv(["x", "balanced"], rows), args.output, out)
    else:
        _emit(io.fmt(balanced_value(_space(model, args.x), var)) + "\n", args.output, out)
    return EXIT_OK


def cmd_fuzzyset(args, out) -> int:
    model = _load_space(args.file)
    _emit(io.fuzzy_set_csv(fuzzy_set_of(model.partition, args.attribute)), args.output, out)
    return EXIT_OK


def cmd_separation(args, out) -> int:
    model = _load_space(args.file)
    _emit(io.fmt(separation_degree(model.partition)) + "\n", args.output, out)
    return EXIT_OK


def cmd_product(args, out) -> int:
    comps = [_load_space(f) for f in args.files]
    pf = io.ProductFile(comps)
    shape = ProductSpace(tuple(c.partition.spaces[0] for c in comps))
    ok = all(check_partition(c.partition, args.strict or c.strict, args.tol).valid for c in comps)
    if args.output:
        io.save_product(pf, args.output)
    dims = " x ".join(str(len(c.partition.omega)) for c in comps)
    msg = f"product of {shape.dimension} components; {shape.n_tuples} attribute tuples ({dims}); "
    msg += "all components valid" if ok else "invalid component"
    out.write(msg + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify_props(args, out) -> int:
    if args.seed is None:
        if os.environ.get("CI"):
            raise UsageError("--seed is mandatory when CI is set")
        args.seed = 0
    if args.samples < 1 or args.depth < 0:
        raise UsageError("--samples must be positive and --depth non-negative")
    model = _load_space(args.file)
    part = model.partition
    report = verify_laws(part.omega, part.algebra, args.samples, args.seed, args.depth, args.strict or model.strict, tol=args.tol)
    lines = [
        f"spaces {report.n_spaces}; expressions {report.n_exprs}; seed {args.seed}; "
        f"acceptance {io.fmt(report.acceptance)}"
    ]
    for r in report.results:
        if not r.applicable:
            lines.append(f"{r.name}: not applicable")
            continue
        line = f"{r.name}: {r.checked - r.failures}/{r.checked} pass"
        if r.failures:
            line += f"; counterexample {r.witness}"
        lines.append(line)
    lines.append("all laws hold" if report.passed else "counterexamples found")
    _emit("\n".join(lines) + "\n", args.output, out)
    return EXIT_OK if report.passed else EXIT_FAIL


COMMANDS = {
    "check": cmd_check,
    "eval": cmd_eval,
    "residuum": cmd_residuum,
    "cdf": cmd_cdf,
    "balanced": cmd_balanced,
    "fuzzyset": cmd_fuzzyset,
    "separation": cmd_separation,
    "product": cmd_product,
    "verify-props": cmd_verify_props,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(err), contextlib.redirect_stdout(out):
            args = parser.parse_args(_join_negative_values(list(sys.argv[1:] if argv is None else argv)))
    except SystemExit as exc:
        return int(exc.code or 0)
    previous = settings.get_tolerance()
    try:
        if args.tol is not None:
            settings.set_tolerance(args.tol)
        return COMMANDS[args.command](args, out)
    except (UsageError, VagueSpaceError, ValueError, KeyError) as exc:
        msg = exc.args[0] if type(exc) is KeyError and exc.args else exc
        err.write(f"vaguespace {args.command}: error: {msg}\n")
        err.write(parser.format_usage())
        return EXIT_USAGE
    finally:
        settings.set_tolerance(previous)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

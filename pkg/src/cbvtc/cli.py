"""Command line front end.

Exit status: 0 on success, 1 when a verification fails (or a reduction runs
out of fuel), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .analyzer import bound_vs_actual, verify_rules
from .engine import DEFAULT_MAX_BREADTH, DEFAULT_MAX_STEPS, Fuel, derivation_height, reduction_sequence
from .errors import CbvtcError, FuelExhausted
from .generate import TermGenerator
from .parser import SourceFile, parse_interpretation, parse_term, parse_trs
from .pretty import format_cstuple, format_term
from .stypes import format_type
from .semantics.compare import GridSpec
from .semantics.interpret import interpret_term, symbolic_valuation
from .terms import free_vars, typecheck

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_COLORS = {"PASS": "32", "ok": "32", "holds-on-samples": "32",
           "FAIL": "31", "fails": "31", "VIOLATION": "31", "error": "33"}


class InputError(Exception):
    def __init__(self, path, err: CbvtcError):
        super().__init__(f"{path}:{err}" if err.pos else f"{path}: {err}")


def _use_color(stream) -> bool:
    mode = os.environ.get("CBVTC_COLOR", "auto")
    if mode == "always":
        return True
    if mode == "never":
        return False
    return hasattr(stream, "isatty") and stream.isatty()


def _colorize(text: str) -> str:
    out = []
    for line in text.splitlines(keepends=True):
        cells = line.rstrip("\n").split("\t")
        cells = [f"\033[{_COLORS[c]}m{c}\033[0m" if c in _COLORS else c for c in cells]
        words = cells[-1].split(" ")
        cells[-1] = " ".join(f"\033[{_COLORS[w]}m{w}\033[0m" if w in _COLORS else w
                             for w in words)
        out.append("\t".join(cells) + ("\n" if line.endswith("\n") else ""))
    return "".join(out)


def _emit(text, out):
    out.write(_colorize(text) if _use_color(out) else text)


def _load_trs(path):
    src = SourceFile.read(path, "trs")
    try:
        return parse_trs(src.text)
    except CbvtcError as e:
        raise InputError(path, e) from None


def _load_interp(path, trs):
    src = SourceFile.read(path, "interpretation")
    try:
        return parse_interpretation(src.text, trs)
    except CbvtcError as e:
        raise InputError(path, e) from None


def _load_term(text, trs):
    try:
        return parse_term(text, trs)
    except CbvtcError as e:
        raise InputError("<term>", e) from None


def _fuel(args):
    return Fuel(args.fuel, args.breadth)


def cmd_check(args, out):
    trs = _load_trs(args.trs)
    out.write(f"base types: {' '.join(trs.signature.base_types)}\n")
    out.write(f"defined: {' '.join(sorted(trs.defined)) or '-'}\n")
    out.write(f"constructors: {' '.join(sorted(trs.constructors)) or '-'}\n")
    out.write(f"rules: {len(trs.rules)}\n")
    return EXIT_OK


def cmd_eval(args, out):
    trs = _load_trs(args.trs)
    t = _load_term(args.term, trs)
    steps = 0
    try:
        for r in reduction_sequence(t, trs, _fuel(args)):
            steps += 1
            t = r.term
            if args.trace:
                out.write(f"{steps}\t{r.label}\t{format_term(t, sugar=True)}\n")
    except FuelExhausted as e:
        sys.stderr.write(f"cbvtc: {e} (after {e.steps} steps)\n")
        return EXIT_FAIL
    out.write(f"{format_term(t, sugar=True)}\n")
    out.write(f"steps: {steps}\n")
    return EXIT_OK


def cmd_dh(args, out):
    trs = _load_trs(args.trs)
    t = _load_term(args.term, trs)
    try:
        out.write(f"{derivation_height(t, trs, _fuel(args))}\n")
    except FuelExhausted as e:
        sys.stderr.write(f"cbvtc: {e}\n")
        return EXIT_FAIL
    return EXIT_OK


def cmd_interpret(args, out):
    trs = _load_trs(args.trs)
    interp = _load_interp(args.csint, trs)
    t = _load_term(args.term, trs)
    ty = typecheck(t, trs.signature)
    fv = free_vars(t)
    alpha = symbolic_valuation(fv, interp.key)
    used = frozenset(n for v in fv for n in (v.name, v.name + "_c", v.name + "_s"))
    v = interpret_term(t, interp, alpha)
    style = "ascii" if args.ascii else "math"
    out.write(format_cstuple(v, interp.semtype(ty), style, used) + "\n")
    if args.verbose:
        out.write(f"type: {format_type(ty)}\nsemantic type: {interp.semtype(ty)}\n")
    return EXIT_OK


def _write_out(report, args):
    if args.out:
        Path(args.out).write_text(report.to_json(), encoding="utf-8")


def cmd_verify(args, out):
    trs = _load_trs(args.trs)
    interp = _load_interp(args.csint, trs)
    report = verify_rules(trs, interp, args.grid)
    _emit(report.to_table(), out)
    _write_out(report, args)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_harness(args, out):
    trs = _load_trs(args.trs)
    interp = _load_interp(args.csint, trs)
    if args.terms:
        lines = Path(args.terms).read_text(encoding="utf-8").splitlines()
        terms = []
        for i, line in enumerate(lines, 1):
            line = line.split("#", 1)[0].strip()
            if line:
                try:
                    terms.append(parse_term(line, trs, allow_free=False))
                except CbvtcError as e:
                    raise InputError(f"{args.terms}:{i}", e) from None
    else:
        size, count = args.gen
        gen = TermGenerator(trs, seed=args.seed)
        terms = [gen.sample(size) for _ in range(count)]
    report = bound_vs_actual(trs, interp, terms, _fuel(args))
    _emit(report.to_table(), out)
    _write_out(report, args)
    figure = args.figure
    if figure is None and args.out and not args.no_figure:
        figure = str(Path(args.out).with_suffix(".png"))
    if figure:
        from .plotting import bound_figure, save_figure

        save_figure(bound_figure(report, title=Path(args.trs).stem), figure)
    return EXIT_OK if report.passed else EXIT_FAIL


def _grid(text):
    try:
        return GridSpec.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _positive(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def build_parser():
    p = argparse.ArgumentParser(
        prog="cbvtc",
        description="Weak call-by-value higher-order rewriting with cost-size interpretations.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def fuel_opts(sp):
        sp.add_argument("--fuel", type=_positive, default=DEFAULT_MAX_STEPS,
                        help="maximum reduction steps (default %(default)s)")
        sp.add_argument("--breadth", type=_positive, default=DEFAULT_MAX_BREADTH,
                        help="maximum distinct terms visited by dh (default %(default)s)")

    sp = sub.add_parser("check", help="parse and typecheck a TRS file")
    sp.add_argument("trs")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("eval", help="normalise a term (leftmost-innermost)")
    sp.add_argument("trs")
    sp.add_argument("term")
    sp.add_argument("--trace", action="store_true", help="print every step")
    fuel_opts(sp)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("dh", help="derivation height by exhaustive search")
    sp.add_argument("trs")
    sp.add_argument("term")
    fuel_opts(sp)
    sp.set_defaults(func=cmd_dh)

    sp = sub.add_parser("interpret", help="cost-size interpretation of a term")
    sp.add_argument("trs")
    sp.add_argument("csint")
    sp.add_argument("term")
    sp.add_argument("--ascii", action="store_true", help="print in input-file syntax")
    sp.add_argument("-v", "--verbose", action="store_true")
    sp.set_defaults(func=cmd_interpret)

    sp = sub.add_parser("verify", help="check every rule decreases on the sample grid")
    sp.add_argument("trs")
    sp.add_argument("csint")
    sp.add_argument("--grid", type=_grid, default=GridSpec(),
                    help="e.g. 'nats=0,1,2,3,5,8;lib=zero,id,succ,double;budget=200000'")
    sp.add_argument("--out", help="write the report as JSON")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("harness", help="compare measured dh with interpreted bounds")
    sp.add_argument("trs")
    sp.add_argument("csint")
    sp.add_argument("--gen", nargs=2, type=_positive, metavar=("SIZE", "COUNT"),
                    default=(12, 100), help="random ground terms (default 12 100)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--terms", help="file with one ground term per line (replaces --gen)")
    sp.add_argument("--out", help="write the report as JSON (and a figure next to it)")
    sp.add_argument("--figure", help="figure path (.png, .pdf or .svg)")
    sp.add_argument("--no-figure", action="store_true")
    fuel_opts(sp)
    sp.set_defaults(func=cmd_harness)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args, out)
    except InputError as e:
        sys.stderr.write(f"cbvtc: {e}\n")
        return EXIT_USAGE
    except CbvtcError as e:
        sys.stderr.write(f"cbvtc: {e}\n")
        return EXIT_USAGE
    except OSError as e:
        sys.stderr.write(f"cbvtc: {e}\n")
        return EXIT_USAGE


def run_cli(argv=None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())

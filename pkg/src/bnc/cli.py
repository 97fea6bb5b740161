"""Command-line front end.

Exit codes: 0 success, 1 domain error (invalid complex, unsupported label,
non-curve-like input, failing selftest), 2 usage error.  All output goes to
standard output as JSON unless ``--text``.  Complexes read from files carry
their own coefficient field; ``--field`` selects the field for ``builtin``.
The environment variable ``BNC_STEP_BUDGET`` overrides the clean-up budget.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import F2
from .builtins import BUILTIN_NAMES, make
from .cabling import UnsupportedLabelError, cable, iterate_cable
from .complexes import validate
from .curves import NotCurveLikeError, decompose, geography_class, is_theta_rational, render_svg
from .io import dumps, load, save, to_json, to_text
from .pairing import determinant, euler_char_B0, homology_over_kG, is_cap_trivial, mor_complex
from .reduction import reduce, to_curve_like
from .selftest import run_all

__all__ = ["main", "run"]


class _DomainError(Exception):
    pass


def _parse_field(text):
    from .algebra import parse_field_spec

    try:
        return parse_field_spec(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _load(path):
    try:
        return load(path)
    except (OSError, ValueError, KeyError) as exc:
        raise _DomainError("cannot read complex from %r: %s" % (path, exc))


def _emit_json(obj):
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _emit_complex(T, args):
    if getattr(args, "out", None):
        save(T, args.out)
    sys.stdout.write(to_text(T) if args.text else dumps(T))


def _dict_text(obj, indent=""):
    lines = []
    for key, value in obj.items():
        if isinstance(value, dict):
            lines.append("%s%s:" % (indent, key))
            lines.append(_dict_text(value, indent + "  "))
        elif isinstance(value, list):
            lines.append("%s%s: %s" % (indent, key, json.dumps(value)))
        else:
            lines.append("%s%s: %s" % (indent, key, value))
    return "\n".join(lines)


def _emit_report(obj, args):
    if args.text:
        sys.stdout.write(_dict_text(obj) + "\n")
    else:
        _emit_json(obj)


def _cmd_validate(args):
    T = _load(args.complex)
    problem = validate(T)
    _emit_report({"valid": problem is None, "problem": problem}, args)
    return 0 if problem is None else 1


def _cmd_reduce(args):
    T = _load(args.complex)
    red, trace = reduce(T)
    if args.trace:
        with open(args.trace, "w") as fh:
            fh.write(json.dumps(trace.to_json(), indent=2) + "\n")
    _emit_complex(red, args)
    return 0


def _cmd_cable(args):
    T = _load(args.complex)
    try:
        if args.iterate is not None:
            if args.iterate < 1:
                raise _DomainError("--iterate wants a positive count")
            final, ranks = iterate_cable(T, args.iterate, extend_table=args.extend_table)
            if args.out:
                save(final, args.out)
            report = {"iterations": args.iterate, "ranks": ranks}
            if not args.out:
                report["complex"] = to_json(final)
            _emit_report(report, args)
            return 0
        out = cable(T, extend_table=args.extend_table)
        if args.curve_like:
            out, _ = reduce(out)
            out, report, _ = to_curve_like(out)
            if not report.is_curve_like:
                raise _DomainError(
                    "no curve-like representative within the step budget: %s"
                    % json.dumps(report.to_json())
                )
        elif args.reduce:
            out, _ = reduce(out)
    except UnsupportedLabelError as exc:
        raise _DomainError(str(exc))
    _emit_complex(out, args)
    return 0


def _cmd_pair(args):
    A = _load(args.left)
    B = _load(args.right)
    if A.field != B.field:
        raise _DomainError("pairing wants matching fields, got %s and %s" % (A.field, B.field))
    if args.over == "kg":
        H = homology_over_kG(mor_complex(A, B))
        _emit_report({"module": H.to_json(), "format": H.format()}, args)
    else:
        chi = euler_char_B0(A, B)
        _emit_report({"euler": chi.to_json(), "format": chi.format()}, args)
    return 0


def _cmd_det(args):
    T = _load(args.complex)
    closure = args.closure
    if closure != "inf":
        try:
            closure = int(closure)
        except ValueError:
            raise _DomainError("--closure wants an integer slope or 'inf', got %r" % args.closure)
    try:
        value = determinant(T, closure)
    except (ValueError, ArithmeticError) as exc:
        raise _DomainError(str(exc))
    _emit_report({"det": value}, args)
    return 0


def _cmd_classify(args):
    T = _load(args.complex)
    problem = validate(T)
    if problem is not None:
        raise _DomainError(problem)
    try:
        dec = decompose(T)
    except NotCurveLikeError as exc:
        raise _DomainError(str(exc))
    try:
        geography = geography_class(T)
    except ValueError:
        geography = None
    report = {
        "components": dec.to_json(),
        "cap_trivial": is_cap_trivial(T),
        "theta_rational": is_theta_rational(T),
        "geography": geography,
    }
    _emit_report(report, args)
    return 0


def _match_builtin(name):
    if name in BUILTIN_NAMES:
        return name
    hits = [b for b in BUILTIN_NAMES if b.startswith(name)]
    if len(hits) == 1:
        return hits[0]
    raise _DomainError(
        "unknown builtin %r (choices: %s)" % (name, ", ".join(BUILTIN_NAMES))
    )


def _cmd_builtin(args):
    name = _match_builtin(args.name)
    try:
        T = make(name, args.field, n=args.n, qshift=args.qshift, hshift=args.hshift)
    except ValueError as exc:
        raise _DomainError(str(exc))
    _emit_complex(T, args)
    return 0


def _cmd_render(args):
    T = _load(args.complex)
    try:
        svg = render_svg(T, args.out)
    except NotCurveLikeError as exc:
        raise _DomainError(str(exc))
    if args.out:
        _emit_report({"written": args.out}, args)
    else:
        sys.stdout.write(svg)
    return 0


def _cmd_selftest(args):
    report = run_all(jobs=args.jobs)
    if args.text:
        lines = []
        for crit in report["criteria"]:
            for case in crit["cases"]:
                lines.append(
                    "criterion %2d %-52s %-4s %s%s"
                    % (
                        case["criterion"],
                        crit["name"],
                        case["field"],
                        case["status"],
                        "" if not case["detail"] else "  (%s)" % case["detail"],
                    )
                )
        lines.append("passed %d of %d criteria" % (report["passed"], len(report["criteria"])))
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        _emit_json(report)
    return 0 if report["status"] == "pass" else 1


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="bnc",
        description="Exact type D structures over the two-object dotted cobordism algebra.",
    )
    parser.add_argument(
        "--field",
        type=_parse_field,
        default=F2,
        help="coefficient field for generated complexes: q or fp:<prime> (default fp:2)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--text", action="store_true", help="aligned text instead of JSON")
        return p

    p = add("validate", _cmd_validate, "check the type D structure invariants")
    p.add_argument("complex", help="input complex (JSON)")

    p = add("reduce", _cmd_reduce, "cancel all invertible differential entries")
    p.add_argument("complex", help="input complex (JSON)")
    p.add_argument("-o", "--out", help="write the reduced complex here")
    p.add_argument("--trace", help="write the replayable reduction trace here")

    p = add("cable", _cmd_cable, "apply the cabling operator")
    p.add_argument("complex", help="input complex (JSON)")
    p.add_argument("-o", "--out", help="write the output complex here")
    p.add_argument("--iterate", type=int, metavar="N", help="apply N times, reducing between")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--reduce", action="store_true", help="reduce the output")
    mode.add_argument(
        "--curve-like", action="store_true", dest="curve_like", help="reduce and tidy to curve-like form"
    )
    p.add_argument(
        "--extend-table",
        action="store_true",
        help="derive operator-table entries for labels outside the basic set",
    )

    p = add("pair", _cmd_pair, "pair two complexes")
    p.add_argument("left", help="left complex (mirrored by the caller)")
    p.add_argument("right", help="right complex")
    p.add_argument("--over", choices=("kg", "b0"), default="kg", help="k[G] homology or B_0 Euler characteristic")

    p = add("det", _cmd_det, "link determinant of a closure")
    p.add_argument("complex", help="input complex (JSON)")
    p.add_argument("--closure", default="0", help="integer slope or 'inf' (default 0)")

    p = add("classify", _cmd_classify, "decompose into curve components and classify")
    p.add_argument("complex", help="input complex (JSON)")

    p = add("builtin", _cmd_builtin, "emit a builtin complex")
    p.add_argument("name", help="builtin name or unique prefix")
    p.add_argument("--n", type=int, default=0, help="framing parameter where applicable")
    p.add_argument("--qshift", type=int, default=0, help="quantum shift (compact_C)")
    p.add_argument("--hshift", type=int, default=0, help="homological shift (compact_C)")
    p.add_argument("-o", "--out", help="write the complex here")

    p = add("render", _cmd_render, "schematic SVG of a curve-like complex")
    p.add_argument("complex", help="input complex (JSON)")
    p.add_argument("-o", "--out", help="write the SVG here (default: stdout)")

    p = add("selftest", _cmd_selftest, "run the acceptance criteria")
    p.add_argument("--jobs", type=int, default=1, help="parallel worker processes")

    return parser


def run(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _DomainError as exc:
        _emit_json({"error": str(exc)})
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

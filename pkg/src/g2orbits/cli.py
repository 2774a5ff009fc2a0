"""Command-line front end.

Every subcommand prints one JSON document (or ``key: value`` lines with
``--format text``).  Exit status: 0 on success, 2 when the input is
rejected (malformed JSON, a non-semistable point, s = 0, ...), 1 when
an internal invariant fails during the computation.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import case1, case2, io
from .cohomology import canonical_norm_rep
from .fields import (
    FactorizationLimitError,
    QuadField,
    factor_ceiling,
    format_rat,
    is_norm,
    local_obstructions,
    squarefree_part,
)
from .g2rep import delta

EXIT_OK, EXIT_INVARIANT, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    """Rejected user input; maps to exit status 2."""


# -- input helpers -------------------------------------------------------------


def _read_json(args, inline_attr: str = "vector"):
    inline = getattr(args, inline_attr, None)
    if inline is not None and args.file is not None:
        raise InputError(f"give either --{inline_attr} or --file, not both")
    if args.file is not None:
        try:
            if args.file == "-":
                text = sys.stdin.read()
            else:
                with open(args.file, encoding="utf-8") as fh:
                    text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
    elif inline is not None:
        text = inline
    else:
        raise InputError(f"no input: use --{inline_attr} or --file")
    try:
        return io.loads(text)
    except io.DecodeError as exc:
        raise InputError(str(exc)) from None


def _decode(fn, *a):
    try:
        return fn(*a)
    except (io.DecodeError, ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from None


def _field(d) -> QuadField:
    if d is None:
        raise InputError("--d is required")
    try:
        return QuadField(int(d))
    except ValueError as exc:
        raise InputError(f"--d: {exc}") from None


def _rat(text, name: str, nonzero: bool = False) -> Fraction:
    if text is None:
        raise InputError(f"--{name} is required")
    q = _decode(io.decode_rat, text)
    if nonzero and q == 0:
        raise InputError(f"--{name} must be nonzero")
    return q


def _semistable_vec7(obj) -> tuple:
    x = _decode(io.decode_vec7, obj)
    if delta(x) == 0:
        raise InputError("delta(x) = 0: the vector is not semistable")
    return x


def _semistable_pair(obj) -> tuple:
    if isinstance(obj, dict):
        extra = set(obj) - {"x1", "x2", "d", "s"}
        if extra:
            raise InputError(f"unexpected keys {sorted(extra)} in pair vector")
        obj = {k: obj[k] for k in ("x1", "x2") if k in obj}
    x = _decode(io.decode_pair, obj)
    if case2.binary_form(x).disc == 0:
        raise InputError("F_x is degenerate: the point is not semistable")
    return x


def _place(p):
    return "inf" if p == float("inf") else p


# -- subcommands ---------------------------------------------------------------


def cmd_case1_classify(args) -> dict:
    x = _semistable_vec7(_read_json(args))
    return {"delta": format_rat(delta(x)), "class": case1.classify(x)}


def cmd_case1_reduce(args) -> dict:
    x = _semistable_vec7(_read_json(args))
    g, y = case1.reduce_to_normal_form(x)
    return {
        "g": io.encode_matrix(g.m),
        "y": io.encode_vector(y),
        "delta": format_rat(delta(x)),
        "class": case1.classify(x),
    }


def cmd_case1_same_orbit(args) -> dict:
    if args.file is not None:
        obj = _read_json(args)
        if not isinstance(obj, dict) or set(obj) != {"x", "y"}:
            raise InputError('same-orbit file must be {"x": [...7], "y": [...7]}')
        xs = [obj["x"], obj["y"]]
    else:
        if not args.vector or len(args.vector) != 2:
            raise InputError("give --vector twice (x and y) or --file")
        try:
            xs = [io.loads(v) for v in args.vector]
        except io.DecodeError as exc:
            raise InputError(str(exc)) from None
    x, y = (_semistable_vec7(v) for v in xs)
    return {
        "same_orbit": case1.same_orbit(x, y),
        "class_x": case1.classify(x),
        "class_y": case1.classify(y),
    }


def cmd_case2_classify(args) -> dict:
    x = _semistable_pair(_read_json(args))
    f = case2.binary_form(x)
    out = {
        "form": [format_rat(c) for c in (f.A, f.B, f.C)],
        "disc": format_rat(f.disc),
        "splitting_class": case2.splitting_class(x),
    }
    if args.g is None:
        return out
    field = _field(args.d)
    s = _rat(args.s, "s", nonzero=True)
    try:
        gobj = io.loads(args.g)
    except io.DecodeError as exc:
        raise InputError(f"--g: {exc}") from None
    g = _decode(io.decode_group_elem2, gobj)
    if not g.is_rational() or not g.in_group():
        raise InputError("--g is not a rational element of G1 x GL(2)")
    if g.act(case2.representative(field, s)) != x:
        raise InputError("x is not g . w_alpha(s) for the given g, d, s")
    cls = case2.classify_constructed(x, g, field, s)
    out["norm_class"] = cls.rep
    return out


def cmd_case2_representative(args) -> dict:
    field = _field(args.d)
    s = _rat(args.s, "s", nonzero=True)
    x = case2.representative(field, s)
    out = io.encode_pair(x)
    out["d"] = field.d
    out["s"] = format_rat(s)
    return out


def cmd_case2_same_orbit(args) -> dict:
    field = _field(args.d)
    s1 = _rat(args.s1, "s1", nonzero=True)
    s2 = _rat(args.s2, "s2", nonzero=True)
    return {"same_orbit": case2.same_orbit_constructed(field, s1, s2)}


def cmd_normclass(args) -> dict:
    field = _field(args.d)
    s = _rat(args.s, "s", nonzero=True)
    return {
        "d": field.d,
        "s": format_rat(s),
        "is_norm": is_norm(field, s),
        "class": canonical_norm_rep(field, s),
        "square_class": squarefree_part(s),
        "obstructions": [_place(p) for p in local_obstructions(field, s)],
    }


def cmd_verify(args):
    from .verify import SUITES, run_suite

    if args.suite != "all" and args.suite not in SUITES:
        raise InputError(f"unknown suite {args.suite!r}; choose from all, {', '.join(SUITES)}")
    checks = run_suite(args.suite, args.seed)
    passed = all(c.passed for c in checks)
    report = {
        "suite": args.suite,
        "seed": args.seed,
        "passed": passed,
        "checks": [c.to_json() for c in checks],
    }
    return report, (EXIT_OK if passed else EXIT_INVARIANT)


COMMANDS = {
    "case1-classify": cmd_case1_classify,
    "case1-reduce": cmd_case1_reduce,
    "case1-same-orbit": cmd_case1_same_orbit,
    "case2-classify": cmd_case2_classify,
    "case2-representative": cmd_case2_representative,
    "case2-same-orbit": cmd_case2_same_orbit,
    "normclass": cmd_normclass,
    "verify": cmd_verify,
}


# -- output --------------------------------------------------------------------


def _render_text(obj, prefix: str = "") -> list[str]:
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and not _is_flat_list(v):
                lines.append(f"{prefix}{k}:")
                lines.extend(_render_text(v, prefix + "  "))
            else:
                lines.append(f"{prefix}{k}: {_text_atom(v)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict) and "name" in item and "passed" in item:
                mark = "PASS" if item["passed"] else "FAIL"
                tail = f"  ({item['detail']})" if item.get("detail") else ""
                lines.append(f"{prefix}[{mark}] {item['name']} x{item['cases']}{tail}")
            else:
                lines.extend(_render_text(item, prefix + "- "))
    else:
        lines.append(f"{prefix}{_text_atom(obj)}")
    return lines


def _is_flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _text_atom(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return "[" + ", ".join(_text_atom(x) for x in v) + "]"
    return str(v)


def emit(obj, fmt: str, stream) -> None:
    if fmt == "text":
        stream.write("\n".join(_render_text(obj)) + "\n")
    else:
        stream.write(io.dumps(obj) + "\n")


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="g2orbits",
        description="Rational orbits of the trivector spaces W = k^7 and W (x) k^2.",
    )
    parser.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    def vec_cmd(name, help_, multiple=False):
        p = sub.add_parser(name, help=help_)
        if multiple:
            p.add_argument("--vector", action="append", help="JSON 7-vector (give twice)")
        else:
            p.add_argument("--vector", help="inline JSON input")
        p.add_argument("--file", help="read the JSON input from a file ('-' for stdin)")
        p.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
        return p

    vec_cmd("case1-classify", "square class of delta(x) for x in Q^7")
    vec_cmd("case1-reduce", "move x to t(0, 1, 0, 0, -delta/4, 0, 0)")
    vec_cmd("case1-same-orbit", "whether two vectors share a rational orbit", multiple=True)
    p = vec_cmd("case2-classify", "splitting class of a pair {x1, x2}")
    p.add_argument("--g", help="JSON group element with x = g . w_alpha(s)")
    p.add_argument("--d", help="squarefree d of the splitting field")
    p.add_argument("--s", help="the s of w_alpha(s)")

    for name, help_ in (("case2-representative", "the rational point w_alpha(s)"),
                        ("normclass", "norm class of s for Q(sqrt d)")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--d", required=True)
        p.add_argument("--s", required=True)
        p.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)

    p = sub.add_parser("case2-same-orbit", help="whether w_alpha(s1), w_alpha(s2) share an orbit")
    p.add_argument("--d", required=True)
    p.add_argument("--s1", required=True)
    p.add_argument("--s2", required=True)
    p.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)

    p = sub.add_parser("verify", help="run the exact identity battery")
    p.add_argument("--suite", default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    return parser


_RAT_OPTIONS = ("--d", "--s", "--s1", "--s2")


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Rewrite ``--s -5/3`` as ``--s=-5/3``; argparse only accepts bare
    negative integers and decimals as option values."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in _RAT_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        try:
            factor_ceiling()
        except ValueError as exc:
            raise InputError(str(exc)) from None
        result = COMMANDS[args.command](args)
    except (InputError, FactorizationLimitError) as exc:
        stderr.write(f"g2orbits: invalid input: {exc}\n")
        return EXIT_INPUT
    except Exception as exc:  # anything past validation is an invariant failure
        stderr.write(f"g2orbits: internal invariant violated: {type(exc).__name__}: {exc}\n")
        return EXIT_INVARIANT
    code = EXIT_OK
    if isinstance(result, tuple):
        result, code = result
    emit(result, args.format, stdout)
    return code


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()

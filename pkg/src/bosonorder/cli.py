"""Command line interface: ``bosonorder order | tables | numeric``.

Every invocation prints one record (JSON by default) with the fields
``command, version, mode, inputs, result`` in that order. Exact values are
written as integers or ``"p/q"`` strings; floats use 17 significant digits.

Exit status: 0 on success, 2 for user errors (bad syntax, domain violations,
divergence), 70 when an internal consistency check fails.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__
from .errors import BosonOrderError, InternalInvariantError, OutOfRangeError
from .genfun import (
    DEFAULT_TRUNCATION,
    coherent_matrix_element_exp,
    egf_bell_closed,
    egf_d0_dobinski,
    egf_truncated,
)
from .genstirling import gen_bell_polynomial, gen_dobinski_eval, gen_stirling_table
from .pade import diagonal_harness, is_decreasing, resum_gen_egf
from .parser import parse, to_normal_form, to_string
from .sheffer import PolySpec, sheffer_coherent_egf, solve_g, solve_T, verify_sheffer
from .stirling import bell_polynomial, dobinski_eval, stirling_table
from .weyl import AlphaSpec, NormalForm, extract_alpha

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INTERNAL = 70

DEFAULT_EPS = 1e-12

_PAIRS = re.compile(r"^\s*\d+\s*:\s*[-+]?\d+(?:/\d+)?(?:\s*,\s*\d+\s*:\s*[-+]?\d+(?:/\d+)?)*\s*$")


class UsageError(BosonOrderError):
    """Bad or missing command line arguments."""


# -- serialization -----------------------------------------------------------


class _Float:
    """Marks a binary64 value so the writer can format it explicitly."""

    __slots__ = ("value",)

    def __init__(self, value: float):
        self.value = float(value)


def _format_float(x: float) -> str:
    if x != x or x in (float("inf"), float("-inf")):
        raise InternalInvariantError(f"non-finite value {x} in output")
    text = format(x, ".17g")
    if not any(ch in text for ch in ".en"):
        text += ".0"
    return text


def _exact_out(value):
    value = Fraction(value)
    return value.numerator if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def _to_json(obj) -> str:
    if isinstance(obj, _Float):
        return _format_float(obj.value)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return json.dumps(_exact_out(obj))
    if isinstance(obj, float):
        return _format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k), ensure_ascii=False)}: {_to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_to_json(v) for v in obj) + "]"
    raise InternalInvariantError(f"cannot serialize {type(obj).__name__}")


def _complex_out(z: complex) -> dict:
    return {"re": _Float(z.real), "im": _Float(z.imag)}


def _to_table(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list, tuple)) and v and not _is_flat(v):
                lines.append(f"{pad}{k}:")
                lines += _to_table(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {_scalar_text(v)}")
        return lines
    if isinstance(obj, (list, tuple)):
        lines = []
        for v in obj:
            if isinstance(v, (dict, list, tuple)) and not _is_flat(v):
                lines += _to_table(v, indent + 1)
            else:
                lines.append(f"{pad}{_scalar_text(v)}")
        return lines
    return [pad + _scalar_text(obj)]


def _is_flat(obj) -> bool:
    items = obj.values() if isinstance(obj, dict) else obj
    return all(not isinstance(v, (dict, list, tuple)) or isinstance(v, _Float) for v in items)


def _scalar_text(v) -> str:
    if isinstance(v, dict):
        return "  ".join(f"{k}={_scalar_text(x)}" for k, x in v.items())
    if isinstance(v, (list, tuple)):
        return " ".join(_scalar_text(x) for x in v)
    text = _to_json(v)
    return text[1:-1] if text.startswith('"') else text


def render(record: dict, fmt: str) -> str:
    if fmt == "json":
        return _to_json(record) + "\n"
    return "\n".join(_to_table(record)) + "\n"


# -- argument helpers --------------------------------------------------------


def _require(args, name: str):
    value = getattr(args, name.replace("-", "_"))
    if value is None:
        raise UsageError(f"--{name} is required for this command")
    return value


def _exact_arg(text: str, name: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--{name} must be an exact rational such as 3 or 2/5, got {text!r}") from None


def _float_arg(text: str, name: str) -> float:
    try:
        value = float(Fraction(text.strip())) if "/" in text else float(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--{name} must be a number, got {text!r}") from None
    if value != value or value in (float("inf"), float("-inf")):
        raise UsageError(f"--{name} must be finite, got {text!r}")
    return value


def _complex_arg(text: str, name: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise UsageError(f"--{name} must be a real or complex number such as 0.5+0.2j, got {text!r}") from None


def _alpha(args) -> tuple[AlphaSpec, dict]:
    """AlphaSpec from ``--alpha k:c,...`` with ``--d``, or from an expression."""
    text = args.alpha if args.alpha is not None else args.expr
    if text is None:
        raise UsageError("an alpha is required: --alpha 'k:coeff,...' with --d, or --expr / --alpha with an expression")
    if _PAIRS.match(text):
        pairs = {}
        for item in text.split(","):
            k, c = item.split(":")
            k = int(k)
            if k in pairs:
                raise UsageError(f"--alpha lists k={k} twice")
            pairs[k] = _exact_arg(c, "alpha")
        d = 0 if args.d is None else args.d
        spec = AlphaSpec(d, pairs)
    else:
        spec = extract_alpha(to_normal_form(parse(text)))
        if args.d is not None and args.d != spec.d:
            raise UsageError(f"--d {args.d} contradicts the excess {spec.d} of {text!r}")
    echo = {"d": spec.d, "alpha": {str(k): c for k, c in spec.coeffs}}
    return spec, echo


def _sheffer_polys(args) -> tuple[PolySpec, PolySpec]:
    nf = to_normal_form(parse(_require(args, "expr")))
    q, v = {}, {}
    for (r, s), c in nf.items():
        if s == 1:
            q[r] = c
        elif s == 0:
            v[r] = c
        else:
            raise UsageError(f"expression must have the form q(ad) a + v(ad); found a term ad^{r} a^{s}")
    as_list = lambda m: [m.get(j, 0) for j in range(max(m, default=-1) + 1)]
    return PolySpec(tuple(as_list(q))), PolySpec(tuple(as_list(v)))


def _nf_out(nf: NormalForm) -> list[dict]:
    return [{"r": r, "s": s, "coeff": c} for (r, s), c in nf.sorted_terms()]


def _poly_out(p: Sequence) -> list:
    return list(p)


# -- commands ----------------------------------------------------------------


def cmd_order(args) -> dict:
    text = _require(args, "expr")
    expr = parse(text)
    nf = to_normal_form(expr)
    return _record("order", "exact", {"expr": text, "canonical": to_string(expr)}, {"normal_form": _nf_out(nf)})


def cmd_tables(args) -> dict:
    n = _require(args, "n")
    if n < 0:
        raise OutOfRangeError(f"--n must be >= 0, got {n}")
    inputs: dict = {"kind": args.kind, "n": n}
    if args.kind == "stirling":
        table = stirling_table(n)
        if args.k is not None:
            inputs["k"] = args.k
            result = {"value": table[n, args.k]}
        else:
            result = {"rows": [list(table.rows[i][1:]) for i in range(1, n + 1)]}
    elif args.kind == "bell":
        x = _exact_arg(args.x, "x") if args.x is not None else 1
        inputs["x"] = x
        result = {"values": [bell_polynomial(i, x) for i in range(n + 1)]}
    else:
        alpha, echo = _alpha(args)
        inputs.update(echo)
        if args.kind == "genstirling":
            table = gen_stirling_table(alpha, n)
            if args.k is not None:
                inputs["k"] = args.k
                result = {"value": table[n, args.k]}
            else:
                rows = [{str(k): c for k, c in sorted(table.row(i).items())} for i in range(1, n + 1)]
                result = {"rows": rows}
        else:
            x = _exact_arg(args.x, "x") if args.x is not None else 1
            inputs["x"] = x
            result = {"values": [gen_bell_polynomial(alpha, i, x) for i in range(n + 1)]}
    return _record("tables", "exact", inputs, result)


def _numeric_dobinski(args, inputs: dict) -> dict:
    n = _require(args, "n")
    x = _float_arg(_require(args, "x"), "x")
    inputs.update(n=n, x=_Float(x), eps=_Float(args.eps))
    if args.alpha is None and args.expr is None:
        value = dobinski_eval(n, x, args.eps)
    else:
        alpha, echo = _alpha(args)
        inputs.update(echo)
        value = gen_dobinski_eval(alpha, n, x, args.eps)
    return {"value": _Float(value)}


def _numeric_egf(args, inputs: dict) -> dict:
    variant = args.variant or "truncated"
    lam = _float_arg(_require(args, "lambda"), "lambda")
    x = _float_arg(_require(args, "x"), "x")
    inputs.update(variant=variant, **{"lambda": _Float(lam)}, x=_Float(x))
    if variant == "closed":
        return {"value": _Float(egf_bell_closed(lam, x))}
    alpha, echo = _alpha(args)
    inputs.update(echo)
    if variant == "truncated":
        trunc = args.trunc or DEFAULT_TRUNCATION
        inputs["trunc"] = trunc
        return {"value": _Float(egf_truncated(alpha, lam, x, trunc))}
    if variant == "dobinski":
        inputs["eps"] = _Float(args.eps)
        return {"value": _Float(egf_d0_dobinski(alpha, lam, x, args.eps))}
    raise UsageError(f"unknown egf variant {variant!r} (closed, truncated, dobinski)")


def _numeric_coherent(args, inputs: dict) -> dict:
    lam = _float_arg(_require(args, "lambda"), "lambda")
    z = _complex_arg(_require(args, "x"), "x")
    alpha, echo = _alpha(args)
    trunc = args.trunc or DEFAULT_TRUNCATION
    inputs.update(echo, **{"lambda": _Float(lam)}, z=_complex_out(z), trunc=trunc)
    return {"value": _complex_out(coherent_matrix_element_exp(alpha, lam, z, trunc))}


def _numeric_pade(args, inputs: dict) -> dict:
    variant = args.variant or "egf"
    lam = _float_arg(_require(args, "lambda"), "lambda")
    x = _float_arg(_require(args, "x"), "x")
    alpha, echo = _alpha(args)
    inputs.update(variant=variant, **echo, **{"lambda": _Float(lam)}, x=_Float(x))
    if variant == "egf":
        m = _require(args, "m")
        n = args.pade_n if args.pade_n is not None else m
        inputs.update(m=m, pade_n=n, trunc=m + n)
        return {"value": _Float(resum_gen_egf(alpha, lam, x, m, n))}
    if variant == "harness":
        top = args.m if args.m is not None else 6
        if top < 2:
            raise OutOfRangeError(f"--m must be >= 2 for the harness, got {top}")
        inputs.update(m=top, eps=_Float(DEFAULT_EPS))
        rows = diagonal_harness(alpha, lam, x, range(2, top + 1))
        return {
            "reference": _Float(rows[0].reference),
            "rows": [{"m": r.m, "value": _Float(r.value), "error": _Float(r.error)} for r in rows],
            "decreasing": is_decreasing(rows),
        }
    raise UsageError(f"unknown pade variant {variant!r} (egf, harness)")


def _numeric_sheffer(args, inputs: dict) -> dict:
    variant = args.variant or "series"
    q, v = _sheffer_polys(args)
    order = args.order if args.order is not None else 6
    inputs.update(variant=variant, expr=args.expr, q=list(q.coeffs), v=list(v.coeffs), order=order)
    if variant == "series":
        return {
            "T": [_poly_out(p) for p in solve_T(q, order).slices],
            "g": [_poly_out(p) for p in solve_g(q, v, order).slices],
        }
    if variant == "verify":
        return {"verified": verify_sheffer(q, v, order)}
    if variant == "coherent":
        z = _complex_arg(_require(args, "x"), "x")
        inputs["z"] = _complex_out(z)
        return {"coefficients": [_complex_out(complex(c)) for c in sheffer_coherent_egf(q, v, z, order)]}
    raise UsageError(f"unknown sheffer variant {variant!r} (series, verify, coherent)")


_NUMERIC = {
    "dobinski": _numeric_dobinski,
    "egf": _numeric_egf,
    "coherent": _numeric_coherent,
    "pade": _numeric_pade,
    "sheffer": _numeric_sheffer,
}


def cmd_numeric(args) -> dict:
    if not args.eps > 0:
        raise OutOfRangeError(f"--eps must be positive, got {args.eps}")
    inputs: dict = {"kind": args.kind}
    result = _NUMERIC[args.kind](args, inputs)
    exact_only = args.kind == "sheffer" and args.variant in (None, "series", "verify")
    return _record("numeric", "exact" if exact_only else "float", inputs, result)


def _record(command: str, mode: str, inputs: dict, result: dict) -> dict:
    return {"command": command, "version": __version__, "mode": mode, "inputs": inputs, "result": result}


# -- entry point -------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--out", help="write the record to this file instead of stdout")
    common.add_argument("--expr", help="operator expression, e.g. '2 ad^2 a^2 + ad a'")
    common.add_argument("--alpha", help="'k:coeff,...' (with --d) or an expression")
    common.add_argument("--d", type=int, help="excess for --alpha pairs")
    common.add_argument("--n", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--x", help="point, rational (tables) or float / complex (numeric)")
    common.add_argument("--lambda", dest="lambda_", metavar="LAMBDA")
    common.add_argument("--order", type=int)
    common.add_argument("--m", type=int)
    common.add_argument("--pade-n", dest="pade_n", type=int)
    common.add_argument("--eps", type=float, default=DEFAULT_EPS)
    common.add_argument("--trunc", type=int)

    parser = _Parser(prog="bosonorder", description="Normal ordering of boson expressions.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("order", parents=[common], help="normal order an expression")
    p.set_defaults(func=cmd_order)
    p = sub.add_parser("tables", parents=[common], help="exact Stirling / Bell tables")
    p.add_argument("kind", choices=("stirling", "bell", "genstirling", "genbell"))
    p.set_defaults(func=cmd_tables)
    p = sub.add_parser("numeric", parents=[common], help="series, generating functions, resummation")
    p.add_argument("kind", choices=tuple(_NUMERIC))
    p.add_argument("variant", nargs="?")
    p.set_defaults(func=cmd_numeric)
    return parser


def _emit(record: dict, args) -> None:
    text = render(record, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


_VALUE_FLAGS = {
    "--format", "--out", "--expr", "--alpha", "--d", "--n", "--k", "--x",
    "--lambda", "--order", "--m", "--pade-n", "--eps", "--trunc",
}


def _glue_dash_values(argv: Sequence[str]) -> list[str]:
    # argparse refuses "--expr -1/3"; "--expr=-1/3" is unambiguous
    out: list[str] = []
    it = iter(argv)
    for arg in it:
        if arg in _VALUE_FLAGS:
            value = next(it, None)
            if value is None:
                out.append(arg)
            elif value.startswith("-") and value not in _VALUE_FLAGS:
                out.append(f"{arg}={value}")
            else:
                out += [arg, value]
        else:
            out.append(arg)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    try:
        argv = sys.argv[1:] if argv is None else argv
        args = build_parser().parse_args(_glue_dash_values(argv))
        args.lambda_ = getattr(args, "lambda_", None)
        setattr(args, "lambda", args.lambda_)
        _emit(args.func(args), args)
        return EXIT_OK
    except BosonOrderError as exc:
        print(f"bosonorder: error: {exc}", file=sys.stderr)
        return exc.exit_status
    except (ValueError, OverflowError, OSError) as exc:
        print(f"bosonorder: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # anything else is a bug
        print(f"bosonorder: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

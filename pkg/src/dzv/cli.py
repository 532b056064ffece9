"""``dzv`` command line: generate, verify, dims, eisenstein, reduce.

Defaults for ``digits``, ``terms`` and ``cache_dir`` come from an INI file
(``--config``, else ``$DZV_CONFIG``, else ``./dzv.ini``) with a ``[dzv]``
section. Flags override the file.

Exit status: 0 when every proven relation passes, 2 when a proven relation
fails or the input is unusable. Conjectural failures are counted on stderr.
"""
from __future__ import annotations

import argparse
import ast
import configparser
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

import mpmath

from . import __version__
from . import catalogue as C
from .formal import dim_D, is_consequence, reduce_to_odd_basis, single_zeta_coefficient, NotABasis
from .periods import (basis_gammaA_minus, basis_levelN, basis_W, cuspidal_subspace, dim_W_plus_formula,
                      span_W4plus)
from .rational import format_fraction
from .relations import ck_left_kernel
from .symbols import RelationVector, Symbol

EXIT_OK, EXIT_FAIL = 0, 2
DEFAULTS = {"digits": "25", "terms": "20", "cache_dir": ""}


def load_config(path: str | None) -> configparser.SectionProxy:
    cp = configparser.ConfigParser()
    cp.read_dict({"dzv": DEFAULTS})
    path = path or os.environ.get("DZV_CONFIG") or "dzv.ini"
    if Path(path).is_file():
        cp.read(path)
    return cp["dzv"]


def _weights(args) -> list[int]:
    if getattr(args, "weights", None):
        lo, _, hi = args.weights.partition("..")
        return list(range(int(lo), int(hi or lo) + 1))
    if args.weight is not None:
        return [args.weight]
    if args.weight_min is not None and args.weight_max is not None:
        return list(range(args.weight_min, args.weight_max + 1))
    raise SystemExit("give --weight or --weight-min/--weight-max")


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _add_weight_flags(p):
    p.add_argument("--weight", type=int)
    p.add_argument("--weight-min", type=int)
    p.add_argument("--weight-max", type=int)


# subcommands ----------------------------------------------------------------------------------

def cmd_generate(args) -> int:
    weights = _weights(args)
    try:
        spec = C.FAMILY_SPECS[args.family]
        if len(weights) > 1:
            # ranges skip the weights a family does not cover
            weights = [k for k in weights if k % 2 == 0 and k >= spec.min_weight]
        rels = C.generate(args.family, weights, args.level)
    except C.UnsupportedFamily as exc:
        print(f"dzv generate: {exc}", file=sys.stderr)
        return EXIT_FAIL
    doc = C.make_document(rels, reproducible=args.reproducible)
    _emit(C.dumps(doc), args.out)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            C.write_csv(doc, fh)
    print(f"{len(doc['entries'])} entries", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        text = Path(args.input).read_text() if args.input != "-" else sys.stdin.read()
        doc = C.loads(text)
    except (OSError, C.SchemaError) as exc:
        print(f"dzv verify: {exc}", file=sys.stderr)
        return EXIT_FAIL
    summary = C.verify_document(doc, args.digits)
    if args.reproducible:
        doc["generated_at"] = None
    _emit(C.dumps(doc), args.out)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            C.write_csv(doc, fh)
    print(f"checked {summary.checked}: {summary.proven_failures} proven failures, "
          f"{summary.conjectural_failures} conjectural failures (warning), {summary.errors} not evaluable",
          file=sys.stderr)
    return summary.exit_code


def _dims_row(space: str, n: int, level: int) -> dict:
    """(computed, formula) for one space; ``n`` is the degree w, or k for D_k and C_k."""
    if space in ("W+", "W-"):
        got = basis_W(n, 1 if space == "W+" else -1).dimension
        want = dim_W_plus_formula(n) - (space == "W-")
    elif space == "W+cusp":
        got, want = cuspidal_subspace(n).dimension, dim_W_plus_formula(n) - 1
    elif space == "D_k":
        got, want = dim_D(n), (n - 1) // 2
    elif space == "GammaA-":
        got, want = basis_gammaA_minus(n).dimension, None
    elif space == "W4+":
        got, want = span_W4plus(n).dimension, n // 2 - 1
    elif space == "levelN+":
        got, want = basis_levelN(n, level, 1).dimension, None
    elif space == "C_k":
        got, want = len(ck_left_kernel(n)), (n - 2) // 4 + 1
    else:
        raise ValueError(space)
    return {"space": space, "n": n, "computed": got, "formula": want}


def cmd_dims(args) -> int:
    rows = []
    for n in _weights(args):
        if space_requires_even(args.space) and n % 2:
            continue
        rows.append(_dims_row(args.space, n, args.level or 1))
    if args.format == "json":
        _emit(json.dumps(rows, indent=2) + "\n", args.out)
    else:
        lines = ["space\tn\tcomputed\tformula"]
        lines += [f"{r['space']}\t{r['n']}\t{r['computed']}\t{'' if r['formula'] is None else r['formula']}"
                  for r in rows]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def space_requires_even(space: str) -> bool:
    return space != "D_k"


def cmd_eisenstein(args) -> int:
    from . import eisenstein as E
    eps = 10.0 ** (-args.digits)
    if args.identity == "hecke":
        rep = E.verify_hecke(args.weight, args.terms, eps, constant=args.constant)
        rows = list(rep.rows())
        result = {"identity": "hecke", "weight": args.weight, "constant": rep.constant,
                  "fitted_constant": format_fraction(E.fitted_constant(args.weight)),
                  "tolerance": eps, "pass": rep.passed, "rows": rows}
    else:
        res = E.double_shuffle_residuals(args.weight, args.terms)
        rows = []
        ok = True
        for key, diffs in res.items():
            for n, c in enumerate(diffs):
                if c.is_zero():
                    rows.append({"r": key[0], "s": key[1], "n": n, "residual": "0", "exact": True, "pass": True})
                    continue
                re, im = c.evaluate(eps)
                val = abs(re.value) + abs(im.value)
                rows.append({"r": key[0], "s": key[1], "n": n, "residual": mpmath.nstr(val, 6),
                             "exact": False, "pass": bool(val <= eps)})
                ok = ok and val <= eps
        result = {"identity": "double-shuffle", "weight": args.weight, "tolerance": eps, "pass": ok, "rows": rows}
    if args.format == "csv":
        keys = list(rows[0]) if rows else []
        lines = [",".join(keys)] + [",".join(str(r[k]) for k in keys) for r in rows]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(json.dumps(result, indent=2) + "\n", args.out)
    if not result["pass"]:
        print(f"dzv eisenstein: residuals above {eps}", file=sys.stderr)
    return EXIT_OK if result["pass"] else EXIT_FAIL


_REL_FAMILIES = {"Z", "Zh"}


def parse_relation(text: str) -> RelationVector:
    """Parse ``"3*Z(3,9) - Z(2,10) = 1/2*Z(12)"``; a right side of ``?`` leaves the single part symbolic."""
    lhs, eq, rhs = text.partition("=")
    terms: dict[Symbol, Fraction] = {}

    def walk(node, sign):
        if isinstance(node, ast.BinOp) and isinstance(node.op, (ast.Add, ast.Sub)):
            walk(node.left, sign)
            walk(node.right, sign if isinstance(node.op, ast.Add) else -sign)
        elif isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            walk(node.operand, -sign)
        else:
            c, sym = _term(node)
            terms[sym] = terms.get(sym, Fraction(0)) + sign * c

    walk(ast.parse(lhs.strip(), mode="eval").body, 1)
    weights = {s.weight for s in terms}
    if len(weights) != 1:
        raise ValueError("relation must be homogeneous in weight")
    k = weights.pop()
    single: Fraction | None = Fraction(0)
    rhs = rhs.strip()
    if eq and rhs == "?":
        single = None
    elif eq and rhs:
        c, sym = _term(ast.parse(rhs, mode="eval").body)
        if sym != Symbol("Z", (k,)):
            raise ValueError(f"right side must be a multiple of Z({k})")
        single = c
    return RelationVector(k, terms, single)


def _const(node) -> Fraction:
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return Fraction(node.value)
    if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Div):
        return _const(node.left) / _const(node.right)
    if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Mult):
        return _const(node.left) * _const(node.right)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_const(node.operand)
    raise ValueError("coefficients must be rational constants")


def _term(node) -> tuple[Fraction, Symbol]:
    c = Fraction(1)
    while isinstance(node, ast.BinOp) and isinstance(node.op, ast.Mult):
        c *= _const(node.left)
        node = node.right
    if not (isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _REL_FAMILIES):
        raise ValueError("terms look like c*Z(r,s) or c*Zh(r,s)")
    idx = tuple(int(_const(a)) for a in node.args)
    return c, Symbol(node.func.id, idx)


def cmd_reduce(args) -> int:
    try:
        v = parse_relation(args.relation)
    except (ValueError, SyntaxError) as exc:
        print(f"dzv reduce: {exc}", file=sys.stderr)
        return EXIT_FAIL
    out: dict = {"weight": v.weight, "relation": str(v)}
    if v.single is None:
        c = single_zeta_coefficient(v)
        out["holds_modulo_single"] = c is not None
        out["single_zeta"] = None if c is None else format_fraction(c)
        holds = c is not None
    else:
        holds = is_consequence(v)
        out["holds"] = holds
        if v.weight % 2 == 0 and v.weight >= 4:
            try:
                coords = reduce_to_odd_basis(v)
                out["odd_basis_coordinates"] = {str(s): format_fraction(c) for s, c in coords.items() if c}
            except NotABasis as exc:
                out["odd_basis_coordinates"] = f"unavailable: {exc}"
    _emit(json.dumps(out, indent=2) + "\n", args.out)
    return EXIT_OK if holds else EXIT_FAIL


# argument parsing -----------------------------------------------------------------------------

def build_parser(cfg) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dzv", description="Double zeta relations from period polynomials.")
    p.add_argument("--version", action="version", version=f"dzv {__version__}")
    p.add_argument("--config", help="INI file with a [dzv] section")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="build a relation catalogue")
    g.add_argument("--family", required=True, choices=sorted(C.FAMILY_SPECS))
    _add_weight_flags(g)
    g.add_argument("--level", type=int)
    g.add_argument("--out")
    g.add_argument("--csv", help="also write the coefficient table as CSV")
    g.add_argument("--reproducible", action="store_true", help="omit the timestamp")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="verify a catalogue numerically")
    v.add_argument("--in", dest="input", required=True, help="catalogue JSON ('-' for stdin)")
    v.add_argument("--digits", type=int, default=cfg.getint("digits"))
    v.add_argument("--out")
    v.add_argument("--csv")
    v.add_argument("--reproducible", action="store_true")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("dims", help="dimension tables")
    d.add_argument("--space", required=True, choices=["W+", "W-", "W+cusp", "D_k", "GammaA-", "W4+", "levelN+", "C_k"])
    d.add_argument("--weights", help="range like 4..26")
    _add_weight_flags(d)
    d.add_argument("--level", type=int)
    d.add_argument("--format", choices=["table", "json"], default="table")
    d.add_argument("--out")
    d.set_defaults(func=cmd_dims)

    e = sub.add_parser("eisenstein", help="q-series checks")
    e.add_argument("--weight", type=int, required=True)
    e.add_argument("--terms", type=int, default=cfg.getint("terms"))
    e.add_argument("--digits", type=int, default=20)
    e.add_argument("--identity", choices=["hecke", "double-shuffle"], default="hecke")
    e.add_argument("--constant", type=int, help="override the normalizing constant of the Hecke identity")
    e.add_argument("--format", choices=["json", "csv"], default="json")
    e.add_argument("--out")
    e.set_defaults(func=cmd_eisenstein)

    r = sub.add_parser("reduce", help="reduce a relation in the formal double shuffle space")
    r.add_argument("relation", help='e.g. "Z(2,4) + Z(3,3) + Z(4,2) = Z(6)"')
    r.add_argument("--out")
    r.set_defaults(func=cmd_reduce)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    cfg = load_config(known.config)
    if cfg.get("cache_dir") and "DZV_CACHE_DIR" not in os.environ:
        os.environ["DZV_CACHE_DIR"] = cfg.get("cache_dir")
    args = build_parser(cfg).parse_args(argv)
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

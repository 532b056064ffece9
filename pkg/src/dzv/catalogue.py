"""Relation catalogues: generation, JSON/CSV persistence and numeric verification.

A catalogue is a JSON document holding exact relation vectors. Rationals are
always written as ``"p/q"`` strings and entries are sorted so that two runs
with the same parameters give byte-identical files.
"""
from __future__ import annotations

import csv
import datetime as _dt
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import mpmath

from . import relations as R
from .bigreal import InsufficientPrecision
from .numerics import UnevaluableSymbol, reconstruct_single_zeta, verify
from .numerics.series import DivergentSeries
from .periods import (basis_gammaA_minus, basis_levelN, basis_W, cuspidal_subspace, span_W4plus)
from .rational import format_fraction, parse_fraction
from .symbols import RelationVector, Symbol

__all__ = [
    "SCHEMA_VERSION", "FamilySpec", "FAMILY_SPECS", "UnsupportedFamily", "SchemaError",
    "generate", "entry_from_relation", "relation_from_entry", "make_document", "dumps", "loads",
    "verify_document", "VerifySummary", "write_csv",
]

SCHEMA_VERSION = 1


class UnsupportedFamily(ValueError):
    """Unknown family tag or a (family, weight, level) combination it does not cover."""


class SchemaError(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    """How to enumerate one relation family at period weight k (polynomials of degree k - 2)."""
    basis: Callable[[int, int], Sequence]
    build: Callable[[object], RelationVector]
    min_weight: int = 4
    levels: tuple[int, ...] = (1,)
    single: bool = False  # one relation per weight, no period space behind it


def _w(sign):
    return lambda k, N: basis_W(k - 2, sign).basis


FAMILY_SPECS: dict[str, FamilySpec] = {
    "gkz": FamilySpec(_w(1), R.gkz),
    "ma-odd": FamilySpec(_w(-1), R.ma_odd),
    "ma-even": FamilySpec(_w(1), R.ma_even),
    "cuspidal-a": FamilySpec(lambda k, N: cuspidal_subspace(k - 2).basis, lambda p: R.cuspidal_half(p, "a")),
    "cuspidal-b": FamilySpec(_w(-1), lambda p: R.cuspidal_half(p, "b")),
    "cuspidal-c": FamilySpec(_w(1), lambda p: R.cuspidal_half(p, "c")),
    "hirose-i": FamilySpec(lambda k, N: basis_gammaA_minus(k - 2).basis, lambda p: R.hirose(p, "i")),
    "hirose-ii": FamilySpec(_w(1), lambda p: R.hirose(p, "ii")),
    "hirose-iii": FamilySpec(_w(1), lambda p: R.hirose(p, "iii")),
    "hirose-iv": FamilySpec(_w(-1), lambda p: R.hirose(p, "iv")),
    "bachmann": FamilySpec(_w(1), R.bachmann),
    "kt": FamilySpec(lambda k, N: span_W4plus(k - 2).basis, R.kaneko_tsumura, levels=(4,)),
    "colored": FamilySpec(lambda k, N: basis_levelN(k - 2, N, 1).basis, R.colored, levels=(1, 2)),
    "ttilde-sum": FamilySpec(lambda k, N: (k,), R.ttilde_weighted_sum, levels=(4,), single=True),
}


def _check_family(family: str, weight: int, level: int | None) -> int:
    spec = FAMILY_SPECS.get(family)
    if spec is None:
        raise UnsupportedFamily(f"unknown family {family!r}; choose from {', '.join(sorted(FAMILY_SPECS))}")
    if weight % 2:
        raise UnsupportedFamily(f"{family} needs an even weight, got {weight}")
    if weight < spec.min_weight:
        raise UnsupportedFamily(f"{family} needs weight >= {spec.min_weight}, got {weight}")
    if level is None:
        level = spec.levels[0]
    if level not in spec.levels:
        raise UnsupportedFamily(f"{family} is available at level(s) {spec.levels}, not {level}")
    return level


def generate(family: str, weights: Iterable[int], level: int | None = None) -> list[RelationVector]:
    """All nonzero relations of ``family`` coming from a basis of its period space at each weight.

    ``weights`` are the weights k of the period polynomials (degree k - 2); the
    relations themselves may sit at k - 1 or k + 1 (the Ma families).
    """
    out: list[RelationVector] = []
    for k in weights:
        N = _check_family(family, k, level)
        spec = FAMILY_SPECS[family]
        for item in spec.basis(k, N):
            v = spec.build(item)
            if v.terms:
                meta = dict(v.meta)
                meta["period_weight"] = k
                out.append(v.replace(meta=meta))
    return out


# serialization --------------------------------------------------------------------------------

def _fraction_list(vals) -> list:
    if vals and isinstance(vals[0], (list, tuple)):
        return [_fraction_list(v) for v in vals]
    return [format_fraction(Fraction(v)) for v in vals]


def entry_from_relation(v: RelationVector) -> dict:
    meta = v.meta or {}
    prov = {
        "source_polynomial": _fraction_list(list(meta.get("source_polynomial", []))),
        "space_tag": meta.get("space_tag", ""),
    }
    if "period_weight" in meta:
        prov["period_weight"] = meta["period_weight"]
    return {
        "family": v.family,
        "status": v.status,
        "weight": v.weight,
        "level": v.level,
        "value_kind": v.value_kind,
        "coefficients": [{"symbol": s.to_json(), "value": format_fraction(c)} for s, c in v.terms.items()],
        "single_zeta": "symbolic" if v.single is None else format_fraction(v.single),
        "verification": None,
        "provenance": prov,
    }


def relation_from_entry(e: dict) -> RelationVector:
    try:
        terms = {Symbol.from_json(c["symbol"]): parse_fraction(c["value"]) for c in e["coefficients"]}
        single = None if e["single_zeta"] == "symbolic" else parse_fraction(e["single_zeta"])
        return RelationVector(e["weight"], terms, single, level=e["level"], value_kind=e["value_kind"],
                              family=e["family"], status=e["status"], meta=dict(e.get("provenance", {})))
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed catalogue entry: {exc}") from exc


def _sort_key(e: dict):
    coeffs = tuple((c["symbol"]["family"], tuple(c["symbol"]["indices"]), tuple(c["symbol"].get("colors", ())),
                    parse_fraction(c["value"])) for c in e["coefficients"])
    return (e["weight"], e["family"], coeffs)


def make_document(relations: Iterable[RelationVector], reproducible: bool = False) -> dict:
    entries = sorted((entry_from_relation(v) for v in relations), key=_sort_key)
    stamp = None if reproducible else _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    return {"schema_version": SCHEMA_VERSION, "generated_at": stamp, "entries": entries}


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except ValueError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "entries" not in doc:
        raise SchemaError("missing 'entries'")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise SchemaError(f"schema version {doc.get('schema_version')!r}, expected {SCHEMA_VERSION}")
    return doc


def write_csv(doc: dict, fh) -> None:
    """One row per coefficient."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["entry", "family", "status", "weight", "level", "symbol", "value", "single_zeta"])
    for i, e in enumerate(doc["entries"]):
        for c in e["coefficients"]:
            s = Symbol.from_json(c["symbol"])
            w.writerow([i, e["family"], e["status"], e["weight"], e["level"], str(s), c["value"], e["single_zeta"]])


# verification ---------------------------------------------------------------------------------

@dataclass
class VerifySummary:
    checked: int = 0
    proven_failures: int = 0
    conjectural_failures: int = 0
    errors: int = 0

    @property
    def exit_code(self) -> int:
        return 2 if self.proven_failures or self.errors else 0


def _verify_entry(v: RelationVector, digits: int) -> dict:
    eps = 10.0 ** (-digits)
    out: dict = {"digits": digits}
    try:
        if v.single is None:
            # large denominators may need more digits than the check itself
            for d in (digits, 2 * digits):
                try:
                    c = reconstruct_single_zeta(v, eps=10.0 ** (-d), max_denominator=10 ** max(6, d // 2 - 1))
                    break
                except InsufficientPrecision as exc:
                    note = str(exc)
            else:
                out.update(residual=None, passed=False, note=note)
                return out
            out["single_zeta_reconstructed"] = format_fraction(c)
            out["reconstruction_digits"] = d
            v = v.replace(single=c)
        rep = verify(v, eps=eps)
    except (UnevaluableSymbol, DivergentSeries, ArithmeticError) as exc:
        out.update(residual=None, passed=False, note=f"not evaluable: {exc}")
        return out
    out["residual"] = mpmath.nstr(abs(rep.residual.value), 6)
    out["threshold"] = mpmath.nstr(rep.threshold, 3)
    out["passed"] = bool(rep.passed)
    return out


def verify_document(doc: dict, digits: int = 25) -> VerifySummary:
    """Fill in the ``verification`` field of every entry (in place)."""
    summary = VerifySummary()
    for e in doc["entries"]:
        v = relation_from_entry(e)
        res = _verify_entry(v, digits)
        # keep the schema key name 'pass'
        res["pass"] = res.pop("passed")
        e["verification"] = res
        summary.checked += 1
        if not res["pass"]:
            if res.get("residual") is None and "not evaluable" in res.get("note", ""):
                summary.errors += 1
            elif e["status"] == "conjectural":
                summary.conjectural_failures += 1
            else:
                summary.proven_failures += 1
    return summary

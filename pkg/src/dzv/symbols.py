"""Symbols for (formal) double-zeta-type values and exact relation vectors."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .poly import normalize_vector

__all__ = ["Symbol", "RelationVector", "FAMILIES",
           "Z", "Zh", "Zhat", "Tt", "Tsingle", "J", "Zsh", "Zc", "Pc"]

# family -> (arity of indices, description)
FAMILIES = {
    "Z": "double zeta value Z_{r,s} (or single Z_k)",
    "Zh": "half-interpolated double zeta value",
    "Zhat": "Apostol-Vu type double zeta value",
    "Tt": "double T~-value",
    "T": "single T-value",
    "J": "shuffle regularized iterated integral J(a;b,c)",
    "Zsh": "shuffle regularized double zeta value with last index 1",
    "Zc": "colored (double or single) zeta value",
    "Pc": "colored product symbol P_{r,s}^{a,b}",
}


@dataclass(frozen=True, order=True)
class Symbol:
    family: str
    indices: tuple[int, ...]
    colors: tuple[int, ...] = ()

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown symbol family {self.family!r}")

    @property
    def weight(self) -> int:
        if self.family == "J":
            a, b, c = self.indices
            return a + b + c + 2
        return sum(self.indices)

    @property
    def depth(self) -> int:
        return 2 if self.family == "J" else len(self.indices)

    def sort_key(self):
        return (self.family, len(self.indices), self.indices, self.colors)

    def __str__(self):
        idx = ",".join(map(str, self.indices))
        if self.colors:
            return f"{self.family}[{idx}|{','.join(map(str, self.colors))}]"
        return f"{self.family}[{idx}]"

    def to_json(self) -> dict:
        d = {"family": self.family, "indices": list(self.indices)}
        if self.colors:
            d["colors"] = list(self.colors)
        return d

    @classmethod
    def from_json(cls, d: Mapping) -> "Symbol":
        return cls(d["family"], tuple(d["indices"]), tuple(d.get("colors", ())))


def Z(*idx: int) -> Symbol:
    return Symbol("Z", tuple(idx))


def Zh(r: int, s: int) -> Symbol:
    return Symbol("Zh", (r, s))


def Zhat(r: int, s: int) -> Symbol:
    return Symbol("Zhat", (r, s))


def Tt(r: int, s: int) -> Symbol:
    return Symbol("Tt", (r, s))


def Tsingle(k: int) -> Symbol:
    return Symbol("T", (k,))


def J(a: int, b: int, c: int) -> Symbol:
    return Symbol("J", (a, b, c))


def Zsh(r: int) -> Symbol:
    return Symbol("Zsh", (r, 1))


def Zc(indices: Iterable[int], colors: Iterable[int]) -> Symbol:
    return Symbol("Zc", tuple(indices), tuple(colors))


def Pc(r: int, s: int, a: int, b: int) -> Symbol:
    return Symbol("Pc", (r, s), (a, b))


@dataclass(frozen=True)
class RelationVector:
    """The relation ``sum(coeff * symbol) = single * zeta(weight)``.

    ``single`` is ``None`` when the single-zeta coefficient is not known exactly
    (a congruence modulo Q*zeta(weight)).
    """
    weight: int
    terms: Mapping[Symbol, Fraction]
    single: Fraction | None = Fraction(0)
    level: int = 1
    value_kind: str = "Z"
    family: str = ""
    status: str = "proven"
    meta: Mapping = field(default_factory=dict, compare=False)

    def __post_init__(self):
        clean = {}
        for sym, c in self.terms.items():
            c = Fraction(c)
            if c:
                clean[sym] = clean.get(sym, Fraction(0)) + c
        clean = {s: c for s, c in sorted(clean.items(), key=lambda kv: kv[0].sort_key()) if c}
        for sym in clean:
            if sym.weight != self.weight:
                raise ValueError(f"symbol {sym} has weight {sym.weight}, relation has weight {self.weight}")
        object.__setattr__(self, "terms", clean)
        if self.single is not None:
            object.__setattr__(self, "single", Fraction(self.single))

    def coeff(self, sym: Symbol) -> Fraction:
        return self.terms.get(sym, Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms and not self.single

    def replace(self, **kw) -> "RelationVector":
        d = dict(weight=self.weight, terms=self.terms, single=self.single, level=self.level,
                 value_kind=self.value_kind, family=self.family, status=self.status, meta=self.meta)
        d.update(kw)
        return RelationVector(**d)

    def scaled(self, c) -> "RelationVector":
        c = Fraction(c)
        return self.replace(terms={s: v * c for s, v in self.terms.items()},
                            single=None if self.single is None else self.single * c)

    def normalized(self) -> "RelationVector":
        """Coprime integer coefficients on the symbols, first symbol positive."""
        if not self.terms:
            return self
        vals = list(self.terms.values())
        ints = normalize_vector(vals)
        return self.scaled(ints[0] / vals[0])

    def __add__(self, other: "RelationVector") -> "RelationVector":
        if other.weight != self.weight:
            raise ValueError("weight mismatch")
        terms = dict(self.terms)
        for s, v in other.terms.items():
            terms[s] = terms.get(s, Fraction(0)) + v
        single = None if self.single is None or other.single is None else self.single + other.single
        return self.replace(terms=terms, single=single)

    def coefficient_list(self) -> list[tuple[Symbol, Fraction]]:
        return list(self.terms.items())

    def __str__(self):
        lhs = " + ".join(f"({c})*{s}" for s, c in self.terms.items()) or "0"
        rhs = "?" if self.single is None else str(self.single)
        return f"{lhs} = ({rhs})*zeta({self.weight})"

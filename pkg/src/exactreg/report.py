"""JSON rendering of exact values and analysis reports."""
from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from typing import Any, Sequence

from .exactalg import AlgebraicNumber, IntPoly, Matrix, NumberField, factor_squarefree_then_irreducible
from .exactalg.roots import isolate_real_roots, refine

DECIMAL_DIGITS = 20


def frac(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def poly(p: IntPoly) -> dict:
    return {"coeffs": [str(c) for c in p.coeffs], "text": p.format("x")}


def algebraic(a: AlgebraicNumber) -> dict:
    f = a.field
    lo, hi = f.root_interval()
    text, width = a.decimal(DECIMAL_DIGITS)
    return {
        "minpoly": [str(c) for c in f.minpoly.coeffs],
        "root_interval": [frac(lo), frac(hi)],
        "coords": [frac(c) for c in a.coords],
        "text": a.format("L"),
        "decimal": text,
        "width": frac(width),
    }


def parse_algebraic(d: dict) -> AlgebraicNumber:
    """Inverse of :func:`algebraic`."""
    field = NumberField(IntPoly(int(c) for c in d["minpoly"]),
                        (Fraction(d["root_interval"][0]), Fraction(d["root_interval"][1])))
    return field.from_poly([Fraction(c) for c in d["coords"]])


def matrix(m: Matrix) -> list[list[str]]:
    return [[frac(v) for v in row] for row in m.rows]


def eigen_split(p: IntPoly) -> list[dict]:
    """Irreducible factors with multiplicity and decimal real roots."""
    out = []
    for fac, mult in factor_squarefree_then_irreducible(p):
        roots = []
        for iv in isolate_real_roots(fac):
            lo, hi = refine(fac, iv, Fraction(1, 10**12)) if iv[0] != iv[1] else iv
            roots.append(f"{float((lo + hi) / 2):.12g}")
        out.append({"factor": poly(fac), "multiplicity": mult, "real_roots": roots})
    return out


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def load_schema() -> dict:
    text = resources.files("exactreg").joinpath("schema/report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def word_text(s, word: Sequence[int]) -> str:
    return s.format_word(word)


def jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return frac(x)
    if isinstance(x, AlgebraicNumber):
        return algebraic(x)
    if isinstance(x, IntPoly):
        return poly(x)
    if isinstance(x, Matrix):
        return matrix(x)
    return x

"""Factorization of integer polynomials over the rationals.

Squarefree decomposition first, then rational roots, then Kronecker's
interpolation search for the remaining factors.  Kronecker is exponential,
so factors above ``degree_cap`` are refused instead of being left unsplit.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

from .poly import IntPoly, squarefree_decomposition

DEFAULT_DEGREE_CAP = 12


class FactorizationError(ValueError):
    pass


def divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        raise ValueError("divisors of zero")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: IntPoly) -> list[Fraction]:
    """All rational roots of a nonzero polynomial (rational root theorem)."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    roots = []
    k = 0
    while p[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
    q = IntPoly(p.coeffs[k:])
    if q.degree < 1:
        return roots
    for num in divisors(q.tc):
        for den in divisors(q.lc):
            for s in (1, -1):
                r = Fraction(s * num, den)
                if r not in roots and q(r) == 0:
                    roots.append(r)
    return sorted(roots)


def factor_squarefree_then_irreducible(
    p: IntPoly, degree_cap: int = DEFAULT_DEGREE_CAP
) -> list[tuple[IntPoly, int]]:
    """Irreducible primitive factors with multiplicities, sorted by (degree, coeffs)."""
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    out: list[tuple[IntPoly, int]] = []
    for part, mult in squarefree_decomposition(p):
        for f in _factor_squarefree(part, degree_cap):
            out.append((f, mult))
    out.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return out


def _factor_squarefree(p: IntPoly, degree_cap: int) -> list[IntPoly]:
    factors = []
    for r in rational_roots(p):
        lin = IntPoly((-r.numerator, r.denominator))
        factors.append(lin)
        p = p.exact_div(lin) if p.degree > 0 else p
    p = p.primitive()
    if p.degree < 1:
        return factors
    if p.degree <= 3:
        # no rational roots left, so irreducible
        return factors + [p]
    if p.degree > degree_cap:
        raise FactorizationError(
            f"factor of degree {p.degree} exceeds the Kronecker degree cap {degree_cap}"
        )
    return factors + _kronecker(p)


def _kronecker(p: IntPoly) -> list[IntPoly]:
    n = p.degree
    for d in range(2, n // 2 + 1):
        f = _kronecker_find(p, d)
        if f is not None:
            g = p.exact_div(f)
            return _kronecker(f.primitive()) + _kronecker(g.primitive())
    return [p.primitive()]


def _sample_points(p: IntPoly, count: int) -> list[int]:
    pts = []
    for k in itertools.count():
        for x in ((k,) if k == 0 else (k, -k)):
            if p(x) != 0:
                pts.append(x)
                if len(pts) == count:
                    return pts
    raise AssertionError  # pragma: no cover


def _kronecker_find(p: IntPoly, d: int) -> IntPoly | None:
    """A factor of exact degree ``d``, or None."""
    xs = _sample_points(p, d + 1)
    choices = []
    for i, x in enumerate(xs):
        divs = divisors(p(x))
        if i == 0:
            choices.append(divs)  # fix sign of the first value
        else:
            choices.append(divs + [-v for v in divs])
    for ys in itertools.product(*choices):
        cand = _interpolate(xs, ys)
        if cand is None or cand.degree != d:
            continue
        if cand.divides(p):
            # primitive divisor over Q divides over Z (Gauss)
            return cand.primitive()
    return None


def _interpolate(xs: list[int], ys: tuple[int, ...]) -> IntPoly | None:
    """Lagrange interpolation; None unless the result has integer coefficients."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            denom *= xs[i] - xs[j]
        scale = Fraction(ys[i]) / denom
        for k in range(n):
            coeffs[k] += scale * basis[k]
    if any(c.denominator != 1 for c in coeffs):
        return None
    return IntPoly(int(c) for c in coeffs)

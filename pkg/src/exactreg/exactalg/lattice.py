"""Integer lattices: Hermite normal form, resultants and Bezout witnesses."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .matrix import Matrix, bareiss_det
from .poly import IntPoly


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def row_hnf(rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], list[int]]:
    """Row-style Hermite normal form.

    Returns ``(H, U, pivots)`` with ``H == U @ rows``, ``U`` unimodular, the
    nonzero rows of ``H`` first, pivots positive and entries above each
    pivot reduced into ``[0, pivot)``.
    """
    a = [[int(v) for v in r] for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        for i in range(r + 1, m):
            if a[i][c] == 0:
                continue
            p, q = a[r][c], a[i][c]
            g, x, y = xgcd(p, q)
            pg, qg = p // g, q // g
            ar, ai = a[r], a[i]
            a[r] = [x * s + y * t for s, t in zip(ar, ai)]
            a[i] = [-qg * s + pg * t for s, t in zip(ar, ai)]
            ur, ui = u[r], u[i]
            u[r] = [x * s + y * t for s, t in zip(ur, ui)]
            u[i] = [-qg * s + pg * t for s, t in zip(ur, ui)]
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-v for v in a[r]]
            u[r] = [-v for v in u[r]]
        piv = a[r][c]
        for i in range(r):
            f = a[i][c] // piv
            if f:
                a[i] = [s - f * t for s, t in zip(a[i], a[r])]
                u[i] = [s - f * t for s, t in zip(u[i], u[r])]
        pivots.append(c)
        r += 1
    return a, u, pivots


def hnf(m: Matrix) -> Matrix:
    """Column-style Hermite normal form ``H = M @ U`` (zero columns last)."""
    if not m.is_integer():
        raise TypeError("HNF needs an integer matrix")
    h, _, _ = row_hnf(m.T.rows)
    return Matrix(h).T


def lattice_basis(vectors: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """HNF basis of the integer lattice spanned by ``vectors``."""
    if not vectors:
        return []
    h, _, pivots = row_hnf(vectors)
    return [tuple(h[i]) for i in range(len(pivots))]


def eventual_image(m: Matrix) -> list[tuple[int, ...]]:
    """Integer basis of the column lattice of ``M**dim``.

    The column space of ``M**n`` stops shrinking by ``n = dim``; its rational
    span is the eventual image.  An empty list means the zero space.
    """
    if not m.is_square():
        raise ValueError("eventual image of a non-square matrix")
    power = m ** m.nrows
    return lattice_basis(power.columns())


def integer_solve(generators: Sequence[Sequence], target: Sequence) -> tuple[int, ...] | None:
    """Integer ``x`` with ``sum x_i * generators[i] == target``, or None.

    Generators need not be independent; rational entries are scaled by a
    common denominator first.
    """
    den = 1
    for v in list(generators) + [target]:
        for c in v:
            den = lcm(den, Fraction(c).denominator)
    gens = [[int(Fraction(c) * den) for c in v] for v in generators]
    t = [int(Fraction(c) * den) for c in target]
    if not gens:
        return () if not any(t) else None
    h, u, pivots = row_hnf(gens)
    y = []
    for i, c in enumerate(pivots):
        q, rem = divmod(t[c], h[i][c])
        if rem:
            return None
        y.append(q)
        if q:
            t = [s - q * w for s, w in zip(t, h[i])]
    if any(t):
        return None
    return tuple(sum(y[i] * u[i][j] for i in range(len(y))) for j in range(len(gens)))


def sylvester_matrix(q: IntPoly, r: IntPoly) -> Matrix:
    m, n = q.degree, r.degree
    size = m + n
    rows = []
    qd = list(reversed(q.coeffs))
    rd = list(reversed(r.coeffs))
    for i in range(n):
        rows.append([0] * i + qd + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + rd + [0] * (size - n - 1 - i))
    return Matrix(rows)


def resultant(q: IntPoly, r: IntPoly) -> int:
    """Sylvester resultant; zero exactly when q and r share a root."""
    if q.is_zero() or r.is_zero():
        raise ValueError("resultant of the zero polynomial")
    if q.degree == 0 and r.degree == 0:
        return 1
    if q.degree == 0:
        return q.lc ** r.degree
    if r.degree == 0:
        return r.lc ** q.degree
    return bareiss_det([list(row) for row in sylvester_matrix(q, r).rows])


@dataclass(frozen=True)
class BezoutWitness:
    """``Q*q + R*r == D`` with ``deg Q < deg r`` and ``deg R < deg q``."""

    D: int
    Q: IntPoly
    R: IntPoly

    def check(self, q: IntPoly, r: IntPoly) -> bool:
        return self.Q * q + self.R * r == IntPoly.const(self.D)


class NotCoprimeError(ValueError):
    pass


def reduced_resultant(q: IntPoly, r: IntPoly) -> BezoutWitness:
    """Smallest positive integer in the ideal (q, r) with degree-bounded cofactors.

    The lattice spanned by ``x^i q`` (i < deg r) and ``x^j r`` (j < deg q) is
    put in row HNF with coordinates ordered from the top degree down; the
    last HNF row then lies on the constant axis and its pivot is ``D``.
    """
    if q.is_zero() or r.is_zero():
        raise ValueError("reduced resultant of the zero polynomial")
    m, n = q.degree, r.degree
    if m + n == 0:
        raise ValueError("reduced resultant of two constants is undefined")
    size = m + n
    gens = []
    for i in range(n):
        gens.append(q.shift_degree(i))
    for j in range(m):
        gens.append(r.shift_degree(j))
    rows = [[g[size - 1 - k] for k in range(size)] for g in gens]
    h, u, pivots = row_hnf(rows)
    if len(pivots) < size:
        raise NotCoprimeError(f"{q} and {r} have a common factor")
    last = size - 1
    d = h[last][last]
    coeffs = u[last]
    Q = IntPoly(coeffs[:n])
    R = IntPoly(coeffs[n:])
    w = BezoutWitness(d, Q, R)
    assert w.check(q, r)
    return w

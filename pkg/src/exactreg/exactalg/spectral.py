"""Spectral facts about integer matrices decided without floating point.

``numeric_moduli`` is the one exception: it reports root moduli through
mpmath for display and for the convergence exponent, never for a decision.
"""
from __future__ import annotations

from fractions import Fraction

import mpmath

from .matrix import Matrix, charpoly
from .numberfield import AlgebraicNumber
from .poly import IntPoly, gcd_poly, squarefree_part
from .roots import count_roots, root_bound


def cyclotomic(n: int) -> IntPoly:
    """n-th cyclotomic polynomial via x^n - 1 = prod_{d | n} Phi_d."""
    p = IntPoly((-1,) + (0,) * (n - 1) + (1,))
    for d in range(1, n):
        if n % d == 0:
            p = p.exact_div(cyclotomic(d))
    return p


def _euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def strip_common_roots(h: IntPoly, f: IntPoly) -> IntPoly:
    """Remove from ``h`` every root shared with ``f`` (all multiplicities)."""
    while h.degree > 0:
        g = gcd_poly(h, f)
        if g.degree <= 0:
            break
        h = h.primitive().exact_div(g)
    return h


def roots_in_closed_unit_disk(h: IntPoly) -> bool:
    """Whether every root of a monic integer polynomial has modulus <= 1.

    By Kronecker's theorem this holds exactly when h is a power of x times
    cyclotomic polynomials, which is checked by trial division.
    """
    h = h.primitive()
    if h.degree <= 0:
        return True
    if abs(h.lc) != 1:
        return False
    while h.degree > 0 and h[0] == 0:
        h = IntPoly(h.coeffs[1:])
    n = 1
    while h.degree > 0:
        phi = _euler_phi(n)
        if phi > h.degree and n > 2 * h.degree * h.degree + 2:
            return False
        if phi <= h.degree:
            c = cyclotomic(n)
            while c.divides(h):
                h = h.exact_div(c)
        n += 1
    return abs(h.lc) == 1


def dominant_root_is_strict(m: Matrix, lam: AlgebraicNumber) -> bool:
    """``lam`` is a simple root of charpoly(m) strictly exceeding every other modulus.

    The roots of charpoly(m (x) m) are all products z_i z_j.  A root z != lam
    with |z| >= lam would put z*conj(z) >= lam^2 among them, so it is enough
    that lam^2 is a simple root and nothing real exceeds it.
    """
    f = charpoly(m)
    if f(lam) != 0 or f.derivative()(lam) == 0:
        return False
    g = charpoly(m.kron(m))
    lam2 = lam * lam
    if g.derivative()(lam2) == 0:
        return False
    sq = squarefree_part(g)
    top = root_bound(sq)
    width = Fraction(1, 2**10)
    while True:
        lo, hi = lam2.enclosure(width)
        if lo == hi:
            return count_roots(sq, hi, top) == 0
        if count_roots(sq, lo, hi) == 1:
            return count_roots(sq, hi, top) == 0
        width /= 2**10


def numeric_roots(p: IntPoly, dps: int = 50) -> list:
    if p.degree < 1:
        return []
    with mpmath.workdps(dps):
        return mpmath.polyroots([mpmath.mpf(c) for c in reversed(p.coeffs)],
                                maxsteps=500, extraprec=4 * dps)


def second_modulus_interval(m: Matrix, lam: AlgebraicNumber, dps: int = 50) -> tuple[Fraction, Fraction]:
    """Interval around the largest root modulus of charpoly(m) other than ``lam``."""
    f = squarefree_part(charpoly(m))
    lam_f = float(lam)
    roots = numeric_roots(f, dps)
    with mpmath.workdps(dps):
        # drop the single root closest to lam
        idx = min(range(len(roots)), key=lambda i: abs(roots[i] - lam_f))
        others = [abs(z) for i, z in enumerate(roots) if i != idx]
        if not others:
            return Fraction(0), Fraction(0)
        top = max(others)
        eps = mpmath.mpf(10) ** (-(dps // 2))
        lo = max(mpmath.mpf(0), top - eps)
        hi = top + eps
        return Fraction(str(mpmath.nstr(lo, dps))), Fraction(str(mpmath.nstr(hi, dps)))

"""Real root isolation of integer polynomials with Sturm sequences.

Intervals are pairs ``(lo, hi)`` of Fractions.  ``lo == hi`` marks an exact
rational root; otherwise the root lies strictly inside and ``p`` takes
opposite, nonzero signs at the endpoints, so bisection by sign refines it.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .poly import IntPoly, is_squarefree, qdivmod

Interval = tuple[Fraction, Fraction]


def sturm_sequence(p: IntPoly) -> list[list[Fraction]]:
    seq = [[Fraction(c) for c in p.coeffs], [Fraction(c) for c in p.derivative().coeffs]]
    while seq[-1]:
        _, r = qdivmod(seq[-2], seq[-1])
        seq.append([-c for c in r])
    return seq[:-1]


def _eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _variations(seq: list[list[Fraction]], x: Fraction) -> int:
    signs = [_sign(_eval(s, x)) for s in seq]
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p: IntPoly, lo: Fraction, hi: Fraction, seq=None) -> int:
    """Number of distinct real roots in the half-open interval ``(lo, hi]``."""
    seq = seq or sturm_sequence(p)
    return _variations(seq, Fraction(lo)) - _variations(seq, Fraction(hi))


def root_bound(p: IntPoly) -> Fraction:
    """Cauchy bound: every root has modulus strictly below the result."""
    lc = abs(p.lc)
    return 1 + max((Fraction(abs(c), lc) for c in p.coeffs[:-1]), default=Fraction(0))


def isolate_real_roots(p: IntPoly) -> list[Interval]:
    """Disjoint isolating intervals, ascending, one per real root."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    if not is_squarefree(p):
        raise ValueError(f"{p} is not squarefree")
    if p.degree < 1:
        return []
    seq = sturm_sequence(p)
    b = root_bound(p)
    out: list[Interval] = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        n = count_roots(p, lo, hi, seq)
        if n == 0:
            continue
        if n == 1:
            out.append(_tighten_single(p, lo, hi, seq))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    out.sort(key=lambda iv: iv[0])
    return out


def _tighten_single(p: IntPoly, lo: Fraction, hi: Fraction, seq) -> Interval:
    """Turn a half-open interval with exactly one root into canonical form."""
    while True:
        if p(hi) == 0:
            return (hi, hi)
        plo = p(lo)
        if plo != 0 and _sign(plo) != _sign(p(hi)):
            return (lo, hi)
        mid = (lo + hi) / 2
        if count_roots(p, lo, mid, seq) == 1:
            hi = mid
        else:
            lo = mid


def refine(p: IntPoly, iv: Interval, width: Fraction) -> Interval:
    """Bisect an isolating interval until it is narrower than ``width``."""
    lo, hi = iv
    if lo == hi:
        return iv
    slo = _sign(p(lo))
    while hi - lo >= width:
        mid = (lo + hi) / 2
        sm = _sign(p(mid))
        if sm == 0:
            return (mid, mid)
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return (lo, hi)


def bisect_once(p: IntPoly, iv: Interval) -> Interval:
    lo, hi = iv
    if lo == hi:
        return iv
    mid = (lo + hi) / 2
    sm = _sign(p(mid))
    if sm == 0:
        return (mid, mid)
    return (mid, hi) if sm == _sign(p(lo)) else (lo, mid)


def interval_eval(coeffs: Sequence, lo: Fraction, hi: Fraction) -> Interval:
    """Enclosure of a rational polynomial's range over ``[lo, hi]`` (Horner)."""
    acc_lo = acc_hi = Fraction(0)
    for c in reversed(coeffs):
        prods = (acc_lo * lo, acc_lo * hi, acc_hi * lo, acc_hi * hi)
        acc_lo, acc_hi = min(prods) + c, max(prods) + c
    return acc_lo, acc_hi

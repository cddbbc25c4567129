"""Dense univariate polynomials with integer coefficients.

Coefficients are stored lowest degree first.  Rational polynomial helpers
(``q*`` functions) work on plain lists of :class:`~fractions.Fraction` and
are used wherever a computation has to leave the integers temporarily.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence


class IntPoly:
    """Immutable integer polynomial ``c0 + c1*x + ... + cn*x^n``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = []
        for v in coeffs:
            if isinstance(v, Fraction):
                if v.denominator != 1:
                    raise ValueError(f"non-integer coefficient {v}")
                v = v.numerator
            c.append(int(v))
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    # construction -----------------------------------------------------
    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, v: int) -> "IntPoly":
        return cls((v,))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "IntPoly":
        p = cls((1,))
        for r in roots:
            p = p * cls((-r, 1))
        return p

    @classmethod
    def from_rational(cls, coeffs: Sequence[Fraction]) -> "IntPoly":
        """Primitive integer multiple of a rational polynomial (positive lc)."""
        coeffs = [Fraction(c) for c in coeffs]
        den = reduce(_lcm, (c.denominator for c in coeffs), 1)
        return cls(int(c * den) for c in coeffs).primitive()

    # basic data ---------------------------------------------------------
    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._c

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self._c) - 1

    @property
    def lc(self) -> int:
        return self._c[-1] if self._c else 0

    @property
    def tc(self) -> int:
        return self._c[0] if self._c else 0

    def is_zero(self) -> bool:
        return not self._c

    def is_monic(self) -> bool:
        return self.lc == 1

    def __getitem__(self, i: int) -> int:
        return self._c[i] if 0 <= i < len(self._c) else 0

    def __len__(self) -> int:
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def content(self) -> int:
        return reduce(gcd, self._c, 0)

    def primitive(self) -> "IntPoly":
        """Divide by the content and make the leading coefficient positive."""
        if not self._c:
            return self
        g = self.content()
        if self.lc < 0:
            g = -g
        return IntPoly(c // g for c in self._c)

    # arithmetic -----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly((other,))
        return isinstance(other, IntPoly) and self._c == other._c

    def __hash__(self) -> int:
        return hash(("IntPoly", self._c))

    def __neg__(self) -> "IntPoly":
        return IntPoly(-c for c in self._c)

    def __add__(self, other) -> "IntPoly":
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        n = max(len(self._c), len(other._c))
        return IntPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __sub__(self, other) -> "IntPoly":
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        n = max(len(self._c), len(other._c))
        return IntPoly(self[i] - other[i] for i in range(n))

    def __rsub__(self, other) -> "IntPoly":
        return -(self - other)

    def __mul__(self, other) -> "IntPoly":
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        if not self._c or not other._c:
            return IntPoly()
        out = [0] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a:
                for j, b in enumerate(other._c):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPoly":
        if n < 0:
            raise ValueError("negative power")
        out, base = IntPoly((1,)), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def derivative(self) -> "IntPoly":
        return IntPoly(i * c for i, c in enumerate(self._c) if i)

    def shift_degree(self, k: int) -> "IntPoly":
        """Multiply by ``x**k``."""
        return IntPoly((0,) * k + self._c) if self._c else self

    def __call__(self, x):
        """Horner evaluation; ``x`` may be any ring element supporting + and *."""
        acc = 0
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def divmod_q(self, other: "IntPoly") -> tuple[list[Fraction], list[Fraction]]:
        return qdivmod(list(self._c), list(other._c))

    def exact_div(self, other: "IntPoly") -> "IntPoly":
        """Quotient when ``other`` divides ``self`` exactly over the integers."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        q, r = self.divmod_q(other)
        if r or any(c.denominator != 1 for c in q):
            raise ValueError(f"{other} does not divide {self} over the integers")
        return IntPoly(q)

    def divides(self, other: "IntPoly") -> bool:
        """True when ``self`` divides ``other`` over the rationals."""
        if self.is_zero():
            return other.is_zero()
        return not other.divmod_q(self)[1]

    # display ------------------------------------------------------------
    def __repr__(self) -> str:
        return f"IntPoly({list(self._c)})"

    def __str__(self) -> str:
        return self.format("x")

    def format(self, var: str = "x") -> str:
        if not self._c:
            return "0"
        parts = []
        for i in range(len(self._c) - 1, -1, -1):
            c = self._c[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _as_poly(v):
    if isinstance(v, IntPoly):
        return v
    if isinstance(v, int):
        return IntPoly((v,))
    return NotImplemented


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else 0


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(?:([A-Za-z_]\w*)\s*(?:\^\s*(\d+))?)?\s*")


def parse_poly(text: str, var: str = "x") -> IntPoly:
    """Parse an integer polynomial such as ``"L-1"`` or ``"3*L^2 + 2"``."""
    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise ValueError(f"cannot parse polynomial {text!r} at offset {pos}")
        sign, num, name, exp = m.groups()
        if pos > 0 and not sign:
            raise ValueError(f"missing operator in {text!r} at offset {pos}")
        if name is not None and name != var:
            raise ValueError(f"unknown variable {name!r} in {text!r} (expected {var!r})")
        c = int(num) if num else 1
        if sign == "-":
            c = -c
        e = (int(exp) if exp else 1) if name else 0
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
    top = max(coeffs)
    return IntPoly(coeffs.get(i, 0) for i in range(top + 1))


# rational polynomial helpers ------------------------------------------------

def qtrim(a: list) -> list:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def qdivmod(a: Sequence, b: Sequence) -> tuple[list[Fraction], list[Fraction]]:
    """Division with remainder over the rationals."""
    a = [Fraction(v) for v in qtrim(a)]
    b = [Fraction(v) for v in qtrim(b)]
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lb = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        coef = a[k + len(b) - 1] / lb
        q[k] = coef
        if coef:
            for j, bj in enumerate(b):
                a[k + j] -= coef * bj
    return qtrim(q), qtrim(a[: len(b) - 1])


def qmul(a: Sequence, b: Sequence) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return qtrim(out)


def qsub(a: Sequence, b: Sequence) -> list[Fraction]:
    n = max(len(a), len(b))
    return qtrim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def qgcdex(a: Sequence, b: Sequence) -> tuple[list, list, list]:
    """Monic gcd g and cofactors s, t with s*a + t*b = g over the rationals."""
    r0, r1 = [Fraction(v) for v in qtrim(a)], [Fraction(v) for v in qtrim(b)]
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = qdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, qsub(s0, qmul(q, s1))
        t0, t1 = t1, qsub(t0, qmul(q, t1))
    if not r0:
        return [], [], []
    lc = r0[-1]
    return [c / lc for c in r0], [c / lc for c in s0], [c / lc for c in t0]


def gcd_poly(a: IntPoly, b: IntPoly) -> IntPoly:
    """Greatest common divisor over the rationals, as a primitive integer polynomial."""
    if a.is_zero() and b.is_zero():
        return IntPoly()
    g, _, _ = qgcdex(list(a.coeffs), list(b.coeffs))
    return IntPoly.from_rational(g)


def squarefree_decomposition(p: IntPoly) -> list[tuple[IntPoly, int]]:
    """Yun's algorithm: primitive squarefree ``a_i`` with ``p ~ prod a_i**i``."""
    if p.is_zero():
        raise ValueError("zero polynomial has no squarefree decomposition")
    p = p.primitive()
    if p.degree == 0:
        return []
    dp = p.derivative()
    a = gcd_poly(p, dp)
    b = p.exact_div(a) if a.degree > 0 else p
    c = dp.exact_div(a) if a.degree > 0 else dp
    # work over Q, renormalising to primitive integer polys at each step
    b_q = [Fraction(v) for v in b.coeffs]
    c_q = [Fraction(v) for v in c.coeffs]
    out = []
    i = 1
    while True:
        d = qsub(c_q, _qderiv(b_q))
        if not d:
            if len(b_q) > 1:
                out.append((IntPoly.from_rational(b_q), i))
            break
        g, _, _ = qgcdex(b_q, d)
        if len(g) > 1:
            out.append((IntPoly.from_rational(g), i))
        b_q = qdivmod(b_q, g)[0]
        c_q = qdivmod(d, g)[0]
        i += 1
        if len(b_q) <= 1:
            break
    return out


def _qderiv(a: Sequence) -> list:
    return qtrim([i * a[i] for i in range(1, len(a))])


def squarefree_part(p: IntPoly) -> IntPoly:
    if p.degree <= 0:
        return p.primitive()
    g = gcd_poly(p, p.derivative())
    return p.primitive().exact_div(g) if g.degree > 0 else p.primitive()


def is_squarefree(p: IntPoly) -> bool:
    return p.degree <= 0 or gcd_poly(p, p.derivative()).degree == 0

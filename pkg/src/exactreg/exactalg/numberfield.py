"""Arithmetic in a real number field Q(lambda).

A :class:`NumberField` fixes an irreducible primitive integer polynomial and
one of its real roots (by isolating interval).  :class:`AlgebraicNumber`
stores power-basis coordinates; order comparisons refine the root interval
until interval evaluation decides the sign.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from typing import Sequence

from .factor import factor_squarefree_then_irreducible
from .poly import IntPoly, qdivmod, qgcdex, qmul, qtrim
from .roots import Interval, bisect_once, interval_eval, isolate_real_roots, refine


class FieldMismatchError(ValueError):
    pass


class NumberField:
    """Q(lambda) for a designated real root ``lambda`` of ``minpoly``."""

    def __init__(self, minpoly: IntPoly, root_interval: Interval):
        minpoly = minpoly.primitive()
        if minpoly.degree < 1:
            raise ValueError("minimal polynomial must have degree >= 1")
        facs = factor_squarefree_then_irreducible(minpoly)
        if len(facs) != 1 or facs[0][1] != 1:
            raise ValueError(f"{minpoly} is not irreducible")
        lo, hi = Fraction(root_interval[0]), Fraction(root_interval[1])
        if minpoly.degree == 1:
            r = Fraction(-minpoly[0], minpoly[1])
            if not lo <= r <= hi:
                raise ValueError(f"interval {root_interval} misses the root of {minpoly}")
            index, iv = 0, (r, r)
        else:
            roots = isolate_real_roots(minpoly)
            inside = []
            for i, r in enumerate(roots):
                # irrational roots never sit on rational endpoints
                while _overlap(r, (lo, hi)) and not (lo <= r[0] and r[1] <= hi):
                    r = bisect_once(minpoly, r)
                if lo <= r[0] and r[1] <= hi:
                    inside.append((i, r))
            if len(inside) != 1:
                raise ValueError(
                    f"interval {root_interval} contains {len(inside)} real roots of {minpoly}")
            index, iv = inside[0]
        self.minpoly = minpoly
        self.degree = minpoly.degree
        self.root_index = index
        self._interval = iv
        self._lock = threading.Lock()

    @classmethod
    def rational(cls) -> "NumberField":
        """Q itself, presented as Q(0)."""
        return cls(IntPoly((0, 1)), (Fraction(0), Fraction(0)))

    @classmethod
    def from_real_root(cls, minpoly: IntPoly, index: int = -1) -> "NumberField":
        roots = isolate_real_roots(minpoly.primitive())
        return cls(minpoly, roots[index])

    def __eq__(self, other) -> bool:
        return (isinstance(other, NumberField) and self.minpoly == other.minpoly
                and self.root_index == other.root_index)

    def __hash__(self) -> int:
        return hash((self.minpoly, self.root_index))

    def __repr__(self) -> str:
        return f"NumberField({self.minpoly}, root #{self.root_index})"

    # elements ---------------------------------------------------------
    def __call__(self, value) -> "AlgebraicNumber":
        if isinstance(value, AlgebraicNumber):
            if value.field != self:
                raise FieldMismatchError("element belongs to another field")
            return value
        return AlgebraicNumber(self, (Fraction(value),))

    @property
    def gen(self) -> "AlgebraicNumber":
        if self.degree == 1:
            return AlgebraicNumber(self, (Fraction(-self.minpoly[0], self.minpoly[1]),))
        return AlgebraicNumber(self, (Fraction(0), Fraction(1)))

    def zero(self) -> "AlgebraicNumber":
        return AlgebraicNumber(self, ())

    def one(self) -> "AlgebraicNumber":
        return AlgebraicNumber(self, (Fraction(1),))

    def from_poly(self, p: IntPoly | Sequence) -> "AlgebraicNumber":
        """Value of an integer (or rational) polynomial at the generator."""
        coeffs = p.coeffs if isinstance(p, IntPoly) else p
        return AlgebraicNumber(self, tuple(Fraction(c) for c in coeffs))

    # root interval ------------------------------------------------------
    def root_interval(self, width: Fraction | None = None) -> Interval:
        """Isolating interval of the generator, narrower than ``width`` if given."""
        with self._lock:
            iv = self._interval
            if width is not None and iv[1] - iv[0] >= width:
                iv = refine(self.minpoly, iv, width)
                self._interval = iv
        return iv

    def _refine_step(self) -> Interval:
        with self._lock:
            self._interval = bisect_once(self.minpoly, self._interval)
            return self._interval

    def reduce(self, coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
        coeffs = qtrim(coeffs)
        if len(coeffs) > self.degree:
            coeffs = qdivmod(coeffs, list(self.minpoly.coeffs))[1]
        return tuple(coeffs)


def _overlap(a: Interval, b: Interval) -> bool:
    return a[0] <= b[1] and b[0] <= a[1]


class AlgebraicNumber:
    """Element of a :class:`NumberField` in the power basis 1, lambda, ..."""

    __slots__ = ("field", "_c")

    def __init__(self, field: NumberField, coeffs: Sequence):
        self.field = field
        self._c = field.reduce([Fraction(c) for c in coeffs])

    @property
    def coords(self) -> tuple[Fraction, ...]:
        """Power-basis coordinates padded to the field degree."""
        return self._c + (Fraction(0),) * (self.field.degree - len(self._c))

    def is_zero(self) -> bool:
        return not self._c

    def is_rational(self) -> bool:
        return len(self._c) <= 1

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self._c[0] if self._c else Fraction(0)

    def is_algebraic_integer_coords(self) -> bool:
        """All power-basis coordinates are integers (membership in Z[lambda])."""
        return all(c.denominator == 1 for c in self._c)

    def _coerce(self, other) -> "AlgebraicNumber":
        if isinstance(other, AlgebraicNumber):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatchError("mixed field contexts")
            return other
        if isinstance(other, (int, Fraction)):
            return AlgebraicNumber(self.field, (Fraction(other),))
        return NotImplemented

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self._c), len(other._c))
        a, b = self._c, other._c
        return AlgebraicNumber(self.field, [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                                            for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicNumber(self.field, [-c for c in self._c])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return AlgebraicNumber(self.field, [c * other for c in self._c])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return AlgebraicNumber(self.field, qmul(self._c, other._c))

    __rmul__ = __mul__

    def inverse(self) -> "AlgebraicNumber":
        if not self._c:
            raise ZeroDivisionError("inverse of zero in Q(lambda)")
        if len(self._c) == 1:
            return AlgebraicNumber(self.field, (1 / self._c[0],))
        g, s, _ = qgcdex(list(self._c), list(self.field.minpoly.coeffs))
        if len(g) != 1:  # pragma: no cover - minpoly irreducible
            raise ZeroDivisionError("non-invertible element")
        return AlgebraicNumber(self.field, s)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return AlgebraicNumber(self.field, [c / other for c in self._c])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # equality and order -------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self._c == AlgebraicNumber(self.field, (Fraction(other),))._c
        if isinstance(other, AlgebraicNumber):
            return self.field == other.field and self._c == other._c
        return NotImplemented

    def __hash__(self) -> int:
        if len(self._c) <= 1:
            return hash(self._c[0] if self._c else 0)
        return hash((self.field, self._c))

    def sign(self) -> int:
        """Sign of the real embedding, decided exactly."""
        if not self._c:
            return 0
        if len(self._c) == 1:
            return 1 if self._c[0] > 0 else -1
        iv = self.field.root_interval()
        while True:
            lo, hi = interval_eval(self._c, iv[0], iv[1])
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            iv = self.field._refine_step()

    def _cmp(self, other) -> int:
        other = self._coerce(other)
        if other is NotImplemented:
            raise TypeError("unorderable types")
        return (self - other).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # approximation --------------------------------------------------------
    def enclosure(self, width: Fraction) -> Interval:
        """Rational interval of width < ``width`` containing the value."""
        if len(self._c) <= 1:
            v = self._c[0] if self._c else Fraction(0)
            return (v, v)
        w = Fraction(width)
        iv = self.field.root_interval()
        while True:
            lo, hi = interval_eval(self._c, iv[0], iv[1])
            if hi - lo < w:
                return lo, hi
            iv = self.field._refine_step()

    def __float__(self) -> float:
        lo, hi = self.enclosure(Fraction(1, 2**60))
        return float((lo + hi) / 2)

    def decimal(self, digits: int = 15) -> tuple[str, Fraction]:
        """Decimal string correct to within the returned interval width."""
        width = Fraction(1, 10 ** (digits + 1))
        lo, hi = self.enclosure(width)
        mid = (lo + hi) / 2
        scaled = round(mid * 10**digits)
        sign = "-" if scaled < 0 else ""
        s = str(abs(scaled)).rjust(digits + 1, "0")
        text = f"{sign}{s[:-digits]}.{s[-digits:]}" if digits else f"{sign}{s}"
        return text, (hi - lo) + Fraction(1, 2 * 10**digits)

    def __repr__(self) -> str:
        return f"AlgebraicNumber({self.format()})"

    def __str__(self) -> str:
        return self.format()

    def format(self, var: str = "L") -> str:
        if not self._c:
            return "0"
        terms = []
        for i, c in enumerate(self._c):
            if c == 0:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if i == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}*{mono}")
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out


def common_denominator(values: Sequence[AlgebraicNumber]) -> int:
    from math import lcm

    den = 1
    for v in values:
        for c in v.coords:
            den = lcm(den, c.denominator)
    return den

"""Exact dense matrices over the integers and rationals."""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .poly import IntPoly


class Matrix:
    """Immutable rectangular matrix of ``int`` or ``Fraction`` entries.

    Integer matrices keep ``int`` entries; operations that need division
    promote to ``Fraction``.  ``is_integer`` tells the two apart.
    """

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(_normalize(v) for v in r) for r in rows)
        if not rows or not rows[0]:
            raise ValueError("matrix dimensions must be at least 1x1")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix")
        self._rows = rows
        self.nrows = len(rows)
        self.ncols = width

    # construction -----------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int) -> "Matrix":
        return cls([[0] * c for _ in range(r)])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "Matrix":
        return cls(zip(*cols))

    # access -------------------------------------------------------------
    @property
    def rows(self) -> tuple[tuple, ...]:
        return self._rows

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.ncols)]

    def tolist(self) -> list[list]:
        return [list(r) for r in self._rows]

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_integer(self) -> bool:
        return all(type(v) is int for r in self._rows for v in r)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"Matrix({[[str(v) for v in r] for r in self._rows]})"

    # arithmetic ---------------------------------------------------------
    def __add__(self, other: "Matrix") -> "Matrix":
        _same_shape(self, other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        _same_shape(self, other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in r] for r in self._rows])

    def scale(self, c) -> "Matrix":
        return Matrix([[c * a for a in r] for r in self._rows])

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.columns()
            return Matrix([[_dot(r, c) for c in cols] for r in self._rows])
        vec = tuple(other)
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(_dot(r, vec) for r in self._rows)

    def rmatvec(self, vec: Sequence) -> tuple:
        """Row vector times matrix."""
        if len(vec) != self.nrows:
            raise ValueError("vector length mismatch")
        return tuple(_dot(vec, self.col(j)) for j in range(self.ncols))

    def __pow__(self, n: int) -> "Matrix":
        if not self.is_square():
            raise ValueError("power of non-square matrix")
        if n < 0:
            return self.inverse() ** (-n)
        out, base = Matrix.identity(self.nrows), self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    @property
    def T(self) -> "Matrix":
        return Matrix(zip(*self._rows))

    def kron(self, other: "Matrix") -> "Matrix":
        return Matrix(
            [a * b for a in ra for b in rb]
            for ra in self._rows
            for rb in other._rows
        )

    def polyval(self, p: IntPoly) -> "Matrix":
        """Evaluate ``p(self)`` by Horner's rule."""
        if not self.is_square():
            raise ValueError("polynomial of non-square matrix")
        n = self.nrows
        acc = Matrix.zeros(n, n)
        eye = Matrix.identity(n)
        for c in reversed(p.coeffs):
            acc = acc @ self + eye.scale(c)
        return acc

    # elimination ----------------------------------------------------------
    def rref(self) -> tuple["Matrix", list[int]]:
        """Reduced row echelon form over the rationals and its pivot columns."""
        a = [[Fraction(v) for v in r] for r in self._rows]
        pivots = _rref_inplace(a, self.ncols)
        return Matrix(a), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list[tuple[Fraction, ...]]:
        """Basis of the right kernel over the rationals."""
        r, pivots = self.rref()
        free = [j for j in range(self.ncols) if j not in pivots]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.ncols
            v[f] = Fraction(1)
            for i, p in enumerate(pivots):
                v[p] = -r[i, f]
            basis.append(tuple(v))
        return basis

    def column_space_basis(self) -> list[tuple]:
        """Columns of ``self`` forming a basis of its column space."""
        _, pivots = self.rref()
        return [self.col(j) for j in pivots]

    def solve(self, b: Sequence) -> tuple[Fraction, ...]:
        """Unique solution of ``self @ x = b`` (full column rank required)."""
        aug = [[Fraction(v) for v in r] + [Fraction(bv)] for r, bv in zip(self._rows, b)]
        if len(aug) != self.nrows:
            raise ValueError("right-hand side length mismatch")
        pivots = _rref_inplace(aug, self.ncols + 1)
        if self.ncols in pivots:
            raise ValueError("inconsistent linear system")
        if len(pivots) != self.ncols:
            raise ValueError("linear system has no unique solution")
        return tuple(aug[i][self.ncols] for i in range(self.ncols))

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise ValueError("inverse of non-square matrix")
        n = self.nrows
        aug = [[Fraction(v) for v in r] + [Fraction(int(i == j)) for j in range(n)]
               for i, r in enumerate(self._rows)]
        pivots = _rref_inplace(aug, n)
        if pivots != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return Matrix([r[n:] for r in aug])

    def det(self):
        """Determinant; fraction-free Bareiss elimination for integer input."""
        if not self.is_square():
            raise ValueError("determinant of non-square matrix")
        if self.is_integer():
            return bareiss_det([list(r) for r in self._rows])
        a = [[Fraction(v) for v in row] for row in self._rows]
        return _fraction_det(a)


def _normalize(v):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else v
    if isinstance(v, bool):
        return int(v)
    if isinstance(v, int):
        return v
    raise TypeError(f"unsupported matrix entry {v!r}")


def _dot(a: Sequence, b: Sequence):
    s = 0
    for x, y in zip(a, b):
        if x and y:
            s += x * y
    return s


def _same_shape(a: Matrix, b: Matrix) -> None:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


def _rref_inplace(a: list[list], ncols: int) -> list[int]:
    pivots: list[int] = []
    row = 0
    nrows = len(a)
    for col in range(ncols):
        if row >= nrows:
            break
        piv = next((i for i in range(row, nrows) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        pv = a[row][col]
        a[row] = [v / pv for v in a[row]]
        for i in range(nrows):
            if i != row and a[i][col] != 0:
                f = a[i][col]
                ri = a[i]
                rr = a[row]
                a[i] = [x - f * y for x, y in zip(ri, rr)]
        pivots.append(col)
        row += 1
    return pivots


def _fraction_det(a: list[list[Fraction]]) -> Fraction:
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for i in range(col + 1, n):
            f = a[i][col] / a[col][col]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return det


def bareiss_det(a: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix (destroys ``a``)."""
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (akk * row_i[j] - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def charpoly(m: Matrix) -> IntPoly:
    """Characteristic polynomial ``det(xI - M)`` of an integer matrix.

    Bareiss elimination carried out with polynomial entries; the leading
    principal minors of ``xI - M`` are monic, so no pivoting is needed and
    every division is exact.
    """
    if not m.is_square():
        raise ValueError("characteristic polynomial of non-square matrix")
    if not m.is_integer():
        raise TypeError("charpoly expects an integer matrix")
    n = m.nrows
    x = IntPoly.x()
    a = [[(x if i == j else IntPoly()) - m[i, j] for j in range(n)] for i in range(n)]
    prev = IntPoly.const(1)
    for k in range(n - 1):
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (akk * a[i][j] - aik * a[k][j]).exact_div(prev)
        prev = akk
    return a[n - 1][n - 1]


def minpoly_matrix(m: Matrix) -> IntPoly:
    """Minimal polynomial by detecting the first linear dependence among powers."""
    if not m.is_square():
        raise ValueError("minimal polynomial of non-square matrix")
    n = m.nrows
    # incremental echelon basis of flattened powers, remembering combinations
    basis: list[tuple[int, list[Fraction], list[Fraction]]] = []  # (pivot, vec, combo)
    power = Matrix.identity(n)
    for d in range(n + 1):
        vec = [Fraction(v) for r in power.rows for v in r]
        combo = [Fraction(0)] * (d + 1)
        combo[d] = Fraction(1)
        for piv, bv, bc in basis:
            f = vec[piv]
            if f:
                vec = [x - f * y for x, y in zip(vec, bv)]
                combo = [x - f * (bc[i] if i < len(bc) else 0) for i, x in enumerate(combo)]
        piv = next((i for i, v in enumerate(vec) if v != 0), None)
        if piv is None:
            lc = combo[-1]
            poly = [c / lc for c in combo]
            if any(c.denominator != 1 for c in poly):
                return IntPoly.from_rational(poly)
            return IntPoly(poly)
        pv = vec[piv]
        basis.append((piv, [v / pv for v in vec], [c / pv for c in combo]))
        power = power @ m
    raise AssertionError("Cayley-Hamilton violated")  # pragma: no cover


def companion_matrix(q: IntPoly) -> Matrix:
    """Companion matrix with ones on the subdiagonal and ``-q_i`` in the last column."""
    if not q.is_monic():
        raise ValueError(f"companion matrix needs a monic polynomial, got {q}")
    d = q.degree
    if d < 1:
        raise ValueError("companion matrix needs degree >= 1")
    rows = [[0] * d for _ in range(d)]
    for i in range(1, d):
        rows[i][i - 1] = 1
    for i in range(d):
        rows[i][d - 1] = -q[i]
    return Matrix(rows)


def is_primitive_matrix(m: Matrix) -> tuple[bool, int | None]:
    """Smallest ``n <= (dim-1)^2 + 1`` with ``m**n`` strictly positive (Wielandt bound)."""
    if not m.is_square():
        raise ValueError("primitivity of non-square matrix")
    if any(v < 0 for r in m.rows for v in r):
        raise ValueError("primitivity requires a nonnegative matrix")
    n = m.nrows
    pattern = [[1 if m[i, j] else 0 for j in range(n)] for i in range(n)]
    cur = pattern
    for k in range(1, (n - 1) ** 2 + 2):
        if all(all(r) for r in cur):
            return True, k
        cur = [[1 if any(cur[i][t] and pattern[t][j] for t in range(n)) else 0
                for j in range(n)] for i in range(n)]
    return False, None


def strongly_connected(adj: Sequence[Iterable[int]]) -> bool:
    """Strong connectivity of a digraph given by successor lists."""
    n = len(adj)
    if n == 0:
        return False
    rev: list[list[int]] = [[] for _ in range(n)]
    for u, succ in enumerate(adj):
        for v in succ:
            rev[v].append(u)

    def reach(graph) -> int:
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in graph[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen)

    return reach(adj) == n and reach(rev) == n


def field_nullspace(rows: list[list], zero, one) -> list[list]:
    """Right kernel basis of a matrix over any exact field.

    ``rows`` holds field elements supporting + - * / and comparison with
    ``zero``.  Used for eigenvector computations in number fields.
    """
    a = [list(r) for r in rows]
    nrows, ncols = len(a), len(a[0])
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        piv = next((i for i in range(row, nrows) if a[i][col] != zero), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = one / a[row][col]
        a[row] = [v * inv for v in a[row]]
        for i in range(nrows):
            if i != row and a[i][col] != zero:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[row])]
        pivots.append(col)
        row += 1
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for i, p in enumerate(pivots):
            v[p] = zero - a[i][f]
        basis.append(v)
    return basis

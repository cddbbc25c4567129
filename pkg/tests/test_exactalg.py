from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy as sp
from sympy.matrices.normalforms import hermite_normal_form
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import given, settings
from hypothesis import strategies as st

from exactreg.exactalg import (
    IntPoly,
    Matrix,
    NotCoprimeError,
    NumberField,
    charpoly,
    companion_matrix,
    eventual_image,
    factor_squarefree_then_irreducible,
    gcd_poly,
    hnf,
    integer_solve,
    is_primitive_matrix,
    isolate_real_roots,
    lattice_basis,
    minpoly_matrix,
    parse_poly,
    rational_roots,
    reduced_resultant,
    refine,
    resultant,
)
from exactreg.exactalg.spectral import dominant_root_is_strict, roots_in_closed_unit_disk, strip_common_roots

X = sp.Symbol("x")


def expanded(text: str) -> IntPoly:
    """Parse through sympy so products are allowed."""
    return from_sympy(sp.Poly(sp.expand(sp.sympify(text.replace("^", "**"))), X))


def to_sympy(p: IntPoly) -> sp.Poly:
    return sp.Poly(list(reversed(p.coeffs)) or [0], X)


def from_sympy(p: sp.Poly) -> IntPoly:
    return IntPoly(int(c) for c in reversed(p.all_coeffs()))


small_ints = st.integers(-6, 6)
int_polys = st.lists(small_ints, min_size=1, max_size=5).map(IntPoly)
square = st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n),
                                                      min_size=n, max_size=n)).map(Matrix)


# polynomials ---------------------------------------------------------------

def test_parse_poly_roundtrip():
    for text in ("x^2 - 4*x - 1", "-x^3+2", "3", "x", "2*x^2 + x"):
        p = parse_poly(text, "x")
        assert to_sympy(p) == sp.Poly(sp.sympify(text.replace("^", "**")), X)
        assert parse_poly(p.format("x"), "x") == p


@given(int_polys, int_polys)
def test_poly_ring_ops_match_sympy(a, b):
    assert to_sympy(a * b) == to_sympy(a) * to_sympy(b)
    assert to_sympy(a + b) == to_sympy(a) + to_sympy(b)
    assert to_sympy(a - b) == to_sympy(a) - to_sympy(b)


@given(int_polys, int_polys)
def test_gcd_matches_sympy(a, b):
    if a.is_zero() or b.is_zero():
        return
    g = gcd_poly(a, b)
    assert g.degree == sp.gcd(to_sympy(a), to_sympy(b)).degree()


@given(int_polys, st.integers(-5, 5))
def test_eval(p, x):
    assert p(x) == to_sympy(p).eval(x)


def test_rational_roots():
    p = IntPoly.from_roots([2, -3, 0]) * IntPoly((1, 2))  # (2x + 1)
    assert sorted(rational_roots(p)) == [Fraction(-3), Fraction(-1, 2), Fraction(0), Fraction(2)]


@pytest.mark.parametrize("text", ["x^4 - 1", "x^3 - 17*x^2 + 16*x", "(x^2-4*x-1)*(x-1)^2", "x^5 - x - 1",
                                  "(x^2 - x - 3)*(x^2+1)", "x^4 + 4"])
def test_factorization_matches_sympy(text):
    p = expanded(text)
    ours = sorted((f.coeffs, m) for f, m in factor_squarefree_then_irreducible(p))
    _, facs = sp.factor_list(to_sympy(p))
    theirs = []
    for f, m in facs:
        f = sp.Poly(f, X)
        if f.LC() < 0:
            f = -f
        theirs.append((from_sympy(f).coeffs, m))
    # content and sign are not factors
    ours = [(c, m) for c, m in ours if len(c) > 1]
    assert ours == sorted(theirs)


def test_real_root_isolation():
    p = parse_poly("x^5 - 5*x^3 + 4*x + 1", "x")
    ivs = isolate_real_roots(p)
    numeric = sorted(float(r) for r in sp.Poly(to_sympy(p)).real_roots())
    assert len(ivs) == len(numeric)
    for iv, r in zip(sorted(ivs), numeric):
        lo, hi = refine(p, iv, Fraction(1, 10**9)) if iv[0] != iv[1] else iv
        assert float(lo) - 1e-9 <= r <= float(hi) + 1e-9


# matrices ------------------------------------------------------------------

@settings(max_examples=60)
@given(square)
def test_charpoly_matches_sympy(m):
    ours = charpoly(m)
    theirs = sp.Matrix(m.tolist()).charpoly(X)
    assert to_sympy(ours) == sp.Poly(theirs.as_expr(), X)


@settings(max_examples=60)
@given(square)
def test_cayley_hamilton_and_minpoly_divides(m):
    n = m.nrows
    assert m.polyval(charpoly(m)) == Matrix.zeros(n, n)
    mp = minpoly_matrix(m)
    assert m.polyval(mp) == Matrix.zeros(n, n)
    assert mp.divides(charpoly(m))


@given(st.lists(small_ints, min_size=1, max_size=4))
def test_companion_charpoly(low):
    q = IntPoly(list(low) + [1])
    assert charpoly(companion_matrix(q)) == q


def test_matrix_inverse_and_powers():
    a = Matrix([[1, 1], [2, 0]])
    assert a ** -1 @ a == Matrix.identity(2)
    assert a ** 3 == a @ a @ a
    assert a ** -2 == (a ** 2).inverse()


def test_primitivity():
    assert is_primitive_matrix(Matrix([[1, 1], [1, 0]]))[0]
    assert not is_primitive_matrix(Matrix([[0, 1], [1, 0]]))[0]
    assert not is_primitive_matrix(Matrix.identity(2))[0]
    ok, power = is_primitive_matrix(Matrix([[0, 1, 0], [0, 0, 1], [1, 1, 0]]))
    assert ok and power == 5


# lattices ------------------------------------------------------------------

@settings(max_examples=40)
@given(st.lists(st.lists(small_ints, min_size=3, max_size=3), min_size=1, max_size=4))
def test_lattice_basis_matches_sympy_hnf(rows):
    ours = sp.Matrix(lattice_basis(rows)) if lattice_basis(rows) else sp.zeros(0, 3)
    src = sp.Matrix(rows)
    assert ours.rows == src.rank()
    if ours.rows:
        theirs = hermite_normal_form(src.T).T
        # same lattice: equal Gram determinants and each basis inside the other's span over Z
        assert (ours * ours.T).det() == (theirs * theirs.T).det()
        for v in rows:
            assert integer_solve([tuple(ours.row(i)) for i in range(ours.rows)], v) is not None


def test_hnf_is_triangular():
    m = Matrix([[4, 6, 2], [2, 3, 5], [8, 1, 1]])
    h = hnf(m)
    assert all(h[i, j] == 0 for i in range(3) for j in range(i + 1, 3))
    assert abs(m.det()) == abs(h.det())


def test_integer_solve_dependent_generators():
    gens = [(1, 0), (0, 2), (1, 2)]
    assert integer_solve(gens, (3, 4)) is not None
    assert integer_solve(gens, (0, 1)) is None
    sol = integer_solve(gens, (5, 6))
    assert tuple(sum(c * g[i] for c, g in zip(sol, gens)) for i in range(2)) == (5, 6)


def test_eventual_image_of_nilpotent_part():
    m = Matrix([[2, 0, 0], [0, 0, 1], [0, 0, 0]])
    basis = eventual_image(m)
    assert len(basis) == 1
    assert Matrix.from_columns(basis).rank() == 1


# resultants ----------------------------------------------------------------

@pytest.mark.parametrize("q,r,d,res", [
    ("x-2", "x+1", 3, 3),
    ("x^2-4*x-1", "x-1", 4, -4),
    ("x-16", "x-1", 15, 15),
    ("x^2-x-3", "1", 1, 1),
])
def test_reduced_resultant_known(q, r, d, res):
    q, r = parse_poly(q, "x"), parse_poly(r, "x")
    w = reduced_resultant(q, r)
    assert w.D == d
    assert resultant(q, r) == res
    assert w.check(q, r)
    assert w.Q.degree < max(r.degree, 1) and w.R.degree < q.degree


def test_reduced_resultant_not_coprime():
    with pytest.raises(NotCoprimeError):
        reduced_resultant(parse_poly("x^2-1", "x"), parse_poly("x-1", "x"))


def test_resultant_matches_sympy():
    rng = random.Random(7)
    for _ in range(40):
        q = IntPoly([rng.randint(-4, 4) for _ in range(rng.randint(1, 3))] + [rng.randint(1, 3)])
        r = IntPoly([rng.randint(-4, 4) for _ in range(rng.randint(1, 3))] + [rng.randint(1, 3)])
        # sympy.resultant reorders arguments by degree; the Sylvester determinant does not
        assert resultant(q, r) == sylvester(to_sympy(q).as_expr(), to_sympy(r).as_expr(), X).det()


def test_reduced_resultant_divides_resultant():
    rng = random.Random(11)
    done = 0
    while done < 60:
        q = IntPoly([rng.randint(-5, 5) for _ in range(rng.randint(1, 3))] + [1])
        r = IntPoly([rng.randint(-5, 5) for _ in range(rng.randint(1, 3))] + [1])
        res = resultant(q, r)
        if res == 0:
            continue
        done += 1
        d = reduced_resultant(q, r).D
        assert res % d == 0
        assert set(sp.factorint(abs(res))) == set(sp.factorint(d))


# number fields -------------------------------------------------------------

golden = NumberField.from_real_root(parse_poly("x^2-x-1", "x"))
field_elems = st.tuples(st.fractions(max_denominator=7).filter(lambda v: abs(v) < 20),
                        st.fractions(max_denominator=7).filter(lambda v: abs(v) < 20)).map(golden.from_poly)


@given(field_elems, field_elems, field_elems)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if not a.is_zero():
        assert a * a.inverse() == golden.one()


@given(field_elems, field_elems)
def test_field_order_matches_floats(a, b):
    fa, fb = float(a), float(b)
    if abs(fa - fb) > 1e-9:
        assert (a < b) == (fa < fb)


def test_generator_value():
    phi = golden.gen
    assert abs(float(phi) - (1 + 5 ** 0.5) / 2) < 1e-15
    assert phi * phi == phi + 1
    text, width = phi.decimal(20)
    assert text.startswith("1.6180339887498948482")
    assert width <= Fraction(1, 10**20)


def test_spectral_helpers():
    m = Matrix([[1, 1], [2, 0]])
    lam = NumberField(IntPoly((-2, 1)), (Fraction(2), Fraction(2))).gen
    assert dominant_root_is_strict(m, lam)
    assert not dominant_root_is_strict(Matrix([[0, 1], [1, 0]]), NumberField(IntPoly((-1, 1)), (Fraction(1), Fraction(1))).gen)
    big = expanded("(x^2-x-1)*(x+1)*x^2")
    assert strip_common_roots(big, parse_poly("x^2-x-1", "x")) == expanded("(x+1)*x^2")
    assert roots_in_closed_unit_disk(parse_poly("x^2+x+1", "x"))
    assert not roots_in_closed_unit_disk(parse_poly("x^2-x-1", "x"))

from __future__ import annotations

from fractions import Fraction

import pytest
import sympy as sp

from conftest import FIXTURES, bench, load_fixture
from exactreg.cohomology import action_polynomials, build_ap_graph, cohomology_rank, patch_class
from exactreg.exactalg import IntPoly, Matrix, charpoly
from exactreg.language import anchored_count_vector, collar, factors, min_anchor_order

EXPECTED = {
    # name: (k, eigenvalue charpoly of A, q, r, D, resultant)
    "thue_morse": (2, (-2, -1, 1), (-2, 1), (1, 1), 3, 3),
    "phi2": (2, (16, -17, 1), (-16, 1), (-1, 1), 15, 15),
    "phi3": (2, (16, -17, 1), (-16, 1), (-1, 1), 15, 15),
    "fib_variant": (3, None, (-1, -4, 1), (-1, 1), 4, -4),
    "nonpisot": (2, (-3, -1, 1), (-3, -1, 1), (1,), 1, 1),
}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_known_presentations(name):
    pres = bench(name).presentation
    k, cp, q, r, d, res = EXPECTED[name]
    assert pres.k == k
    if cp is not None:
        assert charpoly(pres.A) == IntPoly(cp)
    assert pres.q == IntPoly(q)
    assert pres.r == IntPoly(r)
    assert pres.D == d
    assert pres.resultant == res


def test_fib_variant_eigenvalues():
    pres = bench("fib_variant").presentation
    assert charpoly(pres.A) == IntPoly((-1, -4, 1)) * IntPoly((-1, 1))


@pytest.mark.parametrize("name", FIXTURES)
def test_minimal_polynomial_identities(name):
    pres = bench(name).presentation
    n = pres.A.nrows
    assert pres.A.polyval(pres.p) == Matrix.zeros(n, n)
    assert pres.p == pres.q * pres.r
    # dim ker q(A) = deg q
    assert n - pres.A.polyval(pres.q).rank() == pres.q.degree
    assert pres.witness.check(pres.q, pres.r)


@pytest.mark.parametrize("name", FIXTURES)
def test_action_invertible_on_eventual_image(name):
    pres = bench(name).presentation
    assert pres.A.det() != 0
    # A is the restriction of A0: A0 B = B A
    b = pres.basis_matrix
    assert pres.A0 @ b == b @ pres.A


@pytest.mark.parametrize("name", FIXTURES)
def test_rank_matches_sympy_power_rank(name):
    pres = bench(name).presentation
    a0 = sp.Matrix(pres.A0.tolist())
    n = a0.shape[0]
    assert (a0 ** (2 * n)).rank() == pres.k


@pytest.mark.parametrize("name", ["thue_morse", "fib_variant", "nonpisot", "proper"])
def test_rank_stable_across_radius(name):
    s = load_fixture(name)
    assert cohomology_rank(s, 1) == cohomology_rank(s, 2) == cohomology_rank(s, 3)


@pytest.mark.parametrize("name", ["thue_morse", "fib_variant", "proper"])
def test_polynomials_stable_across_radius(name):
    s = load_fixture(name)
    p1 = action_polynomials(s, 1)
    p2 = action_polynomials(s, 2)
    assert (p1.p, p1.q, p1.r, p1.D) == (p2.p, p2.q, p2.r, p2.D)


def test_graph_euler_characteristic():
    bs = collar(load_fixture("thue_morse"), 1)
    g = build_ap_graph(bs)
    assert g.num_edges == bs.size
    # connected graph: H^1 dimension = E - V + 1
    assert g.h1_dim == g.num_edges - g.num_vertices + 1


def test_reduce_kills_coboundaries():
    bs = collar(load_fixture("fib_variant"), 1)
    g = build_ap_graph(bs)
    for v in range(g.num_vertices):
        cob = [Fraction(int(g.head[e] == v) - int(g.tail[e] == v)) for e in range(g.num_edges)]
        assert all(x == 0 for x in g.reduce(cob))


@pytest.mark.parametrize("name", FIXTURES)
def test_patch_class_independent_of_order(name):
    wb = bench(name)
    pres = wb.presentation
    for p in sorted(factors(wb.substitution, 3))[:6]:
        n0 = min_anchor_order(pres.block_system, len(p))
        c0 = patch_class(p, pres, n0).coords
        assert patch_class(p, pres, n0 + 1).coords == c0
        assert patch_class(p, pres, n0 + 2).coords == c0


@pytest.mark.parametrize("name", FIXTURES)
def test_naturality_of_push_forward(name):
    """Counting at order n+1 equals applying the action to the order-n cochain."""
    wb = bench(name)
    pres = wb.presentation
    g = pres.graph
    for p in sorted(factors(wb.substitution, 2)):
        n = min_anchor_order(pres.block_system, len(p))
        h_n = g.reduce(anchored_count_vector(p, pres.block_system, n).values)
        h_n1 = g.reduce(anchored_count_vector(p, pres.block_system, n + 1).values)
        assert tuple(pres.A0 @ h_n) == tuple(h_n1)


@pytest.mark.parametrize("name", FIXTURES)
def test_trace_functional_is_eigen(name):
    wb = bench(name)
    pres = wb.presentation
    tau = pres.trace_functional(wb.collared_freqs)
    lam = wb.perron.lam
    for j in range(pres.k):
        col = pres.A.col(j)
        lhs = sum((tau[i] * col[i] for i in range(pres.k)), wb.perron.field.zero())
        assert lhs == lam * tau[j]


@pytest.mark.parametrize("name", FIXTURES)
def test_class_trace_is_frequency(name):
    wb = bench(name)
    for p in sorted(factors(wb.substitution, 4))[:8]:
        assert wb.class_trace(wb.patch_class(p).coords) == wb.frequency(p)

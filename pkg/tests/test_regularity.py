from __future__ import annotations

from fractions import Fraction

import pytest
import sympy as sp

from conftest import FIXTURES, bench, load_fixture
from exactreg.language import count_anchored, factors, iterate_word, min_order_for_length
from exactreg.regularity import (
    CertificateError,
    RegularityError,
    SampleConfig,
    Verifier,
    exact_on_supertiles,
    letter_contexts,
    return_word_contexts,
    return_words,
    solve_coefficients,
)

GREEDY = {
    "thue_morse": ("a", "aa"),
    "phi3": ("a", "b"),
    "fib_variant": ("a", "b", "aa"),
    "nonpisot": ("a", "b"),
    "proper": ("a", "b"),
}


@pytest.mark.parametrize("name", sorted(GREEDY))
def test_greedy_controls(name):
    wb = bench(name)
    ctl = wb.controls()
    assert tuple(wb.substitution.format_word(p).replace(" ", "") for p in ctl.patches) == GREEDY[name]
    assert ctl.classes.rank() == wb.presentation.k


def test_named_controls_independent():
    tm = bench("thue_morse")
    assert tm.controls([tm.word("ab"), tm.word("aa")]).classes.rank() == 2
    fib = bench("fib_variant")
    assert fib.controls([fib.word(t) for t in ("a", "b", "ab")]).classes.rank() == 3


def test_dependent_controls_rejected():
    tm = bench("thue_morse")
    with pytest.raises(RegularityError):
        tm.controls([tm.word("ab"), tm.word("ba")])
    with pytest.raises(RegularityError):
        tm.controls([tm.word("ab")])


def test_thue_morse_aababb_coefficients():
    tm = bench("thue_morse")
    ctl = tm.controls([tm.word("ab"), tm.word("aa")])
    c = solve_coefficients(tm.word("aababb"), ctl, tm.presentation)
    assert c == (Fraction(1, 2), Fraction(-1, 2))
    # consistent with the frequencies: 1/12 = 1/2 * 1/3 - 1/2 * 1/6
    assert tm.trace([(c[0], tm.word("ab")), (c[1], tm.word("aa"))]) == Fraction(1, 12)


def _regression(patch, controls, s, contexts, orders):
    """Exact least squares of supertile counts of patch on those of the controls."""
    rows, rhs = [], []
    for n in orders:
        for region, right in contexts:
            body, ctx = iterate_word(s, region, n), iterate_word(s, right, n)
            rows.append([count_anchored(c, body, ctx) for c in controls])
            rhs.append(count_anchored(patch, body, ctx))
    a, b = sp.Matrix(rows), sp.Matrix(rhs)
    sol = (a.T * a).LUsolve(a.T * b)
    return tuple(Fraction(int(v.p), int(v.q)) for v in sol), a * sol - b


@pytest.mark.parametrize("name", ["thue_morse", "fib_variant", "nonpisot", "proper", "phi3"])
def test_coefficients_match_regression(name):
    wb = bench(name)
    s = wb.substitution
    ctl = wb.controls()
    contexts = letter_contexts(s) if name == "proper" else return_word_contexts(s, 6)
    for p in sorted(factors(s, 3))[:6]:
        longest = max(len(p), *(len(c) for c in ctl.patches))
        n0 = min_order_for_length(s, longest)
        orders = range(n0 + 2, n0 + 4) if max(len(i) for i in s.images) < 10 else range(n0 + 1, n0 + 2)
        fitted, residual = _regression(p, ctl.patches, s, contexts, orders)
        assert all(v == 0 for v in residual)
        assert fitted == wb.coefficients(p, ctl)


def test_proper_supertile_vanishing():
    wb = bench("proper")
    s = wb.substitution
    ctl = wb.controls()
    for p in sorted(factors(s, 4)):
        # vanishing starts one order above the least admissible one
        rep = exact_on_supertiles(p, wb.coefficients(p, ctl), ctl, s, range(2, 6))
        assert rep.ok, (p, rep.failures()[:2])


def test_supertile_needs_proper_or_contexts():
    wb = bench("thue_morse")
    ctl = wb.controls()
    with pytest.raises(RegularityError):
        exact_on_supertiles(wb.word("ab"), (1, 0), ctl, wb.substitution, [3])


def test_thue_morse_return_word_vanishing():
    wb = bench("thue_morse")
    s = wb.substitution
    ctl = wb.controls([wb.word("ab"), wb.word("aa")])
    p = wb.word("aababb")
    c = wb.coefficients(p, ctl)
    rep = exact_on_supertiles(p, c, ctl, s, [4, 5, 6], return_word_contexts(s, 8))
    assert rep.ok


def test_wrong_coefficients_leave_a_residual():
    wb = bench("thue_morse")
    s = wb.substitution
    ctl = wb.controls([wb.word("ab"), wb.word("aa")])
    rep = exact_on_supertiles(wb.word("aababb"), (Fraction(-1, 8), Fraction(7, 8)), ctl, s, [4, 5],
                              return_word_contexts(s, 8))
    assert not rep.ok


@pytest.fixture(scope="module")
def tm_verifier():
    return Verifier(load_fixture("thue_morse"), SampleConfig(samples=2000, seed=5, min_word=200_000))


def test_certificate_fields(tm_verifier):
    wb = bench("thue_morse")
    ctl = wb.controls()
    p = wb.word("abba")
    cert = tm_verifier.certify(p, wb.coefficients(p, ctl), ctl.patches)
    assert cert.boundary_map_checked
    assert cert.error_bound <= cert.derived_bound
    assert max(cert.max_error_short, cert.max_error_long) == cert.error_bound
    assert cert.windows == 2000 and cert.word_length == 200_000
    assert cert.distinct_collar_pairs >= 1


def test_certificate_rejects_wrong_law(tm_verifier):
    wb = bench("thue_morse")
    ctl = wb.controls([wb.word("ab"), wb.word("aa")])
    with pytest.raises(CertificateError):
        tm_verifier.certify(wb.word("aababb"), (Fraction(-1, 8), Fraction(7, 8)), ctl.patches)


def test_certificate_deterministic():
    wb = bench("fib_variant")
    ctl = wb.controls()
    p = wb.word("ab")
    cfg = SampleConfig(samples=500, seed=9, min_word=100_000)
    c = wb.coefficients(p, ctl)
    assert Verifier(wb.substitution, cfg).certify(p, c, ctl.patches) == \
        Verifier(wb.substitution, cfg).certify(p, c, ctl.patches)


@pytest.mark.parametrize("name", FIXTURES)
def test_certificates_small_patches(name):
    wb = bench(name)
    ctl = wb.controls()
    ver = Verifier(wb.substitution, SampleConfig(samples=1000, seed=1, min_word=300_000))
    for p in sorted(factors(wb.substitution, 3)):
        cert = ver.certify(p, wb.coefficients(p, ctl), ctl.patches)
        assert cert.error_bound <= cert.derived_bound


def test_return_words_thue_morse():
    wb = bench("thue_morse")
    rep = return_words(wb.substitution, 0, 6, wb.perron)
    texts = {wb.substitution.format_word(w).replace(" ", "") for w in rep.return_words}
    assert texts == {"a", "ab", "abb"}
    assert rep.L_default == 1
    assert bench("fib_variant").return_length == 2

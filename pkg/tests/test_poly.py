"""Polynomials over Z_p; sympy is the independent oracle for exact algebra."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from padicroots.errors import DenominatorNotDividing, PrecisionExhausted
from padicroots.padic import PadicApprox, PadicContext
from padicroots.poly import (
    Poly,
    exact_div,
    gcd,
    parse_poly,
    pseudo_remainder,
    roots_mod_p,
    squarefree_part,
)

X = sympy.Symbol("x")

small_coeffs = st.lists(st.integers(-30, 30), min_size=2, max_size=6)


def sym(coeffs):
    return sympy.Poly(list(reversed([sympy.Rational(c) for c in coeffs])), X)


def monic_prim(sp: sympy.Poly, p: int):
    """Rational coefficients normalized like Poly.normalized (leading unit -> monic)."""
    cs = [Fraction(int(c.p), int(c.q)) for c in reversed(sp.all_coeffs())]
    lead = cs[-1]
    return [c / lead for c in cs]


def test_parse_and_str():
    ctx = PadicContext(7, 10)
    f = parse_poly("-2,0,1", ctx)
    assert f.degree == 2
    assert str(f) == "x^2 - 2"
    g = parse_poly("1/2, 3", ctx)
    assert g.exact == (Fraction(1, 2), Fraction(3))
    with pytest.raises(DenominatorNotDividing):
        parse_poly("1/7, 1", ctx)
    with pytest.raises(ValueError):
        parse_poly("1, two", ctx)


def test_eval_matches_integer_horner():
    ctx = PadicContext(5, 12)
    f = Poly.from_ints(ctx, [6, -7, 1])
    for a in range(-20, 40):
        assert f(a).value == (a * a - 7 * a + 6) % 5 ** 12


def test_derivative_exact_and_truncated_agree():
    ctx = PadicContext(5, 12)
    f = Poly.from_ints(ctx, [1, 2, 3, 4, 5])
    g = Poly(ctx, f.coeffs)
    assert g.exact is None
    assert f.derivative().residues == g.derivative().residues
    assert f.derivative(2).residues == [6, 24 % 5 ** 12, 60]


def test_taylor_shift_example():
    ctx = PadicContext(5, 10)
    f = Poly.from_ints(ctx, [6, -7, 1])
    # f(1 + 5x) = 25x^2 - 25x
    assert f.taylor_shift(1, 1).exact == (0, -25, 25)


@given(small_coeffs, st.integers(-10, 10), st.integers(0, 2), st.integers(-50, 50))
def test_taylor_shift_is_composition(coeffs, a, s, x):
    ctx = PadicContext(7, 30)
    f = Poly.from_ints(ctx, coeffs)
    g = f.taylor_shift(a, s)
    assert g(x) == f(a + 7 ** s * x)
    # truncated path gives the same residues
    h = Poly(ctx, f.coeffs).taylor_shift(a, s)
    assert h(x).value == f(a + 7 ** s * x).value


def test_content_and_scale_down():
    ctx = PadicContext(5, 10)
    f = Poly.from_ints(ctx, [0, -25, 25])
    assert f.content_exp() == 2
    assert f.scale_down(2).exact == (0, -1, 1)
    g = Poly(ctx, [PadicApprox(ctx, 0, 1), ctx(25)])
    with pytest.raises(PrecisionExhausted):
        g.content_exp()


@given(small_coeffs, small_coeffs)
def test_ring_ops_match_sympy(a, b):
    ctx = PadicContext(11, 20)
    fa, fb = Poly.from_ints(ctx, a), Poly.from_ints(ctx, b)
    for ours, theirs in ((fa + fb, sym(a) + sym(b)), (fa - fb, sym(a) - sym(b)), (fa * fb, sym(a) * sym(b))):
        expect = [Fraction(int(c)) for c in reversed(theirs.all_coeffs())] if not theirs.is_zero else []
        while expect and expect[-1] == 0:
            expect.pop()
        assert list(ours.exact) == expect


def test_pseudo_remainder_identity():
    ctx = PadicContext(7, 20)
    a = Poly.from_ints(ctx, [1, 2, 3, 4])
    b = Poly.from_ints(ctx, [5, 0, 2])
    r = pseudo_remainder(a, b)
    assert r.degree < b.degree
    ours = sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * X ** k for k, c in enumerate(r.exact)), X)
    # sympy's prem agrees up to a p-adic unit scalar
    theirs = sympy.Poly(sympy.prem(sym([1, 2, 3, 4]).as_expr(), sym([5, 0, 2]).as_expr(), X), X)
    ratio = sympy.simplify(ours.as_expr() / theirs.as_expr())
    assert ratio.is_number and sympy.Rational(ratio).q % 7 != 0


def test_exact_div():
    ctx = PadicContext(7, 20)
    f = Poly.from_ints(ctx, [-2, 5, -4, 1])
    g = Poly.from_ints(ctx, [-1, 1])
    assert exact_div(f, g).exact == (2, -3, 1)
    with pytest.raises(ValueError):
        exact_div(f, Poly.from_ints(ctx, [3, 1]))


def test_gcd_example():
    ctx = PadicContext(7, 20)
    f = Poly.from_ints(ctx, [-2, 5, -4, 1])  # (x-1)^2 (x-2)
    assert gcd(f, f.derivative()).normalized().exact == (-1, 1)
    assert squarefree_part(f).normalized().exact == (2, -3, 1)


def test_gcd_coprime_is_constant():
    ctx = PadicContext(5, 20)
    f = Poly.from_ints(ctx, [6, -7, 1])
    assert gcd(f, f.derivative()).degree == 0
    assert squarefree_part(f).normalized().exact == (6, -7, 1)


@given(
    st.lists(st.integers(-6, 6), min_size=1, max_size=3),
    st.lists(st.integers(1, 3), min_size=3, max_size=3),
    st.sampled_from([5, 7, 11, 13]),
)
@settings(max_examples=60, deadline=None)
def test_squarefree_part_matches_sympy(roots, mults, p):
    roots = sorted(set(roots))
    coeffs = sympy.Poly(sympy.prod([(X - r) ** m for r, m in zip(roots, mults)]), X)
    cs = [int(c) for c in reversed(coeffs.all_coeffs())]
    ctx = PadicContext(p, 40)
    f = Poly.from_ints(ctx, cs)
    ours = squarefree_part(f).normalized()
    theirs = sympy.quo(coeffs, sympy.gcd(coeffs, coeffs.diff(X)))
    assert list(ours.exact) == monic_prim(theirs, p)


@given(small_coeffs, st.sampled_from([2, 3, 5, 7, 11]))
def test_roots_mod_p_bruteforce(coeffs, p):
    ctx = PadicContext(p, 10)
    f = Poly.from_ints(ctx, coeffs)
    assume(not f.is_zero())
    expect = sorted(a for a in range(p) if sum(c * a ** k for k, c in enumerate(coeffs)) % p == 0)
    assert roots_mod_p(f) == expect

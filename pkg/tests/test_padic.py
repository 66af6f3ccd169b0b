"""Truncated p-adic arithmetic: valuations, precision propagation, errors."""

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from padicroots.errors import (
    ContextMismatch,
    DenominatorNotDividing,
    DivisionByHigherValuation,
    InsufficientPrecision,
    NotAUnit,
    PrecisionExhausted,
    ZeroDenominator,
)
from padicroots.padic import (
    AtLeast,
    Finite,
    PadicApprox,
    PadicContext,
    from_integer,
    from_rational,
    vp_int,
)

PRIMES = [2, 3, 5, 7, 11, 13]

primes = st.sampled_from(PRIMES)
ints = st.integers(min_value=-10 ** 12, max_value=10 ** 12)


def brute_vp(n, p):
    if n == 0:
        return float("inf")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


# -- valuations ---------------------------------------------------------------


def test_vp_int_examples():
    assert vp_int(0, 5) == float("inf")
    assert vp_int(50, 5) == 2
    assert vp_int(-7 ** 5, 7) == 5
    assert vp_int(3, 5) == 0


def test_context_rejects_composites():
    with pytest.raises(ValueError):
        PadicContext(6, 10)
    with pytest.raises(ValueError):
        PadicContext(7, 0)


def test_valuation_interval_logic():
    assert Finite(3) < Finite(4)
    assert AtLeast(5) > 4
    assert AtLeast(5) >= Finite(5)
    assert not AtLeast(5) < 5
    with pytest.raises(PrecisionExhausted):
        AtLeast(5) > 6
    with pytest.raises(PrecisionExhausted):
        AtLeast(3) < AtLeast(4)
    assert Finite(2) == 2
    assert AtLeast(2) != 2
    assert AtLeast(2) != Finite(2)
    with pytest.raises(PrecisionExhausted):
        int(AtLeast(2))


def test_zero_has_lower_bound_valuation():
    ctx = PadicContext(5, 10)
    z = PadicApprox(ctx, 0, 6)
    assert z.valuation() == AtLeast(6)
    assert z.is_zero()
    assert z.norm() == Fraction(1, 5 ** 6)


@given(primes, ints)
def test_valuation_matches_bruteforce(p, n):
    ctx = PadicContext(p, 40)
    a = from_integer(n, ctx)
    expected = brute_vp(n, p)
    if expected >= 40:
        assert a.valuation() == AtLeast(40)
    else:
        assert a.valuation() == Finite(expected)
        assert a.norm() == Fraction(1, p ** expected)


# -- arithmetic properties --------------------------------------------------------


@given(primes, ints, ints)
def test_ultrametric_inequality(p, x, y):
    ctx = PadicContext(p, 30)
    a, b = ctx(x), ctx(y)
    assert (a + b).norm() <= max(a.norm(), b.norm())


@given(primes, ints, ints)
def test_norm_is_multiplicative(p, x, y):
    assume(x != 0 and y != 0)
    ctx = PadicContext(p, 200)
    a, b = ctx(x), ctx(y)
    assert (a * b).norm() == a.norm() * b.norm()


@given(primes, ints, ints)
def test_arithmetic_agrees_with_integers(p, x, y):
    ctx = PadicContext(p, 25)
    m = p ** 25
    a, b = ctx(x), ctx(y)
    assert (a + b).value == (x + y) % m
    assert (a - b).value == (x - y) % m
    assert (a * b).value == (x * y) % m


@given(primes, ints, st.integers(1, 10 ** 6))
def test_rational_roundtrip(p, num, den):
    assume(den % p != 0)
    ctx = PadicContext(p, 30)
    q = from_rational(num, den, ctx)
    # q * den == num exactly modulo p^30
    assert (q * den).value == num % p ** 30


@given(primes, ints, ints)
@settings(max_examples=200)
def test_div_then_mul_recovers_dividend(p, x, y):
    assume(y != 0)
    ctx = PadicContext(p, 40)
    a, b = ctx(x * y), ctx(y)
    assume(b.valuation().is_finite)
    q = a / b
    assert q.prec == 40 - b.valuation().v
    assert (q * b).agrees_with(a, q.prec)
    assert q.agrees_with(ctx(x), q.prec)


@given(primes, st.integers(0, 10 ** 9), st.integers(1, 20), st.integers(0, 10 ** 9), st.integers(1, 20))
def test_precision_never_exceeds_inputs(p, x, kx, y, ky):
    ctx = PadicContext(p, 30)
    a, b = PadicApprox(ctx, x, kx), PadicApprox(ctx, y, ky)
    assert (a + b).prec <= min(kx, ky)
    assert (a - b).prec <= min(kx, ky)
    prod = a * b
    # a product's precision is bounded by the precision of either factor shifted by the other's valuation
    assert prod.prec <= min(kx + b.valuation().v, ky + a.valuation().v, 30)


@given(primes, st.integers(0, 10 ** 9), st.integers(2, 20), st.integers(0, 10 ** 9))
def test_truncated_inputs_give_truncation_invariant_results(p, x, k, noise):
    # changing digits beyond the known precision may not change known digits of the result
    ctx = PadicContext(p, 40)
    a = PadicApprox(ctx, x, k)
    a2 = PadicApprox(ctx, x + noise * p ** k, k)
    b = ctx(7 * p + 3)
    for op in (lambda u: u + b, lambda u: u * b, lambda u: u * u):
        r1, r2 = op(a), op(a2)
        assert r1.prec == r2.prec
        assert r1.value == r2.value


def test_mul_precision_rule_example():
    ctx = PadicContext(7, 20)
    a = PadicApprox(ctx, 3, 5)
    b = PadicApprox(ctx, 49, 10)
    # min(5 + 2, 10 + 0, 20)
    assert (a * b).prec == 7


def test_div_precision_rule_example():
    ctx = PadicContext(5, 20)
    a = PadicApprox(ctx, 3 * 25, 12)
    b = PadicApprox(ctx, 25, 9)
    q = a / b
    assert q.prec == 7
    assert q.value == 3


# -- errors ----------------------------------------------------------------------


def test_division_errors():
    ctx = PadicContext(5, 10)
    with pytest.raises(ZeroDenominator):
        ctx(3) / ctx(0)
    with pytest.raises(PrecisionExhausted):
        ctx(3) / PadicApprox(ctx, 0, 4)
    with pytest.raises(DivisionByHigherValuation):
        ctx(3) / ctx(5)
    with pytest.raises(PrecisionExhausted):
        PadicApprox(ctx, 50, 2) / PadicApprox(ctx, 25, 3)
    assert isinstance(ZeroDenominator("x"), ZeroDivisionError)


def test_rational_denominator_checks():
    ctx = PadicContext(5, 10)
    with pytest.raises(DenominatorNotDividing):
        from_rational(1, 5, ctx)
    # 10/5 reduces to 2
    assert from_rational(10, 5, ctx) == ctx(2)
    with pytest.raises(ZeroDenominator):
        from_rational(1, 0, ctx)
    assert ctx(Fraction(1, 2)).value * 2 % 5 ** 10 == 1


def test_context_mismatch():
    a = PadicContext(5, 10)(1)
    b = PadicContext(7, 10)(1)
    with pytest.raises(ContextMismatch):
        a + b
    with pytest.raises(ContextMismatch):
        a.with_context(PadicContext(7, 10))


def test_invert_and_digits():
    ctx = PadicContext(7, 6)
    x = ctx(3)
    assert (x.invert() * x).value == 1
    with pytest.raises(NotAUnit):
        ctx(14).invert()
    assert ctx(2166).digits(4) == [3, 1, 2, 6]
    with pytest.raises(InsufficientPrecision):
        PadicApprox(ctx, 5, 3).digits(4)
    assert ctx(2166).truncate(2).value == 2166 % 49
    assert ctx(2166).truncate(2).lift().prec == 6


def test_immutable():
    x = PadicContext(5, 4)(3)
    with pytest.raises(AttributeError):
        x.value = 4

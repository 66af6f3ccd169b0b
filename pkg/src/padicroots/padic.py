"""Truncated p-adic integers with absolute (fixed-point) precision.

An element of Z_p is stored as a single residue ``value`` modulo ``p**prec``
together with its absolute precision ``prec``: the element is known to lie
in ``value + p**prec Z_p``.  Precision is never created out of nothing:
ring operations follow the usual fixed-point propagation rules and division
by an element of valuation ``k`` costs ``k`` digits.

The valuation of an element whose residue is zero is not known exactly; it
is reported as ``AtLeast(prec)``.  Comparisons that cannot be decided from
the known digits raise :class:`PrecisionExhausted` instead of guessing.

>>> ctx = PadicContext(7, 4)
>>> x = ctx(3)
>>> (x * x - 2).valuation()
Finite(1)
>>> from_rational(11, 6, PadicContext(7, 2)).value
10
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from sympy import isprime

from .errors import (
    ContextMismatch,
    DenominatorNotDividing,
    DivisionByHigherValuation,
    InsufficientPrecision,
    NotAUnit,
    PrecisionExhausted,
    ZeroDenominator,
)

__all__ = [
    "PadicContext",
    "PadicApprox",
    "Valuation",
    "Finite",
    "AtLeast",
    "from_integer",
    "from_rational",
    "vp_int",
]


def vp_int(n: int, p: int) -> float | int:
    """Valuation of a nonzero Python integer; ``math.inf`` for zero."""
    if n == 0:
        return math.inf
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@lru_cache(maxsize=256)
def _checked_prime(p: int) -> bool:
    return bool(isprime(p))


# ---------------------------------------------------------------------------
# Valuations
# ---------------------------------------------------------------------------


class Valuation:
    """Either an exact valuation ``Finite(v)`` or a lower bound ``AtLeast(v)``.

    Ordering is decided on the interval of values the valuation may take
    (``[v, v]`` or ``[v, inf)``).  When the answer depends on digits that are
    not known, :class:`PrecisionExhausted` is raised.  Plain integers compare
    as ``Finite``.  ``==`` is structural.
    """

    __slots__ = ("v", "exact")

    def __init__(self, v: int, exact: bool = True):
        if v < 0:
            raise ValueError("valuations of Z_p elements are non-negative")
        self.v = int(v)
        self.exact = bool(exact)

    @property
    def is_finite(self) -> bool:
        return self.exact

    def _bounds(self):
        return (self.v, self.v) if self.exact else (self.v, math.inf)

    @staticmethod
    def _other_bounds(other):
        if isinstance(other, Valuation):
            return other._bounds()
        if isinstance(other, int):
            return (other, other)
        return None

    def __lt__(self, other):
        ob = self._other_bounds(other)
        if ob is None:
            return NotImplemented
        lo, hi = self._bounds()
        if hi < ob[0]:
            return True
        if lo >= ob[1]:
            return False
        raise PrecisionExhausted(f"cannot decide {self!r} < {other!r}")

    def __gt__(self, other):
        ob = self._other_bounds(other)
        if ob is None:
            return NotImplemented
        lo, hi = self._bounds()
        if lo > ob[1]:
            return True
        if hi <= ob[0]:
            return False
        raise PrecisionExhausted(f"cannot decide {self!r} > {other!r}")

    def __le__(self, other):
        ob = self._other_bounds(other)
        if ob is None:
            return NotImplemented
        return not self.__gt__(other)

    def __ge__(self, other):
        ob = self._other_bounds(other)
        if ob is None:
            return NotImplemented
        return not self.__lt__(other)

    def __eq__(self, other):
        if isinstance(other, Valuation):
            return self.v == other.v and self.exact == other.exact
        if isinstance(other, int) and not isinstance(other, bool):
            return self.exact and self.v == other
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.exact))

    def __int__(self):
        if not self.exact:
            raise PrecisionExhausted(f"{self!r} has no exact value")
        return self.v

    def __repr__(self):
        return f"Finite({self.v})" if self.exact else f"AtLeast({self.v})"


def Finite(v: int) -> Valuation:
    return Valuation(v, True)


def AtLeast(v: int) -> Valuation:
    return Valuation(v, False)


# ---------------------------------------------------------------------------
# Context
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PadicContext:
    """A prime ``p`` and the working precision ``work_prec`` (digits kept)."""

    p: int
    work_prec: int

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 2 or not _checked_prime(self.p):
            raise ValueError(f"p = {self.p!r} is not a prime")
        if not isinstance(self.work_prec, int) or self.work_prec < 1:
            raise ValueError("work_prec must be a positive integer")

    @property
    def modulus(self) -> int:
        return self.p ** self.work_prec

    def __call__(self, n) -> PadicApprox:
        """Embed an integer or rational into this context."""
        if isinstance(n, PadicApprox):
            return n.with_context(self)
        if isinstance(n, int):
            return from_integer(n, self)
        if isinstance(n, Rational):
            return from_rational(n.numerator, n.denominator, self)
        raise TypeError(f"cannot embed {type(n).__name__} into Z_{self.p}")

    def with_prec(self, work_prec: int) -> PadicContext:
        return PadicContext(self.p, work_prec)

    def zero(self) -> PadicApprox:
        return PadicApprox(self, 0, self.work_prec)

    def one(self) -> PadicApprox:
        return PadicApprox(self, 1, self.work_prec)


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------


class PadicApprox:
    """An element of Z_p known modulo ``p**prec``. Immutable."""

    __slots__ = ("ctx", "value", "prec")

    def __init__(self, ctx: PadicContext, value: int, prec: int):
        if not 0 <= prec <= ctx.work_prec:
            raise ValueError(f"precision {prec} outside [0, {ctx.work_prec}]")
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "prec", prec)
        object.__setattr__(self, "value", value % ctx.p ** prec)

    def __setattr__(self, name, value):
        raise AttributeError("PadicApprox is immutable")

    # -- inspection ---------------------------------------------------------

    @property
    def p(self) -> int:
        return self.ctx.p

    def valuation(self) -> Valuation:
        if self.value == 0:
            return AtLeast(self.prec)
        return Finite(vp_int(self.value, self.ctx.p))

    def norm(self) -> Fraction:
        """``p**-v``; for an indistinguishable-from-zero element, the upper bound."""
        return Fraction(1, self.ctx.p ** self.valuation().v)

    def is_zero(self) -> bool:
        """True when the residue is zero, i.e. the element is indistinguishable from 0."""
        return self.value == 0

    def is_unit(self) -> bool:
        return self.prec > 0 and self.value % self.ctx.p != 0

    def digits(self, k: int | None = None) -> list[int]:
        """Little-endian base-p digits of the residue modulo ``p**k``."""
        if k is None:
            k = self.prec
        if k > self.prec:
            raise InsufficientPrecision(f"{k} digits requested, only {self.prec} known")
        p, n, out = self.ctx.p, self.value, []
        for _ in range(k):
            n, d = divmod(n, p)
            out.append(d)
        return out

    def agrees_with(self, other, k: int) -> bool:
        """Whether the two elements coincide modulo ``p**k``."""
        other = self._coerce(other)
        if k > min(self.prec, other.prec):
            raise InsufficientPrecision(f"cannot compare {k} digits")
        m = self.ctx.p ** k
        return self.value % m == other.value % m

    # -- precision management ----------------------------------------------

    def truncate(self, k: int) -> PadicApprox:
        """Forget every digit from position ``k`` on."""
        return PadicApprox(self.ctx, self.value, min(k, self.prec))

    def lift(self) -> PadicApprox:
        """Treat the residue as an exact integer (full working precision).

        This is the "cut off and continue with an integer" step used when
        iterating with truncated representations.
        """
        return PadicApprox(self.ctx, self.value, self.ctx.work_prec)

    def with_context(self, ctx: PadicContext) -> PadicApprox:
        if ctx.p != self.ctx.p:
            raise ContextMismatch(f"cannot move a {self.ctx.p}-adic element to p={ctx.p}")
        return PadicApprox(ctx, self.value, min(self.prec, ctx.work_prec))

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> PadicApprox:
        if isinstance(other, PadicApprox):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"{self.ctx} vs {other.ctx}")
            return other
        if isinstance(other, (int, Rational)):
            return self.ctx(other)
        raise TypeError(f"unsupported operand {type(other).__name__}")

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        prec = min(self.prec, other.prec)
        return PadicApprox(self.ctx, self.value + other.value, prec)

    __radd__ = __add__

    def __neg__(self):
        return PadicApprox(self.ctx, -self.value, self.prec)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        prec = min(self.prec, other.prec)
        return PadicApprox(self.ctx, self.value - other.value, prec)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        # lower bounds suffice: AtLeast(prec) contributes prec
        va, vb = self.valuation().v, other.valuation().v
        prec = min(self.prec + vb, other.prec + va, self.ctx.work_prec)
        return PadicApprox(self.ctx, self.value * other.value, prec)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        out = self.ctx.one()
        for _ in range(e):
            out = out * self
        return out

    def invert(self) -> PadicApprox:
        if not self.is_unit():
            raise NotAUnit(f"{self!r} is not a unit")
        m = self.ctx.p ** self.prec
        return PadicApprox(self.ctx, pow(self.value, -1, m), self.prec)

    def __truediv__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return div(self, other)

    def __rtruediv__(self, other):
        return div(self._coerce(other), self)

    # -- dunder helpers -------------------------------------------------------

    def __int__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, PadicApprox):
            return (self.ctx, self.value, self.prec) == (other.ctx, other.value, other.prec)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.value, self.prec))

    def __repr__(self):
        return f"PadicApprox({self.value} + O({self.ctx.p}^{self.prec}))"


def div(a: PadicApprox, b: PadicApprox) -> PadicApprox:
    """``a / b`` inside Z_p. The result loses ``v(b)`` digits of precision."""
    if a.ctx != b.ctx:
        raise ContextMismatch(f"{a.ctx} vs {b.ctx}")
    vb = b.valuation()
    if not vb.is_finite:
        if b.prec == b.ctx.work_prec:
            raise ZeroDenominator("division by zero")
        raise PrecisionExhausted("divisor is indistinguishable from zero")
    k = vb.v
    va = a.valuation()
    if va < k:
        raise DivisionByHigherValuation(f"v(a) = {va!r} < v(b) = {k}")
    prec = min(a.prec, b.prec) - k
    if prec <= 0:
        raise PrecisionExhausted("no digits of the quotient are known")
    p = a.ctx.p
    num = a.value // p ** k
    den = b.value // p ** k
    m = p ** prec
    return PadicApprox(a.ctx, num * pow(den, -1, m), prec)


def from_integer(n: int, ctx: PadicContext) -> PadicApprox:
    return PadicApprox(ctx, n, ctx.work_prec)


def from_rational(num: int, den: int, ctx: PadicContext) -> PadicApprox:
    """The p-adic integer ``num/den``; requires ``v_p(den) <= v_p(num)``.

    The fraction is reduced first, so common factors of p cost nothing.
    """
    if den == 0:
        raise ZeroDenominator("zero denominator")
    q = Fraction(num, den)
    if q.denominator % ctx.p == 0:
        raise DenominatorNotDividing(f"{num}/{den} is not a {ctx.p}-adic integer")
    m = ctx.modulus
    return PadicApprox(ctx, q.numerator * pow(q.denominator, -1, m), ctx.work_prec)

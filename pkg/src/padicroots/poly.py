"""Dense polynomials over truncated Z_p.

Coefficients are :class:`~padicroots.padic.PadicApprox` values sharing one
context, stored constant term first.  A polynomial built from integers or
rationals also remembers those exact coefficients (``exact``); this lets
callers rebuild it at a higher working precision, and lets the Thurston
substitution stay exact for as long as the input is.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .errors import (
    ContextMismatch,
    PrecisionExhausted,
    PrimeTooLargeForEnumeration,
)
from .padic import PadicApprox, PadicContext, div, vp_int

__all__ = [
    "Poly",
    "parse_poly",
    "gcd",
    "squarefree_part",
    "roots_mod_p",
    "pseudo_remainder",
    "exact_div",
    "ENUMERATION_LIMIT",
]

ENUMERATION_LIMIT = 2 ** 20


class Poly:
    """A polynomial over Z_p, trimmed so the leading residue is nonzero."""

    __slots__ = ("ctx", "coeffs", "exact")

    def __init__(self, ctx: PadicContext, coeffs: Iterable, exact: Sequence[Fraction] | None = None):
        cs = []
        for c in coeffs:
            if isinstance(c, PadicApprox):
                if c.ctx != ctx:
                    raise ContextMismatch(f"coefficient in {c.ctx}, polynomial in {ctx}")
                cs.append(c)
            else:
                cs.append(ctx(c))
        while cs and cs[-1].is_zero():
            cs.pop()
        if exact is not None:
            exact = list(exact)
            while exact and exact[-1] == 0:
                exact.pop()
            exact = tuple(exact)
        self.ctx = ctx
        self.coeffs = tuple(cs)
        self.exact = exact

    @classmethod
    def from_rationals(cls, ctx: PadicContext, coeffs: Iterable) -> Poly:
        exact = [Fraction(c) for c in coeffs]
        return cls(ctx, exact, exact=exact)

    from_ints = from_rationals

    @classmethod
    def x(cls, ctx: PadicContext) -> Poly:
        return cls.from_rationals(ctx, [0, 1])

    # -- basic properties -----------------------------------------------------

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> PadicApprox:
        if not self.coeffs:
            raise ValueError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def residues(self) -> list[int]:
        return [c.value for c in self.coeffs]

    @property
    def prec(self) -> int:
        """Smallest coefficient precision (work_prec for the zero polynomial)."""
        return min((c.prec for c in self.coeffs), default=self.ctx.work_prec)

    def with_context(self, ctx: PadicContext) -> Poly:
        """Move to another working precision, exactly when exact data is known."""
        if self.exact is not None:
            return Poly.from_rationals(ctx, self.exact)
        return Poly(ctx, [c.with_context(ctx) for c in self.coeffs])

    # -- evaluation -------------------------------------------------------------

    def __call__(self, x) -> PadicApprox:
        if not isinstance(x, PadicApprox):
            x = self.ctx(x)
        elif x.ctx != self.ctx:
            raise ContextMismatch(f"point in {x.ctx}, polynomial in {self.ctx}")
        if not self.coeffs:
            return self.ctx.zero()
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    eval = __call__

    def derivative(self, order: int = 1) -> Poly:
        if order < 0:
            raise ValueError("derivative order must be non-negative")
        if self.exact is not None:
            cs = list(self.exact)
            for _ in range(order):
                cs = [k * cs[k] for k in range(1, len(cs))]
            return Poly.from_rationals(self.ctx, cs)
        cs = list(self.coeffs)
        for _ in range(order):
            cs = [cs[k] * k for k in range(1, len(cs))]
        return Poly(self.ctx, cs)

    def taylor_shift(self, a, scale_exp: int = 0) -> Poly:
        """The polynomial ``x -> f(a + p**scale_exp * x)``."""
        p, n = self.ctx.p, self.degree
        if self.exact is not None and isinstance(a, (int, Fraction)):
            cs = self.exact
            out = []
            for k in range(len(cs)):
                s = sum(comb(j, k) * cs[j] * Fraction(a) ** (j - k) for j in range(k, len(cs)))
                out.append(s * p ** (scale_exp * k))
            return Poly.from_rationals(self.ctx, out)
        a = self.ctx(a) if not isinstance(a, PadicApprox) else a
        apow = [self.ctx.one()]
        for _ in range(n):
            apow.append(apow[-1] * a)
        out = []
        for k in range(n + 1):
            s = self.ctx.zero()
            for j in range(k, n + 1):
                s = s + self.coeffs[j] * apow[j - k] * comb(j, k)
            out.append(s * p ** (scale_exp * k))
        return Poly(self.ctx, out)

    def content_exp(self) -> int:
        """Largest m with p**m dividing every coefficient."""
        if not self.coeffs:
            raise PrecisionExhausted("the zero polynomial has no content")
        if self.exact is not None:
            return min(_vp_fraction(c, self.ctx.p) for c in self.exact if c != 0)
        finite = [c.valuation().v for c in self.coeffs if not c.is_zero()]
        if not finite:
            raise PrecisionExhausted("every coefficient is indistinguishable from zero")
        m = min(finite)
        if any(c.is_zero() and c.prec < m for c in self.coeffs):
            raise PrecisionExhausted("content undecidable at the current precision")
        return m

    def scale_down(self, m: int) -> Poly:
        """Divide every coefficient by p**m."""
        if m == 0:
            return self
        if self.exact is not None:
            q = self.ctx.p ** m
            return Poly.from_rationals(self.ctx, [c / q for c in self.exact])
        pm = self.ctx(self.ctx.p ** m)
        return Poly(self.ctx, [div(c, pm) for c in self.coeffs])

    def primitive(self) -> Poly:
        return self.scale_down(self.content_exp())

    def normalized(self) -> Poly:
        """Monic when the leading coefficient is a unit, otherwise of unit content."""
        if self.is_zero():
            return self
        prim = self.primitive()
        if prim.lc.is_unit():
            if prim.exact is not None:
                lead = prim.exact[-1]
                return Poly.from_rationals(self.ctx, [c / lead for c in prim.exact])
            inv = prim.lc.invert()
            return Poly(self.ctx, [c * inv for c in prim.coeffs])
        return prim

    # -- ring operations --------------------------------------------------------

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"{self.ctx} vs {other.ctx}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.from_rationals(self.ctx, [other])
        if isinstance(other, PadicApprox):
            return Poly(self.ctx, [other])
        raise TypeError(f"unsupported operand {type(other).__name__}")

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.exact is not None and other.exact is not None:
            return Poly.from_rationals(self.ctx, _zip_add(self.exact, other.exact, Fraction(0)))
        return Poly(self.ctx, _zip_add(self.coeffs, other.coeffs, self.ctx.zero()))

    __radd__ = __add__

    def __neg__(self):
        if self.exact is not None:
            return Poly.from_rationals(self.ctx, [-c for c in self.exact])
        return Poly(self.ctx, [-c for c in self.coeffs])

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            both = self.exact is not None and other.exact is not None
            return Poly(self.ctx, [], exact=() if both else None)
        if self.exact is not None and other.exact is not None:
            out = [Fraction(0)] * (len(self.exact) + len(other.exact) - 1)
            for i, a in enumerate(self.exact):
                for j, b in enumerate(other.exact):
                    out[i + j] += a * b
            return Poly.from_rationals(self.ctx, out)
        out = [self.ctx.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.ctx, out)

    __rmul__ = __mul__

    def shift(self, k: int) -> Poly:
        """Multiply by x**k."""
        if self.exact is not None:
            return Poly.from_rationals(self.ctx, [0] * k + list(self.exact))
        return Poly(self.ctx, [self.ctx.zero()] * k + list(self.coeffs))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ctx == other.ctx and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.coeffs))

    def __repr__(self):
        return f"Poly({self}, p={self.ctx.p}, prec={self.prec})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            m = self.ctx.p ** c.prec
            v = c.value - m if c.value > m // 2 else c.value
            if v == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and abs(v) == 1:
                coef = "-" if v < 0 else ""
            else:
                coef = str(v) + ("*" if mono else "")
            terms.append(coef + mono)
        if not terms:
            return "0"
        s = " + ".join(terms)
        return s.replace("+ -", "- ")


def _zip_add(a, b, zero):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else zero) + (b[i] if i < len(b) else zero) for i in range(n)]


def _vp_fraction(q: Fraction, p: int) -> int:
    return vp_int(q.numerator, p) - vp_int(q.denominator, p)


def parse_poly(text: str, ctx: PadicContext) -> Poly:
    """Parse constant-term-first CSV such as ``"-2,0,1"`` (x^2 - 2) or ``"1/2,3"``."""
    items = [t.strip() for t in text.split(",")]
    if not items or any(t == "" for t in items):
        raise ValueError(f"malformed coefficient list {text!r}")
    try:
        coeffs = [Fraction(t) for t in items]
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed coefficient list {text!r}") from exc
    return Poly.from_rationals(ctx, coeffs)


# ---------------------------------------------------------------------------
# Euclidean machinery
# ---------------------------------------------------------------------------


def pseudo_remainder(a: Poly, b: Poly) -> Poly:
    """Remainder of ``lc(b)**k * a`` by ``b``; stays inside Z_p[x]."""
    if b.is_zero():
        raise ZeroDivisionError("pseudo-remainder by the zero polynomial")
    r, d, lcb = a, b.degree, _lead(b)
    while not r.is_zero() and r.degree >= d:
        r = r * lcb - (b * _lead(r)).shift(r.degree - d)
    return r


def _lead(f: Poly):
    return f.exact[-1] if f.exact is not None else f.lc


def exact_div(f: Poly, g: Poly) -> Poly:
    """Quotient of an exact division in Z_p[x]; raises if a remainder is left."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ctx = f.ctx
    exact = f.exact is not None and g.exact is not None
    q = [Fraction(0) if exact else ctx.zero()] * max(f.degree - g.degree + 1, 0)
    r = f
    while not r.is_zero() and r.degree >= g.degree:
        k = r.degree - g.degree
        c = r.exact[-1] / g.exact[-1] if exact else div(r.lc, g.lc)
        q[k] = c
        r = r - (g * c).shift(k)
    if not r.is_zero():
        raise ValueError(f"{g} does not divide {f}")
    return Poly.from_rationals(ctx, q) if exact else Poly(ctx, q)


def gcd(f: Poly, g: Poly) -> Poly:
    """A gcd in Q_p[x], computed by a content-stripping pseudo-remainder loop.

    Each remainder is divided by its p-power content before the next step,
    so every intermediate stays in Z_p[x].  The result is monic when its
    leading coefficient is a unit, and of unit content otherwise.
    """
    if f.ctx != g.ctx:
        raise ContextMismatch(f"{f.ctx} vs {g.ctx}")
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if g.is_zero():
        return f.normalized()
    if f.is_zero():
        return g.normalized()
    a, b = f.primitive(), g.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        if b.degree == 0:
            return Poly.from_rationals(f.ctx, [1])
        r = pseudo_remainder(a, b)
        a, b = b, (r if r.is_zero() else r.primitive())
    return a.normalized()


def squarefree_part(f: Poly) -> Poly:
    """``f / gcd(f, f')``: same roots, each now simple."""
    if f.is_zero():
        raise ValueError("the zero polynomial has no squarefree part")
    g = gcd(f, f.derivative())
    if g.degree <= 0:
        return f
    return exact_div(f, g)


def roots_mod_p(f: Poly, limit: int = ENUMERATION_LIMIT) -> list[int]:
    """All residues a in [0, p) with f(a) = 0 mod p, by exhaustive trial."""
    p = f.ctx.p
    if p >= limit:
        raise PrimeTooLargeForEnumeration(f"p = {p} exceeds the enumeration limit {limit}")
    if any(c.prec < 1 for c in f.coeffs):
        raise PrecisionExhausted("a coefficient is not known modulo p")
    cs = [c.value % p for c in f.coeffs]
    out = []
    for a in range(p):
        acc = 0
        for c in reversed(cs):
            acc = (acc * a + c) % p
        if acc == 0:
            out.append(a)
    return out

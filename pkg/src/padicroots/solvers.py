"""p-adic Newton, Olver and simplified Jarratt (SJM) iterations.

All three iterations lift a seed ``x1`` with ``|f(x1)|_p < |f'(x1)|_p**2``
to the unique simple root it determines.  SJM is the order-4 single-fraction
iteration

    x - f/(2 f') + 3 f f'^2 / (-6 f'^3 + 6 f f' f'' - 2 f^2 f''')

which needs ``p > 3``.  :func:`solve` drives any of them to a requested
absolute precision, truncating each iterate to the digits it actually
certifies and continuing from that integer.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .errors import (
    DenominatorValuationUnexpected,
    InsufficientTrace,
    InvariantViolated,
    NonConvergence,
    PrecisionExhausted,
    PrimeTooSmall,
    SeedRejected,
)
from .padic import AtLeast, Finite, PadicApprox, PadicContext, Valuation, div, vp_int
from .poly import Poly

log = logging.getLogger(__name__)

__all__ = [
    "Method",
    "TraceEntry",
    "IterationTrace",
    "RootRecord",
    "RhoConstant",
    "InvariantReport",
    "hensel_condition",
    "newton_step",
    "olver_step",
    "sjm_step",
    "jarratt_correction",
    "lemma_bound_check",
    "solve",
    "monitor_invariants",
    "order_estimate",
    "order_from_valuations",
    "MAX_STEPS",
]

MAX_STEPS = 64


class Method(str, enum.Enum):
    NEWTON = "newton"
    OLVER = "olver"
    SJM = "sjm"

    @property
    def order(self) -> int:
        return {"newton": 2, "olver": 3, "sjm": 4}[self.value]


# ---------------------------------------------------------------------------
# Records
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TraceEntry:
    n: int
    x: PadicApprox
    v_f: Valuation
    v_fprime: Valuation
    # digits x was certified to before being re-lifted to an integer
    cut_prec: int
    v_e: Valuation | None = None


@dataclass
class IterationTrace:
    method: Method
    t_v: int
    entries: list[TraceEntry] = field(default_factory=list)

    def __len__(self):
        return len(self.entries)

    @property
    def steps(self) -> int:
        return max(len(self.entries) - 1, 0)

    def with_errors(self, gamma: PadicApprox) -> IterationTrace:
        """Copy with ``v_e = v(x_n - gamma)`` filled in for every entry."""
        entries = []
        for e in self.entries:
            g = gamma.with_context(e.x.ctx)
            entries.append(replace(e, v_e=(e.x - g).valuation()))
        return IterationTrace(self.method, self.t_v, entries)


@dataclass
class RootRecord:
    """A root of ``poly`` found from ``seed``, with its Hensel certificate data.

    ``gamma`` carries exactly the digits that are certified.  When the root
    came out of a Thurston chain, ``prefix`` holds the digits a_0..a_{n-1}
    and :attr:`root` reassembles the root of the original polynomial.
    """

    gamma: PadicApprox
    prec_certified: int
    v_fprime_at_root: int
    seed: PadicApprox
    trace: IterationTrace
    poly: Poly
    prefix: tuple[int, ...] = ()

    @property
    def method(self) -> Method:
        return self.trace.method

    @property
    def root(self) -> PadicApprox:
        if not self.prefix:
            return self.gamma
        p, n = self.gamma.p, len(self.prefix)
        ctx = PadicContext(p, max(self.gamma.ctx.work_prec, self.gamma.prec + n))
        head = sum(d * p ** i for i, d in enumerate(self.prefix))
        return ctx(head) + self.gamma.with_context(ctx) * p ** n

    def check_certificate(self) -> None:
        """Raise unless v(gamma - seed) > v(f'(seed)) and v(f'(gamma)) = v(f'(seed))."""
        fp = self.poly.derivative()
        v_seed = fp(self.seed).valuation()
        if not v_seed.is_finite:
            raise InvariantViolated("f'(seed) indistinguishable from zero", quantity="v_fprime")
        x = self.gamma.lift()
        if not (x - self.seed).valuation() > v_seed.v:
            raise InvariantViolated("root outside the Hensel ball of the seed", quantity="radius")
        if fp(x).valuation() != v_seed:
            raise InvariantViolated("v(f'(gamma)) differs from v(f'(seed))", quantity="v_fprime")


@dataclass(frozen=True)
class RhoConstant:
    """Asymptotic error constant of SJM: e_{n+1} = rho * e_n**4 + O(e_n**5).

    Expanding the iteration in e_n gives ``rho = c2**3 - c2*c3 + c4``.  The
    alternative form ``(9 c2 c3 - 6 c2**3 - 5 c4) / 2`` is kept as
    :attr:`rho_alternative` for comparison; measured ratios do not match it.
    """

    c2: object
    c3: object
    c4: object

    @property
    def rho(self):
        return self.c2 ** 3 - self.c2 * self.c3 + self.c4

    @property
    def rho_alternative(self):
        return (9 * self.c3 * self.c2 - 6 * self.c2 ** 3 - 5 * self.c4) / 2

    @classmethod
    def from_derivatives(cls, d1, d2, d3, d4) -> RhoConstant:
        """From the first four derivatives at the root (c_k = f^(k) / (k! f'))."""
        return cls(d2 / (2 * d1), d3 / (6 * d1), d4 / (24 * d1))

    @staticmethod
    def closed_form(d1, d2, d3, d4):
        """:attr:`rho` written directly in the derivatives."""
        return (3 * d2 ** 3 - 2 * d1 * d2 * d3 + d1 ** 2 * d4) / (24 * d1 ** 3)

    @staticmethod
    def alternative_closed_form(d1, d2, d3, d4):
        return (18 * d3 * d2 * d1 - 18 * d2 ** 3 - 5 * d4 * d1 ** 2) / (48 * d1 ** 3)


@dataclass
class InvariantReport:
    method: Method
    cond1: bool = True
    cond2: bool = True
    cond3: bool = True
    # False for Newton/Olver: the geometric bound there is a heuristic analogue
    proven: bool = True
    violations: list[tuple[int, str, str]] = field(default_factory=list)
    undecidable: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.cond1 and self.cond2 and self.cond3


# ---------------------------------------------------------------------------
# Steps
# ---------------------------------------------------------------------------


@lru_cache(maxsize=128)
def _derivatives(f: Poly) -> tuple[Poly, Poly, Poly, Poly]:
    f1 = f.derivative()
    f2 = f1.derivative()
    return f, f1, f2, f2.derivative()


def _values(f: Poly, x: PadicApprox, k: int) -> list[PadicApprox]:
    return [g(x) for g in _derivatives(f)[: k + 1]]


def _unit_valuation(f1x: PadicApprox) -> int:
    v = f1x.valuation()
    if not v.is_finite:
        raise PrecisionExhausted("f'(x) is indistinguishable from zero")
    return v.v


def _need_large_prime(ctx: PadicContext, what: str) -> None:
    if ctx.p <= 3:
        raise PrimeTooSmall(f"{what} needs p > 3, got p = {ctx.p}")


def _as_point(f: Poly, x) -> PadicApprox:
    return x if isinstance(x, PadicApprox) else f.ctx(x)


def hensel_condition(f: Poly, x1) -> int | None:
    """``t_v = v(f(x1)) - 2 v(f'(x1))`` if that is positive, else ``None``.

    An exactly vanishing f(x1) contributes the lower bound of its valuation.
    """
    x1 = _as_point(f, x1)
    fx, f1x = _values(f, x1, 1)
    v1 = _unit_valuation(f1x)
    vf = fx.valuation()
    if vf > 2 * v1:
        return vf.v - 2 * v1
    return None


def newton_step(f: Poly, x) -> PadicApprox:
    x = _as_point(f, x)
    fx, f1x = _values(f, x, 1)
    _unit_valuation(f1x)
    return x - div(fx, f1x)


def olver_step(f: Poly, x) -> PadicApprox:
    x = _as_point(f, x)
    _need_large_prime(f.ctx, "Olver's iteration")
    fx, f1x, f2x = _values(f, x, 2)
    _unit_valuation(f1x)
    half = f.ctx(Fraction(1, 2))
    return x - div(fx, f1x) - half * div(fx * fx * f2x, f1x ** 3)


def sjm_step(f: Poly, x) -> PadicApprox:
    """One simplified Jarratt step.

    The denominator must have valuation exactly ``3 v(f'(x))``; anything else
    means the seed condition fails at x or the digits ran out.
    """
    x = _as_point(f, x)
    _need_large_prime(f.ctx, "SJM")
    fx, f1x, f2x, f3x = _values(f, x, 3)
    v1 = _unit_valuation(f1x)
    num = 3 * fx * f1x * f1x
    den = -6 * f1x ** 3 + 6 * fx * f1x * f2x - 2 * fx * fx * f3x
    vd = den.valuation()
    if vd != Finite(3 * v1):
        raise DenominatorValuationUnexpected(f"v(denominator) = {vd!r}, expected Finite({3 * v1})")
    half = f.ctx(Fraction(1, 2))
    return x - half * div(fx, f1x) + div(num, den)


STEPS: dict[Method, Callable[[Poly, PadicApprox], PadicApprox]] = {
    Method.NEWTON: newton_step,
    Method.OLVER: olver_step,
    Method.SJM: sjm_step,
}


def jarratt_correction(f: Poly, A, numerator: int = 1) -> PadicApprox:
    """B = -f/(2f') + numerator * f/(f' - 3M), with M the Taylor approximation
    of f'(A - 2f/(3f')) through the f''' term.

    With ``numerator=1`` A + B is exactly the SJM step.  ``numerator=3`` is
    the variant whose bound is sometimes stated; it is not an order-4
    iteration but satisfies the same valuation bound.
    """
    A = _as_point(f, A)
    _need_large_prime(f.ctx, "the Jarratt correction")
    fa, f1a, f2a, f3a = _values(f, A, 3)
    u = div(fa, f1a)
    c = f.ctx
    M = f1a - c(Fraction(2, 3)) * u * f2a + c(Fraction(2, 9)) * u * u * f3a
    return -c(Fraction(1, 2)) * u + div(numerator * fa, f1a - 3 * M)


def lemma_bound_check(f: Poly, A) -> bool:
    """Whether ``v(B) >= v(f(A)) - v(f'(A))`` for the correction B above,
    with numerator 1 and with numerator 3.

    Requires ``v(f(A)) > 2 v(f'(A))``; always true when the arithmetic is right.
    """
    A = _as_point(f, A)
    fa, f1a = _values(f, A, 1)
    v1 = _unit_valuation(f1a)
    vf = fa.valuation()
    if not vf > 2 * v1:
        raise ValueError(f"precondition v(f(A)) > 2 v(f'(A)) fails: {vf!r} vs {2 * v1}")
    if fa.is_zero() and fa.prec == f.ctx.work_prec:
        # B is a multiple of f(A)
        return True
    return all(jarratt_correction(f, A, k).valuation() >= vf.v - v1 for k in (1, 3))


# ---------------------------------------------------------------------------
# Driver
# ---------------------------------------------------------------------------


def _seed_integer(x1) -> int:
    if isinstance(x1, PadicApprox):
        return x1.value
    return int(x1)


def _exact_fprime_valuation(f: Poly, seed: int) -> int | None:
    d = f.derivative().exact
    val = sum(c * seed ** k for k, c in enumerate(d))
    if val == 0:
        return None
    q = Fraction(val)
    return vp_int(q.numerator, f.ctx.p) - vp_int(q.denominator, f.ctx.p)


def solve(
    f: Poly,
    x1,
    method: Method | str = Method.SJM,
    target_prec: int = 20,
    *,
    max_steps: int = MAX_STEPS,
    retries: int = 4,
) -> RootRecord:
    """Lift the seed ``x1`` to a simple root of ``f`` known modulo ``p**target_prec``.

    The seed is used through its integer representative.  For polynomials
    with exact coefficients the working precision is chosen here
    (``target + 6 v(f'(x1)) + 8`` digits) and doubled on exhaustion; other
    polynomials are solved in their own context.

    Raises SeedRejected when ``|f(x1)|_p < |f'(x1)|_p**2`` fails.
    """
    method = Method(method)
    p = f.ctx.p
    if method is not Method.NEWTON and p <= 3:
        raise PrimeTooSmall(f"{method.value} needs p > 3, got p = {p}")
    if target_prec < 1:
        raise ValueError("target_prec must be positive")
    seed = _seed_integer(x1)
    scale = 1
    for attempt in range(retries + 1):
        try:
            return _solve_once(f, seed, method, target_prec, max_steps, scale)
        except PrecisionExhausted:
            if f.exact is None or attempt == retries:
                raise
            scale *= 2
            log.debug("precision exhausted; retrying with guard x%d", scale)
    raise AssertionError("unreachable")


def _solve_once(f, seed, method, target, max_steps, scale) -> RootRecord:
    p = f.ctx.p
    if f.exact is not None:
        v1 = _exact_fprime_valuation(f, seed)
        if v1 is None:
            raise SeedRejected(f"f'({seed}) = 0")
        N = target + scale * (6 * v1 + 8)
        F = f.with_context(PadicContext(p, N))
    else:
        F = f
        N = F.ctx.work_prec
        v1 = _unit_valuation(F.derivative()(seed))
        if target + 6 * v1 + 8 > N:
            raise PrecisionExhausted(f"work_prec {N} too small for target {target}")
    ctx = F.ctx
    x1 = PadicApprox(ctx, seed, N)
    t_v = hensel_condition(F, x1)
    if t_v is None:
        raise SeedRejected(f"|f(x1)|_p < |f'(x1)|_p^2 fails at x1 = {seed}")

    step = STEPS[method]
    fp = F.derivative()
    trace = IterationTrace(method, t_v)
    x, cut, stationary = x1, N, False
    for n in range(1, max_steps + 1):
        fx = F(x)
        vf = fx.valuation()
        trace.entries.append(TraceEntry(n, x, vf, fp(x).valuation(), cut))
        if stationary or vf >= target + v1:
            break
        nxt = step(F, x)
        if nxt.prec < target:
            raise PrecisionExhausted(f"iterate certified to {nxt.prec} < {target} digits")
        stationary = nxt.agrees_with(x, target)
        x, cut = nxt.lift(), nxt.prec
    else:
        raise NonConvergence(f"no convergence within {max_steps} steps")

    last = trace.entries[-1]
    k = min(last.v_f.v - v1, N)
    if k < target:
        raise PrecisionExhausted(f"root certified to {k} < {target} digits")
    gamma = x.truncate(k)
    rec = RootRecord(
        gamma=gamma,
        prec_certified=last.v_f.v,
        v_fprime_at_root=_unit_valuation(fp(x)),
        seed=x1,
        trace=trace.with_errors(gamma),
        poly=F,
    )
    rec.check_certificate()
    return rec


# ---------------------------------------------------------------------------
# Diagnostics
# ---------------------------------------------------------------------------


def monitor_invariants(trace: IterationTrace, f: Poly, strict: bool = True) -> InvariantReport:
    """Check the induction invariants along a trace.

    (1) x_n in Z_p holds by construction.  (2) v(f'(x_n)) = v(f'(x_1)).
    (3) v(f(x_n)) >= 2 v(f'(x_1)) + q**(n-1) t_v with q the method order,
    checked up to the precision each iterate was certified to.  For Newton
    and Olver (3) is a heuristic analogue and the report says so.
    """
    if not trace.entries:
        raise InsufficientTrace("empty trace")
    method = trace.method
    report = InvariantReport(method, proven=method is Method.SJM)
    fp = f.derivative()
    v1 = _unit_valuation(fp(trace.entries[0].x))
    base = method.order

    def fail(n, quantity, msg):
        report.violations.append((n, quantity, msg))
        if strict:
            raise InvariantViolated(f"step {n}: {msg}", n=n, quantity=quantity)

    for e in trace.entries:
        vfp = fp(e.x).valuation()
        if vfp.is_finite or vfp.v > v1:
            if vfp != Finite(v1):
                report.cond2 = False
                fail(e.n, "v_fprime", f"v(f'(x_n)) = {vfp!r} != {v1}")
        else:
            report.undecidable.append(e.n)

        required = 2 * v1 + base ** (e.n - 1) * trace.t_v
        bound = min(required, e.cut_prec + v1)
        vf = f(e.x).valuation()
        try:
            ok = vf >= bound
        except PrecisionExhausted:
            report.undecidable.append(e.n)
            continue
        if not ok:
            report.cond3 = False
            fail(e.n, "v_f", f"v(f(x_n)) = {vf!r} < {bound}")
    return report


def order_from_valuations(vals) -> Fraction:
    """Last ratio v(e_{n+1}) / v(e_n) over consecutive exact error valuations."""
    vals = [int(v) if isinstance(v, Valuation) else v for v in vals]
    if len(vals) < 3:
        raise InsufficientTrace(f"need 3 error valuations, got {len(vals)}")
    if vals[-2] == 0:
        raise InsufficientTrace("error valuation 0: iterate not yet in the root's residue class")
    return Fraction(vals[-1], vals[-2])


def order_estimate(trace: IterationTrace, gamma: PadicApprox | None = None) -> Fraction:
    """Empirical order from the error valuations v(x_n - gamma).

    Uses the longest run of exactly known valuations; ``gamma`` should be
    known to more digits than the last iterate for the final ratio to count.
    """
    if gamma is not None:
        trace = trace.with_errors(gamma)
    vals = []
    for e in trace.entries:
        if e.v_e is None:
            raise InsufficientTrace("trace has no error valuations; pass gamma")
        if not e.v_e.is_finite:
            break
        vals.append(e.v_e)
    return order_from_valuations(vals)

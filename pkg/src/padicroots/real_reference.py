"""Real-number reference for the order-4 simplified Jarratt iteration.

Derivatives are supplied analytically as callables.  Every routine is
written with plain arithmetic, so the same code runs on floats or on
``mpmath.mpf`` values; pass ``dps`` to :func:`measure_order` to run in
multiprecision.  Double precision only leaves room for one or two error
samples before the iterate hits rounding noise.

The asymptotic constant of the iteration is ``c2**3 - c2*c3 + c4`` with
``c_k = f^(k)(gamma) / (k! f'(gamma))``; see :class:`~padicroots.solvers.RhoConstant`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import mpmath
import numpy as np

from .errors import UnderflowTooFast
from .solvers import RhoConstant

__all__ = [
    "RealProblem",
    "RealIterationReport",
    "sjm_step_real",
    "jarratt_step_real",
    "newton_step_real",
    "measure_order",
    "BUILTINS",
    "builtin",
    "bracketed",
    "DEFAULT_DPS",
]

DEFAULT_DPS = 300

Fn = Callable[[object], object]


def sjm_step_real(f: Fn, df: Fn, d2f: Fn, d3f: Fn, x):
    fx, f1 = f(x), df(x)
    if f1 == 0:
        raise ZeroDivisionError("f'(x) = 0")
    den = -6 * f1 ** 3 + 6 * fx * f1 * d2f(x) - 2 * fx ** 2 * d3f(x)
    if den == 0:
        raise ZeroDivisionError("SJM denominator vanished")
    return x - fx / (2 * f1) + 3 * fx * f1 ** 2 / den


def jarratt_step_real(f: Fn, df: Fn, x):
    fx, f1 = f(x), df(x)
    if f1 == 0:
        raise ZeroDivisionError("f'(x) = 0")
    inner = f1 - 3 * df(x - 2 * fx / (3 * f1))
    if inner == 0:
        raise ZeroDivisionError("Jarratt denominator vanished")
    return x - fx / (2 * f1) + fx / inner


def newton_step_real(f: Fn, df: Fn, x):
    f1 = df(x)
    if f1 == 0:
        raise ZeroDivisionError("f'(x) = 0")
    return x - f(x) / f1


def _horner(cs):
    def ev(x):
        acc = 0 * x
        for c in reversed(cs):
            acc = acc * x + c
        return acc
    return ev


@dataclass
class RealProblem:
    """f together with f', ..., f'''' and, when known, its root and a seed."""

    name: str
    derivs: tuple[Fn, Fn, Fn, Fn, Fn]
    gamma: Callable[[], object] | None = None
    x1: object = None

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, name: str = "poly", gamma=None, x1=None) -> RealProblem:
        """Polynomial problem; coefficients constant term first."""
        cs = list(coeffs)
        fs = []
        for _ in range(5):
            fs.append(_horner(cs))
            cs = [k * cs[k] for k in range(1, len(cs))] or [0]
        return cls(name, tuple(fs), gamma, x1)

    def step(self, method: str) -> Callable:
        f, d1, d2, d3, _ = self.derivs
        if method == "sjm":
            return lambda x: sjm_step_real(f, d1, d2, d3, x)
        if method == "jarratt":
            return lambda x: jarratt_step_real(f, d1, x)
        if method == "newton":
            return lambda x: newton_step_real(f, d1, x)
        raise ValueError(f"unknown method {method!r}")

    def rho(self, gamma) -> RhoConstant:
        _, d1, d2, d3, d4 = self.derivs
        return RhoConstant.from_derivatives(d1(gamma), d2(gamma), d3(gamma), d4(gamma))

    def measure(self, method: str = "sjm", dps: int | None = DEFAULT_DPS, x1=None):
        return measure_order(self, self.x1 if x1 is None else x1, None, method=method, dps=dps)


_ORDERS = {"sjm": 4, "jarratt": 4, "newton": 2}


@dataclass
class RealIterationReport:
    method: str
    order: int
    iterates: list = field(default_factory=list)
    errors: list = field(default_factory=list)
    # R_n = |e_{n+1}| / |e_n|**order
    ratios: list = field(default_factory=list)
    slope: float | None = None
    rho_predicted: float | None = None
    # (9 c2 c3 - 6 c2^3 - 5 c4)/2, kept for comparison with rho_predicted
    rho_alternative: float | None = None
    exact: bool = False

    @property
    def final_ratio(self) -> float | None:
        return float(self.ratios[-1]) if self.ratios else None

    def relative_gap(self, reference: float | None = None) -> float:
        ref = self.rho_predicted if reference is None else reference
        return abs(self.final_ratio - ref) / abs(ref)


def measure_order(
    problem: RealProblem,
    x1,
    gamma=None,
    *,
    method: str = "sjm",
    dps: int | None = None,
    max_iter: int = 12,
    min_samples: int = 2,
) -> RealIterationReport:
    """Iterate from ``x1`` and estimate the order from the error sequence.

    Errors below the rounding noise floor are discarded.  The slope is the
    least-squares fit of log|e_{n+1}| against log|e_n|.  Reaching the root
    exactly is reported through ``exact``; otherwise fewer than
    ``min_samples`` ratios raises :class:`UnderflowTooFast`.
    """
    if method not in _ORDERS:
        raise ValueError(f"unknown method {method!r}")
    q = _ORDERS[method]
    if dps is None:
        return _measure(problem, x1, gamma, method, q, max_iter, min_samples, float, 64 * 2.0 ** -52)
    with mpmath.workdps(dps):
        return _measure(problem, x1, gamma, method, q, max_iter, min_samples,
                        mpmath.mpf, mpmath.mpf(10) ** (5 - dps))


def _measure(problem, x1, gamma, method, q, max_iter, min_samples, num, floor):
    if gamma is None:
        if problem.gamma is None:
            raise ValueError("the root is needed to measure errors")
        gamma = problem.gamma()
    gamma = num(gamma)
    x = float(x1) if num is float else mpmath.mpf(str(x1))
    floor = floor * max(1, abs(gamma))
    step = problem.step(method)

    rep = RealIterationReport(method, q)
    if method == "sjm":
        rc = problem.rho(gamma)
        rep.rho_predicted = float(abs(rc.rho))
        rep.rho_alternative = float(abs(rc.rho_alternative))
    elif method == "newton":
        rep.rho_predicted = float(abs(problem.rho(gamma).c2))

    for _ in range(max_iter):
        e = x - gamma
        rep.iterates.append(x)
        if e == 0:
            # a rounding-level zero after a tiny error is not exact convergence
            rep.exact = not rep.errors or rep.errors[-1] ** q > floor
            if not rep.exact:
                rep.iterates.pop()
            break
        if abs(e) <= floor:
            rep.iterates.pop()
            break
        rep.errors.append(abs(e))
        x = step(x)

    errs = rep.errors
    rep.ratios = [float(errs[i + 1] / errs[i] ** q) for i in range(len(errs) - 1)]
    if rep.exact and len(rep.ratios) < min_samples:
        return rep
    if len(rep.ratios) < min_samples:
        raise UnderflowTooFast(
            f"only {len(rep.ratios)} ratio sample(s) above the noise floor; enlarge |e_1| or raise dps"
        )
    logs = np.array([_log(e) for e in errs])
    rep.slope = float(np.polyfit(logs[:-1], logs[1:], 1)[0])
    return rep


def _log(v) -> float:
    return float(mpmath.log(v)) if isinstance(v, mpmath.mpf) else math.log(v)


def _bisect_seed(f: Fn, lo: float, hi: float, width: float = 0.05) -> float:
    flo = f(lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = f(mid)
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo + hi) / 2


def bracketed(coeffs: Sequence, lo: float, hi: float, name: str = "poly") -> RealProblem:
    """Problem for a polynomial with a sign change on [lo, hi].

    The root is polished by mpmath at the working precision; the seed comes
    from bisecting the bracket down to width 0.05.
    """
    prob = RealProblem.from_coeffs(coeffs, name)
    f = prob.derivs[0]
    if (f(lo) < 0) == (f(hi) < 0):
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    x1 = _bisect_seed(f, float(lo), float(hi))

    def gamma():
        return mpmath.findroot(f, (mpmath.mpf(lo), mpmath.mpf(hi)), solver="anderson")

    prob.gamma, prob.x1 = gamma, x1
    return prob


BUILTINS: dict[str, Callable[[], RealProblem]] = {
    "sqrt2": lambda: RealProblem.from_coeffs([-2, 0, 1], "sqrt2", lambda: mpmath.sqrt(2), 1.42),
    "linear": lambda: RealProblem.from_coeffs([-0.75, 1], "linear", lambda: mpmath.mpf(0.75), 2.0),
    "cubic": lambda: bracketed([2, -2, 0, 1], -2.0, -1.0, name="cubic"),
    "cubic_unit": lambda: RealProblem.from_coeffs([0, -1, 0, 1], "cubic_unit", lambda: mpmath.mpf(1), 0.9),
}


def builtin(name: str) -> RealProblem:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise ValueError(f"unknown builtin {name!r}; choose from {sorted(BUILTINS)}") from None

"""Seed finding by Thurston's digit-by-digit polynomial chain.

Starting from F_0 = f and a residue a_0 with f(a_0) = 0 mod p, each link is

    F_{i+1}(x) = F_i(a_i + p x) / p**m,    m = content exponent,

so a root gamma = a_0 + a_1 p + ... of f corresponds to roots
gamma_i = a_i + a_{i+1} p + ... of F_i.  The chain stops at the first
residue where F_n'(a_n) is a unit: that residue class then holds exactly
one root, and a_n is an admissible seed for the fast iterations.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from typing import Callable

from .errors import NotSquarefree, PrecisionExhausted
from .padic import PadicApprox, PadicContext
from .poly import Poly, gcd, roots_mod_p, squarefree_part
from .solvers import Method, RootRecord, solve

log = logging.getLogger(__name__)

__all__ = [
    "SeedKind",
    "ThurstonNode",
    "SeedResult",
    "RootSearch",
    "thurston_transform",
    "thurston_search",
    "recover_seed",
    "find_all_roots",
    "DEFAULT_MAX_DEPTH",
]

DEFAULT_MAX_DEPTH = 32


class SeedKind(str, enum.Enum):
    ADMISSIBLE = "admissible"
    DEAD_END = "dead_end"
    DEPTH_EXCEEDED = "depth_exceeded"


@dataclass(frozen=True)
class ThurstonNode:
    depth: int
    poly: Poly
    digit: int | None = None
    parent: ThurstonNode | None = None

    @property
    def prefix(self) -> tuple[int, ...]:
        """Digits a_0 .. a_{depth-1} chosen above this node."""
        out, node = [], self.parent
        while node is not None:
            out.append(node.digit)
            node = node.parent
        return tuple(reversed(out))


@dataclass(frozen=True)
class SeedResult:
    kind: SeedKind
    # a_0..a_{n-1} for admissible leaves; the abandoned prefix otherwise
    digits: tuple[int, ...]
    poly: Poly | None = None
    residue: int | None = None

    @property
    def depth(self) -> int:
        return len(self.digits)

    @property
    def admissible(self) -> bool:
        return self.kind is SeedKind.ADMISSIBLE


def _check_residue_root(F: Poly, a: int) -> None:
    r = F(a)
    if r.prec < 1:
        raise PrecisionExhausted("F(a) is not known modulo p")
    if r.value % F.ctx.p:
        raise ValueError(f"{a} is not a root of F modulo {F.ctx.p}")


def thurston_transform(F: Poly, a: int) -> Poly:
    """``F(a + p x) / p**m`` with the largest m that keeps it integral."""
    _check_residue_root(F, a)
    G = F.taylor_shift(a, 1)
    return G.scale_down(G.content_exp())


def _unit_derivative(F: Poly, a: int) -> bool:
    d = F.derivative()(a)
    if d.prec < 1:
        raise PrecisionExhausted("F'(a) is not known modulo p")
    return d.value % F.ctx.p != 0


def thurston_search(
    f: Poly, a0: int, max_depth: int = DEFAULT_MAX_DEPTH, *, check_squarefree: bool = True
) -> list[SeedResult]:
    """Explore every branch of the chain below ``a0``, depth first.

    Leaves are admissible seeds (unit derivative), dead ends (no residue
    root for the next polynomial) or branches cut at ``max_depth``.
    """
    _check_residue_root(f, a0)
    if check_squarefree and gcd(f, f.derivative()).degree > 0:
        raise NotSquarefree("Thurston's chain needs a squarefree polynomial")
    results = []
    stack = [ThurstonNode(0, f, a0)]
    while stack:
        node = stack.pop()
        F, a = node.poly, node.digit
        digits = node.prefix
        if _unit_derivative(F, a):
            results.append(SeedResult(SeedKind.ADMISSIBLE, digits, F, a))
            continue
        if node.depth >= max_depth:
            results.append(SeedResult(SeedKind.DEPTH_EXCEEDED, digits + (a,)))
            continue
        G = thurston_transform(F, a)
        children = roots_mod_p(G) if G.degree > 0 else []
        if not children:
            results.append(SeedResult(SeedKind.DEAD_END, digits + (a,)))
            continue
        for r in reversed(children):
            stack.append(ThurstonNode(node.depth + 1, G, r, node))
    return results


def recover_seed(
    result: SeedResult, ctx: PadicContext | None = None
) -> tuple[Poly, PadicApprox, Callable[[PadicApprox], PadicApprox]]:
    """The sub-problem (F_n, a_n) and the map gamma_n -> sum a_i p^i + gamma_n p^n."""
    if not result.admissible:
        raise ValueError(f"{result.kind.value} results carry no seed")
    F = result.poly if ctx is None else result.poly.with_context(ctx)
    c = F.ctx
    p, n = c.p, result.depth
    head = sum(d * p ** i for i, d in enumerate(result.digits))

    def reassemble(gamma_n: PadicApprox) -> PadicApprox:
        if n == 0:
            return gamma_n
        out = PadicContext(p, max(gamma_n.ctx.work_prec, gamma_n.prec + n))
        return out(head) + gamma_n.with_context(out) * p ** n

    return F, c(result.residue), reassemble


@dataclass
class RootSearch:
    """Roots found by :func:`find_all_roots` plus the branches that ended early."""

    roots: list[RootRecord] = field(default_factory=list)
    dead_ends: list[tuple[int, ...]] = field(default_factory=list)
    depth_exceeded: list[tuple[int, ...]] = field(default_factory=list)
    target_prec: int = 0

    def __iter__(self):
        return iter(self.roots)

    def __len__(self):
        return len(self.roots)

    def __getitem__(self, i):
        return self.roots[i]

    def residues(self) -> list[int]:
        m = self.roots[0].gamma.ctx.p ** self.target_prec if self.roots else 1
        return [r.root.value % m for r in self.roots]


def find_all_roots(
    f: Poly,
    target_prec: int = 20,
    *,
    max_depth: int = DEFAULT_MAX_DEPTH,
    method: Method | str = Method.SJM,
    work_prec: int | None = None,
    retries: int = 4,
) -> RootSearch:
    """Every root of ``f`` in Z_p, each to ``target_prec`` digits.

    Multiple roots are reduced away first (f / gcd(f, f')); each residue root
    of the result is pushed down its Thurston chain and every admissible
    leaf is lifted with ``method``.
    """
    method = Method(method)
    N = work_prec or 2 * target_prec + 32
    for attempt in range(retries + 1):
        F = f.with_context(PadicContext(f.ctx.p, N))
        try:
            return _find_all(F, target_prec, max_depth, method)
        except PrecisionExhausted:
            if f.exact is None or attempt == retries:
                raise
            N *= 2
            log.debug("precision exhausted; retrying at %d digits", N)
    raise AssertionError("unreachable")


def _find_all(F: Poly, target: int, max_depth: int, method: Method) -> RootSearch:
    p = F.ctx.p
    fs = squarefree_part(F)
    out = RootSearch(target_prec=target)
    found = {}
    for a0 in roots_mod_p(fs):
        for res in thurston_search(fs, a0, max_depth, check_squarefree=False):
            if res.kind is SeedKind.DEAD_END:
                out.dead_ends.append(res.digits)
                continue
            if res.kind is SeedKind.DEPTH_EXCEEDED:
                log.warning("Thurston chain below %s exceeded depth %d", res.digits, max_depth)
                out.depth_exceeded.append(res.digits)
                continue
            sub_target = max(target - res.depth, 1)
            rec = solve(res.poly, res.residue, method, sub_target)
            rec.prefix = res.digits
            key = rec.root.value % p ** target
            found.setdefault(key, rec)
    out.roots = [found[k] for k in sorted(found)]
    return out

"""Root finding in the p-adic integers.

Truncated p-adic arithmetic with precision tracking (:mod:`.padic`),
polynomials over Z_p (:mod:`.poly`), Newton, Olver and the fourth-order
simplified Jarratt (SJM) iteration with certified precision
(:mod:`.solvers`), Thurston's chain for finding admissible seeds
(:mod:`.seedfinder`) and a real-number reference for the convergence order
(:mod:`.real_reference`).
"""

from .errors import *  # noqa: F401,F403
from .padic import AtLeast, Finite, PadicApprox, PadicContext, Valuation, from_integer, from_rational, vp_int
from .poly import Poly, gcd, parse_poly, roots_mod_p, squarefree_part
from .seedfinder import RootSearch, SeedKind, SeedResult, find_all_roots, recover_seed, thurston_search, thurston_transform
from .solvers import (
    IterationTrace,
    Method,
    RhoConstant,
    RootRecord,
    hensel_condition,
    jarratt_correction,
    lemma_bound_check,
    monitor_invariants,
    newton_step,
    olver_step,
    order_estimate,
    sjm_step,
    solve,
)

__version__ = "0.1.0"

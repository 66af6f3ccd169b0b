"""The same iteration over the reals, in 300-digit arithmetic.

The ratios |e_{n+1}| / |e_n|**4 settle on the asymptotic constant
c2**3 - c2*c3 + c4 with c_k = f^(k)(gamma) / (k! f'(gamma)).  For x^2 - 2
that is 1/(2 sqrt 2)**3 = 0.0441942.  In double precision only one ratio is
visible before rounding noise takes over.
"""

import numpy as np

from padicroots.errors import UnderflowTooFast
from padicroots.real_reference import builtin, measure_order

prob = builtin("sqrt2")
for method in ("newton", "sjm", "jarratt"):
    rep = prob.measure(method)
    print(f"{method:>8}: slope {rep.slope:.4f}, ratios {[f'{r:.6f}' for r in rep.ratios]}")
    if rep.rho_predicted is not None:
        print(f"          predicted constant {rep.rho_predicted:.6f}")

rep = prob.measure("sjm")
print("alternative constant (does not match):", f"{rep.rho_alternative:.6f}")

try:
    measure_order(prob, 1.42, method="sjm", dps=None)
except UnderflowTooFast as exc:
    print("double precision:", exc)

print("linear f:", "exact convergence" if builtin("linear").measure().exact else "?")

# least-squares line through (log|e_n|, log|e_n+1|): slope ~ 4, intercept ~ log rho
logs = np.log10([float(e) for e in rep.errors])
slope, intercept = np.polyfit(logs[:-1], logs[1:], 1)
print(f"fit: slope {slope:.4f}, 10**intercept {10 ** intercept:.4f}")

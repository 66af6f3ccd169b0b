"""Seeds that only satisfy |f(x1)|_p < |f'(x1)|_p^2.

For f = x^2 - 7x + 6 = (x - 1)(x - 6) and p = 5 both roots reduce to 1
mod 5, so f'(x) is never a unit near them.  Classical Hensel lifting from a
residue fails, but 31 satisfies the weaker condition and SJM converges to
the root 6; 11 does not satisfy it and is rejected.
"""

from padicroots import Poly, PadicContext, hensel_condition, monitor_invariants, solve
from padicroots.errors import SeedRejected

f = Poly.from_ints(PadicContext(5, 10), [6, -7, 1])

for seed in (31, 11):
    print(f"seed {seed}: t_v = {hensel_condition(f, seed)}")

rec = solve(f, 31, "sjm", 10)
print("root from 31:", rec.gamma.value, "mod 5^10")
for e in rec.trace.entries:
    print(f"  n={e.n}  v(f(x_n))={e.v_f}  v(f'(x_n))={e.v_fprime}  v(x_n - 6)={e.v_e}")
print("invariants:", monitor_invariants(rec.trace, rec.poly))

try:
    solve(f, 11, "sjm", 10)
except SeedRejected as exc:
    print("seed 11:", exc)

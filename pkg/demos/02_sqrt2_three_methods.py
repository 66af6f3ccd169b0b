"""Square root of 2 in Z_7 with Newton, Olver and SJM.

Starting from 3 (3**2 = 9 = 2 mod 7), each method lifts the seed; the
error valuations v(x_n - sqrt 2) grow by factors 2, 3 and 4.
"""

from padicroots import Method, Poly, PadicContext, order_estimate, solve

f = Poly.from_ints(PadicContext(7, 10), [-2, 0, 1])
reference = solve(f, 3, "sjm", 400).gamma

for method in Method:
    rec = solve(f, 3, method, 120)
    errors = [e.v_e for e in rec.trace.with_errors(reference).entries]
    print(f"{method.value:>6}: {rec.trace.steps} steps, v(e_n) = {errors}")
    print(f"        empirical order {order_estimate(rec.trace, reference)}")

rec = solve(f, 3, "sjm", 4)
print("one SJM step from 3 gives", rec.gamma.value, "= sqrt 2 mod 7^4, digits", rec.gamma.digits(4))

"""Truncated p-adic numbers and how precision travels through arithmetic.

Every value is a residue modulo p**prec.  Sums keep the smaller precision,
products gain digits from the other factor's valuation, and division by an
element of valuation k loses k digits.
"""

from fractions import Fraction

from padicroots import PadicApprox, PadicContext
from padicroots.errors import PrecisionExhausted

ctx = PadicContext(7, 12)

a = ctx(2166)
print("2166 in Z_7, digits low first:", a.digits(6))
print("v_7(98) =", ctx(98).valuation(), " |98|_7 =", ctx(98).norm())

half = ctx(Fraction(1, 2))
print("1/2 mod 7^12 =", half.value, " check 2*(1/2) =", (2 * half).value)

# known to 5 digits, times something divisible by 49: the product knows 7 digits
x = PadicApprox(ctx, 3, 5)
y = PadicApprox(ctx, 49, 12)
print("prec(x*y) =", (x * y).prec, "from prec(x) = 5 and v(y) = 2")

# dividing by 7^2 costs two digits
q = PadicApprox(ctx, 3 * 49, 12) / ctx(49)
print("(3*49)/49 =", q)

# an element that is zero to every known digit has no usable valuation
z = PadicApprox(ctx, 0, 4)
print("valuation of 0 + O(7^4):", z.valuation())
try:
    ctx(1) / z
except PrecisionExhausted as exc:
    print("division refused:", exc)

"""Exact arithmetic in Q[x]/(x^3 - x - 1).

Everything here is exact: elements are rational coordinate vectors, products
are reduced modulo the defining polynomial, and norms are resultants.
"""

from otlck import NumberField, validate_field
from otlck.numfield import is_unit, minimal_polynomial, norm

K = validate_field([-1, -1, 0, 1])
x = K.gen
print(K)

# x^3 reduces to x + 1
print("x * x^2 =", x * x ** 2)

# the inverse comes from an extended gcd with the defining polynomial
print("1/x =", x.inverse(), "  check:", x * x.inverse())

print("N(x) =", norm(x), " N(x + 2) =", norm(x + 2))
print("minpoly(x^2 + 1) =", minimal_polynomial(x ** 2 + 1))
print("x is a unit:", is_unit(x), " 2 is a unit:", is_unit(K(2)))

# the norm of a product is the product of norms, exactly
a, b = x ** 2 - 3, 2 * x + 5
print("N(ab) == N(a) N(b):", norm(a * b) == norm(a) * norm(b))

# rejected inputs carry a stable reason label
for bad in ([-4, 0, 1], [1, 0, 0, 0, 1]):
    try:
        validate_field(bad)
    except ValueError as exc:
        print("rejected", bad, "->", exc.reason)

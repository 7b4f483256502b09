"""
Characteristic polynomials
==========================

Berkowitz gives P_N(x) = det(x I - C_N) exactly over the integers.
"""

from modcollatz import (
    IntPolynomial,
    adjacency_matrix,
    build_collatz,
    charpoly,
    pm1_class,
    poly_divides,
)


def P(N):
    return charpoly(adjacency_matrix(build_collatz(N)))


for N in range(1, 8):
    print(f"P_{N} = {P(N)}")

# 2 is always a simple root: every row sums to 2
x = IntPolynomial.x()
print("P_45(2) =", P(45)(2), " (x-2)^2 divides:", poly_divides((x - 2) ** 2, P(45))[0])

# polynomials of odd divisors divide
ok, quotient = poly_divides(P(15), P(45))
print("P_15 | P_45:", ok, " quotient degree", quotient.degree)

# even N just adds powers of x
print("P_12 = x^9 * P_3:", P(12) == IntPolynomial.monomial(9) * P(3))

# values at +1 and -1 can vanish
print("P_65(-1) =", P(65)(-1), "  P_91(1) =", P(91)(1))
for p in (5, 7, 11, 13, 17, 19):
    print(p, pm1_class(p))

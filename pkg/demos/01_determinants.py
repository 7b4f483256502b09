"""
Determinants of modular Collatz graphs
======================================

Build the adjacency matrix of the Collatz map on Z_N, take its exact
determinant, and compare with the closed form from cycle counts.
"""

from modcollatz import (
    DetValue,
    adjacency_matrix,
    build_collatz,
    det_collatz_formula,
    det_exact,
)

# the matrix for N = 13: every row has two ones (or a single 2)
A = adjacency_matrix(build_collatz(13))
print(A)
print("row sums:", A.sum(axis=1))

# Bareiss elimination gives the exact integer
print("det C_13 =", det_exact(A))

# the formula only needs orders of 3 modulo divisors of N
print("formula  =", det_collatz_formula(13))

# side by side for small N; zeros appear whenever some prime has an even order of 3
for N in range(2, 30):
    exact = DetValue.from_int(det_exact(adjacency_matrix(build_collatz(N))))
    print(f"{N:3d}  {str(exact):>8}  {str(det_collatz_formula(N)):>8}")

# large moduli are fine as long as the order of 3 is cheap to find
print("det C_757 =", det_collatz_formula(757))
N = 3754733257489862401973357979128773  # divides 3^71 - 1
print("34-digit N:", det_collatz_formula(N, hint=((71, 1),)))

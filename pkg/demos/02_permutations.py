"""
Two permutations behind every Collatz matrix
============================================

For odd N coprime to 3 the matrix splits as P(pi2) + P(pi3).  The
determinant then depends only on the cycles of pi0 = pi3 o pi2^-1.
"""

from modcollatz import (
    census_pi0,
    census_pi2,
    collatz_permutations,
    cycles,
    det_from_pair,
    format_cycles,
    jacobi,
    sign,
    zolotarev_sign,
)

perms = collatz_permutations(13)
print("pi2:", format_cycles(cycles(perms.pi2)))
print("pi3:", format_cycles(cycles(perms.pi3)))
print("pi0:", format_cycles(cycles(perms.pi0)))

# det(P(a) + P(b)) = 0 if a^-1 b has an even cycle, else sign(a) * 2^(#cycles)
print("det from the pair:", det_from_pair(perms.pi2, perms.pi3))

# the sign of halving is a Jacobi symbol
print("sign(pi2) =", sign(perms.pi2), " (2/13) =", jacobi(2, 13), " zolotarev:", zolotarev_sign(7, 13))

# cycle censuses group the cycles by the divisor d of N that they live on
for row in census_pi2(175).rows:
    print(f"pi2 N=175  d={row.divisor:4d}  length={row.cycle_length:3d}  count={row.count}")
print("pi0 on Z_13 has", census_pi0(13).total_cycles, "cycles")

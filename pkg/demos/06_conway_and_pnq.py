"""
Conway's amusical map and pn+q variants
=======================================
"""

from modcollatz import (
    adjacency_matrix,
    build_conway,
    build_pnq,
    charpoly,
    conway_X_charpoly,
    conway_X_matrix,
    det_conway_formula,
    det_exact,
    det_pnq_formula,
)

# three rules give row sums 3 and determinants +-3 * 2^K
for N in (7, 23, 31, 35, 217):
    print(N, det_conway_formula(N), det_exact(adjacency_matrix(build_conway(N))))

# X+ and X- are permutations, so their charpoly is a product of x^k - 1 factors
print(conway_X_charpoly(35))
print(conway_X_charpoly(35) == charpoly(conway_X_matrix(35)))

# T(n) = n/2 or (pn + q)/2: the determinant does not depend on q
for q in (1, -1, 3, 5):
    print("p=5 q=%d N=31:" % q, det_pnq_formula(5, q, 31), det_exact(adjacency_matrix(build_pnq(5, q, 31))))
print("p=7 q=1 N=9:", det_pnq_formula(7, 1, 9))

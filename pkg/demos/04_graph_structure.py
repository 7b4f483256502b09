"""
Loops, multiple edges and connectivity
======================================
"""

from modcollatz import (
    build_collatz,
    build_conway,
    degree_profile,
    is_strongly_connected,
    observed_edges,
    predicted_edges,
    strongly_connected_components,
)

# special edges read off the matrix agree with the closed forms
for N in (5, 7, 15, 25):
    obs = observed_edges(build_collatz(N))
    print(N, obs, "matches" if obs == predicted_edges(N) else "differs")

# coprime to 3: one strongly connected component
print("N=35 strongly connected:", is_strongly_connected(build_collatz(35)))

# a multiple of 3 is different: the odd rule always lands in 2 mod 3,
# so the multiples of 3 only get edges from each other
g = build_collatz(9)
comps = strongly_connected_components(g)
print("N=9 components:", [sorted(c) for c in comps])
print("N=9 indegrees:", dict(degree_profile(g).in_multiset))

# the Conway graph has row sums 3
print("Conway N=7 strongly connected:", is_strongly_connected(build_conway(7)))

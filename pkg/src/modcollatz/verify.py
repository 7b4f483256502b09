"""Cross-check suites: closed forms against the exact linear-algebra oracle.

Each suite returns a SuiteResult with the number of cases checked and the
failing cases.  ``max_n`` overrides a suite's default upper bound.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Iterable, Optional

from .detvalue import DetValue
from .exactla import IntPolynomial, charpoly, det_exact, poly_divides, rank_exact
from .formulas import (
    K_collatz,
    conway_sign,
    conway_X_charpoly,
    conway_X_matrix,
    det_collatz_formula,
    det_collatz_via_IplusX,
    det_conway_formula,
    det_pnq_formula,
)
from .graphs import (
    adjacency_matrix,
    build_collatz,
    build_conway,
    build_pnq,
    degree_profile,
    is_strongly_connected,
    observed_edges,
    predicted_edges,
)
from .numtheory import jacobi, split_prime_power
from .permgraph import (
    Permutation,
    census_pi0,
    census_pi2,
    collatz_permutations,
    conway_permutations,
    cycle_type,
    det_from_pair,
    multiplication_permutation,
    sign,
)


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, case, good: bool) -> None:
        self.checked += 1
        if not good:
            self.failures.append(case)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        tail = f" first failures: {self.failures[:8]}" if self.failures else ""
        return f"{status} {self.name}: {self.checked} checked, {len(self.failures)} mismatches{tail}"

    def as_dict(self) -> dict:
        return {
            "suite": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "mismatches": len(self.failures),
            "failures": [str(f) for f in self.failures[:50]],
        }


def _oracle(g) -> DetValue:
    return DetValue.from_int(det_exact(adjacency_matrix(g)))


def collatz_det(max_n: Optional[int] = None) -> SuiteResult:
    r = SuiteResult("collatz-det")
    for N in range(2, (max_n or 350) + 1):
        r.check(N, det_collatz_formula(N) == _oracle(build_collatz(N)))
    return r


def iplusx(max_n: Optional[int] = None) -> SuiteResult:
    r = SuiteResult("iplusx")
    for N in range(1, (max_n or 2001) + 1, 2):
        if N % 3:
            r.check(N, det_collatz_via_IplusX(N) == det_collatz_formula(N))
    return r


def conway_det(max_n: Optional[int] = None) -> SuiteResult:
    r = SuiteResult("conway-det")
    for N in range(5, (max_n or 350) + 1, 2):
        r.check(N, det_conway_formula(N) == _oracle(build_conway(N)))
    return r


def conway_sign_suite(max_n: Optional[int] = None) -> SuiteResult:
    r = SuiteResult("conway-sign")
    for N in range(5, (max_n or 499) + 1, 2):
        if N % 3:
            star = conway_permutations(N).star
            r.check(N, conway_sign(N) == sign(star))  # type: ignore[arg-type]
    return r


PNQ_P = (3, 5, 7, 9)
PNQ_Q = (1, -1, 3, -3, 5, -5)


def pnq_det(max_n: Optional[int] = None) -> SuiteResult:
    """Formula against oracle, and invariance of the determinant in q."""
    r = SuiteResult("pnq-det")
    for p in PNQ_P:
        for N in range(1, (max_n or 99) + 1, 2):
            seen = set()
            for q in PNQ_Q:
                if gcd(N, p * q) != 1:
                    continue
                got = det_pnq_formula(p, q, N)
                r.check((p, q, N), got == _oracle(build_pnq(p, q, N)))
                seen.add(got)
            if seen:
                r.check((p, "q-invariance", N), len(seen) == 1)
    return r


def _random_perm(rng: random.Random, n: int) -> Permutation:
    image = list(range(n))
    rng.shuffle(image)
    return Permutation(image)


def perm_pair(max_n: Optional[int] = None, samples: int = 500, seed: int = 20240611) -> SuiteResult:
    """Random pairs of sizes 2..9 plus every pair of size at most 4."""
    r = SuiteResult("perm-pair")
    rng = random.Random(seed)
    top = max_n or 9
    for _ in range(samples):
        n = rng.randint(2, top)
        a, b = _random_perm(rng, n), _random_perm(rng, n)
        r.check((a.image, b.image), det_from_pair(a, b).to_int() == det_exact(a.matrix() + b.matrix()))
    for n in range(1, 5):
        perms = [Permutation(p) for p in itertools.permutations(range(n))]
        for a in perms:
            for b in perms:
                r.check((a.image, b.image), det_from_pair(a, b).to_int() == det_exact(a.matrix() + b.matrix()))
    return r


def zolotarev(max_n: Optional[int] = None) -> SuiteResult:
    r = SuiteResult("zolotarev")
    for N in range(1, (max_n or 499) + 1, 2):
        for a in range(N):
            if gcd(a, N) == 1:
                r.check((a, N), sign(multiplication_permutation(a, N)) == jacobi(a, N))
    return r


def conway_charpoly(max_n: Optional[int] = None) -> SuiteResult:
    r = SuiteResult("conway-charpoly")
    for N in range(1, (max_n or 143) + 1, 2):
        if N % 3:
            r.check(N, conway_X_charpoly(N) == charpoly(conway_X_matrix(N)))
    return r


def charpoly_structure(max_n: Optional[int] = None) -> SuiteResult:
    """Root 2 is simple, coefficient -2, even reduction, odd divisor divisibility."""
    top = max_n or 120
    r = SuiteResult("charpoly-structure")
    P = {N: charpoly(adjacency_matrix(build_collatz(N))) for N in range(1, top + 1)}
    x2 = charpoly(adjacency_matrix(build_collatz(1)))  # x - 2
    for N, p in P.items():
        r.check((N, "root 2"), p(2) == 0)
        r.check((N, "simple"), not poly_divides(x2 * x2, p)[0])
        r.check((N, "x^(N-1)"), p[N - 1] == -2)
        r.check((N, "det"), (-1) ** N * p(0) == det_exact(adjacency_matrix(build_collatz(N))))
        if N % 2 == 0 and N <= 60:
            _, n0 = split_prime_power(N, 2)
            r.check((N, "even"), p == IntPolynomial.monomial(N - n0) * P[n0])
    for N in range(3, min(top, 99) + 1, 2):
        for d in range(1, N):
            if N % d == 0:
                r.check((d, N, "divides"), poly_divides(P[d], P[N])[0])
    return r


def edges(max_n: Optional[int] = None) -> SuiteResult:
    r = SuiteResult("edges")
    for N in range(2, (max_n or 300) + 1):
        r.check(N, observed_edges(build_collatz(N)) == predicted_edges(N))
    return r


def connectivity(max_n: Optional[int] = None) -> SuiteResult:
    """Collatz N <= 500, Conway odd N <= 499, pn+q samples up to 199."""
    r = SuiteResult("connectivity")
    top = max_n or 500
    for N in range(1, top + 1):
        r.check(("collatz", N), is_strongly_connected(build_collatz(N)))
    for N in range(1, top, 2):
        r.check(("conway", N), is_strongly_connected(build_conway(N)))
    for p in (3, 5, 7):
        for q in (1, -1, 3, -3):
            for N in range(3, min(top, 199) + 1, 2):
                if gcd(N, p * q) == 1:
                    r.check(("pnq", p, q, N), is_strongly_connected(build_pnq(p, q, N)))
    return r


def degrees(max_n: Optional[int] = None) -> SuiteResult:
    """Trace 2, entry sum 2N, rank N/2 for even N, indegrees 1 and 4 when 3 | N."""
    r = SuiteResult("degrees")
    top = max_n or 300
    for N in range(1, top + 1):
        g = build_collatz(N)
        r.check((N, "trace"), g.trace() == 2)
        r.check((N, "sum"), g.entry_sum == 2 * N)
        if N % 2 == 0 and N <= 200:
            r.check((N, "rank"), rank_exact(adjacency_matrix(g)) == N // 2)
        if N % 3 == 0:
            indeg = degree_profile(g).in_multiset
            r.check((N, "indegree"), set(indeg) == {1, 4} and indeg[4] == N // 3)
    return r


def census(max_n: Optional[int] = None) -> SuiteResult:
    """Cycle censuses against explicit cycle decompositions; K against pi0."""
    r = SuiteResult("census")
    for N in range(1, (max_n or 499) + 1, 2):
        perms = collatz_permutations(N, require_coprime3=False)
        r.check((N, "pi2"), census_pi2(N).histogram() == cycle_type(perms.pi2))
        if N % 3:
            c0 = census_pi0(N)
            r.check((N, "pi0"), c0.histogram() == cycle_type(perms.pi0))
            r.check((N, "K"), K_collatz(N)[0] == c0.total_cycles)
    return r


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "collatz-det": collatz_det,
    "iplusx": iplusx,
    "conway-det": conway_det,
    "conway-sign": conway_sign_suite,
    "pnq-det": pnq_det,
    "perm-pair": perm_pair,
    "zolotarev": zolotarev,
    "conway-charpoly": conway_charpoly,
    "charpoly-structure": charpoly_structure,
    "edges": edges,
    "connectivity": connectivity,
    "degrees": degrees,
    "census": census,
}


def run_suites(names: Iterable[str], max_n: Optional[int] = None) -> list[SuiteResult]:
    out = []
    for name in names:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
        out.append(SUITES[name](max_n))
    return out

"""Modular Collatz, pn+q and Conway amusical graphs on Z_N.

A graph is stored row-sparse: ``rows[i]`` lists ``(j, multiplicity)`` pairs
sorted by column.  The dense form is only built for exact linear algebra.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from .errors import EvenModulus
from .permgraph import conway_permutations

Row = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class ModularGraph:
    N: int
    kind: str  # "collatz", "pnq" or "conway"
    rows: tuple[Row, ...]
    params: tuple[int, ...] = ()

    def entries(self) -> Iterator[tuple[int, int, int]]:
        for i, row in enumerate(self.rows):
            for j, m in row:
                yield i, j, m

    def entry(self, i: int, j: int) -> int:
        return dict(self.rows[i]).get(j, 0)

    @property
    def entry_sum(self) -> int:
        return sum(m for _, _, m in self.entries())

    def row_sums(self) -> list[int]:
        return [sum(m for _, m in row) for row in self.rows]

    def trace(self) -> int:
        return sum(self.entry(i, i) for i in range(self.N))


def _from_targets(N: int, kind: str, targets: list[list[int]], params=()) -> ModularGraph:
    rows = tuple(tuple(sorted(Counter(t).items())) for t in targets)
    return ModularGraph(N, kind, rows, tuple(params))


def _pnq_targets(p: int, q: int, N: int) -> list[list[int]]:
    targets: list[list[int]] = [[] for _ in range(N)]
    for n in range(2 * N):
        t = n // 2 if n % 2 == 0 else (p * n + q) // 2
        targets[n % N].append(t % N)
    return targets


def build_collatz(N: int) -> ModularGraph:
    """Collatz graph from the representatives 0 <= n < 2N."""
    if N < 1:
        raise ValueError("N must be positive")
    return _from_targets(N, "collatz", _pnq_targets(3, 1, N))


def build_pnq(p: int, q: int, N: int) -> ModularGraph:
    """Graph of n -> n/2 (even n), (p*n + q)/2 (odd n) on Z_N."""
    if N < 1:
        raise ValueError("N must be positive")
    if p % 2 == 0 or q % 2 == 0:
        raise ValueError("p and q must be odd")
    return _from_targets(N, "pnq", _pnq_targets(p, q, N), (p, q))


def build_conway(N: int) -> ModularGraph:
    """Amusical graph: one edge per rule 3n/2, (3n+1)/4, (3n-1)/4 at each vertex.

    Coinciding rules give an entry 2.  Even moduli are not built.
    """
    if N < 1 or N % 2 == 0:
        raise EvenModulus(f"Conway graphs are only built for odd N, got {N}")
    maps = conway_permutations(N)
    targets = [[maps.star.image[i], maps.plus.image[i], maps.minus.image[i]] for i in range(N)]
    return _from_targets(N, "conway", targets)


def adjacency_matrix(g: ModularGraph) -> np.ndarray:
    m = np.zeros((g.N, g.N), dtype=object)
    m[:] = 0
    for i, j, mult in g.entries():
        m[i, j] = mult
    return m


# --- special edges ---------------------------------------------------------


@dataclass(frozen=True)
class EdgeReport:
    """Loops, parallel (strongly double), mutual (weakly double) and triple edges.

    Weakly double and triple edges are unordered pairs stored as ``(min, max)``.
    """

    loops: frozenset = field(default_factory=frozenset)
    strongly_double: frozenset = field(default_factory=frozenset)
    weakly_double: frozenset = field(default_factory=frozenset)
    triple: frozenset = field(default_factory=frozenset)

    def as_dict(self) -> dict:
        return {
            "loops": sorted(self.loops),
            "strongly_double": [list(e) for e in sorted(self.strongly_double)],
            "weakly_double": [list(e) for e in sorted(self.weakly_double)],
            "triple": [list(e) for e in sorted(self.triple)],
        }


def observed_edges(g: ModularGraph) -> EdgeReport:
    loops, strong, weak, triple = set(), set(), set(), set()
    for i, j, m in g.entries():
        if i == j:
            loops.add(i)
        if m >= 2:
            strong.add((i, j))
        if i < j:
            back = g.entry(j, i)
            if back:
                weak.add((i, j))
            if m + back >= 3:
                triple.add((i, j))
    return EdgeReport(frozenset(loops), frozenset(strong), frozenset(weak), frozenset(triple))


def predicted_edges(N: int) -> EdgeReport:
    """Special edges of the Collatz graph as given by closed forms in N."""
    if N < 2:
        raise ValueError("N must be at least 2")
    loops = {0, N - 1}
    strong = set()
    if N % 4 == 1:
        strong.add(((N - 1) // 2, (N - 1) // 4))
    elif N % 4 == 3:
        strong.add(((N - 1) // 2, (3 * N - 1) // 4))
    pairs = [(1, 2)]
    if N % 3 == 0:
        pairs.append((N // 3, 2 * N // 3))
    if N % 5 == 0:
        pairs += [(N // 5 - 1, 4 * N // 5 - 1), (2 * N // 5 - 1, 3 * N // 5 - 1)]
    weak = {tuple(sorted((a % N, b % N))) for a, b in pairs}
    triple = {(1, 2)} if N in (3, 5) else set()
    return EdgeReport(frozenset(loops), frozenset(strong), frozenset(weak), frozenset(triple))


def special_edges(N: int) -> tuple[EdgeReport, EdgeReport]:
    """(observed, predicted) special edges of the Collatz graph G_N."""
    return observed_edges(build_collatz(N)), predicted_edges(N)


# --- degrees and connectivity ---------------------------------------------


@dataclass(frozen=True)
class DegreeProfile:
    out_degrees: tuple[int, ...]
    in_degrees: tuple[int, ...]

    @property
    def out_multiset(self) -> Counter:
        return Counter(self.out_degrees)

    @property
    def in_multiset(self) -> Counter:
        return Counter(self.in_degrees)


def degree_profile(g: ModularGraph) -> DegreeProfile:
    indeg = [0] * g.N
    for _, j, m in g.entries():
        indeg[j] += m
    return DegreeProfile(tuple(g.row_sums()), tuple(indeg))


def strongly_connected_components(g: ModularGraph) -> list[list[int]]:
    """Tarjan's algorithm, iterative so that large N does not hit the recursion limit."""
    adj = [[j for j, _ in row] for row in g.rows]
    index = [-1] * g.N
    low = [0] * g.N
    on_stack = [False] * g.N
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(g.N):
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, k = work[-1]
            if k < len(adj[v]):
                work[-1] = (v, k + 1)
                w = adj[v][k]
                if index[w] < 0:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


def is_strongly_connected(g: ModularGraph) -> bool:
    return len(strongly_connected_components(g)) == 1


# --- text dump -------------------------------------------------------------


def dump_edges(g: ModularGraph) -> str:
    """One ``i<TAB>j<TAB>multiplicity`` line per edge, rows ascending."""
    return "".join(f"{i}\t{j}\t{m}\n" for i, j, m in g.entries())


def parse_edges(text: str, N: Optional[int] = None, kind: str = "collatz") -> ModularGraph:
    rows: dict[int, list[tuple[int, int]]] = {}
    top = -1
    for line in text.splitlines():
        if not line.strip():
            continue
        i, j, m = (int(x) for x in line.split("\t"))
        rows.setdefault(i, []).append((j, m))
        top = max(top, i, j)
    n = N if N is not None else top + 1
    return ModularGraph(n, kind, tuple(tuple(sorted(rows.get(i, []))) for i in range(n)))

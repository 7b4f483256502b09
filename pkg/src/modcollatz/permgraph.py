"""Permutations of Z_N induced by the graph rules.

Composition follows the usual right-to-left convention:
``p.compose(q)(n) == p(q(n))``.  The quotient permutation of a pair
``(rho1, rho2)`` is ``rho0 = rho2 o rho1^-1``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import gcd
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .detvalue import DetValue
from .errors import EvenModulus, NotCoprime, NotCoprime3, SizeMismatch
from .numtheory import divisors, euler_phi, factorize, jacobi, multiplicative_order

Cycles = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class ResidueMap:
    """A function on {0..n-1} given by its image array (not necessarily bijective)."""

    image: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i]

    @property
    def is_permutation(self) -> bool:
        return sorted(self.image) == list(range(self.n))


class Permutation(ResidueMap):
    """A bijection of {0..n-1}."""

    def __init__(self, image: Sequence[int]):
        image = tuple(int(x) for x in image)
        if sorted(image) != list(range(len(image))):
            raise ValueError("image is not a bijection of {0..n-1}")
        object.__setattr__(self, "image", image)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n: int, cycs: Sequence[Sequence[int]]) -> "Permutation":
        image = list(range(n))
        for c in cycs:
            for a, b in zip(c, tuple(c[1:]) + (c[0],)):
                image[a] = b
        return cls(image)

    def compose(self, other: "Permutation") -> "Permutation":
        if self.n != other.n:
            raise SizeMismatch(f"{self.n} != {other.n}")
        return Permutation([self.image[j] for j in other.image])

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.image):
            inv[j] = i
        return Permutation(inv)

    def matrix(self) -> np.ndarray:
        """Permutation matrix with a 1 at (i, pi(i))."""
        m = np.zeros((self.n, self.n), dtype=object)
        m[:] = 0
        m[np.arange(self.n), list(self.image)] = 1
        return m

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(cycles(self))})"


def affine_map(a: int, b: int, n: int) -> ResidueMap:
    """The map x -> a*x + b on Z_n."""
    image = tuple((a * x + b) % n for x in range(n))
    if gcd(a, n) == 1:
        return Permutation(image)
    return ResidueMap(image)


def multiplication_permutation(a: int, n: int) -> Permutation:
    if gcd(a, n) != 1:
        raise NotCoprime(f"gcd({a}, {n}) != 1")
    return affine_map(a, 0, n)  # type: ignore[return-value]


def _require_odd(n: int) -> None:
    if n < 1 or n % 2 == 0:
        raise EvenModulus(f"modulus must be odd and positive, got {n}")


class CollatzPermutations(NamedTuple):
    pi2: Permutation
    pi3: Optional[Permutation]
    pi0: Optional[Permutation]


def collatz_permutations(N: int, require_coprime3: bool = True) -> CollatzPermutations:
    """Halving permutation, odd-rule permutation and their quotient on Z_N.

    With ``require_coprime3=False`` and ``3 | N`` only the halving
    permutation is returned (the odd rule is then three-to-one).
    """
    _require_odd(N)
    inv2 = (N + 1) // 2
    pi2 = affine_map(inv2, 0, N)
    if N % 3 == 0:
        if require_coprime3:
            raise NotCoprime3(f"3 divides {N}; the odd rule is not a permutation")
        return CollatzPermutations(pi2, None, None)  # type: ignore[arg-type]
    pi3 = affine_map(3 * inv2, inv2, N)
    pi0 = pi3.compose(pi2.inverse())  # type: ignore[attr-defined]
    return CollatzPermutations(pi2, pi3, pi0)  # type: ignore[arg-type]


class PnqPermutations(NamedTuple):
    pi2: Permutation
    pi_pq: Permutation
    pi0_pq: Permutation


def pnq_permutations(p: int, q: int, N: int) -> PnqPermutations:
    """Permutations for the rule n -> (p*n + q)/2 on odd n; q may be negative."""
    _require_odd(N)
    if gcd(N, p) != 1 or gcd(N, q) != 1:
        raise NotCoprime(f"N={N} must be coprime to p={p} and q={q}")
    inv2 = (N + 1) // 2
    pi2 = affine_map(inv2, 0, N)
    pi_pq = affine_map(p * inv2, q * inv2, N)
    pi0 = pi_pq.compose(pi2.inverse())  # type: ignore[attr-defined]
    return PnqPermutations(pi2, pi_pq, pi0)  # type: ignore[arg-type]


class ConwayMaps(NamedTuple):
    star: ResidueMap
    plus: Permutation
    minus: Permutation

    @property
    def star_is_permutation(self) -> bool:
        return isinstance(self.star, Permutation)


def conway_permutations(N: int) -> ConwayMaps:
    """The three rule maps 3n/2, (3n+1)/4, (3n-1)/4 on Z_N for odd N.

    When ``3 | N`` the first map is not injective and comes back as a
    plain ResidueMap (``star_is_permutation`` is False).
    """
    _require_odd(N)
    inv2 = (N + 1) // 2
    inv4 = inv2 * inv2 % N
    return ConwayMaps(
        affine_map(3 * inv2, 0, N),
        affine_map(3 * inv4, inv4, N),  # type: ignore[arg-type]
        affine_map(3 * inv4, -inv4, N),  # type: ignore[arg-type]
    )


def cycles(pi: Permutation) -> Cycles:
    """Cycles, each rotated to start at its minimum, ordered by that minimum."""
    seen = [False] * pi.n
    out = []
    for start in range(pi.n):
        if seen[start]:
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = pi.image[i]
        out.append(tuple(cyc))
    return tuple(out)


def cycle_type(pi: Permutation) -> Counter:
    """Cycle length -> number of cycles."""
    return Counter(len(c) for c in cycles(pi))


def format_cycles(cycs: Cycles) -> str:
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)


def sign(pi: Permutation) -> int:
    return -1 if (pi.n - len(cycles(pi))) % 2 else 1


def zolotarev_sign(a: int, N: int, cross_check: bool = False) -> int:
    """Sign of multiplication by ``a`` on Z_N, via the Jacobi symbol.

    With ``cross_check`` the sign is also counted from explicit cycles and a
    disagreement raises RuntimeError.
    """
    _require_odd(N)
    if gcd(a, N) != 1:
        raise NotCoprime(f"gcd({a}, {N}) != 1")
    s = jacobi(a, N)
    if cross_check and sign(multiplication_permutation(a, N)) != s:
        raise RuntimeError(f"Jacobi symbol and permutation sign disagree for a={a}, N={N}")
    return s


@dataclass(frozen=True)
class CensusRow:
    divisor: int
    cycle_length: int
    count: int


@dataclass(frozen=True)
class CycleCensus:
    N: int
    rows: tuple[CensusRow, ...]

    @property
    def total_cycles(self) -> int:
        return sum(r.count for r in self.rows)

    @property
    def total_points(self) -> int:
        return sum(r.count * r.cycle_length for r in self.rows)

    def histogram(self) -> Counter:
        """Cycle length -> number of cycles, merged over divisors."""
        h: Counter = Counter()
        for r in self.rows:
            h[r.cycle_length] += r.count
        return h


def _census(N: int, modulus_of, base: int) -> CycleCensus:
    f = factorize(N)
    rows = []
    for d in divisors(f):
        m = modulus_of(d)
        length = multiplicative_order(base, m)
        rows.append(CensusRow(d, length, euler_phi(factorize(m)) // length))
    return CycleCensus(N, tuple(rows))


def census_pi2(N: int) -> CycleCensus:
    """Cycles of the halving permutation keyed by d = gcd(n, N): length ord_{N/d}(2)."""
    _require_odd(N)
    return _census(N, lambda d: N // d, 2)


def census_pi3(N: int) -> CycleCensus:
    """Cycles of the odd-rule permutation keyed by d = gcd(n + 1, N).

    Length ord_{N/d}(3/2), count phi(N/d) / length.
    """
    _require_odd(N)
    if N % 3 == 0:
        raise NotCoprime3(f"3 divides {N}")
    inv2 = (N + 1) // 2
    return _census(N, lambda d: N // d, 3 * inv2)


def census_pi0(N: int) -> CycleCensus:
    """Cycles of the quotient permutation n -> 3n + (N+1)/2, one row per divisor d.

    Length ord_d(3), count phi(d) / ord_d(3).
    """
    _require_odd(N)
    if N % 3 == 0:
        raise NotCoprime3(f"3 divides {N}")
    return _census(N, lambda d: d, 3)


def det_from_pair(rho1: Permutation, rho2: Permutation) -> DetValue:
    """Determinant of P(rho1) + P(rho2) from the cycle structure of rho2 o rho1^-1.

    Zero as soon as the quotient has a cycle of even length; otherwise
    ``sign(rho1) * 2**(number of cycles)``.
    """
    if rho1.n != rho2.n:
        raise SizeMismatch(f"domain sizes differ: {rho1.n} != {rho2.n}")
    cycs = cycles(rho2.compose(rho1.inverse()))
    if any(len(c) % 2 == 0 for c in cycs):
        return DetValue.ZERO
    return DetValue(sign(rho1), len(cycs))

"""Closed-form determinants from multiplicative orders and Jacobi symbols.

Collatz:  det C_N = 0 if ord_p(3) is even for some prime p | N0 (N = 3^h N0),
          else (2/N) * 2^K with K = sum_{d | N0} phi(d) / ord_d(3).
pn+q:     the same with p in place of 3, see det_pnq_formula.
Conway:   det M_N = 0 if gcd(N, 6) > 1 or some ord_p(2) is even,
          else +-3 * 2^K with K = sum_{d | N, d > 1} phi(d) / ord_d(2).
"""
from __future__ import annotations

from functools import lru_cache
from math import gcd, lcm
from typing import Optional

import numpy as np

from .detvalue import DetValue
from .errors import NotCoprime, NotCoprime3, NotCoprime6
from .exactla import IntPolynomial, poly_product
from .numtheory import (
    Factorization,
    as_factorization,
    factorize,
    jacobi,
    multiplicative_order,
    split_prime_power,
)
from .permgraph import Permutation, collatz_permutations, cycles, sign

__all__ = [
    "DetValue",
    "order_is_odd",
    "prime_power_orders",
    "cycle_count",
    "K_collatz",
    "det_collatz_formula",
    "K_pnq",
    "det_pnq_formula",
    "conway_sign",
    "K_conway",
    "det_conway_formula",
    "conway_X_charpoly",
    "conway_X_permutations",
    "conway_X_matrix",
    "det_collatz_via_IplusX",
]


def _odd_part(n: int) -> int:
    return n // (n & -n)


def order_is_odd(a: int, p: int) -> bool:
    """Whether ord_p(a) is odd, for a prime p not dividing a."""
    return pow(a, _odd_part(p - 1), p) == 1


@lru_cache(maxsize=1 << 16)
def _prime_order(a: int, p: int) -> int:
    return multiplicative_order(a, p)


def prime_power_orders(a: int, p: int, e: int, hint: Optional[Factorization] = None) -> list[int]:
    """[ord_{p^1}(a), ..., ord_{p^e}(a)], each lifted from the previous one.

    ord_{p^j} is either ord_{p^(j-1)} or p times it.
    """
    o = multiplicative_order(a, p, hint) if hint is not None else _prime_order(a % p, p)
    out = [o]
    pj = p
    for _ in range(1, e):
        pj *= p
        if pow(a, o, pj) != 1:
            o *= p
        out.append(o)
    return out


def cycle_count(a: int, f: Factorization, hint: Optional[Factorization] = None,
                skip_trivial: bool = False) -> int:
    """sum over d | n of phi(d) / ord_d(a), n given by its factorization f.

    This is the number of cycles of x -> a*x on Z_n.  ``skip_trivial``
    drops the d = 1 term.
    """
    terms = [(1, 1)]  # (phi(d), ord_d(a)) over divisors built so far
    for p, e in f:
        orders = prime_power_orders(a, p, e, hint)
        new = []
        for ph, o in terms:
            new.append((ph, o))
            pj_phi = p - 1
            for j in range(e):
                new.append((ph * pj_phi, lcm(o, orders[j])))
                pj_phi *= p
        terms = new
    total = sum(ph // o for ph, o in terms)
    return total - 1 if skip_trivial else total


def K_collatz(N0: int, factors: Optional[Factorization] = None,
              hint: Optional[Factorization] = None) -> tuple[int, bool]:
    """(K, any_even_order) for N0 odd and prime to 3.

    K counts the cycles of n -> 3n + (N0+1)/2; the flag is set when
    ord_p(3) is even for some prime p | N0, which makes the determinant 0.
    """
    if N0 % 3 == 0:
        raise NotCoprime3(f"3 divides {N0}")
    if N0 % 2 == 0:
        raise NotCoprime(f"{N0} is even")
    f = factorize(N0) if factors is None else as_factorization(factors)
    even = any(not order_is_odd(3, p) for p, _ in f)
    return cycle_count(3, f, hint), even


def det_collatz_formula(N: int, hint=None) -> DetValue:
    """Determinant of the Collatz adjacency matrix C_N without building it.

    ``hint`` (an int or factorization) is a multiple of ord_N(3); it lets
    the order be found without factoring phi(N), e.g. 71 for a prime
    divisor of 3^71 - 1.
    """
    if N < 1:
        raise ValueError("N must be positive")
    if N % 2 == 0:
        return DetValue.ZERO
    _, N0 = split_prime_power(N, 3)
    hint_f = as_factorization(hint) if hint is not None else None
    f = factorize(N0)
    if any(not order_is_odd(3, p) for p, _ in f):
        return DetValue.ZERO
    return DetValue(jacobi(2, N), cycle_count(3, f, hint_f))


def K_pnq(p: int, N: int) -> int:
    """Number of cycles of n -> p*n + c on Z_N for any unit c.

    Write N = N1 * N2 where N2 collects the prime powers of N whose prime
    divides p - 1.  On Z_N2 the map is one full cycle (Hull-Dobell), on
    Z_N1 it is conjugate to multiplication by p, so
    K = sum_{d | N1} phi(d) / k_d * gcd(k_d, N2) with k_d = ord_d(p).
    For p = 1 (mod N) this gives 1; for gcd(p - 1, N) = 1 the plain sum.
    """
    f = factorize(N)
    f1 = tuple((r, e) for r, e in f if (p - 1) % r)
    n2 = 1
    for r, e in f:
        if (p - 1) % r == 0:
            n2 *= r**e
    terms = [(1, 1)]
    for r, e in f1:
        orders = prime_power_orders(p, r, e)
        new = []
        for ph, o in terms:
            new.append((ph, o))
            rj_phi = r - 1
            for j in range(e):
                new.append((ph * rj_phi, lcm(o, orders[j])))
                rj_phi *= r
        terms = new
    return sum(ph // o * gcd(o, n2) for ph, o in terms)


def det_pnq_formula(p: int, q: int, N: int) -> DetValue:
    """Determinant of the pn+q adjacency matrix C_{p,q,N}; independent of q.

    Requires N odd and coprime to p and q.
    """
    if N < 1 or N % 2 == 0:
        raise NotCoprime(f"N must be odd, got {N}")
    if gcd(N, p) != 1 or gcd(N, q) != 1:
        raise NotCoprime(f"N={N} must be coprime to p={p} and q={q}")
    for r, _ in factorize(N):
        if not order_is_odd(p % r, r):
            return DetValue.ZERO
    return DetValue(jacobi(2, N), K_pnq(p, N))


def conway_sign(N: int) -> int:
    """Sign of n -> 3n/2 on Z_N: +1 for N = +-1, +-5 (mod 24), else -1."""
    if gcd(N, 6) != 1:
        raise NotCoprime6(f"gcd({N}, 6) != 1")
    return 1 if N % 24 in (1, 5, 19, 23) else -1


def K_conway(N: int, factors: Optional[Factorization] = None) -> int:
    f = factorize(N) if factors is None else as_factorization(factors)
    return cycle_count(2, f, skip_trivial=True)


def det_conway_formula(N: int) -> DetValue:
    """Determinant of the amusical adjacency matrix M_N (zero for 2 | N or 3 | N)."""
    if N < 1:
        raise ValueError("N must be positive")
    if N % 2 == 0 or N % 3 == 0:
        return DetValue.ZERO
    f = factorize(N)
    if any(not order_is_odd(2, p) for p, _ in f):
        return DetValue.ZERO
    return DetValue(conway_sign(N), K_conway(N, f), True)


def conway_X_permutations(N: int) -> tuple[Permutation, Permutation]:
    """The maps n -> (2n + 1)/4 and n -> (2n - 1)/4 on Z_N."""
    if gcd(N, 6) != 1:
        raise NotCoprime6(f"gcd({N}, 6) != 1")
    inv4 = pow(4, -1, N) if N > 1 else 0
    plus = Permutation([(2 * n + 1) * inv4 % N for n in range(N)])
    minus = Permutation([(2 * n - 1) * inv4 % N for n in range(N)])
    return plus, minus


def conway_X_matrix(N: int) -> np.ndarray:
    """X_+ + X_- as a dense integer matrix."""
    plus, minus = conway_X_permutations(N)
    return plus.matrix() + minus.matrix()


def conway_X_charpoly(N: int) -> IntPolynomial:
    """(x - 2) * prod_{d | N, d > 1} (x^k_d - 1)^(phi(d)/k_d), k_d = ord_d(2)."""
    if gcd(N, 6) != 1:
        raise NotCoprime6(f"gcd({N}, 6) != 1")
    f = factorize(N)
    factors = [IntPolynomial((-2, 1))]
    terms = [(1, 1)]
    for p, e in f:
        orders = prime_power_orders(2, p, e)
        new = []
        for ph, o in terms:
            new.append((ph, o))
            pj_phi = p - 1
            for j in range(e):
                new.append((ph * pj_phi, lcm(o, orders[j])))
                pj_phi *= p
        terms = new
    for ph, k in terms[1:]:
        factors.append((IntPolynomial.monomial(k) - 1) ** (ph // k))
    return poly_product(factors)


def det_collatz_via_IplusX(N: int) -> DetValue:
    """Second route: sign(pi2) times 2 or 0 per cycle of the quotient permutation.

    Uses explicit permutations rather than orders or Jacobi symbols.
    """
    if N % 2 == 0:
        raise NotCoprime(f"{N} is even")
    if N % 3 == 0:
        raise NotCoprime3(f"3 divides {N}")
    perms = collatz_permutations(N)
    cycs = cycles(perms.pi0)
    if any(len(c) % 2 == 0 for c in cycs):
        return DetValue.ZERO
    return DetValue(sign(perms.pi2), len(cycs))

"""Exact modular arithmetic: factorization, totients, orders, Jacobi symbols.

All residues are returned canonically in ``[0, n)``.  A factorization is a
tuple of ``(prime, exponent)`` pairs with strictly increasing primes.
"""
from __future__ import annotations

import random
from functools import lru_cache
from itertools import product
from math import gcd, isqrt, prod
from typing import Iterable, Optional

import numpy as np

from .errors import EvenModulus, NotCoprime, NotInvertible

Factorization = tuple[tuple[int, int], ...]

TRIAL_LIMIT = 10**6
_RHO_SEED = 0x5EED

_MR_SMALL_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# the 13 bases above are a proven deterministic set below this bound
_MR_DETERMINISTIC_BOUND = 3317044064679887385961981


def spf_sieve(limit: int) -> np.ndarray:
    """Smallest-prime-factor table ``spf[k]`` for ``0 <= k <= limit``.

    ``spf[0] = 0`` and ``spf[1] = 1``.
    """
    spf = np.zeros(limit + 1, dtype=np.int32 if limit < 2**31 else np.int64)
    for i in range(2, isqrt(limit) + 1):
        if spf[i] == 0:
            seg = spf[i * i :: i]
            seg[seg == 0] = i
    unset = spf == 0
    spf[unset] = np.nonzero(unset)[0]
    return spf


@lru_cache(maxsize=1)
def _small_spf() -> np.ndarray:
    return spf_sieve(TRIAL_LIMIT)


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    spf = _small_spf()
    idx = np.arange(len(spf))
    return tuple(int(p) for p in np.nonzero((spf == idx) & (idx >= 2))[0])


def _factor_spf(n: int, spf) -> dict[int, int]:
    out: dict[int, int] = {}
    while n > 1:
        p = int(spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out[p] = e
    return out


def _miller_rabin(n: int, base: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _strong_lucas(n: int) -> bool:
    # Selfridge parameters: first D in 5, -7, 9, -11, ... with (D/n) = -1
    d = 5
    while True:
        j = jacobi(d, n)
        if j == -1:
            break
        if j == 0 and abs(d) != n:
            return False
        d = -d - 2 if d > 0 else -d + 2
        if d == 13 and isqrt(n) ** 2 == n:
            return False
    p, q = 1, (1 - d) // 4
    k, s = n + 1, 0
    while k % 2 == 0:
        k //= 2
        s += 1

    def half(x: int) -> int:
        x %= n
        return (x + n) // 2 if x & 1 else x // 2

    u, v, qk = 1, p, q % n
    for bit in bin(k)[3:]:
        u, v = u * v % n, (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u, v = half(p * u + v), half(d * u + p * v)
            qk = qk * q % n
    if u == 0 or v == 0:
        return True
    for _ in range(s - 1):
        v = (v * v - 2 * qk) % n
        if v == 0:
            return True
        qk = qk * qk % n
    return False


def is_prime(n: int) -> bool:
    """Deterministic below ~3.3e24 (Miller-Rabin), Baillie-PSW above."""
    if n < 2:
        return False
    if n <= TRIAL_LIMIT:
        return int(_small_spf()[n]) == n
    for p in _MR_SMALL_BASES:
        if n % p == 0:
            return False
    if n < _MR_DETERMINISTIC_BOUND:
        return all(_miller_rabin(n, b) for b in _MR_SMALL_BASES)
    return _miller_rabin(n, 2) and _strong_lucas(n)


def _brent_rho(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def _split_large(n: int, out: dict[int, int], rng: random.Random) -> None:
    # every prime factor of n exceeds TRIAL_LIMIT here
    if n < TRIAL_LIMIT * TRIAL_LIMIT or is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _brent_rho(n, rng)
    _split_large(d, out, rng)
    _split_large(n // d, out, rng)


def factorize(n: int) -> Factorization:
    """Prime factorization of ``n >= 1`` as sorted ``(prime, exponent)`` pairs."""
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    if n <= TRIAL_LIMIT:
        return tuple(sorted(_factor_spf(n, _small_spf()).items()))
    out: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    if n > 1:
        if n <= TRIAL_LIMIT * TRIAL_LIMIT:
            out[n] = out.get(n, 0) + 1
        else:
            _split_large(n, out, random.Random(_RHO_SEED))
    return tuple(sorted(out.items()))


def reconstruct(f: Factorization) -> int:
    return prod(p**e for p, e in f)


def as_factorization(n_or_f) -> Factorization:
    if isinstance(n_or_f, int):
        return factorize(n_or_f)
    return tuple((int(p), int(e)) for p, e in n_or_f)


def euler_phi(f) -> int:
    """Euler's totient from a factorization (an int is factored first)."""
    f = as_factorization(f)
    return prod(p ** (e - 1) * (p - 1) for p, e in f)


def divisors(f) -> list[int]:
    """All divisors in increasing order."""
    f = as_factorization(f)
    divs = [1]
    for p, e in f:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def divisor_factorizations(f: Factorization) -> Iterable[Factorization]:
    """Yield each divisor as a factorization (zero exponents dropped)."""
    primes = [p for p, _ in f]
    for exps in product(*(range(e + 1) for _, e in f)):
        yield tuple((p, k) for p, k in zip(primes, exps) if k)


def mod_pow(a: int, e: int, n: int) -> int:
    if n < 1:
        raise ValueError("modulus must be >= 1")
    return pow(a, e, n)


def mod_inverse(a: int, n: int) -> int:
    if n < 1:
        raise ValueError("modulus must be >= 1")
    if gcd(a, n) != 1:
        raise NotInvertible(f"{a} is not invertible modulo {n}")
    return pow(a, -1, n)


def _merge(*fs: Iterable[tuple[int, int]]) -> Factorization:
    acc: dict[int, int] = {}
    for f in fs:
        for p, e in f:
            acc[p] = acc.get(p, 0) + e
    return tuple(sorted((p, e) for p, e in acc.items() if e))


def phi_factorization(f: Factorization) -> Factorization:
    """Factorization of euler_phi(n) given the factorization of n."""
    parts = []
    for p, e in f:
        if e > 1:
            parts.append(((p, e - 1),))
        parts.append(factorize(p - 1))
    return _merge(*parts)


def order_from_multiple(a: int, n: int, m_factors: Factorization) -> int:
    """Least k with a^k = 1 (mod n), given a^m = 1 for m = prod(m_factors)."""
    m = reconstruct(m_factors)
    for q, e in m_factors:
        for _ in range(e):
            if pow(a, m // q, n) == 1:
                m //= q
            else:
                break
    return m


def multiplicative_order(a: int, n: int, hint: Optional[Factorization] = None) -> int:
    """Multiplicative order of ``a`` modulo ``n``; ``ord_1(a) = 1``.

    ``hint`` is the factorization of some exponent ``m`` with
    ``a^m = 1 (mod n)``; without it the order is cut down from phi(n).
    """
    if n < 1:
        raise ValueError("modulus must be >= 1")
    if n == 1:
        return 1
    a %= n
    if gcd(a, n) != 1:
        raise NotCoprime(f"gcd({a}, {n}) != 1")
    if hint is not None:
        hint = as_factorization(hint)
        if pow(a, reconstruct(hint), n) != 1:
            raise ValueError(f"hint {reconstruct(hint)} is not a multiple of ord_{n}({a})")
        mf = hint
    else:
        mf = phi_factorization(factorize(n))
    return order_from_multiple(a, n, mf)


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n >= 1."""
    if n < 1 or n % 2 == 0:
        raise EvenModulus(f"Jacobi symbol needs an odd positive modulus, got {n}")
    a %= n
    t = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                t = -t
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            t = -t
        a %= n
    return t if n == 1 else 0


def split_prime_power(n: int, p: int) -> tuple[int, int]:
    """Return ``(h, m)`` with ``n = p**h * m`` and ``p`` not dividing ``m``."""
    h = 0
    while n % p == 0:
        n //= p
        h += 1
    return h, n

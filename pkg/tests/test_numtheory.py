import random
from math import gcd

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from modcollatz.errors import EvenModulus, NotCoprime, NotInvertible
from modcollatz.numtheory import (
    divisors,
    euler_phi,
    factorize,
    is_prime,
    jacobi,
    mod_inverse,
    mod_pow,
    multiplicative_order,
    reconstruct,
    spf_sieve,
    split_prime_power,
)
from reference_tables import REPUNIT_N


def test_factorize_examples():
    assert factorize(175) == ((5, 2), (7, 1))
    assert factorize(1) == ()
    assert factorize(REPUNIT_N) == ((REPUNIT_N, 1),)


def test_factorize_reconstructs_exhaustively():
    spf = spf_sieve(10**6)
    for n in range(1, 10**6 + 1):
        f = factorize(n)
        assert reconstruct(f) == n
    # primes strictly increasing and really prime, on a sample
    for n in random.Random(1).sample(range(2, 10**6), 2000):
        ps = [p for p, _ in factorize(n)]
        assert ps == sorted(set(ps))
        assert all(spf[p] == p for p in ps)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=10**18))
def test_factorize_matches_sympy(n):
    assert dict(factorize(n)) == sympy.factorint(n)


def test_factorize_semiprime_beyond_trial_division():
    p, q = 1_000_003, 998_244_353
    assert factorize(p * q) == ((p, 1), (q, 1))
    assert factorize(p**3 * q) == ((p, 3), (q, 1))


def test_is_prime_against_sympy():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randrange(1, 10**30)
        assert is_prime(n) == sympy.isprime(n)
    for n in range(0, 3000):
        assert is_prime(n) == sympy.isprime(n)
    assert is_prime(REPUNIT_N)
    # strong pseudoprimes to several small bases
    assert not is_prime(3215031751)
    assert not is_prime(3825123056546413051)


def test_euler_phi_and_divisors():
    assert euler_phi(factorize(175)) == 120
    assert euler_phi(()) == 1
    assert euler_phi(factorize(13)) == sum(1 for k in range(1, 13) if gcd(k, 13) == 1)
    assert divisors(factorize(175)) == [1, 5, 7, 25, 35, 175]
    assert divisors(()) == [1]
    assert divisors(factorize(13)) == [1, 13]


def test_phi_sums_over_divisors():
    for n in range(1, 10**4 + 1):
        assert sum(euler_phi(factorize(d)) for d in divisors(factorize(n))) == n


def test_mod_pow_and_inverse():
    assert mod_pow(3, 0, 7) == 1
    assert mod_pow(3, 5, 11) == 3**5 % 11 == 1
    assert mod_pow(3, 71, REPUNIT_N) == 1
    assert mod_pow(-2, 3, 7) == (-8) % 7
    assert mod_inverse(2, 13) == 7
    assert mod_inverse(1, 97) == 1
    with pytest.raises(NotInvertible):
        mod_inverse(2, 4)


def test_multiplicative_order_examples():
    assert multiplicative_order(3, 1) == 1
    assert multiplicative_order(2, 175) == 60
    assert multiplicative_order(2, 35) == 12
    # direct powering
    k, x = 1, 3 % 11
    while x != 1:
        x, k = x * 3 % 11, k + 1
    assert multiplicative_order(3, 11) == k == 5
    with pytest.raises(NotCoprime):
        multiplicative_order(3, 9)


def test_order_with_hint_for_large_prime():
    assert multiplicative_order(3, REPUNIT_N, hint=((71, 1),)) == 71
    with pytest.raises(ValueError):
        multiplicative_order(3, REPUNIT_N, hint=((73, 1),))


def test_order_divides_phi_and_matches_sympy():
    for n in range(1, 2001):
        phi = euler_phi(factorize(n))
        for a in (2, 3, 5, n - 1):
            if a > 0 and gcd(a, n) == 1:
                o = multiplicative_order(a, n)
                assert phi % o == 0
                assert o == sympy.n_order(a, n) if n > 1 else o == 1


def test_jacobi_examples_and_errors():
    assert jacobi(2, 7) == 1
    assert jacobi(2, 3) == -1
    assert jacobi(1, 15) == 1
    assert jacobi(5, 15) == 0
    with pytest.raises(EvenModulus):
        jacobi(3, 10)


def test_jacobi_is_legendre_for_primes():
    for p in sympy.primerange(3, 998):
        for a in range(p):
            v = pow(a, (p - 1) // 2, p)
            expected = -1 if v == p - 1 else v
            assert jacobi(a, p) == expected


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=-10**30, max_value=10**30), st.integers(min_value=0, max_value=10**20))
def test_jacobi_matches_sympy(a, k):
    n = 2 * k + 1
    assert jacobi(a, n) == sympy.jacobi_symbol(a % n, n)


def test_odd_order_iff_odd_at_every_prime():
    # odd moduli only: ord_2(3) = 1 but ord_4(3) = 2
    rng = random.Random(11)
    checked = 0
    while checked < 3000:
        n = rng.randrange(3, 10**4, 2)
        g = rng.randrange(1, n)
        if gcd(g, n) != 1:
            continue
        whole = multiplicative_order(g, n) % 2 == 1
        parts = all(multiplicative_order(g, p) % 2 == 1 for p, _ in factorize(n))
        assert whole == parts
        checked += 1


def test_split_prime_power():
    assert split_prime_power(3**4 * 5, 3) == (4, 5)
    assert split_prime_power(7, 3) == (0, 7)


def test_spf_sieve_small():
    spf = spf_sieve(30)
    assert spf.tolist()[:10] == [0, 1, 2, 3, 2, 5, 2, 7, 2, 3]
    assert np.all(spf[2:] <= np.arange(2, 31))

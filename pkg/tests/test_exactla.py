import random

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from modcollatz.errors import DivisionByZeroPoly
from modcollatz.exactla import (
    IntPolynomial,
    as_matrix,
    charpoly,
    det_exact,
    format_poly,
    parse_poly,
    pm1_class,
    poly_divides,
    poly_eval,
    poly_mul,
    rank_exact,
)
from modcollatz.graphs import adjacency_matrix, build_collatz
from modcollatz.numtheory import is_prime, split_prime_power
from reference_tables import charpoly_factor_rows, parse_factor_list

X = IntPolynomial.x()


def P(N):
    return charpoly(adjacency_matrix(build_collatz(N)))


small_matrices = st.integers(1, 7).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)
)


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_det_rank_charpoly_against_sympy(rows):
    m = sympy.Matrix(rows)
    assert det_exact(rows) == m.det()
    assert rank_exact(rows) == m.rank()
    x = sympy.Symbol("x")
    expected = [int(c) for c in reversed(m.charpoly(x).all_coeffs())]
    assert list(charpoly(rows).coeffs) == expected


def test_low_rank_and_big_entries():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(3, 10)
        r = rng.randint(1, n - 1)
        a = sympy.randMatrix(n, r, -5, 5, seed=rng.randint(0, 10**6))
        b = sympy.randMatrix(r, n, -5, 5, seed=rng.randint(0, 10**6))
        m = (a * b).tolist()
        assert det_exact(m) == 0
        assert rank_exact(m) == (a * b).rank()
    big = [[10**40 + i * j for j in range(4)] for i in range(4)]
    assert det_exact(big) == sympy.Matrix(big).det()


def test_det_examples():
    assert det_exact(adjacency_matrix(build_collatz(3))) == -2
    assert det_exact([[2]]) == 2
    for ell, expected in ((3, 2), (4, 0)):
        # cycle plus loops
        m = np.eye(ell, dtype=int) + np.roll(np.eye(ell, dtype=int), 1, axis=1)
        assert det_exact(m) == expected


def test_rank_examples():
    assert rank_exact(adjacency_matrix(build_collatz(4))) == 2
    assert rank_exact(adjacency_matrix(build_collatz(6))) == 3
    assert rank_exact(np.zeros((3, 3), dtype=int)) == 0
    assert rank_exact(adjacency_matrix(build_collatz(3))) == 3


def test_as_matrix_rejects_non_square():
    with pytest.raises(ValueError):
        as_matrix([[1, 2, 3], [4, 5, 6]])


def test_charpoly_examples():
    assert P(2) == X * X - 2 * X
    assert str(P(3)) == "x^3 - 2*x^2 - x + 2"
    assert P(3) == (X + 1) * (X - 1) * (X - 2)
    assert charpoly([[2]]) == X - 2


def test_charpoly_trace_and_constant():
    rng = random.Random(9)
    for _ in range(40):
        n = rng.randint(1, 12)
        m = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        p = charpoly(m)
        assert p.leading == 1 and p.degree == n
        assert p[n - 1] == -sum(m[i][i] for i in range(n))
        assert (-1) ** n * p(0) == det_exact(m)
    for N in range(1, 61):
        assert (-1) ** N * P(N)(0) == det_exact(adjacency_matrix(build_collatz(N)))


def test_root_two_simple_and_second_coefficient():
    for N in range(1, 121):
        p = P(N)
        assert p(2) == 0
        assert not poly_divides((X - 2) ** 2, p)[0]
        assert p[N - 1] == -2


def test_even_reduction():
    for N in range(2, 61, 2):
        _, n0 = split_prime_power(N, 2)
        assert P(N) == IntPolynomial.monomial(N - n0) * P(n0)
    assert P(6) == X**3 * P(3)


def test_odd_divisors_divide():
    cache = {}
    for N in range(1, 100, 2):
        cache[N] = P(N)
        for d in range(1, N):
            if N % d == 0:
                assert poly_divides(cache[d], cache[N])[0], (d, N)
    assert poly_divides(P(3), P(9))[0]


def test_factor_table_rows():
    rows = charpoly_factor_rows()
    assert sorted(rows) == list(range(2, 101))
    for N, (det, text) in rows.items():
        p = P(N)
        assert (-1) ** N * p(0) == det
        named, unnamed = parse_factor_list(text)
        q = p
        for f, mult in named:
            for _ in range(mult):
                ok, q = poly_divides(f, q)
                assert ok, (N, str(f))
            assert not poly_divides(f, q)[0], (N, "multiplicity", str(f))
        assert q.degree == sum(k * m for k, m in unnamed), N
        if not unnamed:
            assert q == 1


def test_pm1_evaluations():
    assert poly_eval(P(65), -1) == 0
    assert P(91)(1) == 0
    assert P(3)(0) == 2


def test_pm1_class():
    assert pm1_class(5) == ("zero", "nondiv")
    assert P(5)(-1) == 6
    assert pm1_class(13)[1] != "zero"
    assert pm1_class(5)[1] != "zero"
    first = next(N for N in range(3, 200, 2) if is_prime(N) and pm1_class(N)[0] == "div")
    assert first == 17
    with pytest.raises(ValueError):
        pm1_class(15)


def test_poly_arithmetic():
    assert poly_mul(X - 1, X + 1) == X * X - 1
    ok, q = poly_divides(X - 1, X * X - 1)
    assert ok and q == X + 1
    ok, _ = poly_divides(X - 2, X * X - 1)
    assert not ok
    with pytest.raises(DivisionByZeroPoly):
        poly_divides(IntPolynomial(), X)
    assert IntPolynomial().degree == -1
    assert (X - 1) ** 3 == X**3 - 3 * X**2 + 3 * X - 1


polys = st.lists(st.integers(-20, 20), max_size=8).map(IntPolynomial)


@given(polys, polys)
def test_product_is_divisible(a, b):
    if b.is_zero():
        return
    ok, q = poly_divides(b, a * b)
    assert ok and q == a


@given(polys)
def test_format_parse_round_trip(p):
    assert parse_poly(format_poly(p)) == p


def test_parse_loose_forms():
    assert parse_poly("x^4-x^3+x^2-3 x+1") == X**4 - X**3 + X**2 - 3 * X + 1
    assert parse_poly("-2*x^2 + x") == -2 * X * X + X
    assert format_poly(IntPolynomial((2, -1, 0, 1))) == "x^3 - x + 2"
    with pytest.raises(ValueError):
        parse_poly("x^^2")

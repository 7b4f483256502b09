"""Exact integer linear algebra on numpy object arrays of Python ints.

Determinants use Bareiss fraction-free elimination, characteristic
polynomials the division-free Berkowitz recurrence.  Neither touches
floating point.
"""
from __future__ import annotations

import re
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import DivisionByZeroPoly


def as_matrix(rows) -> np.ndarray:
    """Square object-dtype matrix of Python ints."""
    m = np.array([[int(x) for x in row] for row in rows], dtype=object)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def _obj(m) -> np.ndarray:
    if isinstance(m, np.ndarray) and m.dtype == object:
        a = m.copy()
    else:
        a = as_matrix(np.asarray(m).tolist())
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def det_exact(m) -> int:
    """Determinant by Bareiss elimination with row pivoting.

    When the new pivot equals the previous one the rows with a zero in the
    pivot column are unchanged, so only the others are updated.
    """
    a = _obj(m)
    n = a.shape[0]
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k, k] == 0:
            nz = np.nonzero(a[k + 1 :, k])[0]
            if len(nz) == 0:
                return 0
            i = k + 1 + int(nz[0])
            a[[k, i]] = a[[i, k]]
            sign = -sign
        p = a[k, k]
        if p == prev:
            rows = k + 1 + np.nonzero(a[k + 1 :, k])[0]
            if len(rows):
                a[np.ix_(rows, np.arange(k + 1, n))] -= np.outer(a[rows, k], a[k, k + 1 :]) // prev
        else:
            a[k + 1 :, k + 1 :] = (a[k + 1 :, k + 1 :] * p - np.outer(a[k + 1 :, k], a[k, k + 1 :])) // prev
        prev = p
    return sign * int(a[n - 1, n - 1])


def rank_exact(m) -> int:
    """Rank over Q by fraction-free elimination with full pivot search."""
    a = _obj(m)
    n_rows, n_cols = a.shape
    prev = 1
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        p = a[r, c]
        a[r + 1 :, c + 1 :] = (a[r + 1 :, c + 1 :] * p - np.outer(a[r + 1 :, c], a[r, c + 1 :])) // prev
        a[r + 1 :, c] = 0
        prev = p
        r += 1
    return r


# --- polynomials -------------------------------------------------------------

_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(x(?:\s*\^\s*(\d+))?)?")


class IntPolynomial:
    """Integer polynomial; ``coeffs[k]`` is the coefficient of ``x**k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPolynomial":
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> "IntPolynomial":
        other = _poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> "IntPolynomial":
        return self + (-_poly(other))

    def __rsub__(self, other) -> "IntPolynomial":
        return _poly(other) - self

    def __mul__(self, other) -> "IntPolynomial":
        other = _poly(other)
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        a = np.array(self.coeffs, dtype=object)
        b = np.array(other.coeffs, dtype=object)
        return IntPolynomial(np.convolve(a, b).tolist())

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPolynomial":
        result = IntPolynomial((1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod_exact(self, divisor: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        """Long division over Z; returns (quotient, remainder).

        Stops when the leading coefficient of the divisor does not divide the
        running remainder's, in which case the remainder is returned as is
        (non-zero, so the division is not exact).
        """
        if divisor.is_zero():
            raise DivisionByZeroPoly("division by the zero polynomial")
        rem = list(self.coeffs)
        dd = divisor.degree
        lc = divisor.leading
        q = [0] * max(len(rem) - dd, 0)
        for k in range(len(rem) - 1 - dd, -1, -1):
            top = rem[k + dd]
            if top == 0:
                continue
            if top % lc:
                return IntPolynomial(q), IntPolynomial(rem)
            f = top // lc
            q[k] = f
            for i, c in enumerate(divisor.coeffs):
                rem[k + i] -= f * c
        return IntPolynomial(q), IntPolynomial(rem)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"IntPolynomial({format_poly(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "IntPolynomial":
        return parse_poly(text)


def _poly(p) -> IntPolynomial:
    return p if isinstance(p, IntPolynomial) else IntPolynomial.constant(int(p))


def format_poly(p: IntPolynomial) -> str:
    """Descending-degree text, e.g. ``x^3 - 2*x^2 - x + 2``."""
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            xk = "x" if k == 1 else f"x^{k}"
            body = xk if mag == 1 else f"{mag}*{xk}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def parse_poly(text: str) -> IntPolynomial:
    """Parse the format produced by format_poly (``*`` and spacing optional)."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    coeffs: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not first and not m.group(1)):
            raise ValueError(f"cannot parse polynomial {text!r} at position {pos}")
        sgn, digits, xpart, power = m.groups()
        if not digits and not xpart:
            raise ValueError(f"cannot parse polynomial {text!r} at position {pos}")
        c = int(digits) if digits else 1
        k = (int(power) if power else 1) if xpart else 0
        coeffs[k] = coeffs.get(k, 0) + (-c if sgn == "-" else c)
        pos = m.end()
        while pos < len(s) and s[pos] == " ":
            pos += 1
        first = False
    deg = max(coeffs)
    return IntPolynomial(coeffs.get(k, 0) for k in range(deg + 1))


def poly_mul(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    return a * b


def poly_product(factors: Iterable[IntPolynomial]) -> IntPolynomial:
    return reduce(poly_mul, factors, IntPolynomial((1,)))


def poly_divides(divisor: IntPolynomial, p: IntPolynomial) -> tuple[bool, IntPolynomial]:
    """(True, quotient) iff ``divisor`` divides ``p`` exactly over Z."""
    q, r = p.divmod_exact(divisor)
    return r.is_zero(), q


def poly_eval(p: IntPolynomial, x: int) -> int:
    return p(x)


def charpoly(m) -> IntPolynomial:
    """det(x*I - m) by the Berkowitz recurrence.

    The matrix is held in padded row-sparse form, so each step costs
    O(size * row width) instead of O(size**2); adjacency matrices with a
    handful of entries per row stay cheap up to a few hundred rows.
    """
    a = _obj(m)
    n = a.shape[0]
    width = max(1, max(int(np.count_nonzero(row)) for row in a) if n else 1)
    cols = np.zeros((n, width), dtype=np.int64)
    vals = np.zeros((n, width), dtype=object)
    vals[:] = 0
    for i in range(n):
        nz = np.nonzero(a[i])[0]
        cols[i, : len(nz)] = nz
        vals[i, : len(nz)] = a[i, nz]

    poly = np.array([1], dtype=object)  # descending coefficients of det(xI - A_r)
    for r in range(1, n + 1):
        s = r - 1  # size of the leading block A_{r-1}
        t = np.empty(r + 1, dtype=object)
        t[0] = 1
        t[1] = -a[s, s]
        if s:
            inside = cols[:s] < s
            bcols = np.where(inside, cols[:s], 0)
            bvals = np.where(inside, vals[:s], 0)
            row = a[s, :s]
            v = a[:s, s].copy()
            for k in range(2, r + 1):
                t[k] = -int(np.dot(row, v))
                if k < r:
                    v = (bvals * v[bcols]).sum(axis=1)
        poly = np.convolve(t, poly)[: r + 1]
    return IntPolynomial(reversed(poly.tolist()))


def pm1_class(N: int) -> tuple[str, str]:
    """Classes of the Collatz charpoly P_N at +1 and -1 for an odd prime N.

    Each is "zero" (value 0), "div" (nonzero multiple of N) or "nondiv".
    """
    from .graphs import adjacency_matrix, build_collatz
    from .numtheory import is_prime

    if N < 3 or N % 2 == 0 or not is_prime(N):
        raise ValueError(f"N must be an odd prime, got {N}")
    p = charpoly(adjacency_matrix(build_collatz(N)))

    def cls(v: int) -> str:
        if v == 0:
            return "zero"
        return "div" if v % N == 0 else "nondiv"

    return cls(p(1)), cls(p(-1))

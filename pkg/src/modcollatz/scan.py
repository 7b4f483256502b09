"""Bulk determinant scans over odd moduli using the closed-form formulas.

A smallest-prime-factor sieve covers the whole range.  Zero determinants
are found in a vectorized pass (some prime factor has an even order); only
the survivors get their cycle count K computed, from a per-prime order
table built once before any worker starts.
"""
from __future__ import annotations

import multiprocessing as mp
import sys
from dataclasses import dataclass
from math import lcm
from typing import Iterable, Iterator, Optional, TextIO

import numpy as np

from .detvalue import DetValue
from .numtheory import spf_sieve

KINDS = ("collatz", "conway")
CSV_HEADER = "N,is_prime,sign,exp2,factor3"
PLOT_HEADER = "N,primality,signed_log2"
BLOCK = 1 << 19  # odd moduli per block


@dataclass(frozen=True)
class ScanRecord:
    N: int
    kind: str
    det: DetValue
    is_prime: bool
    elapsed: Optional[float] = None  # seconds, only for single queries

    def csv_row(self) -> str:
        d = self.det
        return f"{self.N},{int(self.is_prime)},{d.sign},{d.exp2},{int(d.factor3)}"

    def plot_row(self) -> str:
        v = self.det.signed_log2
        return f"{self.N},{'prime' if self.is_prime else 'composite'},{'' if v is None else v}"

    def as_dict(self) -> dict:
        d = {
            "N": self.N,
            "kind": self.kind,
            "is_prime": self.is_prime,
            "sign": self.det.sign,
            "exp2": self.det.exp2,
            "factor3": self.det.factor3,
            "det": str(self.det),
        }
        if self.elapsed is not None:
            d["elapsed"] = self.elapsed
        return d


def parse_csv_row(line: str, kind: str = "collatz") -> ScanRecord:
    n, p, s, e, f = (int(x) for x in line.strip().split(","))
    return ScanRecord(n, kind, DetValue(s, e, bool(f)), bool(p))


@dataclass
class ScanBlock:
    """Results for one contiguous block, as parallel arrays sorted by N."""

    N: np.ndarray
    is_prime: np.ndarray
    sign: np.ndarray
    exp2: np.ndarray

    def __len__(self) -> int:
        return len(self.N)


class Scanner:
    """Sieve plus per-prime tables for one kind and upper bound.

    The base of the relevant orders is 3 for Collatz and 2 for Conway.
    After construction everything is read-only, so forked workers share it.
    """

    def __init__(self, kind: str, limit: int):
        if kind not in KINDS:
            raise ValueError(f"unknown kind {kind!r}, expected one of {KINDS}")
        self.kind = kind
        self.base = 3 if kind == "collatz" else 2
        self.limit = max(int(limit), 3)
        self.spf = spf_sieve(self.limit)
        idx = np.arange(self.limit + 1)
        primes = idx[(self.spf == idx) & (idx >= 2)]
        # bad[p]: ord_p(base) is even, which forces det = 0
        self.bad = np.zeros(self.limit + 1, dtype=bool)
        self.prime_order: dict[int, int] = {}
        for p in primes.tolist():
            if p == self.base:
                continue
            m = p - 1
            m //= m & -m
            if pow(self.base, m, p) != 1:
                self.bad[p] = True
            else:
                self.prime_order[p] = self._order_dividing(p, m)
        if kind == "collatz":
            self.bad[3] = False  # powers of 3 are split off
        else:
            self.bad[3] = True  # 3 | N gives det M_N = 0
        self.bad[2] = True
        self._pp_cache: dict[tuple[int, int], int] = {}

    def _factor(self, n: int) -> list[tuple[int, int]]:
        out = []
        spf = self.spf
        while n > 1:
            p = int(spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out

    def _order_dividing(self, p: int, m: int) -> int:
        """ord_p(base), known to divide m."""
        o = m
        for r, _ in self._factor(m):
            while o % r == 0 and pow(self.base, o // r, p) == 1:
                o //= r
        return o

    def _pp_order(self, p: int, e: int) -> int:
        if e == 1:
            return self.prime_order[p]
        key = (p, e)
        o = self._pp_cache.get(key)
        if o is None:
            prev = self._pp_order(p, e - 1)
            o = prev if pow(self.base, prev, p**e) == 1 else prev * p
            self._pp_cache[key] = o
        return o

    def K(self, n: int) -> int:
        """Cycle count for a modulus already known to have a nonzero determinant."""
        terms = [(1, 1)]
        for p, e in self._factor(n):
            if p == 3 and self.kind == "collatz":
                continue
            new = []
            for ph, o in terms:
                new.append((ph, o))
                pj_phi = p - 1
                for j in range(1, e + 1):
                    new.append((ph * pj_phi, lcm(o, self._pp_order(p, j))))
                    pj_phi *= p
            terms = new
        total = sum(ph // o for ph, o in terms)
        return total - 1 if self.kind == "conway" else total

    def sign_of(self, n: np.ndarray) -> np.ndarray:
        if self.kind == "collatz":
            r = n % 8
            return np.where((r == 1) | (r == 7), 1, -1).astype(np.int8)
        r = n % 24
        return np.where(np.isin(r, (1, 5, 19, 23)), 1, -1).astype(np.int8)

    def block(self, lo: int, hi: int, primes_only: bool = False, nonzero_only: bool = False) -> ScanBlock:
        """Odd N with lo <= N <= hi."""
        first = lo | 1
        n = np.arange(first, hi + 1, 2, dtype=np.int64)
        spf = self.spf
        is_prime = (spf[n] == n) & (n > 1)
        if primes_only:
            n, is_prime = n[is_prime], is_prime[is_prime]
        zero = np.zeros(len(n), dtype=bool)
        rest = n.copy()
        while True:
            live = rest > 1
            if not live.any():
                break
            p = spf[rest[live]]
            zero[live] |= self.bad[p]
            rest[live] //= p
        sign = np.where(zero, 0, self.sign_of(n)).astype(np.int8)
        exp2 = np.zeros(len(n), dtype=np.int64)
        good = np.nonzero(~zero)[0]
        exp2[good] = [self.K(int(v)) for v in n[good]]
        if nonzero_only:
            keep = ~zero
            n, is_prime, sign, exp2 = n[keep], is_prime[keep], sign[keep], exp2[keep]
        return ScanBlock(n, is_prime, sign, exp2)


_WORKER: Optional[Scanner] = None
_WORKER_OPTS: tuple[bool, bool] = (False, False)


def _run_block(bounds: tuple[int, int]) -> ScanBlock:
    assert _WORKER is not None
    return _WORKER.block(bounds[0], bounds[1], *_WORKER_OPTS)


def _partition(lo: int, hi: int, size: int) -> list[tuple[int, int]]:
    out = []
    a = lo
    while a <= hi:
        b = min(hi, a + 2 * size - 1)
        out.append((a, b))
        a = b + 1
    return out


def scan_blocks(kind: str, lo: int, hi: int, jobs: int = 1, primes_only: bool = False,
                nonzero_only: bool = False, block_size: int = BLOCK,
                scanner: Optional[Scanner] = None) -> Iterator[ScanBlock]:
    """Yield result blocks for odd N in [lo, hi] in ascending order.

    With ``jobs > 1`` blocks are computed by forked workers and merged in
    order, so the output does not depend on the number of jobs.
    """
    global _WORKER, _WORKER_OPTS
    if lo > hi:
        raise ValueError(f"empty range: {lo} > {hi}")
    lo = max(lo, 1)
    sc = scanner if scanner is not None and scanner.limit >= hi and scanner.kind == kind else Scanner(kind, hi)
    parts = _partition(lo, hi, block_size)
    if jobs <= 1 or len(parts) == 1:
        for a, b in parts:
            yield sc.block(a, b, primes_only, nonzero_only)
        return
    _WORKER, _WORKER_OPTS = sc, (primes_only, nonzero_only)
    ctx = mp.get_context("fork")
    try:
        with ctx.Pool(jobs) as pool:
            yield from pool.imap(_run_block, parts)
    finally:
        _WORKER = None


def iter_records(blocks: Iterable[ScanBlock], kind: str) -> Iterator[ScanRecord]:
    factor3 = kind == "conway"
    for blk in blocks:
        for n, p, s, e in zip(blk.N.tolist(), blk.is_prime.tolist(), blk.sign.tolist(), blk.exp2.tolist()):
            yield ScanRecord(n, kind, DetValue(s, e, factor3 and s != 0), p)


def scan(kind: str, lo: int, hi: int, **kw) -> Iterator[ScanRecord]:
    return iter_records(scan_blocks(kind, lo, hi, **kw), kind)


class RecordTracker:
    """Largest exp2 per (sign, primality) quadrant; ties keep the smaller N."""

    QUADRANTS = ((1, True), (-1, True), (1, False), (-1, False))

    def __init__(self, kind: str):
        self.kind = kind
        self.best: dict[tuple[int, bool], tuple[int, int]] = {}

    def update(self, blk: ScanBlock) -> None:
        for s in (1, -1):
            for prime in (True, False):
                sel = (blk.sign == s) & (blk.is_prime == prime)
                if not sel.any():
                    continue
                exps = blk.exp2[sel]
                i = int(np.argmax(exps))  # first maximum, so the smallest N
                cand = (int(exps[i]), int(blk.N[sel][i]))
                cur = self.best.get((s, prime))
                if cur is None or cand[0] > cur[0]:
                    self.best[(s, prime)] = cand

    def records(self) -> dict[tuple[int, bool], ScanRecord]:
        f3 = self.kind == "conway"
        return {
            q: ScanRecord(n, self.kind, DetValue(q[0], e, f3), q[1])
            for q, (e, n) in self.best.items()
        }

    def summary_lines(self) -> list[str]:
        recs = self.records()
        lines = []
        for q in self.QUADRANTS:
            label = f"{'prime' if q[1] else 'composite'} {'+' if q[0] > 0 else '-'}"
            r = recs.get(q)
            lines.append(f"# record {label}: " + (f"N={r.N} det={r.det}" if r else "none"))
        return lines


def find_records(kind: str, lo: int, hi: int, **kw) -> dict[tuple[int, bool], ScanRecord]:
    tracker = RecordTracker(kind)
    for blk in scan_blocks(kind, lo, hi, **kw):
        tracker.update(blk)
    return tracker.records()


def write_csv(blocks: Iterable[ScanBlock], kind: str, out: TextIO = sys.stdout,
              tracker: Optional[RecordTracker] = None, plot: bool = False) -> int:
    """Stream rows to ``out``; returns the number of rows written."""
    out.write((PLOT_HEADER if plot else CSV_HEADER) + "\n")
    f3 = int(kind == "conway")
    count = 0
    for blk in blocks:
        if tracker is not None:
            tracker.update(blk)
        ns, ps, ss, es = blk.N.tolist(), blk.is_prime.tolist(), blk.sign.tolist(), blk.exp2.tolist()
        if plot:
            lines = [
                f"{n},{'prime' if p else 'composite'},{s * e if s else ''}\n"
                for n, p, s, e in zip(ns, ps, ss, es)
            ]
        else:
            lines = [
                f"{n},{int(p)},{s},{e},{f3 if s else 0}\n"
                for n, p, s, e in zip(ns, ps, ss, es)
            ]
        out.writelines(lines)
        count += len(lines)
    return count

import io
import random

import pytest

from modcollatz.detvalue import DetValue
from modcollatz.formulas import det_collatz_formula, det_conway_formula
from modcollatz.numtheory import is_prime
from modcollatz.scan import (
    CSV_HEADER,
    PLOT_HEADER,
    RecordTracker,
    Scanner,
    find_records,
    parse_csv_row,
    scan,
    scan_blocks,
    write_csv,
)
from reference_tables import COLLATZ_PRIME_DETS

FORMULA = {"collatz": det_collatz_formula, "conway": det_conway_formula}


def test_prime_table_rows():
    rows = list(scan("collatz", 3, 999, primes_only=True, nonzero_only=True))
    assert len(rows) == 57
    got = {r.N: r.det.signed_log2 for r in rows}
    assert got == COLLATZ_PRIME_DETS
    assert all(r.is_prime for r in rows)


def test_zero_primes_are_reported():
    rows = {r.N: r for r in scan("collatz", 3, 999, primes_only=True)}
    assert rows[7].det.is_zero and rows[13].det == DetValue(-1, 5)
    assert sum(not r.det.is_zero for r in rows.values()) == 57


@pytest.mark.parametrize("kind", ["collatz", "conway"])
def test_scan_matches_formulas(kind):
    for r in scan(kind, 1, 6001, block_size=500):
        assert r.det == FORMULA[kind](r.N), r.N
        assert r.is_prime == is_prime(r.N)


def test_scan_covers_odd_inclusive_range():
    ns = [r.N for r in scan("collatz", 10, 21)]
    assert ns == [11, 13, 15, 17, 19, 21]
    with pytest.raises(ValueError):
        list(scan("collatz", 5, 3))
    with pytest.raises(ValueError):
        Scanner("other", 10)


def test_jobs_do_not_change_output():
    def dump(jobs):
        buf = io.StringIO()
        write_csv(scan_blocks("collatz", 3, 40001, jobs=jobs, block_size=3000), "collatz", buf)
        return buf.getvalue()

    assert dump(1) == dump(2) == dump(3)


def test_csv_round_trip_and_sample():
    buf = io.StringIO()
    tracker = RecordTracker("conway")
    n = write_csv(scan_blocks("conway", 1, 20001), "conway", buf, tracker=tracker)
    lines = buf.getvalue().splitlines()
    assert lines[0] == CSV_HEADER and len(lines) == n + 1 == 10002
    rng = random.Random(1)
    for line in rng.sample(lines[1:], len(lines) // 100):
        rec = parse_csv_row(line, "conway")
        assert rec.csv_row() == line
        assert rec.det == det_conway_formula(rec.N)
    assert set(tracker.records()) <= set(RecordTracker.QUADRANTS)


def test_row_51157():
    (rec,) = scan("collatz", 51157, 51157)
    assert rec.det == DetValue(-1, 1045)
    assert rec.csv_row().endswith(",-1,1045,0")


def test_plot_rows():
    buf = io.StringIO()
    write_csv(scan_blocks("collatz", 3, 1000), "collatz", buf, plot=True)
    lines = buf.getvalue().splitlines()
    assert lines[0] == PLOT_HEADER
    assert "13,prime,-5" in lines
    assert "757,prime,-85" in lines
    assert "7,prime," in lines
    assert "9,composite,1" in lines


def test_records_small_range():
    recs = find_records("collatz", 1, 100001)
    brute = {}
    for r in scan("collatz", 1, 100001):
        if r.det.is_zero:
            continue
        q = (r.det.sign, r.is_prime)
        if q not in brute or r.det.exp2 > brute[q].det.exp2:
            brute[q] = r
    assert {q: (r.N, r.det) for q, r in recs.items()} == {q: (r.N, r.det) for q, r in brute.items()}
    tracker = RecordTracker("collatz")
    tracker.best = {(1, True): (3, 11)}
    assert tracker.summary_lines()[:2] == ["# record prime +: N=11 det=2^3", "# record prime -: none"]

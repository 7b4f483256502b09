"""
Scanning many moduli
====================

A smallest prime factor sieve plus a table of prime orders handles all
odd N below ten million in seconds.
"""

import os

from modcollatz import RecordTracker, scan, scan_blocks

# the nonzero determinants for prime N < 200
for rec in scan("collatz", 3, 199, primes_only=True, nonzero_only=True):
    print(rec.N, rec.det)

# record exponents per sign and primality
limit = int(os.environ.get("SCAN_LIMIT", 1_000_000))
tracker = RecordTracker("collatz")
for blk in scan_blocks("collatz", 1, limit, jobs=os.cpu_count() or 1):
    tracker.update(blk)
print("\n".join(tracker.summary_lines()))

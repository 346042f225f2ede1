"""Double-double arithmetic on numpy arrays (error-free transformations).

Used to evaluate alternating binomial sums whose terms cancel by many
orders of magnitude.  All operations are elementwise on float64 arrays.
"""

import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1
DD_EPS = 2.0**-104


def two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def fast_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def dd_add(ah, al, bh, bl):
    s, e = two_sum(ah, bh)
    t, f = two_sum(al, bl)
    e = e + t
    s, e = fast_two_sum(s, e)
    e = e + f
    return fast_two_sum(s, e)


def dd_mul(ah, al, bh, bl):
    p, e = two_prod(ah, bh)
    e = e + (ah * bl + al * bh)
    return fast_two_sum(p, e)


def int_to_dd(n: int):
    """Split an integer below 2**106 into an exact (hi, lo) pair."""
    hi = float(n)
    rest = n - int(hi)
    lo = float(rest)
    if int(lo) != rest:
        raise OverflowError(f"integer {n} is not representable as a double-double")
    return hi, lo

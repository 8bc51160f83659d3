"""numba-compiled search kernels for the finite-field classifier.

Each kernel mirrors a function of the same name in ``_kernels_numpy``; the
two backends must return identical arrays. Maps are encoded as integers:
base-p digit strings for unrestricted tables, lexicographic permutation
ranks (Lehmer codes) for tables constrained to fix 0, 1 and p-1.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _decode_base_p(idx, p, out):
    t = idx
    for j in range(p):
        out[j] = t % p
        t //= p


@njit(cache=True)
def _table_ok(table, p, inv, xs, ys, args):
    for i in range(xs.shape[0]):
        fx = table[xs[i]]
        fy = table[ys[i]]
        fd = (fx - fy) % p
        if fd == 0:
            return False
        if table[args[i]] != (fx + fy) * inv[fd] % p:
            return False
    return True


@njit(cache=True)
def scan_all_maps(p, inv, xs, ys, args):
    """Ids of all self-maps of F_p (p**p of them) passing every pair."""
    total = 1
    for _ in range(p):
        total *= p
    mask = np.zeros(total, dtype=np.bool_)
    table = np.empty(p, dtype=np.int64)
    for idx in range(total):
        _decode_base_p(idx, p, table)
        if _table_ok(table, p, inv, xs, ys, args):
            mask[idx] = True
    return np.nonzero(mask)[0]


@njit(cache=True)
def scan_constrained(p, inv, xs, ys, args):
    """Ranks of permutations fixing 0, 1, p-1 that pass every pair.

    The (p-3)! permutations of {2, .., p-2} are enumerated by lexicographic
    rank; rank decoding is the standard factorial-base (Lehmer) expansion.
    """
    m = p - 3
    total = 1
    for i in range(2, m + 1):
        total *= i
    fact = np.empty(m + 1, dtype=np.int64)
    fact[0] = 1
    for i in range(1, m + 1):
        fact[i] = fact[i - 1] * i
    mask = np.zeros(total, dtype=np.bool_)
    table = np.empty(p, dtype=np.int64)
    avail = np.empty(m, dtype=np.int64)
    table[0] = 0
    table[1] = 1
    table[p - 1] = p - 1
    for idx in range(total):
        for i in range(m):
            avail[i] = 2 + i
        rem = idx
        cnt = m
        for pos in range(m):
            digit = rem // fact[cnt - 1]
            rem -= digit * fact[cnt - 1]
            table[2 + pos] = avail[digit]
            for j in range(digit, cnt - 1):
                avail[j] = avail[j + 1]
            cnt -= 1
        if _table_ok(table, p, inv, xs, ys, args):
            mask[idx] = True
    return np.nonzero(mask)[0]


@njit(cache=True)
def first_violation(table, p, inv):
    """First failing pair in canonical order (y < x sweep, then y > x).

    Returns x * p + y for the first pair where the equation fails or the
    image collides, or -1 when the table passes everywhere.
    """
    for x in range(p):
        for y in range(x):
            fx = table[x]
            fy = table[y]
            fd = (fx - fy) % p
            arg = (x + y) * inv[(x - y) % p] % p
            if fd == 0 or table[arg] != (fx + fy) * inv[fd] % p:
                return x * p + y
    for x in range(p):
        for y in range(x + 1, p):
            fx = table[x]
            fy = table[y]
            fd = (fx - fy) % p
            arg = (x + y) * inv[(x - y) % p] % p
            if fd == 0 or table[arg] != (fx + fy) * inv[fd] % p:
                return x * p + y
    return -1


@njit(cache=True)
def first_violation_power(p, k, inv):
    """Like first_violation for x -> x**k, without materializing a table.

    Powers are taken by repeated squaring mod p so intermediates stay in
    int64 range for any p the classifier accepts.
    """
    powers = np.empty(p, dtype=np.int64)
    for x in range(p):
        r = 1
        b = x
        e = k
        while e:
            if e & 1:
                r = r * b % p
            b = b * b % p
            e >>= 1
        powers[x] = r
    for x in range(p):
        for y in range(x):
            fx = powers[x]
            fy = powers[y]
            fd = (fx - fy) % p
            arg = (x + y) * inv[(x - y) % p] % p
            if fd == 0 or powers[arg] != (fx + fy) * inv[fd] % p:
                return x * p + y
    for x in range(p):
        for y in range(x + 1, p):
            fx = powers[x]
            fy = powers[y]
            fd = (fx - fy) % p
            arg = (x + y) * inv[(x - y) % p] % p
            if fd == 0 or powers[arg] != (fx + fy) * inv[fd] % p:
                return x * p + y
    return -1

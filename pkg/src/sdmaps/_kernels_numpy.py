"""Pure-numpy search kernels, the fallback twin of ``_kernels_numba``.

Same contracts, same encodings, same return values; enumeration is chunked
and each chunk is filtered pair by pair with early compaction, so the
survivor arrays shrink fast even though nothing here is compiled.
"""

from __future__ import annotations

import itertools

import numpy as np

_CHUNK = 1 << 15


def _filter_tables(tables: np.ndarray, ids: np.ndarray, p: int, inv: np.ndarray,
                   xs: np.ndarray, ys: np.ndarray, args: np.ndarray) -> np.ndarray:
    for i in range(xs.shape[0]):
        if ids.size == 0:
            break
        fx = tables[:, xs[i]]
        fy = tables[:, ys[i]]
        fd = (fx - fy) % p
        rhs = (fx + fy) * inv[fd] % p  # rows with fd == 0 are dropped below
        keep = (fd != 0) & (tables[:, args[i]] == rhs)
        tables = tables[keep]
        ids = ids[keep]
    return ids


def scan_all_maps(p, inv, xs, ys, args):
    """Ids of all self-maps of F_p (p**p of them) passing every pair."""
    total = p**p
    powers = p ** np.arange(p, dtype=np.int64)
    survivors = []
    for start in range(0, total, _CHUNK):
        ids = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        tables = ids[:, None] // powers % p
        survivors.append(_filter_tables(tables, ids, p, inv, xs, ys, args))
    return np.concatenate(survivors)


def scan_constrained(p, inv, xs, ys, args):
    """Ranks of permutations fixing 0, 1, p-1 that pass every pair.

    itertools.permutations over the sorted middle segment yields exactly
    lexicographic-rank order, matching the compiled backend's Lehmer decode.
    """
    m = p - 3
    perm_iter = itertools.permutations(range(2, p - 1))
    survivors = []
    offset = 0
    while True:
        block = list(itertools.islice(perm_iter, _CHUNK))
        if not block:
            break
        n = len(block)
        tables = np.empty((n, p), dtype=np.int64)
        tables[:, 0] = 0
        tables[:, 1] = 1
        tables[:, p - 1] = p - 1
        if m:
            tables[:, 2 : p - 1] = np.array(block, dtype=np.int64)
        ids = np.arange(offset, offset + n, dtype=np.int64)
        survivors.append(_filter_tables(tables, ids, p, inv, xs, ys, args))
        offset += n
    return np.concatenate(survivors)


def _first_bad_in_sweep(table: np.ndarray, p: int, inv: np.ndarray,
                        lower: bool, row_chunk: int = 64) -> int:
    y = np.arange(p, dtype=np.int64)[None, :]
    for x0 in range(0, p, row_chunk):
        x = np.arange(x0, min(x0 + row_chunk, p), dtype=np.int64)[:, None]
        valid = (y < x) if lower else (y > x)
        fx = table[x]
        fy = table[y]
        fd = (fx - fy) % p
        arg = (x + y) * inv[(x - y) % p] % p
        rhs = (fx + fy) * inv[fd] % p
        bad = valid & ((fd == 0) | (table[arg] != rhs))
        if bad.any():
            flat = int(np.argmax(bad))
            bx, by = divmod(flat, p)
            return (x0 + bx) * p + by
    return -1


def first_violation(table, p, inv):
    """First failing pair in canonical order (y < x sweep, then y > x)."""
    table = np.ascontiguousarray(table, dtype=np.int64)
    hit = _first_bad_in_sweep(table, p, inv, lower=True)
    if hit >= 0:
        return hit
    return _first_bad_in_sweep(table, p, inv, lower=False)


def first_violation_power(p, k, inv):
    """Like first_violation for x -> x**k, via a vectorized power table."""
    base = np.arange(p, dtype=np.int64)
    result = np.ones(p, dtype=np.int64)
    b = base.copy()
    e = k
    while e:
        if e & 1:
            result = result * b % p
        b = b * b % p
        e >>= 1
    return first_violation(result, p, inv)

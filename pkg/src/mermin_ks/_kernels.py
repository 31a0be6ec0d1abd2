"""Bitmask scan kernels with a numba path and a pure-numpy path.

Every kernel enumerates *all* ``2**n`` bit assignments of ``n`` binary
variables against a list of context bitmasks.  The numpy path splits each
assignment into ``high`` and ``low`` bit halves: per-context tables are
precomputed over the low half and the high half is looped over, so the work
per assignment is one vectorised table add per context.  The numba path runs
the same split with the tally written as explicit 8-bit loops.

The backend is chosen once at import time.  Set ``MERMIN_KS_DISABLE_NUMBA=1``
to force the numpy path (numba is also skipped if it cannot be imported).
Both implementations stay importable under their explicit names so tests and
the benchmark can compare them directly.
"""
from __future__ import annotations

import os

import numpy as np

_LOW_BITS_MAX = 16
MAX_BITS = 40

_DISABLED = os.environ.get("MERMIN_KS_DISABLE_NUMBA", "").strip().lower() not in (
    "",
    "0",
    "false",
    "no",
)

try:
    if _DISABLED:
        raise ImportError("numba disabled by MERMIN_KS_DISABLE_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


def _split(n: int) -> tuple[int, int]:
    low = min(n, _LOW_BITS_MAX)
    return low, n - low


def _popcount(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(a) if hasattr(np, "bitwise_count") else _popcount_slow(a)


def _popcount_slow(a: np.ndarray) -> np.ndarray:
    a = a.astype(np.uint64)
    out = np.zeros(a.shape, dtype=np.uint8)
    while a.any():
        out += (a & np.uint64(1)).astype(np.uint8)
        a >>= np.uint64(1)
    return out


def _check(masks: np.ndarray, n: int) -> np.ndarray:
    if not 0 <= n <= MAX_BITS:
        raise ValueError(f"bit count {n} outside [0, {MAX_BITS}]")
    masks = np.ascontiguousarray(masks, dtype=np.int64)
    if masks.ndim != 1:
        raise ValueError("masks must be one-dimensional")
    if n < 63 and np.any(masks >> n):
        raise ValueError("mask uses bits beyond n")
    if len(masks) > 255:
        raise ValueError("at most 255 contexts supported by the uint8 tally")
    return masks


def _low_tables(masks: np.ndarray, low: int) -> np.ndarray:
    """Popcount of ``L & mask_lo`` for every low value L, shape (contexts, 2**low)."""
    values = np.arange(1 << low, dtype=np.int64)
    lo = masks & ((1 << low) - 1)
    return _popcount(values[None, :] & lo[:, None]).astype(np.uint8)


# ---------------------------------------------------------------- numpy path


def max_exactly_one_numpy(masks: np.ndarray, n: int) -> tuple[int, int]:
    """Max number of contexts holding exactly one set bit, with a witness.

    Returns ``(best, x)`` where ``x`` is the smallest assignment attaining the
    maximum.
    """
    masks = _check(masks, n)
    low, high = _split(n)
    pop_lo = _low_tables(masks, low)
    zero_lo = (pop_lo == 0).astype(np.uint8)
    one_lo = (pop_lo == 1).astype(np.uint8)
    hi_masks = masks >> low
    best, witness = -1, 0
    acc = np.empty(1 << low, dtype=np.uint8)
    for h in range(1 << high):
        acc[:] = 0
        for c, hm in enumerate(hi_masks):
            k = int(h & int(hm)).bit_count()
            if k == 0:
                acc += one_lo[c]
            elif k == 1:
                acc += zero_lo[c]
        j = int(acc.argmax())
        if acc[j] > best:
            best, witness = int(acc[j]), (h << low) | j
    return best, witness


def count_exactly_one_numpy(masks: np.ndarray, n: int) -> int:
    """Number of assignments in which every context holds exactly one set bit."""
    masks = _check(masks, n)
    low, high = _split(n)
    pop_lo = _low_tables(masks, low)
    zero_lo = pop_lo == 0
    one_lo = pop_lo == 1
    hi_masks = masks >> low
    total = 0
    for h in range(1 << high):
        ok = np.ones(1 << low, dtype=bool)
        for c, hm in enumerate(hi_masks):
            k = int(h & int(hm)).bit_count()
            if k == 0:
                ok &= one_lo[c]
            elif k == 1:
                ok &= zero_lo[c]
            else:
                ok[:] = False
                break
        total += int(ok.sum())
    return total


def count_parity_numpy(masks: np.ndarray, targets: np.ndarray, n: int) -> int:
    """Assignments x with ``popcount(x & mask_c) % 2 == target_c`` for every c."""
    masks = _check(masks, n)
    targets = np.asarray(targets, dtype=np.uint8) & 1
    if targets.shape != masks.shape:
        raise ValueError("one target per mask required")
    low, high = _split(n)
    par_lo = (_low_tables(masks, low) & 1).astype(np.uint8)
    hi_masks = masks >> low
    total = 0
    for h in range(1 << high):
        ok = np.ones(1 << low, dtype=bool)
        for c, hm in enumerate(hi_masks):
            want = (int(targets[c]) ^ int(h & int(hm)).bit_count()) & 1
            ok &= par_lo[c] == want
        total += int(ok.sum())
    return total


# ---------------------------------------------------------------- numba path
#
# Same split as the numpy path, with the per-high-half tally as explicit
# loops.  uint8 adds are truncated explicitly so LLVM keeps them 8-bit wide.

if HAVE_NUMBA:

    @njit(cache=True)
    def _popcount_nb(v):
        c = 0
        while v:
            v &= v - 1
            c += 1
        return c

    @njit(cache=True)
    def _tally_nb(acc, zero_lo, one_lo, hi_masks, h):
        size = acc.shape[0]
        acc[:] = 0
        for c in range(hi_masks.shape[0]):
            k = _popcount_nb(h & hi_masks[c])
            if k > 1:
                continue
            row = one_lo[c] if k == 0 else zero_lo[c]
            for j in range(size):
                acc[j] = np.uint8(acc[j] + row[j])

    @njit(cache=True)
    def _max_exactly_one_nb(zero_lo, one_lo, hi_masks, low, high):
        size = 1 << low
        acc = np.empty(size, dtype=np.uint8)
        best = -1
        witness = 0
        for h in range(1 << high):
            _tally_nb(acc, zero_lo, one_lo, hi_masks, h)
            m = 0
            for j in range(size):
                if acc[j] > m:
                    m = acc[j]
            if m > best:
                best = m
                witness = (h << low) | np.argmax(acc)
        return best, witness

    @njit(cache=True)
    def _count_full_nb(zero_lo, one_lo, hi_masks, low, high):
        size = 1 << low
        n_ctx = hi_masks.shape[0]
        acc = np.empty(size, dtype=np.uint8)
        total = 0
        for h in range(1 << high):
            _tally_nb(acc, zero_lo, one_lo, hi_masks, h)
            for j in range(size):
                total += acc[j] == n_ctx
        return total

    @njit(cache=True)
    def _count_parity_nb(even_lo, odd_lo, hi_masks, targets, low, high):
        size = 1 << low
        n_ctx = hi_masks.shape[0]
        acc = np.empty(size, dtype=np.uint8)
        total = 0
        for h in range(1 << high):
            acc[:] = 0
            for c in range(n_ctx):
                want = (targets[c] + _popcount_nb(h & hi_masks[c])) & 1
                row = odd_lo[c] if want else even_lo[c]
                for j in range(size):
                    acc[j] = np.uint8(acc[j] + row[j])
            for j in range(size):
                total += acc[j] == n_ctx
        return total


def _require_numba() -> None:
    if not HAVE_NUMBA:
        raise RuntimeError("numba backend unavailable")


def _exactly_one_tables(masks: np.ndarray, low: int) -> tuple[np.ndarray, np.ndarray]:
    pop_lo = _low_tables(masks, low)
    return (pop_lo == 0).astype(np.uint8), (pop_lo == 1).astype(np.uint8)


def max_exactly_one_numba(masks: np.ndarray, n: int) -> tuple[int, int]:
    _require_numba()
    masks = _check(masks, n)
    low, high = _split(n)
    zero_lo, one_lo = _exactly_one_tables(masks, low)
    best, witness = _max_exactly_one_nb(zero_lo, one_lo, masks >> low, low, high)
    return int(best), int(witness)


def count_exactly_one_numba(masks: np.ndarray, n: int) -> int:
    _require_numba()
    masks = _check(masks, n)
    low, high = _split(n)
    zero_lo, one_lo = _exactly_one_tables(masks, low)
    return int(_count_full_nb(zero_lo, one_lo, masks >> low, low, high))


def count_parity_numba(masks: np.ndarray, targets: np.ndarray, n: int) -> int:
    _require_numba()
    masks = _check(masks, n)
    targets = np.asarray(targets, dtype=np.uint8) & 1
    if targets.shape != masks.shape:
        raise ValueError("one target per mask required")
    low, high = _split(n)
    par_lo = _low_tables(masks, low) & 1
    even_lo = (par_lo == 0).astype(np.uint8)
    odd_lo = (par_lo == 1).astype(np.uint8)
    return int(_count_parity_nb(even_lo, odd_lo, masks >> low, targets, low, high))


if HAVE_NUMBA:
    max_exactly_one = max_exactly_one_numba
    count_exactly_one = count_exactly_one_numba
    count_parity = count_parity_numba
else:
    max_exactly_one = max_exactly_one_numpy
    count_exactly_one = count_exactly_one_numpy
    count_parity = count_parity_numpy


def warmup() -> None:
    """Trigger JIT compilation on a trivial input (no-op on the numpy path)."""
    m = np.array([0b11], dtype=np.int64)
    max_exactly_one(m, 2)
    count_exactly_one(m, 2)
    count_parity(m, np.array([1], dtype=np.uint8), 2)

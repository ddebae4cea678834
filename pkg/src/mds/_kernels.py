"""JIT kernels for the hot loops: character-value rows and windowed
character sums.

Characters appear in two shapes.  "Top" rows fix the upper argument of the
Kronecker symbol and vary the lower one (chi_{8d}(m) = (8d|m), the family
character evaluated along the AFE sum); "bottom" rows fix an odd lower
argument (the Jacobi character m -> (m|n)).  Both are completely
multiplicative in m, so a row costs one symbol per prime plus one product
per composite.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .arith import primes_up_to, spf_table

_TWO_TABLE = np.array([0, 1, 0, -1, 0, -1, 0, 1], dtype=np.int8)


@njit(cache=True)
def jacobi_nb(a: int, n: int) -> int:
    """Jacobi symbol (a|n) for odd n >= 1."""
    if n == 1:
        return 1
    a %= n
    result = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            r = n & 7
            if r == 3 or r == 5:
                result = -result
        a, n = n, a
        if a & 3 == 3 and n & 3 == 3:
            result = -result
        a %= n
    if n == 1:
        return result
    return 0


@njit(cache=True)
def kronecker_nb(a: int, n: int) -> int:
    """Kronecker symbol (a|n) for n >= 1."""
    if n == 1:
        return 1
    result = 1
    while n % 2 == 0:
        if a % 2 == 0:
            return 0
        n //= 2
        r = a & 7
        if r == 3 or r == 5:
            result = -result
    if n == 1:
        return result
    return result * jacobi_nb(a, n)


@njit(cache=True)
def _fill_row(row: np.ndarray, m_max: int, spf: np.ndarray) -> None:
    # complete multiplicativity: row[p] set for all primes p <= m_max
    for m in range(4, m_max + 1):
        p = spf[m]
        if p != m:
            row[m] = row[p] * row[m // p]


@njit(cache=True)
def _top_row(D: int, m_max: int, spf: np.ndarray, primes: np.ndarray,
             qr_flat: np.ndarray, qr_off: np.ndarray, n_qr: int) -> np.ndarray:
    """chi(m) = (D|m) for m = 0..m_max (D > 0).  Per-prime quadratic-residue
    tables cover the first n_qr primes; beyond that the symbol is computed
    directly."""
    row = np.zeros(m_max + 1, dtype=np.int8)
    row[1] = 1
    if m_max >= 2:
        row[2] = _TWO_TABLE[D & 7]
    for i in range(primes.shape[0]):
        p = primes[i]
        if p > m_max:
            break
        if p == 2:
            continue
        if i < n_qr:
            row[p] = qr_flat[qr_off[i] + D % p]
        else:
            row[p] = kronecker_nb(D % p, p)
    _fill_row(row, m_max, spf)
    return row


@njit(cache=True)
def _bottom_row(n: int, m_max: int, spf: np.ndarray, primes: np.ndarray) -> np.ndarray:
    """chi(m) = (m|n) for m = 0..m_max and odd n >= 1 (Jacobi character)."""
    row = np.zeros(m_max + 1, dtype=np.int8)
    row[1] = 1
    for i in range(primes.shape[0]):
        p = primes[i]
        if p > m_max:
            break
        row[p] = jacobi_nb(p, n)
    _fill_row(row, m_max, spf)
    if n == 1 and m_max >= 0:
        row[0] = 1  # (0|1) = 1; harmless, callers start at m = 1
    return row


@njit(cache=True)
def char_table_mod(D: int, q: int, spf: np.ndarray, primes: np.ndarray) -> np.ndarray:
    """R[r] = (D|r) for r = 0..q-1.

    Valid as a period-q lookup for (D|n) when q is a period of the
    character n -> (D|n); callers use q = 8d with D = 8d.
    """
    row = np.zeros(q, dtype=np.int8)
    if q > 1:
        row[1] = 1
    if q > 2:
        row[2] = _TWO_TABLE[D & 7]
    for i in range(primes.shape[0]):
        p = primes[i]
        if p >= q:
            break
        if p > 2:
            row[p] = kronecker_nb(D % p, p)
    for m in range(4, q):
        p = spf[m]
        if p != m:
            row[m] = row[p] * row[m // p]
    return row


@njit(cache=True)
def windowed_char_dot(table: np.ndarray, q: int, n_lo: int, n_hi: int,
                      weights: np.ndarray) -> float:
    """sum over odd n = n_lo, n_lo+2, ..., <= n_hi of (D|n) * weights[i]
    with table[r] = (D|r); n_lo must be odd."""
    total = 0.0
    r = n_lo % q
    idx = 0
    for n in range(n_lo, n_hi + 1, 2):
        c = table[r]
        if c != 0:
            total += c * weights[idx]
        r += 2
        if r >= q:
            r -= q
        idx += 1
    return total


class CharRowBuilder:
    """Process-wide prime/QR tables backing the row kernels."""

    QR_CAP = 1 << 14  # QR lookup tables only for primes below this

    def __init__(self, m_max: int):
        self.m_max = int(m_max)
        self.spf = spf_table(self.m_max)
        self.primes = primes_up_to(self.m_max)
        qr_limit = min(self.m_max, self.QR_CAP)
        n_qr = int(np.searchsorted(self.primes, qr_limit, side="right"))
        offs = np.zeros(max(n_qr, 1), dtype=np.int64)
        total = 0
        for i in range(n_qr):
            offs[i] = total
            total += int(self.primes[i])
        flat = np.zeros(max(total, 1), dtype=np.int8)
        for i in range(n_qr):
            p = int(self.primes[i])
            if p == 2:
                continue
            tbl = np.full(p, -1, dtype=np.int8)
            tbl[0] = 0
            sq = np.unique((np.arange(1, p, dtype=np.int64) ** 2) % p)
            tbl[sq] = 1
            flat[offs[i] : offs[i] + p] = tbl
        self.qr_flat = flat
        self.qr_off = offs
        self.n_qr = n_qr

    def top_row(self, D: int, m_max: int) -> np.ndarray:
        """(D|m) for m = 0..m_max."""
        if m_max > self.m_max:
            raise ValueError("row longer than builder tables")
        return _top_row(int(D), int(m_max), self.spf, self.primes,
                        self.qr_flat, self.qr_off, self.n_qr)

    def bottom_row(self, n: int, m_max: int) -> np.ndarray:
        """(m|n) for m = 0..m_max, odd n >= 1."""
        if m_max > self.m_max:
            raise ValueError("row longer than builder tables")
        return _bottom_row(int(n), int(m_max), self.spf, self.primes)


_BUILDER: CharRowBuilder | None = None


def get_builder(m_max: int = 1 << 14) -> CharRowBuilder:
    global _BUILDER
    if _BUILDER is None or _BUILDER.m_max < m_max:
        _BUILDER = CharRowBuilder(m_max)
    return _BUILDER

"""Integer and multiplicative-function arithmetic.

Everything here is exact: Kronecker symbols over the integers, the odd
square-free sieve that carries the character family, the k-fold divisor
function, ordered-factorization weights f_t(m), and the rational weight
a(n) = prod_{p|n} (1 + 1/p)^{-1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, isqrt

import numpy as np

from .config import DEFAULT_LIMITS
from .errors import ResourceLimitError

__all__ = [
    "kronecker",
    "primes_up_to",
    "spf_table",
    "factorize",
    "mobius",
    "is_square_free",
    "tau_k",
    "f_weight",
    "f_weight_local",
    "a_weight",
    "SquareFreeFamily",
    "sieve_family",
    "square_free_kernel",
]

# (2/n) depends on n mod 8 only: +1 for n = +-1, -1 for n = +-3.
_TWO_TABLE = (0, 1, 0, -1, 0, -1, 0, 1)


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n) for n >= 1.

    Binary reciprocity reduction, O(log^2) bit operations.  Fully
    multiplicative in both arguments; agrees with the Legendre symbol when
    n is an odd prime.
    """
    if n < 1:
        raise ValueError("kronecker: bottom argument must be >= 1")
    if n == 1:
        return 1
    result = 1
    # strip factors of 2 from the bottom
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        while n % 2 == 0:
            n //= 2
            result *= _TWO_TABLE[a & 7]
        if n == 1:
            return result
    a %= n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            result *= _TWO_TABLE[n & 7]
        a, n = n, a
        if a & 3 == 3 and n & 3 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def primes_up_to(n: int) -> np.ndarray:
    """All primes <= n as an int64 array (Eratosthenes)."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0].astype(np.int64)


@lru_cache(maxsize=4)
def spf_table(n: int) -> np.ndarray:
    """Smallest-prime-factor table for 0..n (int32).  spf[0] = spf[1] = 0."""
    if n >= DEFAULT_LIMITS.max_sieve:
        raise ResourceLimitError(f"spf table of size {n} exceeds limit")
    spf = np.zeros(n + 1, dtype=np.int32)
    spf[2::2] = 2
    for p in range(3, isqrt(n) + 1, 2):
        if spf[p] == 0:
            spf[p * p :: 2 * p][spf[p * p :: 2 * p] == 0] = p
    odd = np.arange(1, n + 1, 2, dtype=np.int32)
    sl = spf[1::2]
    sl[sl == 0] = odd[sl == 0]
    spf[1] = 0
    return spf


def factorize(m: int) -> list[tuple[int, int]]:
    """Prime factorization of m >= 1 as [(p, e), ...] with p ascending."""
    if m < 1:
        raise ValueError("factorize expects m >= 1")
    out: list[tuple[int, int]] = []
    for p in (2, 3, 5):
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    # wheel over 6k+-1
    f = 7
    incr = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while f * f <= m:
        if m % f == 0:
            e = 0
            while m % f == 0:
                m //= f
                e += 1
            out.append((f, e))
        f += incr[i]
        i = (i + 1) & 7
    if m > 1:
        out.append((m, 1))
    out.sort()
    return out


def mobius(m: int) -> int:
    """Moebius function mu(m)."""
    mu = 1
    for _, e in factorize(m):
        if e > 1:
            return 0
        mu = -mu
    return mu


def is_square_free(m: int) -> bool:
    return all(e == 1 for _, e in factorize(m))


def square_free_kernel(m: int) -> tuple[int, int]:
    """Write m = m0 * m1^2 with m0 square-free; return (m0, m1)."""
    m0 = 1
    m1 = 1
    for p, e in factorize(m):
        if e % 2:
            m0 *= p
        m1 *= p ** (e // 2)
    return m0, m1


def tau_k(k: int, m: int) -> int:
    """Number of ordered k-tuples (n_1, ..., n_k) with product m."""
    if k < 1 or m < 1:
        raise ValueError("tau_k expects k >= 1 and m >= 1")
    out = 1
    for _, e in factorize(m):
        out *= comb(e + k - 1, k - 1)
    return out


def f_weight_local(t: tuple[complex, ...], p: int, e: int) -> complex:
    """f_t(p^e): sum over compositions e = e_1 + ... + e_k of p^(-sum e_j t_j).

    Computed by the convolution recurrence g_j = g_{j-1} * (p^{-t_j})^e,
    O(k e^2) instead of enumerating all C(e+k-1, k-1) compositions.
    """
    k = len(t)
    if e == 0:
        return 1.0
    if k == 0:
        return 0.0
    x0 = complex(p) ** (-t[0])
    g = [x0**j for j in range(e + 1)]
    for tj in t[1:]:
        x = complex(p) ** (-tj)
        xp = [x**j for j in range(e + 1)]
        g = [sum(g[i] * xp[j - i] for i in range(j + 1)) for j in range(e + 1)]
    return g[e]


def f_weight(t: tuple[complex, ...], m: int) -> complex:
    """f_t(m) = sum over ordered factorizations m = n_1...n_k of prod n_j^(-t_j).

    Reduces to tau_k(len(t), m) at t = 0.  |f_t(m)| <= tau_k(m) whenever
    every Re(t_j) >= 0.
    """
    if m < 1:
        raise ValueError("f_weight expects m >= 1")
    out: complex = 1.0
    for p, e in factorize(m):
        out *= f_weight_local(tuple(t), p, e)
    return out


def a_weight(n: int) -> Fraction:
    """Exact rational a(n) = prod_{p | n} (1 + 1/p)^(-1) = prod p/(p+1).

    Depends only on the radical of n; a(1) = 1.
    """
    if n < 1:
        raise ValueError("a_weight expects n >= 1")
    out = Fraction(1)
    for p, _ in factorize(n):
        out *= Fraction(p, p + 1)
    return out


@dataclass(frozen=True)
class SquareFreeFamily:
    """Indicator of the odd square-free moduli d <= limit.

    ``bitmap[d]`` is True exactly when d is odd and square-free; index 0 is
    always False.  Immutable after construction and shareable across threads.
    """

    limit: int
    bitmap: np.ndarray

    def __contains__(self, d: int) -> bool:
        return 0 < d <= self.limit and bool(self.bitmap[d])

    def members(self, lo: int = 1, hi: int | None = None) -> np.ndarray:
        """Flagged d in [lo, hi] as an int64 array."""
        hi = self.limit if hi is None else min(hi, self.limit)
        if hi < lo:
            return np.empty(0, dtype=np.int64)
        window = self.bitmap[lo : hi + 1]
        return np.nonzero(window)[0].astype(np.int64) + lo

    def count(self, hi: int | None = None) -> int:
        hi = self.limit if hi is None else min(hi, self.limit)
        return int(np.count_nonzero(self.bitmap[: hi + 1]))


def sieve_family(x_max: int, max_entries: int | None = None) -> SquareFreeFamily:
    """Sieve the odd square-free integers up to x_max."""
    if x_max < 1:
        raise ValueError("sieve_family expects x_max >= 1")
    bound = DEFAULT_LIMITS.max_sieve if max_entries is None else max_entries
    if x_max + 1 > bound:
        raise ResourceLimitError(
            f"sieve of {x_max + 1} entries exceeds configured bound {bound}"
        )
    bitmap = np.zeros(x_max + 1, dtype=bool)
    bitmap[1::2] = True
    for p in range(3, isqrt(x_max) + 1, 2):
        # p^2 strikes suffice; even d are already excluded
        bitmap[p * p :: p * p] = False
    return SquareFreeFamily(limit=x_max, bitmap=bitmap)

"""Gauss sums for Jacobi-symbol characters.

Three layers, kept deliberately separate so they can cross-check each other:

* ``tau_sum``     -- the definitional sum tau(chi, l), unit-circle arithmetic;
* ``g_prime_power`` -- the closed five-case evaluation of the modified sum
  G((.|p^k), l) at odd prime powers;
* ``g_modified``  -- G((.|n), l) for odd n assembled multiplicatively from
  prime powers (fast path), with ``tau_sum`` as the brute-force oracle.

G carries the parity twist  G = tau (n = 1 mod 4),  G = -i tau (n = 3 mod 4),
which is what makes it multiplicative in the modulus.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

from .arith import factorize, kronecker

__all__ = ["GaussSumValue", "tau_sum", "g_modified", "g_prime_power", "tau_from_g"]


@dataclass(frozen=True)
class GaussSumValue:
    value: complex
    modulus: int
    shift: int


def tau_sum(n: int, ell: int, chi: Callable[[int], complex] | None = None) -> complex:
    """tau(chi, ell) = sum_{j mod n} chi(j) e(j ell / n) by direct summation.

    Defaults to the Jacobi-symbol character chi = (.|n).  The empty modulus
    n = 1 returns 1 (the convention that makes K(s, (.|1)) = zeta(s)).

    Phases are reduced exactly: e(j*ell/n) is evaluated at (j*ell) mod n, so
    no phase error accumulates for large j*ell.
    """
    if n < 1:
        raise ValueError("tau_sum expects n >= 1")
    if n == 1:
        return 1.0 + 0.0j
    if chi is None:
        chi = lambda j: kronecker(j, n)  # noqa: E731
    total = 0.0 + 0.0j
    w = 2.0 * math.pi / n
    for j in range(n):
        c = chi(j)
        if c:
            r = (j * ell) % n
            total += c * cmath.exp(1j * w * r)
    return total


def g_prime_power(p: int, k: int, ell: int) -> float:
    """Closed-form G((.|p^k), ell) for an odd prime p, exponent k >= 1.

    With a = v_p(ell):
        phi(p^k)              if k <= a, k even
        0                     if k <= a, k odd
        -p^a                  if k = a+1, k even
        (ell p^-a | p) p^a sqrt(p)   if k = a+1, k odd
        0                     if k >= a+2
    The value is always real.
    """
    if p < 3 or p % 2 == 0:
        raise ValueError("g_prime_power expects an odd prime p")
    if k < 0 or ell < 1:
        raise ValueError("g_prime_power expects k >= 0 and ell >= 1")
    if k == 0:
        return 1.0
    a = 0
    q = ell
    while q % p == 0:
        q //= p
        a += 1
    if k <= a:
        if k % 2 == 0:
            return float(p ** k - p ** (k - 1))
        return 0.0
    if k == a + 1:
        if k % 2 == 0:
            return -float(p**a)
        return kronecker(q, p) * p**a * math.sqrt(p)
    return 0.0


def g_modified(n: int, ell: int, brute: bool = False) -> complex:
    """Modified Gauss sum G((.|n), ell) for odd n >= 1.

    Fast path: product of ``g_prime_power`` over the prime powers of n.
    With ``brute=True`` the definitional route is used instead:
    G = tau for n = 1 mod 4 and G = -i tau for n = 3 mod 4.
    """
    if n < 1 or n % 2 == 0:
        raise ValueError("g_modified expects odd n >= 1")
    if ell < 1:
        raise ValueError("g_modified expects ell >= 1")
    if brute:
        t = tau_sum(n, ell)
        return t if n % 4 == 1 else -1j * t
    out = 1.0
    for p, e in factorize(n):
        out *= g_prime_power(p, e, ell)
        if out == 0.0:
            return 0.0
    return out


def tau_from_g(n: int, ell: int) -> complex:
    """tau((.|n), ell) recovered from the multiplicative fast path."""
    g = g_modified(n, ell)
    return g if n % 4 == 1 else 1j * g

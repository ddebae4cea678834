"""Numerical evaluation of zeta, Dirichlet L-functions for real characters,
and the Gauss-sum series K(s, chi).

The primitive-character evaluator is the two-sided smoothed approximate
functional equation obtained from the theta integral: for a real primitive
even character chi mod q (root number +1),

    L(s, chi) = [ S1 + (pi/q)^(s-1/2) S2 ] / Gamma(s/2),
    S1 = sum chi(m) m^(-s)   Gamma(s/2,     pi m^2 / q),
    S2 = sum chi(m) m^(s-1)  Gamma((1-s)/2, pi m^2 / q),

and the analogous odd-parity form with Gamma((s+1)/2), Gamma((2-s)/2).
The Gaussian theta kernel makes both sums effectively sqrt(q) long.  All
evaluations carry explicit truncation bounds; independent oracles (Hurwitz
zeta route, long smoothed direct sums) live at the bottom of the module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np
import scipy.special as sc

from ._kernels import get_builder
from .arith import factorize, kronecker, square_free_kernel
from .config import DEFAULT_TOL
from .errors import ConvergenceError, PoleError

__all__ = [
    "zeta",
    "upper_gamma_real",
    "LEvaluation",
    "l_primitive_real",
    "l_quadratic",
    "l_chi8d",
    "k_series",
    "l_D",
    "l_hurwitz",
    "l_smoothed_direct",
    "parity_of",
]

# B_2, B_4, ..., B_16; B_18 heads the tail estimate
_BERNOULLI = [
    1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6, -3617 / 510,
]
_B18 = 43867 / 798


def zeta(s: complex, tol: float = DEFAULT_TOL.zeta_tail) -> complex:
    """Riemann zeta by Euler-Maclaurin with 8 Bernoulli corrections.

    Guaranteed tail bound <= tol for Re(s) >= -1 and |Im(s)| <= 50; the
    cutoff grows automatically if the explicit remainder bound demands it.
    """
    s = complex(s)
    if abs(s - 1.0) < 1e-12:
        raise PoleError("zeta has its pole at s = 1")
    sigma, t = s.real, abs(s.imag)
    if sigma < -15:
        raise ConvergenceError("Euler-Maclaurin depth only covers Re(s) > -15")
    n_cut = int(50 + 2 * t)
    while True:
        bound = _zeta_remainder(s, n_cut)
        if bound <= tol or n_cut > 10_000_000:
            break
        n_cut = int(n_cut * 1.5) + 8
    n = np.arange(1, n_cut, dtype=np.float64)
    if s.imag == 0.0:
        head = float(np.sum(n ** (-sigma)))
    else:
        head = complex(np.sum(np.exp(-s * np.log(n))))
    nc = float(n_cut)
    val = head + nc ** (1 - s) / (s - 1) + 0.5 * nc ** (-s)
    fall = 1.0 + 0.0j
    poch = 1.0 + 0.0j
    for j, b in enumerate(_BERNOULLI, start=1):
        # (s)(s+1)...(s+2j-2)
        if j == 1:
            poch = s
        else:
            poch = poch * (s + 2 * j - 3) * (s + 2 * j - 2)
        val += b / math.factorial(2 * j) * poch * nc ** (-s - 2 * j + 1)
    if s.imag == 0.0:
        return complex(val.real)
    return val


def _zeta_remainder(s: complex, n_cut: int) -> float:
    sigma = s.real
    poch = 1.0
    for i in range(17):
        poch *= abs(s + i)
    lead = abs(_B18) / math.factorial(18) * poch * n_cut ** (-sigma - 17)
    safety = abs(s + 17) / max(sigma + 17, 1e-9)
    return lead * max(safety, 1.0)


# ----------------------------------------------------------------------
# incomplete gamma, vectorized for real order of either sign
# ----------------------------------------------------------------------

def upper_gamma_real(z: float, x: np.ndarray) -> np.ndarray:
    """Unnormalized upper incomplete gamma Gamma(z, x) for real z, x > 0.

    Nonpositive orders are lifted by the downward recurrence
    Gamma(z, x) = (Gamma(z+1, x) - x^z e^-x) / z, seeded with the scipy
    regularized function (or E_1 at z = 0).
    """
    x = np.asarray(x, dtype=np.float64)
    if z > 1e-12:
        return sc.gammaincc(z, x) * math.gamma(z)
    k = int(math.floor(1.0 - z + 1e-15))
    zt = z + k
    if abs(zt) < 1e-12:
        g = sc.exp1(x)
    else:
        g = sc.gammaincc(zt, x) * math.gamma(zt)
    ex = np.exp(-x)
    for _ in range(k):
        zt -= 1.0
        if abs(zt) < 1e-12:
            g = sc.exp1(x)
        else:
            g = (g - x**zt * ex) / zt
    return g


def _upper_gamma_complex(z: complex, x: np.ndarray) -> np.ndarray:
    out = np.empty(len(x), dtype=np.complex128)
    for i, xi in enumerate(x):
        out[i] = complex(mpmath.gammainc(z, a=xi))
    return out


class _GammaTable:
    """Fast Gamma(z, x) for fixed real z by interpolation of
    A(u) = log Gamma(z, e^u) + e^u on a uniform u-grid.

    Gamma(z, x) = int_x^inf t^(z-1) e^-t dt is positive for all real z, so
    the log is well defined; A has bounded curvature, giving uniform
    relative accuracy ~ |A''| du^2 / 8.
    """

    X_MIN = 1e-8
    X_MAX = 64.0

    def __init__(self, z: float, rel_eps: float = 1e-10):
        self.z = z
        du = math.sqrt(8.0 * rel_eps / 0.75)
        self.u_lo = math.log(self.X_MIN)
        self.u_hi = math.log(self.X_MAX)
        n = int(math.ceil((self.u_hi - self.u_lo) / du)) + 1
        self.grid = np.linspace(self.u_lo, self.u_hi, n)
        x = np.exp(self.grid)
        g = upper_gamma_real(z, x)
        self.table = np.log(g) + x

    def __call__(self, x: np.ndarray) -> np.ndarray:
        u = np.log(x)
        out = np.exp(np.interp(u, self.grid, self.table) - x)
        bad = (u < self.u_lo) | (u > self.u_hi)
        if np.any(bad):
            out[bad] = upper_gamma_real(self.z, x[bad])
        return out


# ----------------------------------------------------------------------
# primitive real-character L via the smoothed AFE
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class LEvaluation:
    s: complex
    modulus: int
    conductor: int
    parity: int  # 0 even, 1 odd
    value: complex
    error_bound: float


def parity_of(n0: int) -> int:
    """Parity of the Jacobi character (.|n0), odd square-free n0 > 1."""
    return 0 if n0 % 4 == 1 else 1


class _RealAfePlan:
    """Per-(s, parity, eps) precomputation shared across conductors."""

    def __init__(self, s: float, parity: int, eps: float):
        self.s = float(s)
        self.parity = parity
        self.eps = eps
        if parity == 0:
            self.z1 = s / 2.0
            self.z2 = (1.0 - s) / 2.0
        else:
            self.z1 = (s + 1.0) / 2.0
            self.z2 = (2.0 - s) / 2.0
        self.gamma_z1 = math.gamma(self.z1)
        self.big_t = math.log(1.0 / eps) + 8.0 + 2.0 * max(0.0, abs(s) - 1.0)
        rel = min(eps * 1e-2, 1e-10)
        self.g1_table = _GammaTable(self.z1, rel)
        self.g2_table = _GammaTable(self.z2, rel)
        self._cap = 0
        self._grow(1 << 12)

    def _grow(self, m_cap: int) -> None:
        if m_cap <= self._cap:
            return
        m = np.arange(1.0, m_cap + 1.0)
        self.m_all = m
        self.pw1 = m ** (-self.s)
        self.pw2 = m ** (self.s - 1.0)
        self._cap = m_cap

    def length_for(self, q: int, big_t: float | None = None) -> int:
        t = self.big_t if big_t is None else big_t
        m_len = int(math.ceil(math.sqrt(q * t / math.pi))) | 1
        self._grow(m_len + 4)
        return m_len

    def _sums(self, q: int, cv: np.ndarray, idx: np.ndarray) -> tuple[float, float]:
        m = self.m_all[idx]
        x = (math.pi / q) * m * m
        g1 = self.g1_table(x)
        g2 = self.g2_table(x)
        s1 = float(np.dot(cv, self.pw1[idx] * g1))
        s2 = float(np.dot(cv, self.pw2[idx] * g2))
        return s1, s2

    def _tail(self, q: int, m_next: float, spacing: float) -> float:
        x_next = (math.pi / q) * m_next * m_next
        gap = (math.pi / q) * 2.0 * spacing * m_next
        geo = 1.0 / (1.0 - math.exp(-0.9 * gap)) if gap < 40 else 1.0
        t1 = abs(upper_gamma_real(self.z1, np.array([x_next]))[0])
        t2 = abs(upper_gamma_real(self.z2, np.array([x_next]))[0])
        pref = (math.pi / q) ** (self.s - 0.5)
        w1 = m_next ** (-self.s)
        w2 = m_next ** (self.s - 1.0)
        return (t1 * w1 + abs(pref) * t2 * w2) * geo / abs(self.gamma_z1)

    def evaluate(self, q: int, chi_row: np.ndarray) -> tuple[float, float]:
        """L(s, chi) for real primitive chi mod q; chi_row[m] = chi(m) for
        m = 0..M (all m).  Returns (value, truncation bound)."""
        big_t = self.big_t
        for _ in range(4):
            m_len = self.length_for(q, big_t)
            if len(chi_row) - 1 < m_len:
                raise ValueError("character row shorter than AFE length")
            idx = np.arange(m_len)  # m = 1..m_len at offsets 0..m_len-1
            cv = chi_row[1 : m_len + 1].astype(np.float64)
            s1, s2 = self._sums(q, cv, idx)
            bound = self._tail(q, m_len + 1.0, 1.0)
            if bound <= self.eps or big_t > 4 * self.big_t:
                break
            big_t *= 1.4
        pref = (math.pi / q) ** (self.s - 0.5)
        val = (s1 + pref * s2) / self.gamma_z1
        return val, bound

    def evaluate_odd(self, q: int, chi_odd: np.ndarray) -> tuple[float, float]:
        """Same, for characters supported on odd m (even modulus);
        chi_odd[i] = chi(2i + 1)."""
        big_t = self.big_t
        for _ in range(4):
            m_len = self.length_for(q, big_t)
            count = (m_len + 1) // 2
            if len(chi_odd) < count:
                raise ValueError("character row shorter than AFE length")
            idx = np.arange(0, m_len, 2)  # m = 1, 3, 5, ...
            cv = chi_odd[:count].astype(np.float64)
            s1, s2 = self._sums(q, cv, idx)
            bound = self._tail(q, m_len + 2.0, 2.0)
            if bound <= self.eps or big_t > 4 * self.big_t:
                break
            big_t *= 1.4
        pref = (math.pi / q) ** (self.s - 0.5)
        val = (s1 + pref * s2) / self.gamma_z1
        return val, bound


_PLANS: dict[tuple[float, int, float], _RealAfePlan] = {}


def _plan(s: float, parity: int, eps: float) -> _RealAfePlan:
    key = (float(s), parity, eps)
    plan = _PLANS.get(key)
    if plan is None:
        plan = _RealAfePlan(s, parity, eps)
        if len(_PLANS) > 64:
            _PLANS.clear()
        _PLANS[key] = plan
    return plan


def l_primitive_real(
    s: complex,
    q: int,
    chi_odd: np.ndarray | None = None,
    parity: int | None = None,
    eps: float = DEFAULT_TOL.afe_eps,
    top: int | None = None,
    bottom: int | None = None,
) -> LEvaluation:
    """L(s, chi) for a real primitive character chi mod q > 1.

    The character is given by ``top``/``bottom`` Kronecker-symbol data (the
    value row is built here), or -- for characters on even modulus, which
    vanish at even m -- by a precomputed odd-m row ``chi_odd``.  Real s goes
    through the vectorized AFE; complex s falls back to the exact Hurwitz
    route (small q only).
    """
    if q <= 1:
        raise ValueError("primitive evaluator needs q > 1")
    if complex(s).imag != 0.0:
        vals = _char_values_mod(q, top=top, bottom=bottom)
        value = l_hurwitz(s, q, vals)
        return LEvaluation(s, q, q, parity or 0, value, 1e-12)
    sr = float(complex(s).real)
    if chi_odd is not None:
        if parity is None:
            raise ValueError("parity required with an explicit character row")
        if q % 2:
            raise ValueError("odd-m rows only describe even-modulus characters")
        plan = _plan(sr, parity, eps)
        val, bound = plan.evaluate_odd(q, chi_odd)
        return LEvaluation(sr, q, q, parity, val, bound)
    plan0 = _plan(sr, parity if parity is not None else 0, eps)
    m_len = plan0.length_for(q, 4.1 * plan0.big_t)  # room for adaptive growth
    builder = get_builder()
    if m_len > builder.m_max:
        builder = get_builder(1 << max(14, (m_len + 1).bit_length()))
    if top is not None:
        row = builder.top_row(top, m_len)
    elif bottom is not None:
        row = builder.bottom_row(bottom, m_len)
        if parity is None:
            parity = parity_of(bottom)
    else:
        raise ValueError("need chi_odd, top= or bottom= character data")
    if parity is None:
        raise ValueError("parity could not be inferred")
    plan = _plan(sr, parity, eps)
    if q % 2 == 0:
        val, bound = plan.evaluate_odd(q, row[1::2])
    else:
        val, bound = plan.evaluate(q, row)
    return LEvaluation(sr, q, q, parity, val, bound)


def _char_values_mod(q: int, top: int | None, bottom: int | None) -> np.ndarray:
    vals = np.zeros(q, dtype=np.int8)
    for r in range(q):
        if top is not None:
            vals[r] = kronecker(top, r) if r else 0
        elif bottom is not None:
            vals[r] = kronecker(r, bottom)
        else:
            raise ValueError("need top= or bottom=")
    return vals


# ----------------------------------------------------------------------
# the concrete L-functions of the family
# ----------------------------------------------------------------------

def _euler_factor_product(s: complex, primes: list[int], chi_of_p) -> complex:
    out: complex = 1.0
    for p in primes:
        out *= 1.0 - chi_of_p(p) * p ** (-s)
    return out


def l_quadratic(s: complex, n: int, eps: float = DEFAULT_TOL.afe_eps) -> complex:
    """L(s, (.|n)) for odd n >= 1, through the primitive decomposition
    n = n0 n1^2:  L(s, (.|n0)) * prod_{p | n1} (1 - (p|n0) p^-s)."""
    if n < 1 or n % 2 == 0:
        raise ValueError("l_quadratic expects odd n >= 1")
    n0, n1 = square_free_kernel(n)
    ps = [p for p, _ in factorize(n1)]
    if n0 == 1:
        if abs(complex(s) - 1.0) < 1e-12:
            raise PoleError("principal character: pole at s = 1")
        return zeta(s) * _euler_factor_product(s, ps, lambda p: 1)
    finite = _euler_factor_product(s, ps, lambda p, n0=n0: kronecker(p, n0))
    lev = l_primitive_real(s, n0, bottom=n0, parity=parity_of(n0), eps=eps)
    return lev.value * finite


def l_chi8d(s: complex, d: int, eps: float = DEFAULT_TOL.afe_eps,
            chi_odd: np.ndarray | None = None) -> complex:
    """L(s, chi_8d) for odd square-free d >= 1 (primitive even, conductor 8d)."""
    if d < 1 or d % 2 == 0:
        raise ValueError("l_chi8d expects odd square-free d")
    if chi_odd is None and any(e > 1 for _, e in factorize(d)):
        raise ValueError("l_chi8d expects square-free d")
    return l_primitive_real(s, 8 * d, chi_odd=chi_odd, top=8 * d, parity=0,
                            eps=eps).value


def k_series(s: complex, n: int, tol: float = DEFAULT_TOL.kseries_tail,
             return_bound: bool = False):
    """K(s, (.|n)) = sum_l tau((.|n), l) / (sqrt(n) l^s), Re(s) > 3/2.

    tau is periodic in l mod n, so the values come from one FFT of the
    character row; the series itself is summed directly with the rigorous
    envelope |tau| <= n, which needs Re(s) > 3/2 to converge.
    """
    s = complex(s)
    if n < 1 or n % 2 == 0:
        raise ValueError("k_series expects odd n >= 1")
    sigma = s.real
    if sigma <= 1.5:
        raise ConvergenceError("K series requires Re(s) > 3/2")
    if n == 1:
        val = zeta(s)
        return (val, 0.0) if return_bound else val
    builder = get_builder(max(n + 1, 1 << 10))
    chi = builder.bottom_row(n, n - 1).astype(np.float64)  # chi(j), j=0..n-1
    tau = np.conj(np.fft.fft(chi))  # tau[l] = sum_j chi(j) e(jl/n)
    # cutoff so that sqrt(n) * L^(1-sigma)/(sigma-1) <= tol
    length = (math.sqrt(n) / (tol * (sigma - 1.0))) ** (1.0 / (sigma - 1.0))
    if length > 5e7:
        raise ConvergenceError("K series cutoff too long at this Re(s)")
    length = int(length) + 1
    total = 0.0 + 0.0j
    block = 1 << 20
    for lo in range(1, length + 1, block):
        hi = min(lo + block - 1, length)
        ell = np.arange(lo, hi + 1, dtype=np.float64)
        tv = tau[np.arange(lo, hi + 1) % n]
        if s.imag == 0.0:
            total += complex(np.dot(tv, ell ** (-sigma)))
        else:
            total += complex(np.dot(tv, np.exp(-s * np.log(ell))))
    val = total / math.sqrt(n)
    bound = math.sqrt(n) * length ** (1.0 - sigma) / (sigma - 1.0)
    return (val, bound) if return_bound else val


def l_D(w: complex, n: int, eps: float = DEFAULT_TOL.afe_eps) -> complex:
    """Closed form of the family Dirichlet series
    L_D(w, (.|n)) = sum* chi_8d(n) d^-w  over odd square-free d:

        (8|n) L(w, (.|n) psi1) / L(2w, (.|n)^2 psi1),

    expanded into primitive pieces and finite Euler factors."""
    if n < 1 or n % 2 == 0:
        raise ValueError("l_D expects odd n >= 1")
    w = complex(w)
    n0, n1 = square_free_kernel(n)
    if n0 == 1 and abs(w - 1.0) < 1e-12:
        raise PoleError("n is a perfect square: L_D has its pole at w = 1")
    ps_n1 = [p for p, _ in factorize(n1)]
    if n0 == 1:
        num = zeta(w) * (1.0 - 2.0 ** (-w))
        num *= _euler_factor_product(w, ps_n1, lambda p: 1)
    else:
        num = l_quadratic(w, n0, eps=eps)
        num *= 1.0 - kronecker(2, n0) * 2.0 ** (-w)
        extra = [p for p in ps_n1 if n0 % p != 0]
        num *= _euler_factor_product(w, extra, lambda p, n0=n0: kronecker(p, n0))
    ps_n = [p for p, _ in factorize(n)]
    den = zeta(2 * w) * (1.0 - 2.0 ** (-2 * w))
    den *= _euler_factor_product(2 * w, ps_n, lambda p: 1)
    return kronecker(8, n) * num / den


# ----------------------------------------------------------------------
# independent oracles
# ----------------------------------------------------------------------

def l_hurwitz(s: complex, q: int, chi_values: np.ndarray) -> complex:
    """Exact route L(s, chi) = q^-s sum_r chi(r) zeta_H(s, r/q) (mpmath)."""
    total = mpmath.mpc(0)
    for r in range(1, q + 1):
        c = int(chi_values[r % q])
        if c:
            total += c * mpmath.zeta(s, mpmath.mpf(r) / q)
    return complex(total * mpmath.power(q, -s))


def l_smoothed_direct(s: complex, chi_row: np.ndarray, m0: float) -> complex:
    """Long smoothed direct sum: sum chi(m) m^-s phi(m/m0) with a smooth
    transition weight phi = 1 on [0,1], 0 on [2,inf).

    phi has compact support, so its Mellin transform is entire apart from
    the simple pole at 0 with residue 1; for non-principal chi the error is
    O((Cq/m0)^A) for every A.  Take m0 >= 10q.  Independent of the AFE
    machinery; the row must extend to 2*m0.
    """
    m_len = min(len(chi_row) - 1, int(2 * m0))
    m = np.arange(1, m_len + 1, dtype=np.float64)
    u = m / m0
    w = np.ones_like(u)
    mid = (u > 1.0) & (u < 2.0)
    with np.errstate(over="ignore"):
        a = np.exp(-1.0 / np.maximum(2.0 - u[mid], 1e-300))
        b = np.exp(-1.0 / np.maximum(u[mid] - 1.0, 1e-300))
    w[mid] = a / (a + b)
    w[u >= 2.0] = 0.0
    cv = chi_row[1 : m_len + 1].astype(np.float64)
    if complex(s).imag == 0.0:
        return float(np.dot(cv, m ** (-float(complex(s).real)) * w))
    return complex(np.dot(cv, np.exp(-complex(s) * np.log(m)) * w))

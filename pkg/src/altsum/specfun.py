"""Special functions needed by the asymptotic side: Li_2, Bernoulli and
Eulerian polynomials, digamma, zeta at integers, erfc."""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

EULER_GAMMA = 0.57721566490153286060651209008240243
PI2_6 = math.pi**2 / 6


class BranchCutError(ValueError):
    """Raised for Li_2 arguments on the cut [1, inf)."""


# --- Bernoulli -----------------------------------------------------------------


@lru_cache(maxsize=None)
def bernoulli_number(n: int) -> Fraction:
    """B_n with the convention B_1 = -1/2."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return Fraction(1)
    if n > 1 and n % 2:
        return Fraction(0)
    # sum_{k<n} C(n+1, k) B_k = -(n+1) B_n
    s = sum(math.comb(n + 1, k) * bernoulli_number(k) for k in range(n))
    return -s / (n + 1)


def bernoulli_poly(n: int, a):
    """B_n(a); exact ``Fraction`` for int/Fraction input, float otherwise."""
    if n < 0:
        raise ValueError("n must be non-negative")
    exact = isinstance(a, (int, Fraction))
    x = Fraction(a) if exact else a
    total = Fraction(0) if exact else 0.0
    for k in range(n + 1):
        b = bernoulli_number(k)
        if not b:
            continue
        coef = math.comb(n, k) * (b if exact else float(b))
        total += coef * x ** (n - k)
    return total


def hurwitz_zeta_negint(n: int, a):
    """zeta(-n, a) = -B_{n+1}(a)/(n+1) for integer n >= 0."""
    if n < 0:
        raise ValueError("only non-positive integer arguments -n are supported")
    return -bernoulli_poly(n + 1, a) / (n + 1)


# --- Eulerian ------------------------------------------------------------------


def eulerian_poly(k: int) -> list[int]:
    """Coefficients [c_0, ..., c_k] of E_k(x) with sum_j j^k x^j = E_k(x)/(1-x)^{k+1}."""
    if k < 1:
        raise ValueError("k must be at least 1")
    # Eulerian numbers A(k, i), i = 0..k-1; E_k(x) = sum_i A(k, i) x^{i+1}
    row = [1]
    for n in range(2, k + 1):
        row = [
            (i + 1) * (row[i] if i < len(row) else 0) + (n - i) * (row[i - 1] if i else 0)
            for i in range(n)
        ]
    return [0] + row


# --- digamma / zeta ------------------------------------------------------------


def digamma(a: float) -> float:
    """psi(a) for a > 0: upward recurrence to a >= 10, then the asymptotic series."""
    if not a > 0:
        raise ValueError(f"digamma needs a > 0, got {a}")
    acc = 0.0
    while a < 10.0:
        acc -= 1.0 / a
        a += 1.0
    inv2 = 1.0 / (a * a)
    series = 0.0
    for k in range(7, 0, -1):
        series = series * inv2 + float(bernoulli_number(2 * k)) / (2 * k)
    series *= inv2
    return acc + math.log(a) - 0.5 / a - series


def zeta_int(s: int) -> float:
    """zeta(s) for integer s >= 2 by direct summation plus an Euler-Maclaurin tail."""
    if s < 2:
        raise ValueError("zeta_int needs s >= 2")
    cutoff = 20
    head = math.fsum(k ** (-s) for k in range(1, cutoff))
    N = float(cutoff)
    # sum_{k>=N} k^{-s} = N^{1-s}/(s-1) + N^{-s}/2 + sum_j B_{2j}/(2j)! (s)_{2j-1} N^{-s-2j+1}
    tail = N ** (1 - s) / (s - 1) + 0.5 * N ** (-s)
    rising = 1.0
    for j in range(1, 8):
        rising = s if j == 1 else rising * (s + 2 * j - 3) * (s + 2 * j - 2)
        tail += float(bernoulli_number(2 * j)) / math.factorial(2 * j) * rising * N ** (-s - 2 * j + 1)
    return head + tail


def erfc(u: float) -> float:
    return math.erfc(u)


# --- dilogarithm ---------------------------------------------------------------


def _li2_series(z: complex) -> complex:
    # |z| <= 1/2: terms shrink at least like 2^-k
    total = 0j
    zk = z
    k = 1
    while True:
        term = zk / (k * k)
        total += term
        if abs(term) < 1e-18 * max(1.0, abs(total)) or k > 200:
            return total
        k += 1
        zk *= z


def _li2_bernoulli(z: complex) -> complex:
    # Li_2(z) = sum_n B_n u^{n+1}/(n+1)!, u = -log(1-z); converges for |u| < 2 pi
    u = -cmath.log(1 - z)
    total = u - u * u / 4
    u2 = u * u
    power = u
    for j in range(1, 40):
        power *= u2
        term = float(bernoulli_number(2 * j)) / math.factorial(2 * j + 1) * power
        total += term
        if abs(term) < 1e-18 * max(1.0, abs(total)):
            break
    return total


def dilog(z: complex | float) -> complex:
    """Principal branch of Li_2 on C minus [1, inf).

    |z| <= 1/2 uses the defining series; |z| > 1 is reduced by inversion
    z -> 1/z; |1 - z| <= 1/2 by reflection z -> 1 - z; the remaining part of
    the unit disk by the Bernoulli series in -log(1-z).
    """
    z = complex(z)
    if z.imag == 0.0 and z.real >= 1.0:
        raise BranchCutError(f"Li_2 is cut along [1, inf); got z={z.real}")
    if z == 0:
        return 0j
    r = abs(z)
    if r <= 0.5:
        return _li2_series(z)
    if r > 1.0:
        # Li_2(z) + Li_2(1/z) = -pi^2/6 - log(-z)^2 / 2
        lg = cmath.log(-z)
        return -PI2_6 - 0.5 * lg * lg - dilog(1 / z)
    if abs(1 - z) <= 0.5:
        # Li_2(z) + Li_2(1-z) = pi^2/6 - log(z) log(1-z)
        return PI2_6 - cmath.log(z) * cmath.log(1 - z) - _li2_series(1 - z)
    return _li2_bernoulli(z)


def dilog_distribution_check(x: complex | float, n: int) -> float:
    """|Li_2(x) - n sum_{z^n = x} Li_2(z)|."""
    if n < 1:
        raise ValueError("n must be positive")
    x = complex(x)
    if n == 1:
        roots = [x]
    else:
        r = abs(x) ** (1.0 / n)
        phi = cmath.phase(x)
        roots = [cmath.rect(r, (phi + 2 * math.pi * j) / n) for j in range(n)]
    return abs(dilog(x) - n * sum(dilog(z) for z in roots))

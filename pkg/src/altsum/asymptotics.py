"""Numeric evaluators for the asymptotic expansions used in the moment
analysis, each paired with a direct evaluation it can be checked against.

Conventions: q = exp(-w) with Re(w) > 0, principal Log with its cut on the
negative real axis, and A = 1 wherever a regularization scale is free.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
from scipy import integrate

from .specfun import EULER_GAMMA, bernoulli_number, bernoulli_poly, digamma, dilog, zeta_int

DIRECT_TAIL_TOL = 1e-14
QUAD_REL_TOL = 1e-8
QUAD_LIMIT = 400


class QuadratureError(RuntimeError):
    def __init__(self, message: str, achieved: float):
        super().__init__(f"{message} (achieved error {achieved:.3g})")
        self.achieved = achieved


@dataclass(frozen=True)
class ComplexWindow:
    """The point w = x (1 + i y) together with the cone half-angle theta."""

    x: float
    y: float
    theta: float

    def __post_init__(self):
        if not self.x > 0:
            raise ValueError("x must be positive")
        if not 0 < self.theta < math.pi / 2:
            raise ValueError("theta must lie in (0, pi/2)")

    @property
    def w(self) -> complex:
        return complex(self.x, self.x * self.y)

    @property
    def in_cone(self) -> bool:
        return abs(math.atan(self.y)) <= self.theta


@dataclass(frozen=True)
class AsymTerm:
    """coefficient * w^power * Log(1/w)^log_power."""

    coefficient: complex
    power: Fraction
    log_power: int = 0

    def __call__(self, w: complex) -> complex:
        w = complex(w)
        return self.coefficient * w ** float(self.power) * cmath.log(1 / w) ** self.log_power


class AsymTermList(tuple):
    """Terms ordered from most to least singular as w -> 0."""

    def __new__(cls, terms):
        return super().__new__(cls, sorted(terms, key=lambda t: (t.power, -t.log_power)))

    def __call__(self, w: complex) -> complex:
        return sum((t(w) for t in self), 0j)


# --- log q-Pochhammer, direct ------------------------------------------------------


def log_pochhammer_direct(a: int, b: int, z: complex, q: complex) -> complex:
    """Log (z q^a; q^b)_inf^{-1} = sum_{m>=1} z^m q^{am} / (m (1 - q^{bm})).

    Summed until a geometric bound on the remaining tail drops below 1e-14.
    """
    q = complex(q)
    z = complex(z)
    if abs(q) >= 1:
        raise ValueError(f"need |q| < 1, got |q| = {abs(q)}")
    if z == 0 or q == 0:
        return 0j
    ratio = abs(z) * abs(q) ** a
    if ratio >= 1:
        raise ValueError("need |z q^a| < 1 for the logarithmic series")
    denom_floor = 1 - abs(q) ** b
    total = 0j
    start = 1
    chunk = 4096
    log_zq = cmath.log(z) + a * cmath.log(q)
    log_qb = b * cmath.log(q)
    while True:
        m = np.arange(start, start + chunk, dtype=float)
        num = np.exp(m * log_zq)
        den = m * (1 - np.exp(m * log_qb))
        total += complex(np.sum(num / den))
        last = start + chunk - 1
        tail = ratio ** (last + 1) / ((last + 1) * denom_floor * (1 - ratio))
        if tail < DIRECT_TAIL_TOL:
            return total
        start += chunk
        if start > 50_000_000:
            raise RuntimeError("log_pochhammer_direct did not converge")


def log_pochhammer_product(a: int, b: int, z: complex, q: complex, terms: int) -> complex:
    """-sum_{j<terms} Log(1 - z q^{a+bj}); finite-product reference."""
    z, q = complex(z), complex(q)
    return -sum(cmath.log(1 - z * q ** (a + b * j)) for j in range(terms))


# --- regularized integrals -----------------------------------------------------------


def _fab_laurent(a: int, b: int, n_terms: int) -> list[float]:
    # Taylor coefficients of u^2 f_{a,b}(u) = exp(-alpha u) * u/(1-e^{-u})
    alpha = Fraction(a, b)
    beta = [bernoulli_number(j) * (-1) ** j / math.factorial(j) for j in range(n_terms)]
    out = []
    for n in range(n_terms):
        s = sum(
            Fraction((-alpha) ** (n - j)) / math.factorial(n - j) * beta[j] for j in range(n + 1)
        )
        out.append(s)
    return out


def fab_principal_parts(a: int, b: int) -> tuple[float, float]:
    """(c_{-2}, c_{-1}) of f_{a,b}(u) = e^{-au/b} / (u (1 - e^{-u}))."""
    d = _fab_laurent(a, b, 2)
    return float(d[0]), float(d[1])


def istar_integrand(a: int, b: int, A: float):
    """u -> f_{a,b}(u) - c_{-2}/u^2 - c_{-1} e^{-Au}/u, stable near u = 0."""
    n_terms = 16
    d = _fab_laurent(a, b, n_terms)
    c1 = d[1]
    # h(u) = sum_{n>=2} e_n u^{n-2}
    e = []
    for n in range(2, n_terms):
        e.append(float(d[n]) - float(c1) * (-A) ** (n - 1) / math.factorial(n - 1))
    alpha = a / b
    c1f = float(c1)

    def h(u: float) -> float:
        if u < 0.05:
            acc = 0.0
            for coef in reversed(e):
                acc = acc * u + coef
            return acc
        return math.exp(-alpha * u) / (u * -math.expm1(-u)) - 1.0 / (u * u) - c1f * math.exp(-A * u) / u

    return h


def istar_quadrature(a: int, b: int, A: float = 1.0) -> float:
    """I*_{f_{a,b},A}: the integral of f_{a,b} with its 1/u^2 and e^{-Au}/u parts removed."""
    if not (1 <= a <= b):
        raise ValueError("need 1 <= a <= b")
    if not A > 0:
        raise ValueError("A must be positive")
    h = istar_integrand(a, b, A)
    head, err1 = integrate.quad(h, 0.0, 1.0, epsabs=0.0, epsrel=1e-12, limit=QUAD_LIMIT)
    tail, err2 = integrate.quad(h, 1.0, np.inf, epsabs=1e-13, epsrel=1e-12, limit=QUAD_LIMIT)
    value = head + tail
    err = err1 + err2
    if err > QUAD_REL_TOL * max(1.0, abs(value)):
        raise QuadratureError("I* quadrature did not reach its target", err)
    return value


def log_pochhammer_asym_q1(a: int, b: int, w: complex, A: float = 1.0) -> complex:
    """Expansion of Log (q^a; q^b)_inf^{-1} as q = e^{-w} -> 1, error O(w).

    Euler-Maclaurin with principal parts applied to sum_{m>=1} f_{a,b}(m b w)
    gives

        zeta(2)/(b w) + I*_{f_{a,b},A} - c_{-1} Log(A b w),   c_{-1} = 1/2 - a/b.
    """
    w = complex(w)
    _, c1 = fab_principal_parts(a, b)
    return zeta_int(2) / (b * w) + istar_quadrature(a, b, A) - c1 * cmath.log(A * b * w)


def log_pochhammer_asym_q1_digamma_form(a: int, b: int, w: complex, A: float = 1.0) -> complex:
    """A variant written with b I* and a digamma term, kept for comparison.

    zeta(2)/(bw) + b I* - (b/2 - a)(Log(Aw) + psi(a/b) + gamma).  Agrees with
    :func:`log_pochhammer_asym_q1` when b = 1 and is off by O(1) otherwise.
    """
    w = complex(w)
    return (
        zeta_int(2) / (b * w)
        + b * istar_quadrature(a, b, A)
        - (b / 2 - a) * (cmath.log(A * w) + digamma(a / b) + EULER_GAMMA)
    )


def log_euler_asym(w: complex) -> complex:
    """Log (q;q)_inf^{-1} ~ pi^2/(6w) + Log(w)/2 - Log(2 pi)/2."""
    w = complex(w)
    return math.pi**2 / (6 * w) + 0.5 * cmath.log(w) - 0.5 * math.log(2 * math.pi)


def log_pochhammer_root_leading(z: complex, a: int, b: int, h: int, k: int, w: complex) -> complex:
    """Leading term Li_2(z^k)/(b k^2 w) of Log (z q^a; q^b)^{-1} as q -> e^{2 pi i h/k}."""
    if k < 1:
        raise ValueError("k must be positive")
    if math.gcd(b, k) != 1:
        raise ValueError(f"gcd(b, k) = {math.gcd(b, k)} > 1 is not supported")
    if not (h == 0 and k == 1) and math.gcd(h, k) != 1:
        raise ValueError("h/k must be in lowest terms")
    return dilog(complex(z) ** k) / (b * k * k * complex(w))


def root_of_unity_q(h: int, k: int, w: complex) -> complex:
    return cmath.exp(2j * math.pi * h / k) * cmath.exp(-complex(w))


# --- Euler-Maclaurin, holomorphic case --------------------------------------------


@dataclass(frozen=True)
class EMCheck:
    a: float
    w: float
    N: int
    error: float
    error_half: float
    order: float


def em_expansion_error(a, w, N: int, dps: int = 40) -> float:
    """|sum_{m>=0} e^{-(m+a)w} - (1/w - sum_{n<N} c_n B_{n+1}(a)/(n+1) w^n)|, c_n = (-1)^n/n!."""
    with mpmath.workdps(dps):
        a_ = mpmath.mpf(a) if not isinstance(a, Fraction) else mpmath.mpf(a.numerator) / a.denominator
        w_ = mpmath.mpf(w)
        exact = mpmath.exp(-a_ * w_) / (1 - mpmath.exp(-w_))
        approx = 1 / w_
        for n in range(N):
            bn = bernoulli_poly(n + 1, Fraction(a) if isinstance(a, (int, Fraction)) else a)
            bn = mpmath.mpf(bn.numerator) / bn.denominator if isinstance(bn, Fraction) else mpmath.mpf(bn)
            approx -= mpmath.mpf((-1) ** n) / mpmath.factorial(n) * bn / (n + 1) * w_**n
        return float(abs(exact - approx))


def em_holomorphic_check(a, w: float, N: int) -> EMCheck:
    """Error of the N-term expansion at w and w/2, and the empirical order log2(ratio)."""
    if not 0 < w <= 0.5:
        raise ValueError("w must lie in (0, 0.5]")
    if not 0 <= N <= 8:
        raise ValueError("N must lie in 0..8")
    e1 = em_expansion_error(a, w, N)
    e2 = em_expansion_error(a, w / 2, N)
    order = math.log2(e1 / e2) if e1 > 0 and e2 > 0 else float("nan")
    return EMCheck(float(a), w, N, e1, e2, order)


# --- partition-number and moment main terms ----------------------------------------


def log_hr_pn(n: int) -> float:
    if n < 1:
        raise ValueError("n must be at least 1")
    return math.pi * math.sqrt(2 * n / 3) - math.log(4 * n * math.sqrt(3))


def hr_pn(n: int) -> float:
    """Hardy-Ramanujan leading term e^{pi sqrt(2n/3)} / (4 n sqrt 3); overflows past n ~ 1e5."""
    return math.exp(log_hr_pn(n))


def thm_moment_asym(m: int, n: int) -> float:
    """(6^{m/2} / (2^m pi^m)) n^{m/2} log^m(sqrt(6n)/pi)."""
    if m < 1:
        raise ValueError("m must be at least 1")
    if n < 1:
        raise ValueError("n must be at least 1")
    base = math.sqrt(6 * n) / (2 * math.pi) * math.log(math.sqrt(6 * n) / math.pi)
    return base**m


def am_main_term_log(m: int, n: int) -> float:
    """log of n^{(m-2)/2} / (2^{m+2} sqrt 3) (sqrt6/pi)^m log^m(sqrt(6n)/pi) e^{pi sqrt(2n/3)}."""
    if m < 0 or n < 2:
        raise ValueError("need m >= 0 and n >= 2")
    L = math.log(math.sqrt(6 * n) / math.pi)
    return (
        (m - 2) / 2 * math.log(n)
        - (m + 2) * math.log(2)
        - 0.5 * math.log(3)
        + m * math.log(math.sqrt(6) / math.pi)
        + m * math.log(L)
        + math.pi * math.sqrt(2 * n / 3)
    )


# --- the Lambert series G(1; q) ---------------------------------------------------


def lambert_G_direct(q: float, k: int = 0) -> float:
    """G^{(k)}(1;q) = sum_{m>=1} m^k q^m / (1 - q^{2m}) for real 0 <= q < 1."""
    if not 0 <= q < 1:
        raise ValueError("need 0 <= q < 1")
    if q == 0:
        return 0.0
    total = 0.0
    start = 1
    chunk = 8192
    lq = math.log(q)
    while True:
        m = np.arange(start, start + chunk, dtype=float)
        qm = np.exp(m * lq)
        terms = m**k * qm / -np.expm1(2 * m * lq)
        total += float(np.sum(terms))
        if terms[-1] < 1e-17 * total:
            return total
        start += chunk


def G_istar(A: float = 1.0) -> float:
    """I*_{f,A} for f(u) = e^{-2u}/(1 - e^{-2u}) (principal part 1/(2u))."""

    def h(u: float) -> float:
        if u < 1e-3:
            # 1/(e^{2u}-1) - e^{-Au}/(2u) expanded at 0
            return (A - 1) / 2 + (1 / 6 - A * A / 4) * u + (A**3 / 12) * u * u - (1 / 90 + A**4 / 48) * u**3
        return math.exp(-2 * u) / -math.expm1(-2 * u) - math.exp(-A * u) / (2 * u)

    v1, e1 = integrate.quad(h, 0, 1, epsabs=0, epsrel=1e-12, limit=QUAD_LIMIT)
    v2, e2 = integrate.quad(h, 1, np.inf, epsabs=1e-13, epsrel=1e-12, limit=QUAD_LIMIT)
    return v1 + v2


def G_refined(w: float, A: float = 1.0) -> float:
    """I*_{f,A}/w - (Log(Aw) - log 4)/(2w)."""
    if not 0 < w:
        raise ValueError("w must be positive")
    return G_istar(A) / w - (math.log(A * w) - math.log(4)) / (2 * w)


def G_leading(w: float) -> float:
    return math.log(1 / w) / (2 * w)


@dataclass(frozen=True)
class GkConstant:
    """Measured w^{k+1} G^{(k)}(1; e^{-w}) next to two candidate limits."""

    k: int
    w: float
    measured: float
    claimed: float  # k! zeta(k+1)
    mellin: float  # k! (1 - 2^{-k-1}) zeta(k+1)


def measure_Gk_constant(k: int, w: float) -> GkConstant:
    if k < 1:
        raise ValueError("k must be at least 1")
    measured = lambert_G_direct(math.exp(-w), k) * w ** (k + 1)
    z = zeta_int(k + 1)
    f = math.factorial(k)
    return GkConstant(k, w, measured, f * z, f * (1 - 2.0 ** (-k - 1)) * z)

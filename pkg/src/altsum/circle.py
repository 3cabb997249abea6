"""Circle-method quadrature for A_m(n) on |q| = exp(-pi/sqrt(6n)).

Everything of size e^{pi sqrt(2n/3)} is factored out analytically; integrals
are computed for the normalized integrand and logs are reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .asymptotics import am_main_term_log, log_pochhammer_direct

DEFAULT_DELTA = 1.0
SADDLE_EPSREL = 1e-10


class CircleQuadratureError(RuntimeError):
    pass


@dataclass(frozen=True)
class ArcConfig:
    n: int
    m: int
    delta: float = DEFAULT_DELTA
    samples: int = 200

    def __post_init__(self):
        if self.n < 1 or self.m < 0:
            raise ValueError("need n >= 1 and m >= 0")
        if not self.delta > 0:
            raise ValueError("delta must be positive (delta = cot(d), 0 < d < pi/2)")

    @property
    def x(self) -> float:
        return math.pi / math.sqrt(6 * self.n)

    @property
    def radius(self) -> float:
        return math.exp(-self.x)

    @property
    def t(self) -> float:
        return math.pi * math.sqrt(self.n / 6)


def saddle_phase(y):
    """f(y) = 1/(1+iy) + 1 + iy."""
    s = 1 + 1j * np.asarray(y)
    return 1 / s + s


def normalized_integrand(m: int, n: int, y, log_power: int = 0, log_shift: float = 0.0):
    """(1+iy)^{1/2-m} (log_shift - Log(1+iy))^j exp(t (f(y) - 2)), t = pi sqrt(n/6)."""
    t = math.pi * math.sqrt(n / 6)
    s = 1 + 1j * np.asarray(y, dtype=float)
    # f(y) - 2 written out to avoid cancellation: (-y^2 + i y^3)/(1 + y^2)
    yy = np.asarray(y, dtype=float)
    phase = (-(yy**2) + 1j * yy**3) / (1 + yy**2)
    val = s ** (0.5 - m) * np.exp(t * phase)
    if log_power:
        val = val * (log_shift - np.log(s)) ** log_power
    return val


def _complex_quad(func, lo: float, hi: float, points=None, epsrel=SADDLE_EPSREL, limit=500):
    re, re_err = integrate.quad(lambda y: complex(func(y)).real, lo, hi, points=points,
                                epsabs=0.0, epsrel=epsrel, limit=limit)
    # the imaginary part often cancels to ~0 by symmetry; judge it against |Re|
    im, im_err = integrate.quad(lambda y: complex(func(y)).imag, lo, hi, points=points,
                                epsabs=1e-13 * max(abs(re), 1e-300), epsrel=epsrel, limit=limit)
    return complex(re, im), math.hypot(re_err, im_err)


@dataclass(frozen=True)
class SaddleResult:
    m: int
    n: int
    delta: float
    integral: complex
    prediction: float
    rel_error: float
    quad_error: float


def saddle_check(m: int, n: int, delta: float = DEFAULT_DELTA) -> SaddleResult:
    """Normalized saddle integral over [-delta, delta] against (6/n)^{1/4}."""
    if n < 100:
        raise ValueError("saddle_check is meant for n >= 100")
    if delta < 0.5:
        raise ValueError("delta must be at least 0.5")
    val, err = _complex_quad(lambda y: normalized_integrand(m, n, y), -delta, delta, points=[0.0])
    if err > 1e-8 * abs(val):
        raise CircleQuadratureError(f"saddle quadrature error {err:.3g} too large")
    pred = (6 / n) ** 0.25
    return SaddleResult(m, n, delta, val, pred, abs(val - pred) / pred, err)


def gauss_legendre_integral(m: int, n: int, delta: float, panels: int, nodes: int = 8) -> complex:
    """Composite Gauss-Legendre rule for the normalized saddle integral."""
    xg, wg = np.polynomial.legendre.leggauss(nodes)
    edges = np.linspace(-delta, delta, panels + 1)
    mid = (edges[1:] + edges[:-1]) / 2
    half = (edges[1:] - edges[:-1]) / 2
    y = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
    wts = (half[:, None] * wg[None, :]).ravel()
    return complex(np.sum(wts * normalized_integrand(m, n, y)))


def major_arc_log(m: int, n: int, delta: float = DEFAULT_DELTA) -> float:
    """log M^{(1)}_m(n), the major-arc integral with the leading approximation of A_m(q).

    Expanded around the saddle, M^{(1)} equals

        (pi/sqrt(6n))^{3/2-m} / (2^{m+1} pi sqrt(2 pi)) e^{pi sqrt(2n/3)}
          * int (1+iy)^{1/2-m} (L - Log(1+iy))^m e^{t(f(y)-2)} dy,

    with L = log(sqrt(6n)/pi).  The integral is real by conjugate symmetry.
    """
    if n < 2 or m < 0:
        raise ValueError("need n >= 2 and m >= 0")
    cfg = ArcConfig(n, m, delta)
    L = math.log(math.sqrt(6 * n) / math.pi)
    val, err = _complex_quad(lambda y: normalized_integrand(m, n, y, m, L), -delta, delta,
                             points=[0.0])
    if val.real <= 0 or err > 1e-8 * abs(val):
        raise CircleQuadratureError(f"major arc integral unusable: {val} +- {err:.3g}")
    log_pref = (1.5 - m) * math.log(cfg.x) - (m + 1) * math.log(2) - math.log(math.pi * math.sqrt(2 * math.pi))
    return log_pref + 2 * cfg.t + math.log(val.real)


@dataclass(frozen=True)
class MinorArcProbe:
    n: int
    samples: int
    max_scaled_log: float
    epsilon: float
    argmax_y: float


def scaled_log_modulus(n: int, y) -> np.ndarray:
    """x log|(q;q)_inf^{-1}| at q = exp(-x(1+iy)), x = pi/sqrt(6n)."""
    x = math.pi / math.sqrt(6 * n)
    ys = np.atleast_1d(np.asarray(y, dtype=float))
    return np.array([x * log_pochhammer_direct(1, 1, 1, np.exp(-x * complex(1, yi))).real for yi in ys])


def minor_arc_points(n: int, samples: int, delta: float = DEFAULT_DELTA, max_k: int = 6) -> np.ndarray:
    """Uniform y in [delta, sqrt(6n)) plus points at and around the angles 2 pi h/k, k <= max_k."""
    x = math.pi / math.sqrt(6 * n)
    ymax = math.sqrt(6 * n)
    uniform = np.linspace(delta, ymax, samples, endpoint=False)
    special = []
    for k in range(2, max_k + 1):
        for h in range(1, k // 2 + 1):
            if math.gcd(h, k) != 1:
                continue
            y0 = 2 * math.pi * h / (k * x)
            for off in (-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0):
                yv = y0 + off / k
                if delta <= yv < ymax:
                    special.append(yv)
    return np.unique(np.concatenate([uniform, np.array(special)]))


def minor_arc_probe(n: int, samples: int = 200, delta: float = DEFAULT_DELTA) -> MinorArcProbe:
    """Largest x log|(q;q)^{-1}| off the major arc, and eps = pi^2/6 - that maximum."""
    if n < 100:
        raise ValueError("minor_arc_probe is meant for n >= 100")
    ys = minor_arc_points(n, samples, delta)
    vals = scaled_log_modulus(n, ys)
    i = int(np.argmax(vals))
    top = float(vals[i])
    return MinorArcProbe(n, len(ys), top, math.pi**2 / 6 - top, float(ys[i]))


@dataclass(frozen=True)
class CircleReport:
    m: int
    n: int
    delta: float
    log_exact: float
    log_major: float
    difference: float
    log_main_term: float
    epsilon: float


def circle_reconstruct(m: int, n: int, delta: float = DEFAULT_DELTA,
                       exact: int | None = None, minor_samples: int = 200) -> CircleReport:
    """Compare log A_m(n) (exact) with the numeric major arc; the gap is O(1/log n)."""
    if n > 2000:
        raise ValueError("exact comparison is limited to n <= 2000")
    if exact is None:
        from .moments import moment_exact_series
        from .series import partition_series

        exact = partition_series(n)[n] if m == 0 else moment_exact_series(m, n)[n]
    log_exact = math.log(exact)
    log_major = major_arc_log(m, n, delta)
    eps = minor_arc_probe(n, minor_samples, delta).epsilon if n >= 100 else float("nan")
    main = am_main_term_log(m, n) if m >= 1 else float("nan")
    return CircleReport(m, n, delta, log_exact, log_major, log_exact - log_major, main, eps)

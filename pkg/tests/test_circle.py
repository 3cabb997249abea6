import math

import numpy as np
import pytest

from altsum import circle
from altsum.asymptotics import am_main_term_log
from altsum.moments import moment_exact_series
from altsum.series import partition_series


def test_saddle_phase_derivatives():
    assert circle.saddle_phase(0.0) == 2
    h = 1e-4
    f = lambda y: complex(circle.saddle_phase(y))
    d1 = (f(h) - f(-h)) / (2 * h)
    d2 = (f(h) - 2 * f(0) + f(-h)) / h**2
    assert abs(d1) < 1e-8
    assert d2.real == pytest.approx(-2, abs=1e-6)


def test_integrand_at_origin():
    for m in (0, 1, 2):
        assert circle.normalized_integrand(m, 500, 0.0) == 1


def test_saddle_check_tolerance():
    n = 10_000
    for m in (0, 1):
        r = circle.saddle_check(m, n)
        assert r.rel_error <= 3 * n ** -0.25


def test_saddle_quadratures_agree():
    n = 10_000
    ref = circle.saddle_check(1, n).integral
    gl = circle.gauss_legendre_integral(1, n, 1.0, panels=400)
    assert abs(gl - ref) < 1e-10


def test_major_arc_against_exact():
    A = moment_exact_series(1, 2000)
    diffs = [abs(circle.major_arc_log(1, n) - math.log(A[n])) for n in (500, 1000, 2000)]
    assert diffs == sorted(diffs, reverse=True)
    assert diffs[-1] < abs(math.log(0.65))
    shrink = [abs(circle.major_arc_log(1, n) - am_main_term_log(1, n)) for n in (500, 1000, 2000)]
    assert shrink == sorted(shrink, reverse=True)
    p = partition_series(1000)[1000]
    assert abs(circle.major_arc_log(0, 1000) - math.log(p)) < abs(math.log(0.65))


def test_major_arc_m2():
    rep = circle.circle_reconstruct(2, 1000, minor_samples=50)
    assert math.isfinite(rep.difference)
    assert abs(rep.difference) < math.log(1.5)


def test_minor_arc():
    r = circle.minor_arc_probe(2000, 200)
    assert r.epsilon > 0 and r.samples >= 200
    near_zero = circle.scaled_log_modulus(2000, [0.0])[0]
    assert near_zero == pytest.approx(math.pi**2 / 6, rel=0.06)
    # |q| -> 0: modulus factor vanishes
    assert circle.scaled_log_modulus(1, [0.0])[0] < circle.scaled_log_modulus(2000, [0.0])[0]


def test_circle_reconstruct_m0():
    rep = circle.circle_reconstruct(0, 500, minor_samples=50)
    assert rep.log_exact == pytest.approx(math.log(partition_series(500)[500]))
    assert abs(rep.difference) < 0.05


def test_config_validation():
    with pytest.raises(ValueError):
        circle.ArcConfig(0, 1)
    with pytest.raises(ValueError):
        circle.saddle_check(1, 50)

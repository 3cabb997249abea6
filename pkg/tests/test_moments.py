from fractions import Fraction

import pytest

from altsum.moments import (
    Partition,
    alternating_sum,
    distribution,
    enumerate_partitions,
    expectation,
    fm_polynomial,
    ks_distance,
    erfc_limit_cdf,
    moment_by_enumeration,
    moment_exact_series,
    moment_from_distribution,
    multivariate_identity_check,
)
from altsum.series import bivariate_distribution, partition_numbers_pentagonal


def test_enumeration_counts():
    assert len(list(enumerate_partitions(4))) == 5
    assert [p.parts for p in enumerate_partitions(0)] == [()]
    assert sum(1 for _ in enumerate_partitions(30)) == 5604 == partition_numbers_pentagonal(30)[30]


def test_enumeration_order_and_validity():
    parts = [p.parts for p in enumerate_partitions(6)]
    assert parts == sorted(parts, reverse=True)
    assert len(set(parts)) == len(parts)
    with pytest.raises(ValueError):
        list(enumerate_partitions(61))
    with pytest.raises(ValueError):
        Partition((1, 2))


def test_alternating_sum():
    assert alternating_sum(Partition((3, 1))) == 2
    assert alternating_sum((1, 1, 1, 1)) == 0
    assert alternating_sum((7,)) == 7


def test_alternating_sum_is_odd_parts_of_conjugate():
    for n in range(1, 16):
        for lam in enumerate_partitions(n):
            conj = [sum(1 for p in lam.parts if p > i) for i in range(lam.largest)]
            assert alternating_sum(lam) == sum(1 for c in conj if c % 2)


def test_distribution_rows():
    t = bivariate_distribution(10)
    assert distribution(4, t) == {0: 2, 2: 2, 4: 1}
    assert distribution(1, t) == {1: 1}
    with pytest.raises(ValueError):
        distribution(11, t)


def test_fm_polynomials():
    assert fm_polynomial(1).terms == {(1,): 1}
    assert fm_polynomial(2).terms == {(0, 1): 1, (2, 0): 1}
    assert fm_polynomial(3).terms == {(0, 0, 1): 1, (1, 1, 0): 3, (3, 0, 0): 1}
    assert str(fm_polynomial(3)) == "g2 + 3*g0*g1 + g0^3"
    for m in range(1, 7):
        assert fm_polynomial(m).weighted_degrees() == {m}


def test_moment_series_examples():
    a1 = moment_exact_series(1, 8)
    # A_1(3) = 3 + 1 + 1 from (3), (2,1), (1,1,1)
    assert list(a1)[:5] == [0, 1, 2, 5, 8]
    assert moment_exact_series(2, 4)[4] == 24
    for m in range(1, 5):
        assert moment_exact_series(m, 3)[0] == 0


def test_moment_routes_against_enumeration():
    t = bivariate_distribution(22)
    for m in range(0, 5):
        for n in range(23):
            e = moment_by_enumeration(m, n)
            assert moment_from_distribution(m, n, t) == e
            if m:
                assert moment_exact_series(m, 22)[n] == e


def test_moment_from_distribution_examples():
    t = bivariate_distribution(6)
    assert moment_from_distribution(1, 4, t) == 8
    assert moment_from_distribution(3, 2, t) == 8
    assert moment_from_distribution(0, 6, t) == 11


def test_expectation_examples():
    assert expectation(1, 4).E_m_exact == Fraction(8, 5)
    assert expectation(2, 2).E_m_exact == 2
    r = expectation(1, 1)
    assert r.E_m_exact == 1
    rec = r.as_record()
    assert rec["A_m"] == "1" and rec["E_m_exact"] == "1"
    t = bivariate_distribution(10)
    assert expectation(2, 10, t) == expectation(2, 10)


def test_multivariate_identities():
    for kind in ("ordinary", "strict"):
        assert multivariate_identity_check(12, kind).max_discrepancy == 0
        assert multivariate_identity_check(0, kind).max_discrepancy == 0
    with pytest.raises(ValueError):
        multivariate_identity_check(5, "weird")


def test_ks_distance_bounds():
    t = bivariate_distribution(40)
    assert 0 <= ks_distance(1, t) <= 1
    assert erfc_limit_cdf(-50) == 0.0
    assert erfc_limit_cdf(50) == pytest.approx(1.0)

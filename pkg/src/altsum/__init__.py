"""Exact and asymptotic study of the alternating sum a(lambda) = l1 - l2 + l3 - ... of partitions."""

from .moments import (
    FmPolynomial,
    MomentReport,
    Partition,
    alternating_sum,
    distribution,
    enumerate_partitions,
    expectation,
    fm_polynomial,
    ks_distance,
    moment_exact_series,
    moment_from_distribution,
    multivariate_identity_check,
)
from .series import (
    BivariateTable,
    DiscrepancyReport,
    SparseSeries,
    TruncatedSeries,
    bivariate_distribution,
    partition_numbers_pentagonal,
    partition_series,
    trivariate_identity_check,
)

__all__ = [
    "BivariateTable",
    "DiscrepancyReport",
    "FmPolynomial",
    "MomentReport",
    "Partition",
    "SparseSeries",
    "TruncatedSeries",
    "alternating_sum",
    "bivariate_distribution",
    "distribution",
    "enumerate_partitions",
    "expectation",
    "fm_polynomial",
    "ks_distance",
    "moment_exact_series",
    "moment_from_distribution",
    "multivariate_identity_check",
    "partition_numbers_pentagonal",
    "partition_series",
    "trivariate_identity_check",
]
__version__ = "0.1.0"

"""Exact moments of the alternating sum a(lambda), by two independent routes.

Route one sums a^m against a row of the bivariate distribution.  Route two
expands F_m(g_0, ..., g_{m-1}) * P(1;q), where g_k are the Lambert series
G^{(k)}(1;q) and F_m is generated by the recursion

    F_1 = g_0,    F_{m+1} = sum_i (dF_m/dg_i) g_{i+1} + F_m g_0.

Brute-force enumeration of partitions is the oracle for both.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

from .series import (
    BivariateTable,
    DiscrepancyReport,
    SparseSeries,
    TruncatedSeries,
    four_variable_strict_sum,
    four_variable_sum,
    lambert_Gk_series,
    partition_series,
)
from .specfun import erfc

ENUMERATION_LIMIT = 60


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        p = self.parts
        if any(x <= 0 for x in p):
            raise ValueError(f"parts must be positive: {p}")
        if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
            raise ValueError(f"parts must be non-increasing: {p}")

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def largest(self) -> int:
        return self.parts[0] if self.parts else 0

    @property
    def is_strict(self) -> bool:
        p = self.parts
        return all(p[i] > p[i + 1] for i in range(len(p) - 1))


def enumerate_partitions(n: int) -> Iterator[Partition]:
    """Yield every partition of n once, in reverse-lexicographic order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > ENUMERATION_LIMIT:
        raise ValueError(f"enumeration is capped at n={ENUMERATION_LIMIT}, got {n}")

    def rec(remaining: int, cap: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    for parts in rec(n, n):
        yield Partition(parts)


def alternating_sum(lam: Partition | tuple[int, ...]) -> int:
    """lambda_1 - lambda_2 + lambda_3 - ..."""
    parts = lam.parts if isinstance(lam, Partition) else lam
    return sum(p if i % 2 == 0 else -p for i, p in enumerate(parts))


def distribution(n: int, table: BivariateTable) -> dict[int, int]:
    """Exact row ``{a: #partitions of n with a(lambda) = a}``."""
    if not 0 <= n <= table.order:
        raise ValueError(f"n={n} is outside the table (order {table.order})")
    return table.row(n)


def histogram_by_enumeration(n: int) -> dict[int, int]:
    return dict(Counter(alternating_sum(lam) for lam in enumerate_partitions(n)))


# --- F_m polynomials --------------------------------------------------------


@dataclass(frozen=True)
class FmPolynomial:
    """Integer polynomial in g_0..g_{m-1}; ``terms`` maps exponent tuples to coefficients."""

    m: int
    terms: Mapping[tuple[int, ...], int]

    def weighted_degrees(self) -> set[int]:
        return {sum(e * (i + 1) for i, e in enumerate(exps)) for exps in self.terms}

    def evaluate(self, values):
        """Evaluate at g_i = values[i]; values may be numbers or TruncatedSeries."""
        total = None
        powers: dict[tuple[int, int], object] = {}
        for exps, c in sorted(self.terms.items()):
            term = None
            for i, e in enumerate(exps):
                if not e:
                    continue
                key = (i, e)
                if key not in powers:
                    powers[key] = values[i] ** e
                term = powers[key] if term is None else term * powers[key]
            if term is None:
                term = 1
            term = term * c
            total = term if total is None else total + term
        return 0 if total is None else total

    def __str__(self) -> str:
        out = []
        for exps, c in sorted(self.terms.items(), key=lambda kv: kv[0][::-1], reverse=True):
            factors = [f"g{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e]
            mono = "*".join(factors)
            out.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(out)


def _fm_step(poly: dict[tuple[int, ...], int], m: int) -> dict[tuple[int, ...], int]:
    nxt: dict[tuple[int, ...], int] = {}

    def add(e, c):
        nxt[e] = nxt.get(e, 0) + c

    for exps, c in poly.items():
        e = list(exps) + [0]
        for i in range(m):
            if exps[i]:
                d = e.copy()
                d[i] -= 1
                d[i + 1] += 1
                add(tuple(d), c * exps[i])
        d = e.copy()
        d[0] += 1
        add(tuple(d), c)
    return {e: c for e, c in nxt.items() if c}


def fm_polynomial(m: int) -> FmPolynomial:
    if m < 1:
        raise ValueError("m must be at least 1")
    poly: dict[tuple[int, ...], int] = {(1,): 1}
    for k in range(1, m):
        poly = _fm_step(poly, k)
    return FmPolynomial(m, poly)


def moment_exact_series(m: int, order: int) -> TruncatedSeries:
    """q-expansion of sum_n A_m(n) q^n = F_m(G, G', ...) * P(1;q)."""
    if m < 1:
        raise ValueError("m must be at least 1")
    gs = [lambert_Gk_series(k, order) for k in range(m)]
    return fm_polynomial(m).evaluate(gs) * partition_series(order)


def moment_from_distribution(m: int, n: int, table: BivariateTable) -> int:
    """A_m(n) = sum_a a^m N(n, a); m = 0 gives p(n)."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if not 0 <= n <= table.order:
        raise ValueError(f"n={n} is outside the table (order {table.order})")
    return sum(a**m * c for a, c in table.row(n).items())


def moment_by_enumeration(m: int, n: int) -> int:
    return sum(alternating_sum(lam) ** m for lam in enumerate_partitions(n))


@dataclass(frozen=True)
class MomentReport:
    n: int
    m: int
    A_m: int
    p_n: int
    E_m_exact: Fraction
    E_m_float: float
    asym: float
    ratio: float

    def as_record(self) -> dict[str, str | int]:
        """Serializable form: big integers and rationals as decimal strings."""
        return {
            "n": self.n,
            "m": self.m,
            "A_m": str(self.A_m),
            "p_n": str(self.p_n),
            "E_m_exact": str(self.E_m_exact),
            "E_m_float": format(self.E_m_float, ".17g"),
            "asym": format(self.asym, ".17g"),
            "ratio": format(self.ratio, ".17g"),
        }


def expectation(m: int, n: int, table: BivariateTable | None = None,
                A_m: int | None = None, p_n: int | None = None) -> MomentReport:
    """Exact E_m(n) = A_m(n)/p(n) together with the leading-order prediction.

    A_m(n) comes from ``table`` when given, otherwise from the series route.
    """
    from .asymptotics import thm_moment_asym

    if n < 1:
        raise ValueError("n must be at least 1")
    if m < 1:
        raise ValueError("m must be at least 1")
    if A_m is None:
        if table is not None:
            A_m = moment_from_distribution(m, n, table)
        else:
            A_m = moment_exact_series(m, n)[n]
    if p_n is None:
        p_n = table.row_sum(n) if table is not None else partition_series(n)[n]
    exact = Fraction(A_m, p_n)
    as_float = float(exact)
    asym = thm_moment_asym(m, n)
    return MomentReport(n, m, A_m, p_n, exact, as_float, asym, as_float / asym)


# --- limit law ---------------------------------------------------------------


def normalized_statistic(n: int, a) -> float:
    """x = (pi/sqrt(6n)) a - log(n)/4 + log(2 pi/sqrt 6)/2."""
    return math.pi / math.sqrt(6 * n) * a - 0.25 * math.log(n) + 0.5 * math.log(2 * math.pi / math.sqrt(6))


def erfc_limit_cdf(x: float) -> float:
    """Erfc(e^{-x}); tends to 0 as x -> -inf and to 1 as x -> +inf."""
    if x < -6.0:
        return 0.0
    return erfc(math.exp(-x))


def ks_distance(n: int, table: BivariateTable) -> float:
    """Sup distance between the exact CDF of the normalized a(lambda) and Erfc(e^{-x}).

    The empirical CDF is a step function and the limit is continuous and
    increasing, so the supremum is attained just before or at a jump.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    row = distribution(n, table)
    total = sum(row.values())
    cum = 0
    worst = 0.0
    for a in sorted(row):
        g = erfc_limit_cdf(normalized_statistic(n, a))
        before = cum / total
        cum += row[a]
        after = cum / total
        worst = max(worst, abs(before - g), abs(after - g))
    return worst


# --- four-variable identities ------------------------------------------------


def _enumeration_series(n_max: int, strict: bool) -> SparseSeries:
    terms: dict[tuple[int, ...], int] = {}
    for n in range(n_max + 1):
        for lam in enumerate_partitions(n):
            if strict and not lam.is_strict:
                continue
            e = (lam.largest, lam.length, alternating_sum(lam), n)
            terms[e] = terms.get(e, 0) + 1
    return SparseSeries(("x", "y", "z", "q"), "q", n_max, terms)


def multivariate_identity_check(n_max: int, kind: str = "ordinary") -> DiscrepancyReport:
    """Compare a four-variable (L, length, a, size) sum form with enumeration.

    ``kind`` is ``"ordinary"`` or ``"strict"``.
    """
    if n_max > 25:
        raise ValueError("n_max is capped at 25")
    if kind == "ordinary":
        series = four_variable_sum(n_max)
    elif kind == "strict":
        series = four_variable_strict_sum(n_max)
    else:
        raise ValueError(f"kind must be 'ordinary' or 'strict', got {kind!r}")
    oracle = _enumeration_series(n_max, strict=(kind == "strict"))
    d = series.max_abs_difference(oracle)
    return DiscrepancyReport(f"four-variable/{kind}", d, len(set(series.terms) | set(oracle.terms)))

"""Exact truncated power series in q and the partition q-series built on them.

Every coefficient here is a Python ``int``; nothing in this module touches
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series sum_{n<=order} coeffs[n] q^n with exact integer coefficients."""

    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.order < 0:
            raise ValueError(f"order must be non-negative, got {self.order}")
        if len(self.coeffs) != self.order + 1:
            raise ValueError(
                f"expected {self.order + 1} coefficients, got {len(self.coeffs)}"
            )

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], order: int | None = None) -> "TruncatedSeries":
        c = [int(v) for v in coeffs]
        if order is None:
            order = len(c) - 1
        c = (c + [0] * (order + 1))[: order + 1]
        return cls(order, tuple(c))

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls.from_coeffs([1], order)

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls(order, (0,) * (order + 1))

    def __getitem__(self, n: int) -> int:
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries.from_coeffs(self.coeffs[: order + 1], order)

    def __add__(self, other: "TruncatedSeries | int") -> "TruncatedSeries":
        if isinstance(other, int):
            other = TruncatedSeries.from_coeffs([other], self.order)
        n = min(self.order, other.order)
        return TruncatedSeries(n, tuple(a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other: "TruncatedSeries | int") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other: "TruncatedSeries | int") -> "TruncatedSeries":
        if isinstance(other, int):
            return TruncatedSeries(self.order, tuple(other * a for a in self.coeffs))
        return series_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "TruncatedSeries":
        if k < 0:
            raise ValueError("negative powers: use series_invert")
        result = TruncatedSeries.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at min(f.order, g.order)."""
    n = min(f.order, g.order)
    out = [0] * (n + 1)
    gc = g.coeffs
    for i, fi in enumerate(f.coeffs[: n + 1]):
        if not fi:
            continue
        tail = out[i:]
        out[i:] = [a + fi * b for a, b in zip(tail, gc)]
    return TruncatedSeries(n, tuple(out))


def series_invert(f: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse; the constant term must be +1 or -1."""
    f0 = f.coeffs[0]
    if f0 not in (1, -1):
        raise ValueError(
            f"constant coefficient must be +1 or -1 for an integral inverse, got {f0}"
        )
    fc = f.coeffs
    nz = [(i, c) for i, c in enumerate(fc) if i and c]
    g = [0] * (f.order + 1)
    g[0] = f0
    for n in range(1, f.order + 1):
        s = 0
        for i, c in nz:
            if i > n:
                break
            s += c * g[n - i]
        g[n] = -f0 * s
    return TruncatedSeries(f.order, tuple(g))


def euler_product(order: int) -> TruncatedSeries:
    """(q;q)_inf = prod_{k>=1} (1 - q^k) truncated at q^order, by direct multiplication."""
    c = [0] * (order + 1)
    c[0] = 1
    for k in range(1, order + 1):
        for n in range(order, k - 1, -1):
            c[n] -= c[n - k]
    return TruncatedSeries(order, tuple(c))


def partition_series(order: int) -> TruncatedSeries:
    """p(0), ..., p(order) from the unbounded-knapsack expansion of 1/(q;q)_inf."""
    if order < 0:
        raise ValueError("order must be non-negative")
    p = [0] * (order + 1)
    p[0] = 1
    for k in range(1, order + 1):
        for n in range(k, order + 1):
            p[n] += p[n - k]
    return TruncatedSeries(order, tuple(p))


def partition_numbers_pentagonal(order: int) -> list[int]:
    """p(0..order) by Euler's pentagonal-number recurrence.

    Kept deliberately separate from :func:`partition_series` so that each can
    serve as an oracle for the other.
    """
    p = [0] * (order + 1)
    p[0] = 1
    for n in range(1, order + 1):
        s = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            s += sign * p[n - g1]
            g2 = g1 + k
            if g2 <= n:
                s += sign * p[n - g2]
            k += 1
        p[n] = s
    return p


@dataclass(frozen=True)
class BivariateTable:
    """Counts N(n, a) of partitions of n with alternating sum a, for n <= order.

    Only cells with a = n (mod 2) are stored: ``rows[n][i]`` is the count for
    ``a = n % 2 + 2 i``.
    """

    order: int
    rows: tuple[tuple[int, ...], ...] = field(repr=False)

    def __post_init__(self):
        if len(self.rows) != self.order + 1:
            raise ValueError("need one row per n in 0..order")
        for n, row in enumerate(self.rows):
            if len(row) != n // 2 + 1:
                raise ValueError(f"row {n} must have {n // 2 + 1} cells, got {len(row)}")

    @classmethod
    def from_counts(cls, order: int, counts: Mapping[tuple[int, int], int]) -> "BivariateTable":
        """Build from a sparse ``{(n, a): count}`` map; rejects parity-forbidden cells."""
        rows = [[0] * (n // 2 + 1) for n in range(order + 1)]
        for (n, a), c in counts.items():
            if not c or n > order:
                continue
            if a < 0 or a > n or (a - n) % 2:
                raise ValueError(f"cell (n={n}, a={a}) is outside the parity lattice")
            rows[n][(a - n % 2) // 2] += c
        return cls(order, tuple(tuple(r) for r in rows))

    def count(self, n: int, a: int) -> int:
        if not 0 <= n <= self.order:
            raise IndexError(f"n={n} outside table of order {self.order}")
        if a < 0 or a > n or (a - n) % 2:
            return 0
        return self.rows[n][(a - n % 2) // 2]

    def row(self, n: int) -> dict[int, int]:
        """Nonzero cells of row n as ``{a: count}``."""
        if not 0 <= n <= self.order:
            raise IndexError(f"n={n} outside table of order {self.order}")
        base = n % 2
        return {base + 2 * i: c for i, c in enumerate(self.rows[n]) if c}

    def row_sum(self, n: int) -> int:
        return sum(self.rows[n])

    def truncate(self, order: int) -> "BivariateTable":
        return BivariateTable(order, self.rows[: order + 1])


def bivariate_distribution(order: int) -> BivariateTable:
    """Coefficients of P(z;q) = 1/((zq;q^2)_inf (q^2;q^2)_inf) up to q^order.

    Unbounded knapsack over part sizes k = 1..order (ascending), updating n
    ascending: an odd part moves (n-k, a-1) -> (n, a), an even part moves
    (n-k, a) -> (n, a).  Each parity-pruned row is packed into a single int
    with fixed-width slots, so a whole-row update is one big-int addition.
    Slot width is taken from p(order), which bounds every cell.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    bound = partition_series(order)[order]
    width_bytes = bound.bit_length() // 8 + 1
    shift = 8 * width_bytes

    packed = [0] * (order + 1)
    packed[0] = 1
    for k in range(1, order + 1):
        if k & 1:
            for n in range(k, order + 1):
                src = packed[n - k]
                if src:
                    # row n-k has the other parity; for even n the index moves up one slot
                    packed[n] += src << shift if not n & 1 else src
        else:
            for n in range(k, order + 1):
                src = packed[n - k]
                if src:
                    packed[n] += src

    rows = []
    for n, value in enumerate(packed):
        slots = n // 2 + 1
        raw = value.to_bytes(slots * width_bytes, "little")
        rows.append(
            tuple(
                int.from_bytes(raw[i * width_bytes : (i + 1) * width_bytes], "little")
                for i in range(slots)
            )
        )
    return BivariateTable(order, tuple(rows))


def lambert_Gk_series(k: int, order: int) -> TruncatedSeries:
    """q-expansion of G^{(k)}(1;q) = sum_{m>=1} m^k q^m / (1 - q^{2m}).

    The coefficient of q^n is the sum of m^k over factorizations n = m * d
    with d odd.
    """
    if k < 0 or order < 0:
        raise ValueError("k and order must be non-negative")
    c = [0] * (order + 1)
    for m in range(1, order + 1):
        mk = m**k
        for n in range(m, order + 1, 2 * m):
            c[n] += mk
    return TruncatedSeries(order, tuple(c))


# --- sparse multivariate series -------------------------------------------


Exponents = tuple[int, ...]


class SparseSeries:
    """Multivariate series as ``{exponent tuple: int}``, truncated in one variable.

    ``variables`` names the exponent slots; ``trunc`` is the name of the
    variable whose degree is capped at ``order`` (q, in practice).  Negative
    exponents are allowed in the other variables.
    """

    def __init__(self, variables: Sequence[str], trunc: str, order: int,
                 terms: Mapping[Exponents, int] | None = None):
        self.variables = tuple(variables)
        self.trunc = trunc
        self.t = self.variables.index(trunc)
        self.order = order
        self.terms: dict[Exponents, int] = {}
        if terms:
            for e, c in terms.items():
                if c and e[self.t] <= order:
                    self.terms[tuple(e)] = self.terms.get(tuple(e), 0) + c

    @classmethod
    def one(cls, variables: Sequence[str], trunc: str, order: int) -> "SparseSeries":
        return cls(variables, trunc, order, {(0,) * len(variables): 1})

    def copy(self) -> "SparseSeries":
        return SparseSeries(self.variables, self.trunc, self.order, self.terms)

    def monomial(self, exps: Mapping[str, int]) -> Exponents:
        e = [0] * len(self.variables)
        for v, k in exps.items():
            e[self.variables.index(v)] = k
        return tuple(e)

    def __add__(self, other: "SparseSeries") -> "SparseSeries":
        out = self.copy()
        for e, c in other.terms.items():
            v = out.terms.get(e, 0) + c
            if v:
                out.terms[e] = v
            else:
                out.terms.pop(e, None)
        return out

    def shifted(self, exps: Exponents, coeff: int = 1) -> "SparseSeries":
        """Multiply by coeff * (monomial with exponent tuple ``exps``)."""
        out = SparseSeries(self.variables, self.trunc, self.order)
        for e, c in self.terms.items():
            ne = tuple(a + b for a, b in zip(e, exps))
            if ne[self.t] <= self.order:
                out.terms[ne] = c * coeff
        return out

    def times_geometric(self, exps: Exponents, coeff: int = 1) -> "SparseSeries":
        """Multiply by 1/(1 - coeff * M), M the monomial ``exps`` (positive trunc-degree)."""
        d = exps[self.t]
        if d <= 0:
            raise ValueError("geometric factor needs positive degree in the truncation variable")
        out = dict(self.terms)
        # unbounded knapsack: sources visited in increasing trunc-degree
        by_degree: dict[int, list[Exponents]] = {}
        for e in out:
            by_degree.setdefault(e[self.t], []).append(e)
        for deg in range(self.order + 1 - d):
            for e in by_degree.get(deg, []):
                c = out.get(e, 0)
                if not c:
                    continue
                ne = tuple(a + b for a, b in zip(e, exps))
                if ne not in out:
                    by_degree.setdefault(deg + d, []).append(ne)
                    out[ne] = 0
                out[ne] += coeff * c
        res = SparseSeries(self.variables, self.trunc, self.order)
        res.terms = {e: c for e, c in out.items() if c}
        return res

    def project(self, keep: Sequence[str]) -> "SparseSeries":
        """Set every variable not in ``keep`` to 1."""
        idx = [self.variables.index(v) for v in keep]
        out: dict[Exponents, int] = {}
        for e, c in self.terms.items():
            ne = tuple(e[i] for i in idx)
            out[ne] = out.get(ne, 0) + c
        return SparseSeries(keep, self.trunc, self.order, out)

    def max_abs_difference(self, other: "SparseSeries") -> int:
        keys = set(self.terms) | set(other.terms)
        return max((abs(self.terms.get(e, 0) - other.terms.get(e, 0)) for e in keys), default=0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseSeries):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __repr__(self) -> str:
        return f"SparseSeries({self.variables}, order={self.order}, {len(self.terms)} terms)"


@dataclass(frozen=True)
class DiscrepancyReport:
    """Outcome of comparing two independently expanded series coefficientwise."""

    name: str
    max_discrepancy: int
    compared: int

    @property
    def ok(self) -> bool:
        return self.max_discrepancy == 0


_XZQ = ("x", "z", "q")
_XYZQ = ("x", "y", "z", "q")


def trivariate_product(order: int, perturb: bool = False) -> SparseSeries:
    """1/((xzq;q^2)_inf (xq^2;q^2)_inf) in variables (x, z, q)."""
    s = SparseSeries.one(_XZQ, "q", order)
    for j in range(1, order + 1):
        s = s.times_geometric((1, 1, j) if j & 1 else (1, 0, j))
    if perturb and order >= 1:
        e = (order, order, order)
        s.terms[e] = s.terms.get(e, 0) + 1
    return s


def _finite_pochhammers(s: SparseSeries, n_odd: int, n_even: int, with_y: bool) -> SparseSeries:
    # divide by (xzq;q^2)_{n_odd} (xq^2;q^2)_{n_even}
    for i in range(1, n_odd + 1):
        e = (1, 0, 1, 2 * i - 1) if with_y else (1, 1, 2 * i - 1)
        s = s.times_geometric(e)
    for i in range(1, n_even + 1):
        e = (1, 0, 0, 2 * i) if with_y else (1, 0, 2 * i)
        s = s.times_geometric(e)
    return s


def trivariate_sum(order: int) -> SparseSeries:
    """Length-graded sum form of sum_lambda x^{L} z^{a} q^{|lambda|} in (x, z, q)."""
    total = SparseSeries.one(_XZQ, "q", order)
    one = SparseSeries.one(_XZQ, "q", order)
    for n in range(1, order // 2 + 1):
        term = _finite_pochhammers(one.shifted((1, 0, 2 * n)), n, n, with_y=False)
        total = total + term
    for n in range(0, (order - 1) // 2 + 1):
        term = _finite_pochhammers(one.shifted((1, 1, 2 * n + 1)), n + 1, n, with_y=False)
        total = total + term
    return total


def four_variable_sum(order: int) -> SparseSeries:
    """sum_lambda x^{L} y^{len} z^{a} q^{|lambda|} over all partitions, in (x, y, z, q)."""
    one = SparseSeries.one(_XYZQ, "q", order)
    total = one.copy()
    for n in range(1, order // 2 + 1):
        total = total + _finite_pochhammers(one.shifted((1, 2 * n, 0, 2 * n)), n, n, with_y=True)
    for n in range(0, (order - 1) // 2 + 1):
        total = total + _finite_pochhammers(
            one.shifted((1, 2 * n + 1, 1, 2 * n + 1)), n + 1, n, with_y=True
        )
    return total


def four_variable_strict_sum(order: int) -> SparseSeries:
    """Same statistics over strict partitions (distinct parts), in (x, y, z, q)."""
    one = SparseSeries.one(_XYZQ, "q", order)
    total = SparseSeries(_XYZQ, "q", order)
    n = 0
    while (2 * n) * (2 * n + 1) // 2 <= order:
        total = total + _finite_pochhammers(
            one.shifted((2 * n, 2 * n, n, (2 * n) * (2 * n + 1) // 2)), n, n, with_y=True
        )
        n += 1
    n = 0
    while (2 * n + 1) * (2 * n + 2) // 2 <= order:
        total = total + _finite_pochhammers(
            one.shifted((2 * n + 1, 2 * n + 1, n + 1, (2 * n + 1) * (2 * n + 2) // 2)),
            n + 1, n, with_y=True,
        )
        n += 1
    return total


def trivariate_identity_check(order: int, perturb: bool = False) -> DiscrepancyReport:
    """Compare the product form with both length-graded sum forms up to q^order.

    The four-variable sum is projected to y = 1 before comparison.  With
    ``perturb`` the product side is deliberately corrupted in one coefficient,
    which the checker must detect.
    """
    product = trivariate_product(order, perturb=perturb)
    sum3 = trivariate_sum(order)
    sum4 = four_variable_sum(order).project(_XZQ)
    d = max(product.max_abs_difference(sum3), product.max_abs_difference(sum4))
    compared = len(set(product.terms) | set(sum3.terms) | set(sum4.terms))
    return DiscrepancyReport("trivariate", d, compared)

"""MacMahon Omega_>= elimination on crude forms.

Text format (whitespace is ignored)::

    form     := [monomial "*"] "1/(" factor+ ")"      (also: monomial "/(" factor+ ")")
    factor   := "(1 - " monomial ")"
    monomial := term ("*" term)*
    term     := var ["^" int]
    var      := x<digits> | l<digits> | x | y | z | q

``l<k>`` are the eliminator variables.  The rewriter knows one rule,

    Omega_>= l^{-A} / ((1 - X l)(1 - Y/l)) = X^A / ((1 - X)(1 - X Y)),   A >= 0,

applied to one eliminator at a time; a missing (1 - Y/l) factor means Y = 0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .series import BivariateTable, SparseSeries, TruncatedSeries

_VAR_RE = re.compile(r"(x\d+|l\d+|x|y|z|q)")
BASE_SINGLES = ("x", "y", "z", "q")


class OmegaSyntaxError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        pointer = f"\n  {text}\n  {' ' * pos}^" if text else ""
        super().__init__(f"{message} at position {pos}{pointer}")


class EliminationError(ValueError):
    def __init__(self, var: str, message: str):
        self.var = var
        super().__init__(f"cannot eliminate {var}: {message}")


def is_eliminator(name: str) -> bool:
    return name.startswith("l")


def _var_key(name: str) -> tuple[int, int, str]:
    # base x-variables first by index, then the single letters, then eliminators
    if name.startswith("x") and len(name) > 1:
        return (0, int(name[1:]), "")
    if name in BASE_SINGLES:
        return (1, BASE_SINGLES.index(name), "")
    if name.startswith("l"):
        return (2, int(name[1:]), "")
    raise ValueError(f"unknown variable {name!r}")


@dataclass(frozen=True)
class Monomial:
    coefficient: int = 1
    exponents: tuple[tuple[str, int], ...] = ()

    @classmethod
    def make(cls, exps: Mapping[str, int] | Iterable[tuple[str, int]] = (), coefficient: int = 1) -> "Monomial":
        items = exps.items() if isinstance(exps, Mapping) else exps
        acc: dict[str, int] = {}
        for v, e in items:
            _var_key(v)
            acc[v] = acc.get(v, 0) + e
        return cls(coefficient, tuple(sorted(((v, e) for v, e in acc.items() if e), key=lambda t: _var_key(t[0]))))

    @property
    def exps(self) -> dict[str, int]:
        return dict(self.exponents)

    def power(self, var: str) -> int:
        return self.exps.get(var, 0)

    def without(self, var: str) -> "Monomial":
        return Monomial(self.coefficient, tuple((v, e) for v, e in self.exponents if v != var))

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial.make(list(self.exponents) + list(other.exponents), self.coefficient * other.coefficient)

    def __pow__(self, k: int) -> "Monomial":
        if k == 0:
            return Monomial()
        return Monomial.make([(v, e * k) for v, e in self.exponents], self.coefficient**k)

    @property
    def is_one(self) -> bool:
        return self.coefficient == 1 and not self.exponents

    def eliminators(self) -> set[str]:
        return {v for v, _ in self.exponents if is_eliminator(v)}

    def sort_key(self):
        return (sum(abs(e) for _, e in self.exponents), [(_var_key(v), e) for v, e in self.exponents])

    def __str__(self) -> str:
        parts = [v if e == 1 else f"{v}^{e}" for v, e in self.exponents]
        if self.coefficient != 1 or not parts:
            if self.coefficient == -1 and parts:
                return "-" + "*".join(parts)
            parts.insert(0, str(self.coefficient))
        return "*".join(parts)


def _factors_text(factors: Sequence[Monomial]) -> str:
    return "(" + "".join(f"(1-{m})" for m in factors) + ")"


@dataclass(frozen=True)
class CrudeForm:
    """prefactor * prod 1/(1 - M_i); may contain eliminator variables."""

    prefactor: Monomial = field(default_factory=Monomial)
    denominators: tuple[Monomial, ...] = ()

    def __post_init__(self):
        for m in self.denominators:
            if m.is_one:
                raise ValueError("a factor (1 - 1) is not allowed")

    def eliminators(self) -> set[str]:
        s = self.prefactor.eliminators()
        for m in self.denominators:
            s |= m.eliminators()
        return s

    def normalized(self) -> "CrudeForm":
        return CrudeForm(self.prefactor, tuple(sorted(self.denominators, key=Monomial.sort_key)))

    def __str__(self) -> str:
        body = "1/" + _factors_text(self.denominators)
        if self.prefactor.is_one:
            return body
        return f"{self.prefactor}*{body}"


@dataclass(frozen=True)
class ProductForm:
    """numerator / prod (1 - M_i) with every M_i free of eliminators."""

    numerator: Monomial = field(default_factory=Monomial)
    denominators: tuple[Monomial, ...] = ()

    def __post_init__(self):
        if self.numerator.eliminators() or any(m.eliminators() for m in self.denominators):
            raise ValueError("a product form cannot contain eliminator variables")

    def normalized(self) -> "ProductForm":
        return ProductForm(self.numerator, tuple(sorted(self.denominators, key=Monomial.sort_key)))

    def __str__(self) -> str:
        if not self.denominators:
            return str(self.numerator)
        return f"{self.numerator}/{_factors_text(self.denominators)}"


# --- parser --------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise OmegaSyntaxError(msg, self.pos, self.text)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def expect(self, s: str):
        self.skip()
        if not self.text.startswith(s, self.pos):
            found = self.text[self.pos : self.pos + 1] or "end of input"
            self.error(f"expected {s!r}, found {found!r}")
        self.pos += len(s)

    def integer(self) -> int:
        self.skip()
        m = re.compile(r"[+-]?\s*\d+").match(self.text, self.pos)
        if not m:
            self.error("expected an integer")
        self.pos = m.end()
        return int(m.group().replace(" ", ""))

    def term(self) -> tuple[str, int]:
        self.skip()
        m = _VAR_RE.match(self.text, self.pos)
        if not m:
            bad = re.compile(r"[A-Za-z_]\w*").match(self.text, self.pos)
            if bad:
                self.error(f"unknown variable {bad.group()!r}")
            self.error("expected a variable")
        end = m.end()
        # reject e.g. "xa" or "zz" that would otherwise tokenize partially
        if end < len(self.text) and (self.text[end].isalnum() or self.text[end] == "_"):
            bad = re.compile(r"[A-Za-z_]\w*").match(self.text, self.pos)
            self.error(f"unknown variable {bad.group()!r}")
        self.pos = end
        exp = 1
        if self.peek("^"):
            self.expect("^")
            exp = self.integer()
        return m.group(), exp

    def monomial(self) -> Monomial:
        terms = [self.term()]
        while True:
            save = self.pos
            if self.peek("*"):
                self.expect("*")
                self.skip()
                if _VAR_RE.match(self.text, self.pos):
                    terms.append(self.term())
                    continue
            self.pos = save
            return Monomial.make(terms)

    def factors(self) -> list[Monomial]:
        self.expect("(")
        out = []
        while self.peek("("):
            self.expect("(")
            self.expect("1")
            self.expect("-")
            out.append(self.monomial())
            self.expect(")")
        if not out:
            self.error("expected at least one factor '(1 - ...)'")
        self.expect(")")
        return out

    def form(self) -> tuple[Monomial, list[Monomial]]:
        self.skip()
        prefactor = Monomial()
        if self.peek("1"):
            self.expect("1")
            self.expect("/")
            facs = self.factors()
        else:
            prefactor = self.monomial()
            if self.peek("*"):
                self.expect("*")
                self.expect("1")
                self.expect("/")
                facs = self.factors()
            elif self.peek("/"):
                self.expect("/")
                facs = self.factors()
            else:
                facs = []
        self.skip()
        if self.pos != len(self.text):
            self.error(f"unexpected trailing input {self.text[self.pos:]!r}")
        return prefactor, facs


def parse_crude(text: str) -> CrudeForm:
    prefactor, facs = _Parser(text).form()
    if not facs:
        raise OmegaSyntaxError("expected '1/(' followed by factors", len(text), text)
    for m in facs:
        if m.is_one:
            raise OmegaSyntaxError("factor (1 - 1) is degenerate", 0, text)
    return CrudeForm(prefactor, tuple(facs))


def parse_product(text: str) -> ProductForm:
    prefactor, facs = _Parser(text).form()
    return ProductForm(prefactor, tuple(facs))


def format_form(form: CrudeForm | ProductForm) -> str:
    return str(form.normalized())


# --- elimination -------------------------------------------------------------------


def eliminate_once(form: CrudeForm, var: str) -> CrudeForm:
    """Apply the single-eliminator rule to ``var``."""
    if not is_eliminator(var):
        raise EliminationError(var, "not an eliminator variable")
    A = -form.prefactor.power(var)
    if A < 0:
        raise EliminationError(var, f"prefactor carries {var}^{-A}; need a non-positive power")
    raising, lowering, rest = [], [], []
    for m in form.denominators:
        e = m.power(var)
        if e == 0:
            rest.append(m)
        elif e == 1:
            raising.append(m)
        elif e == -1:
            lowering.append(m)
        else:
            raise EliminationError(var, f"factor (1-{m}) has {var}^{e}; only powers +-1 are supported")
    if len(raising) != 1:
        raise EliminationError(var, f"needs exactly one raising factor, found {len(raising)}")
    if len(lowering) > 1:
        raise EliminationError(var, f"needs at most one lowering factor, found {len(lowering)}")
    X = raising[0].without(var)
    new_factors = [X]
    if lowering:
        new_factors.append(X * lowering[0].without(var))
    for m in new_factors:
        if m.is_one:
            raise EliminationError(var, "elimination produced a singular factor (1 - 1)")
    prefactor = form.prefactor.without(var) * (X**A)
    return CrudeForm(prefactor, tuple(rest + new_factors))


def eliminate_all(form: CrudeForm, order: Sequence[str] | None = None) -> ProductForm:
    """Eliminate each variable in ``order`` (default l1, l2, ... by index)."""
    if order is None:
        order = sorted(form.eliminators(), key=_var_key)
    for var in order:
        form = eliminate_once(form, var)
    left = form.eliminators()
    if left:
        raise EliminationError(sorted(left, key=_var_key)[0], "still present after the requested eliminations")
    return ProductForm(form.prefactor, form.denominators).normalized()


# --- crude-form builders ---------------------------------------------------------


def chain_crude_form(n: int) -> CrudeForm:
    """Partitions with at most n parts: 1/((1-x1 l1)(1-x2 l2/l1)...(1-xn ln/l_{n-1}))."""
    facs = [Monomial.make({"x1": 1, "l1": 1})]
    for i in range(2, n + 1):
        facs.append(Monomial.make({f"x{i}": 1, f"l{i}": 1, f"l{i-1}": -1}))
    return CrudeForm(Monomial(), tuple(facs))


def exact_length_crude_form(n: int) -> CrudeForm:
    """Partitions with exactly n parts: the chain with prefactor l_n^{-1}."""
    base = chain_crude_form(n)
    return CrudeForm(Monomial.make({f"l{n}": -1}), base.denominators)


def strict_crude_form(n: int) -> CrudeForm:
    """Strict partitions with exactly n parts: prefactor l_1^{-1} ... l_n^{-1}."""
    base = chain_crude_form(n)
    return CrudeForm(Monomial.make({f"l{i}": -1 for i in range(1, n + 1)}), base.denominators)


# --- substitution & expansion --------------------------------------------------------


def substitute(form: ProductForm, mapping: Mapping[str, Monomial]) -> ProductForm:
    """Replace variables by monomials; variables absent from ``mapping`` stay put
    only if they are among x, y, z, q."""

    def sub(m: Monomial) -> Monomial:
        out = Monomial(m.coefficient)
        for v, e in m.exponents:
            if v in mapping:
                out = out * (mapping[v] ** e)
            elif v in BASE_SINGLES:
                out = out * Monomial.make({v: e})
            else:
                raise KeyError(f"no substitution given for variable {v!r}")
        return out

    return ProductForm(sub(form.numerator), tuple(sub(m) for m in form.denominators))


def alternating_map(n_vars: int, largest: bool = False) -> dict[str, Monomial]:
    """x_{2i-1} -> z q, x_{2i} -> q/z; with ``largest`` also x1 -> x z q."""
    mp = {}
    for i in range(1, n_vars + 1):
        mp[f"x{i}"] = Monomial.make({"z": 1, "q": 1}) if i % 2 else Monomial.make({"q": 1, "z": -1})
    if largest and n_vars >= 1:
        mp["x1"] = Monomial.make({"x": 1, "z": 1, "q": 1})
    return mp


def identity_map(form: ProductForm) -> dict[str, Monomial]:
    names = {v for v, _ in form.numerator.exponents}
    for m in form.denominators:
        names |= {v for v, _ in m.exponents}
    return {v: Monomial.make({v: 1}) for v in names}


def parse_substitution(spec: str) -> dict[str, Monomial]:
    """``"x1=z*q, x2=q*z^-1"`` -> mapping."""
    out = {}
    for item in spec.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise OmegaSyntaxError(f"substitution item {item!r} lacks '='", 0, spec)
        name, rhs = (s.strip() for s in item.split("=", 1))
        if not _VAR_RE.fullmatch(name):
            raise OmegaSyntaxError(f"unknown variable {name!r}", 0, spec)
        p = _Parser(rhs)
        mono = p.monomial()
        p.skip()
        if p.pos != len(rhs):
            p.error("unexpected trailing input")
        out[name] = mono
    return out


def expand_to_series(form: ProductForm, order: int):
    """Expand numerator * prod 1/(1 - M_i) up to q^order.

    Returns a TruncatedSeries if only q occurs, a BivariateTable (rows n, columns
    the z-degree) if only z and q occur, otherwise a SparseSeries.
    """
    names: set[str] = {v for v, _ in form.numerator.exponents}
    for m in form.denominators:
        names |= {v for v, _ in m.exponents}
    if "q" not in names and form.denominators:
        raise ValueError("every factor needs positive q-degree")
    for m in form.denominators:
        if m.power("q") <= 0:
            raise ValueError(f"factor (1-{m}) needs positive q-degree for a finite truncation")
    variables = tuple(sorted(names | {"q"}, key=_var_key))
    s = SparseSeries.one(variables, "q", order)

    def vec(m: Monomial):
        ex = m.exps
        return tuple(ex.get(v, 0) for v in variables)

    s = s.shifted(vec(form.numerator), form.numerator.coefficient)
    for m in form.denominators:
        s = s.times_geometric(vec(m), m.coefficient)

    if variables == ("q",):
        c = [0] * (order + 1)
        for (k,), v in s.terms.items():
            c[k] += v
        return TruncatedSeries(order, tuple(c))
    if variables == ("z", "q"):
        return BivariateTable.from_counts(order, {(n, a): v for (a, n), v in s.terms.items()})
    return s

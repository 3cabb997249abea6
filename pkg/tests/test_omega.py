import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from altsum import omega
from altsum.moments import enumerate_partitions
from altsum.series import TruncatedSeries, bivariate_distribution

CHAIN3 = "1/((1 - x1*l1)(1 - x2*l2*l1^-1)(1 - x3*l3*l2^-1))"
STRICT2 = "l1^-1*l2^-1 * 1/((1 - x1*l1)(1 - x2*l2*l1^-1))"


def test_parse_examples():
    f = omega.parse_crude(CHAIN3)
    assert len(f.denominators) == 3 and f.prefactor.is_one
    g = omega.parse_crude(STRICT2)
    assert g.prefactor.exps == {"l1": -1, "l2": -1}
    h = omega.parse_crude("1/((1 - q))")
    assert h.eliminators() == set()


@pytest.mark.parametrize("text,pos", [
    ("1/((1 - w1))", 8),
    ("1/((1 - x1*l1)", 14),
    ("1/(1 - q)", 3),
    ("1/((1 + q))", 6),
    ("1/((1 - q^))", 10),
])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(omega.OmegaSyntaxError) as exc:
        omega.parse_crude(text)
    assert exc.value.pos == pos


def test_eliminate_once_examples():
    base = omega.parse_crude("1/((1 - x1*l1)(1 - x2*l2*l1^-1))")
    assert str(omega.eliminate_once(base, "l1")) == "1/((1-x1)(1-x1*x2*l2))"
    a1 = omega.parse_crude("l1^-1*1/((1 - x1*l1)(1 - x2*l2*l1^-1))")
    assert str(omega.eliminate_once(a1, "l1")) == "x1*1/((1-x1)(1-x1*x2*l2))"
    assert str(omega.eliminate_all(omega.parse_crude("l1^-2*1/((1 - x*l1))"))) == "x^2/((1-x))"


def test_eliminate_errors_name_variable():
    two_raise = omega.parse_crude("1/((1 - x1*l1)(1 - x2*l1))")
    with pytest.raises(omega.EliminationError) as exc:
        omega.eliminate_once(two_raise, "l1")
    assert exc.value.var == "l1" and "l1" in str(exc.value)
    with pytest.raises(omega.EliminationError) as exc:
        omega.eliminate_once(omega.parse_crude("l1*1/((1 - x1*l1))"), "l1")
    assert exc.value.var == "l1"
    with pytest.raises(omega.EliminationError) as exc:
        omega.eliminate_all(omega.parse_crude(CHAIN3), ["l2", "l1", "l3"])
    assert exc.value.var == "l1"


def test_golden_forms():
    assert omega.format_form(omega.eliminate_all(omega.parse_crude(CHAIN3))) == "1/((1-x1)(1-x1*x2)(1-x1*x2*x3))"
    assert omega.format_form(omega.eliminate_all(omega.parse_crude(STRICT2))) == "x1^2*x2/((1-x1)(1-x1*x2))"
    assert omega.format_form(omega.eliminate_all(omega.parse_crude("1/((1 - q))"))) == "1/((1-q))"


def test_order_invariance_for_valid_orders():
    form = omega.chain_crude_form(4)
    golden = omega.eliminate_all(form)
    done = 0
    for perm in itertools.permutations([f"l{i}" for i in range(1, 5)]):
        try:
            result = omega.eliminate_all(form, perm)
        except omega.EliminationError:
            continue
        assert result == golden
        done += 1
    assert done > 1


def test_substitution_examples():
    two = omega.eliminate_all(omega.chain_crude_form(2))
    assert str(omega.substitute(two, omega.alternating_map(2))) == "1/((1-z*q)(1-q^2))"
    assert omega.substitute(two, omega.identity_map(two)) == two
    three = omega.eliminate_all(omega.chain_crude_form(3))
    sub = omega.substitute(three, omega.alternating_map(3, largest=True)).normalized()
    assert str(sub) == "1/((1-x*z*q)(1-x*q^2)(1-x*z*q^3))"
    parsed = omega.parse_substitution("x1=z*q, x2=q*z^-1")
    assert omega.substitute(two, parsed) == omega.substitute(two, omega.alternating_map(2))


def test_expand_chain_50_matches_table():
    product = omega.eliminate_all(omega.chain_crude_form(50))
    table = omega.expand_to_series(omega.substitute(product, omega.alternating_map(50)), 50)
    assert table == bivariate_distribution(50)


def test_expand_geometric():
    series = omega.expand_to_series(omega.parse_product("1/((1-q))"), 7)
    assert series == TruncatedSeries.from_coeffs([1] * 8)


def test_strict_two_parts_against_enumeration():
    product = omega.eliminate_all(omega.strict_crude_form(2))
    table = omega.expand_to_series(omega.substitute(product, omega.alternating_map(2)), 20)
    for n in range(21):
        expect = {}
        for lam in enumerate_partitions(n):
            if lam.length == 2 and lam.is_strict:
                a = lam.parts[0] - lam.parts[1]
                expect[a] = expect.get(a, 0) + 1
        assert table.row(n) == expect


def test_exact_length_form():
    product = omega.eliminate_all(omega.exact_length_crude_form(3))
    series = omega.expand_to_series(omega.substitute(product, {"x1": omega.Monomial.make({"q": 1}),
                                                               "x2": omega.Monomial.make({"q": 1}),
                                                               "x3": omega.Monomial.make({"q": 1})}), 15)
    assert list(series) == [sum(1 for lam in enumerate_partitions(n) if lam.length == 3) for n in range(16)]


def _random_form(rng: random.Random) -> str:
    n = rng.randint(1, 5)
    facs = []
    for i in range(1, n + 1):
        mono = f"x{i}*l{i}" + (f"*l{i - 1}^-1" if i > 1 else "")
        facs.append(f"(1 - {mono})")
    if rng.random() < 0.5:
        facs.append("(1 - q^2)")
    pre = "*".join(f"l{i}^-{rng.randint(1, 2)}" for i in range(1, n + 1) if rng.random() < 0.5)
    body = "1/(" + "".join(facs) + ")"
    return f"{pre}*{body}" if pre else body


def test_round_trip_corpus():
    rng = random.Random(2024)
    corpus = [_random_form(rng) for _ in range(20)]
    for text in corpus:
        crude = omega.parse_crude(text)
        assert omega.parse_crude(str(crude)) == crude
        product = omega.eliminate_all(crude)
        assert omega.parse_product(omega.format_form(product)).normalized() == product


@settings(max_examples=40, deadline=None)
@given(st.dictionaries(st.sampled_from(["x1", "x2", "z", "q", "l1"]), st.integers(-3, 3), min_size=1))
def test_monomial_print_parse(exps):
    mono = omega.Monomial.make(exps)
    if mono.is_one:
        return
    text = f"1/((1-{mono}))"
    assert omega.parse_crude(text).denominators == (mono,)

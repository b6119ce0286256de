"""Jones polynomials: normalization, quarter-power substitution, the knot family."""

import random

import pytest

from tanglekit.bracket import eval_expr
from tanglekit.diagram import TREFOIL_PD, pd_read
from tanglekit.errors import ResourceLimitError
from tanglekit.expr import build_named, parse_tangle
from tanglekit.jones import (
    QuarterLaurent,
    congruent_to_one,
    jones_from_chi,
    jones_of_expression,
    jones_of_Kr,
    jones_of_link,
    normalized_bracket,
)
from tanglekit.laurent import LaurentPoly, Monomial


def poly(text):
    return LaurentPoly.parse(text)


# -- QuarterLaurent -----------------------------------------------------------


def test_quarter_construction_and_equality():
    assert QuarterLaurent({0: 1}) == 1
    assert QuarterLaurent({}) == 0
    assert QuarterLaurent({4: 2, 0: 0}) == QuarterLaurent([(4, 1), (4, 1)])
    assert QuarterLaurent({4: 1}) != QuarterLaurent({8: 1})
    assert hash(QuarterLaurent({4: 1, -4: 2})) == hash(QuarterLaurent({-4: 2, 4: 1}))


def test_quarter_formatting():
    q = QuarterLaurent({-10: 1, 0: -2, 1: 3, 2: -1, 4: 1})
    assert q.format() == "t^-5/2 - 2 + 3t^1/4 - t^1/2 + t"
    assert QuarterLaurent({}).format() == "0"
    assert QuarterLaurent({0: -7}).format() == "-7"
    assert QuarterLaurent({-4: 1}).format() == "t^-1"
    assert str(QuarterLaurent({8: -1})) == "-t^2"


def test_quarter_span():
    assert QuarterLaurent({-16: -1, -12: 1, -4: 1}).span() == 3
    assert QuarterLaurent({0: 5}).span() == 0
    with pytest.raises(ValueError):
        QuarterLaurent({}).span()


def test_quarter_subtract_constant():
    q = QuarterLaurent({0: 3, 4: 2})
    assert q - 3 == QuarterLaurent({4: 2})
    assert q - 1 == QuarterLaurent({0: 2, 4: 2})


# -- normalization and substitution ----------------------------------------------


def test_normalized_bracket_values():
    p = poly("1 - t^4")
    assert normalized_bracket(p, 0) == p
    assert normalized_bracket(p, 1) == p.shift(-3).scale(-1)
    assert normalized_bracket(p, 2) == p.shift(-6)
    assert normalized_bracket(p, -1) == p.shift(3).scale(-1)


def test_normalized_bracket_composes():
    rng = random.Random(13)
    for _ in range(200):
        p = LaurentPoly({rng.randint(-9, 9): rng.randint(-5, 5) for _ in range(4)})
        a, b = rng.randint(-4, 4), rng.randint(-4, 4)
        assert normalized_bracket(normalized_bracket(p, a), b) == normalized_bracket(p, a + b)


def test_jones_from_chi_mapping():
    assert jones_from_chi(poly("1")) == 1
    # c*t^e lands at quarter-exponent -e
    v = jones_from_chi(poly("2t^4 - t^-8"))
    assert v == QuarterLaurent({-4: 2, 8: -1})


def test_unknot_normalizations():
    # one-crossing kinks normalize back to the unknot
    for text, closure in (("1", "den"), ("1", "num"), ("-1", "den"), ("-1", "num")):
        rep = jones_of_expression(parse_tangle(text), closure)
        assert rep["v"] == 1, (text, closure)
        assert rep["chi"] == poly("1")


def test_congruent_to_one():
    assert congruent_to_one(QuarterLaurent({0: 1}), 2)
    assert congruent_to_one(QuarterLaurent({0: 3}), 2)
    assert congruent_to_one(QuarterLaurent({0: 1, 4: 8, -8: -8}), 8)
    assert not congruent_to_one(QuarterLaurent({0: 1, 4: 4}), 8)
    assert not congruent_to_one(QuarterLaurent({4: 1}), 2)
    assert congruent_to_one(QuarterLaurent({5: 9}), 1)
    with pytest.raises(ValueError):
        congruent_to_one(QuarterLaurent({0: 1}), 0)


# -- the doubling-tower knot family ------------------------------------------------


def test_kr_small_r():
    for r in (1, 2, 3, 4):
        rep = jones_of_Kr(r)
        assert rep.r == r
        assert rep.jones_mod_trivial
        assert rep.crossing_bound == 1 + 20 * 2 ** (r - 1)
        e = 2 ** (r - 1)
        assert rep.chi_leading == Monomial(2**e, 28 * e)
        assert not congruent_to_one(jones_from_chi(rep.chi), 2 ** (r + 1))


def test_kr_chi_is_f_plus_shifted_g():
    for r in (1, 2, 3):
        pair = eval_expr(build_named(f"M{r}"))
        assert jones_of_Kr(r).chi == pair.f + pair.g.shift(-6)


def test_kr_matches_expression_pipeline():
    # the closed expression den(1 * M_r), traced writhe and all, agrees
    for r in (1, 2):
        rep = jones_of_expression(parse_tangle(f"1 * M{r}"), "den")
        assert rep["components"] == 1
        assert rep["writhe"] == 1
        assert rep["chi"] == jones_of_Kr(r).chi


def test_kr_modular():
    for r in (9, 10):
        rep = jones_of_Kr(r, modulus=2**r)
        assert rep.jones_mod_trivial
        assert rep.chi_leading is None


def test_kr_budgets():
    with pytest.raises(ValueError):
        jones_of_Kr(0)
    with pytest.raises(ResourceLimitError):
        jones_of_Kr(9)
    with pytest.raises(ResourceLimitError):
        jones_of_Kr(5, exact_budget=4)


# -- closed diagrams -----------------------------------------------------------------


def test_trefoil_jones():
    link = pd_read(TREFOIL_PD)
    v, chi, writhe, components = jones_of_link(link)
    assert components == 1
    assert writhe == -3
    assert chi == poly("t^4 + t^12 - t^16")
    assert v == QuarterLaurent({-16: -1, -12: 1, -4: 1})
    assert v.format() == "-t^-4 + t^-3 + t^-1"
    assert v.span() == 3
    # extreme coefficients of an alternating knot's Jones are +-1
    assert {abs(c) for q, c in v.items() if q in (-16, -4)} == {1}
    assert not congruent_to_one(v, 2)


def test_closure_jones_difference():
    # num and den closures of T821 are different links with different Jones
    num = jones_of_expression(parse_tangle("T821"), "num")
    den = jones_of_expression(parse_tangle("T821"), "den")
    assert num["components"] == 1
    assert num["v"] != den["v"]

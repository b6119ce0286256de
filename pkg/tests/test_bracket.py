"""Bracket-pair algebra: frozen reference pairs and structural identities."""

import random

import pytest

from tanglekit.bracket import (
    EXACT_CROSSING_BUDGET,
    INFINITY_TANGLE_PAIR,
    ZERO_TANGLE_PAIR,
    BracketPair,
    den_closure,
    eval_expr,
    generator,
    hsum,
    mirror_pair,
    num_closure,
    vsum,
)
from tanglekit.errors import ResourceLimitError
from tanglekit.expr import Mirror, build_named, crossing_count, parse_tangle
from tanglekit.laurent import DELTA, LaurentPoly, Monomial

from test_expr import random_expr


def poly(text):
    return LaurentPoly.parse(text)


def pair(f_text, g_text):
    return BracketPair(poly(f_text), poly(g_text))


def random_pair(rng):
    def rp():
        return LaurentPoly(
            {rng.randint(-12, 12): rng.randint(-5, 5) for _ in range(rng.randint(0, 5))}
        )

    return BracketPair(rp(), rp())


# -- generators and printed reference pairs -------------------------------------


def test_generator_pairs():
    assert generator(1) == pair("t", "t^-1")
    assert generator(-1) == pair("t^-1", "t")
    with pytest.raises(ValueError):
        generator(2)


def test_base_tangle_pairs():
    assert ZERO_TANGLE_PAIR == pair("1", "0")
    assert INFINITY_TANGLE_PAIR == pair("0", "1")
    assert eval_expr(parse_tangle("0")) == ZERO_TANGLE_PAIR
    assert eval_expr(parse_tangle("inf")) == INFINITY_TANGLE_PAIR


def test_twist_reference_pairs():
    assert eval_expr(parse_tangle("2")) == pair("t^2", "-t^-4 + 1")
    assert eval_expr(parse_tangle("3")) == pair("t^3", "t^-7 - t^-3 + t")
    assert eval_expr(parse_tangle("1/2")) == pair("1 - t^4", "t^-2")


def test_t821_reference_pair():
    expected = pair(
        "-2t^-6 + 2t^-2 - 2t^2 + t^6",
        "-2t^-4 + 3 - 4t^4 + 3t^8 - 2t^12 + t^16",
    )
    assert eval_expr(parse_tangle("(((1/2)+1)*2)+(-3)")) == expected
    assert eval_expr(build_named("T821")) == expected


def test_t10_reference_pairs():
    t10 = pair(
        "2t^-10 - 2t^-6 + 2t^-2 - 2t^6 + 2t^10 - 2t^14 + t^18",
        "2t^-8 - 5t^-4 + 7 - 7t^4 + 5t^8 - 3t^12 + t^16",
    )
    assert eval_expr(build_named("T10")) == t10
    assert eval_expr(parse_tangle("T821 * 2")) == t10
    minus = pair(
        "t^-18 - 2t^-14 + 2t^-10 - 2t^-6 + 2t^2 - 2t^6 + 2t^10",
        "t^-16 - 3t^-12 + 5t^-8 - 7t^-4 + 7 - 5t^4 + 2t^8",
    )
    assert eval_expr(parse_tangle("-(T10)")) == minus
    assert mirror_pair(t10) == minus


def test_t10_mod2_reference_pairs():
    t10 = eval_expr(build_named("T10")).reduce_mod(2)
    assert t10 == pair("t^18", "t^-4 + 1 + t^4 + t^8 + t^12 + t^16")
    minus = eval_expr(parse_tangle("-(T10)")).reduce_mod(2)
    assert minus == pair("t^-18", "t^-16 + t^-12 + t^-8 + t^-4 + 1 + t^4")


def test_t20_reference_values():
    t20 = eval_expr(build_named("T20"))
    assert t20.reduce_mod(2) == pair("1", "0")
    assert t20.f.leading_term() == Monomial(2, 28)
    assert t20.g.leading_term() == Monomial(2, 26)


def test_doubling_squares_f():
    prev = eval_expr(build_named("M1"))
    for r in range(2, 6):
        cur = eval_expr(build_named(f"M{r}"))
        assert cur.f == prev.f.square()
        assert cur.g == prev.f * prev.g + prev.g * prev.f + DELTA * prev.g * prev.g
        prev = cur


def test_m_family_leading_terms():
    for r in range(1, 7):
        p = eval_expr(build_named(f"M{r}"))
        e = 2 ** (r - 1)
        assert p.f.leading_term() == Monomial(2**e, 28 * e)
        assert p.g.leading_term() == Monomial(2**e, 28 * e - 2)
        assert p.reduce_mod(2**r) == pair("1", "0")


# -- algebraic identities ---------------------------------------------------------


def test_hsum_vsum_closed_forms():
    a = pair("t + t^3", "1 - t^2")
    b = pair("t^-1", "2 + t^4")
    h = hsum(a, b)
    assert h.f == a.f * b.f
    assert h.g == a.f * b.g + a.g * b.f + DELTA * a.g * b.g
    v = vsum(a, b)
    assert v.f == DELTA * a.f * b.f + a.f * b.g + a.g * b.f
    assert v.g == a.g * b.g


def test_closures():
    p = pair("1 - t^2", "t^-3")
    assert num_closure(p) == DELTA * p.f + p.g
    assert den_closure(p) == p.f + DELTA * p.g
    # closing the zero tangle one way gives a circle pair, the other an unknot
    assert num_closure(ZERO_TANGLE_PAIR) == DELTA
    assert den_closure(ZERO_TANGLE_PAIR) == poly("1")


def test_sum_star_identities_random():
    rng = random.Random(112358)
    for _ in range(1200):
        a = random_pair(rng)
        b = random_pair(rng)
        c = random_pair(rng)
        # identities
        assert hsum(a, ZERO_TANGLE_PAIR) == a
        assert vsum(a, INFINITY_TANGLE_PAIR) == a
        # commutativity and associativity
        assert hsum(a, b) == hsum(b, a)
        assert vsum(a, b) == vsum(b, a)
        assert hsum(hsum(a, b), c) == hsum(a, hsum(b, c))
        assert vsum(vsum(a, b), c) == vsum(a, vsum(b, c))


def test_swap_exchanges_sums_and_closures_random():
    rng = random.Random(1729)
    for _ in range(1200):
        a = random_pair(rng)
        b = random_pair(rng)
        assert vsum(a, b).swap() == hsum(a.swap(), b.swap())
        assert hsum(a, b).swap() == vsum(a.swap(), b.swap())
        assert num_closure(a.swap()) == den_closure(a)
        assert a.swap().swap() == a


def test_mirror_is_a_homomorphism_random():
    rng = random.Random(2718)
    for _ in range(1200):
        a = random_pair(rng)
        b = random_pair(rng)
        assert mirror_pair(mirror_pair(a)) == a
        assert mirror_pair(hsum(a, b)) == hsum(mirror_pair(a), mirror_pair(b))
        assert mirror_pair(vsum(a, b)) == vsum(mirror_pair(a), mirror_pair(b))


def test_operator_sugar_matches_functions():
    a = pair("t", "1")
    b = pair("t^-1 + t", "2")
    assert a + b == hsum(a, b)
    assert a * b == vsum(a, b)
    assert -a == mirror_pair(a)
    assert str(a) == "[t; 1]"


def test_mirror_matches_mirrored_expression_random():
    rng = random.Random(31415)
    for _ in range(200):
        e = random_expr(rng)
        assert eval_expr(Mirror(e)) == mirror_pair(eval_expr(e))


# -- modular evaluation ------------------------------------------------------------


def test_modular_matches_exact_reduction_random():
    rng = random.Random(55)
    for _ in range(150):
        e = random_expr(rng)
        m = rng.choice((2, 3, 4, 8, 1 << 10))
        assert eval_expr(e, m) == eval_expr(e).reduce_mod(m)


def test_modular_matches_exact_on_tower():
    for r in range(1, 7):
        e = build_named(f"M{r}")
        m = 2**r
        assert eval_expr(e, m) == eval_expr(e).reduce_mod(m)


def test_modular_tower_reaches_r20():
    for r in (9, 14, 20):
        assert eval_expr(build_named(f"M{r}"), 2**r) == pair("1", "0")


# -- budgets and bounds -------------------------------------------------------------


def test_exact_budget():
    assert crossing_count(build_named("M9")) > EXACT_CROSSING_BUDGET
    with pytest.raises(ResourceLimitError):
        eval_expr(build_named("M9"))
    # the same expression is fine modularly
    assert eval_expr(build_named("M9"), 2**9) == pair("1", "0")


def test_modular_budget():
    with pytest.raises(ResourceLimitError):
        eval_expr(build_named("M30"), 2)


def test_exponent_bounds_random():
    # every state contributes t^(±1) per crossing and a delta power per
    # circle; circles are bounded by crossings plus the expression's free
    # loops (crossingless sums like inf * inf close loops on their own)
    from tanglekit.diagram import connectivity

    rng = random.Random(95)
    for _ in range(300):
        e = random_expr(rng)
        n = crossing_count(e)
        loops = connectivity(e).loops
        bound = 3 * n + 2 * loops + 2
        p = eval_expr(e)
        for part in (p.f, p.g):
            for exp, _ in part.items():
                assert abs(exp) <= bound

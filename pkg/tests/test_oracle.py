"""Cross-validation: pair algebra against the brute-force state-sum oracle.

The state sum knows nothing about the pair calculus: it enumerates all 2^n
smoothings of the expanded diagram and counts circles with union-find.
Agreement on random expressions and on the named family is the library's
independent correctness evidence.
"""

import random

from tanglekit.bracket import den_closure, eval_expr, num_closure
from tanglekit.diagram import close, expand, state_sum_bracket, state_sum_pair
from tanglekit.expr import build_named, crossing_count, parse_tangle

from test_expr import random_expr


def test_oracle_agrees_on_200_random_expressions():
    rng = random.Random(600613)
    checked = 0
    while checked < 200:
        e = random_expr(rng)
        if crossing_count(e) > 12:
            continue
        assert state_sum_pair(expand(e)) == eval_expr(e), e
        checked += 1


def test_oracle_agrees_on_t821():
    e = build_named("T821")
    assert crossing_count(e) == 8  # 2^8 states
    assert state_sum_pair(expand(e)) == eval_expr(e)


def test_oracle_agrees_on_m1():
    e = build_named("M1")
    assert crossing_count(e) == 20  # 2^20 states
    assert state_sum_pair(expand(e), workers=2) == eval_expr(e)


def test_oracle_closures_cohere_random():
    rng = random.Random(31313)
    checked = 0
    while checked < 60:
        e = random_expr(rng)
        if crossing_count(e) > 9:
            continue
        d = expand(e)
        pair = eval_expr(e)
        assert state_sum_bracket(close(d, "num")) == num_closure(pair)
        assert state_sum_bracket(close(d, "den")) == den_closure(pair)
        checked += 1


def test_oracle_closure_of_first_knot():
    # the 21-crossing closed diagram behind the r = 1 knot
    e = parse_tangle("1 * M1")
    link = close(expand(e), "den")
    assert state_sum_bracket(link, cap=21, workers=2) == den_closure(eval_expr(e))

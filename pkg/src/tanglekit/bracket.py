"""Bracket pairs of algebraic tangles.

Every 2-string tangle T has bracket br(T) = [f; g] in the basis of the two
crossingless tangles: f weights the horizontal pair of strands, g the
vertical pair.  A single positive crossing is [t; t^-1], a negative one
[t^-1; t], and the two compositions obey

    hsum(A, B) = [fA*fB ; fA*gB + gA*fB + delta*gA*gB]
    vsum(A, B) = [delta*fA*fB + fA*gB + gA*fB ; gA*gB]

with delta = -t^-2 - t^2 the circle weight.  Closing a tangle gives back
ordinary bracket polynomials: the numerator closure is delta*f + g, the
denominator closure f + delta*g.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import expr as ex
from .errors import ResourceLimitError
from .laurent import DELTA, ONE, ZERO, LaurentPoly

__all__ = [
    "BracketPair",
    "ZERO_TANGLE_PAIR",
    "INFINITY_TANGLE_PAIR",
    "generator",
    "hsum",
    "vsum",
    "mirror_pair",
    "num_closure",
    "den_closure",
    "eval_expr",
    "EXACT_CROSSING_BUDGET",
    "MODULAR_CROSSING_BUDGET",
]

# Exact coefficients double with every tangle doubling; past the r=8 family
# bound (1 + 20*2^7 crossings, plus slack) exact evaluation is refused.
EXACT_CROSSING_BUDGET = 4096
MODULAR_CROSSING_BUDGET = 1 << 24


@dataclass(frozen=True)
class BracketPair:
    """[f; g]: bracket coordinates of a tangle in the crossingless basis."""

    f: LaurentPoly
    g: LaurentPoly

    def mirror(self) -> "BracketPair":
        return BracketPair(self.f.mirror(), self.g.mirror())

    def reduce_mod(self, m: int) -> "BracketPair":
        return BracketPair(self.f.reduce_mod(m), self.g.reduce_mod(m))

    def swap(self) -> "BracketPair":
        return BracketPair(self.g, self.f)

    def __add__(self, other: "BracketPair") -> "BracketPair":
        return hsum(self, other)

    def __mul__(self, other: "BracketPair") -> "BracketPair":
        return vsum(self, other)

    def __neg__(self) -> "BracketPair":
        return self.mirror()

    def __str__(self) -> str:
        return f"[{self.f}; {self.g}]"


ZERO_TANGLE_PAIR = BracketPair(ONE, ZERO)
INFINITY_TANGLE_PAIR = BracketPair(ZERO, ONE)


def generator(sign: int) -> BracketPair:
    """Bracket pair of the one-crossing tangle of the given sign."""
    if sign == 1:
        return BracketPair(LaurentPoly({1: 1}), LaurentPoly({-1: 1}))
    if sign == -1:
        return BracketPair(LaurentPoly({-1: 1}), LaurentPoly({1: 1}))
    raise ValueError("crossing sign must be +1 or -1")


def _delta_times(p: LaurentPoly) -> LaurentPoly:
    return (p.shift(-2) + p.shift(2)).scale(-1)


def hsum(a: BracketPair, b: BracketPair, modulus: int | None = None) -> BracketPair:
    """Side-by-side composition."""
    if modulus is None:
        f = a.f * b.f
        g = a.f * b.g + a.g * b.f + _delta_times(a.g * b.g)
        return BracketPair(f, g)
    m = modulus
    f = a.f.mul_mod(b.f, m)
    if a is b:
        cross = a.f.mul_mod(a.g, m).scale(2)
    else:
        cross = a.f.mul_mod(b.g, m) + a.g.mul_mod(b.f, m)
    g = cross + _delta_times(a.g.mul_mod(b.g, m))
    return BracketPair(f, g.reduce_mod(m))


def vsum(a: BracketPair, b: BracketPair, modulus: int | None = None) -> BracketPair:
    """Stacked composition, a above b."""
    if modulus is None:
        f = _delta_times(a.f * b.f) + a.f * b.g + a.g * b.f
        g = a.g * b.g
        return BracketPair(f, g)
    m = modulus
    if a is b:
        cross = a.f.mul_mod(a.g, m).scale(2)
    else:
        cross = a.f.mul_mod(b.g, m) + a.g.mul_mod(b.f, m)
    f = _delta_times(a.f.mul_mod(b.f, m)) + cross
    g = a.g.mul_mod(b.g, m)
    return BracketPair(f.reduce_mod(m), g)


def mirror_pair(a: BracketPair) -> BracketPair:
    return a.mirror()


def num_closure(a: BracketPair) -> LaurentPoly:
    """Bracket of the closure joining the two top and the two bottom ends."""
    return DELTA * a.f + a.g


def den_closure(a: BracketPair) -> LaurentPoly:
    """Bracket of the closure joining the two left and the two right ends."""
    return a.f + DELTA * a.g


def eval_expr(e: ex.TangleExpr, modulus: int | None = None) -> BracketPair:
    """Bracket pair of a tangle expression.

    Exact by default; with a modulus, coefficients are reduced after every
    ring operation, so deep doubling towers stay cheap.  Results are
    memoized per subtree (by identity), so an expression that reuses a
    subtree object pays for it once.

    Raises ResourceLimitError past the crossing budget for the mode.
    """
    n = ex.crossing_count(e)
    if modulus is None:
        if n > EXACT_CROSSING_BUDGET:
            raise ResourceLimitError(
                f"{n} crossings exceeds the exact budget of "
                f"{EXACT_CROSSING_BUDGET}; use a modulus"
            )
    else:
        if modulus < 2:
            raise ValueError("modulus must be >= 2")
        if n > MODULAR_CROSSING_BUDGET:
            raise ResourceLimitError(
                f"{n} crossings exceeds the modular budget of "
                f"{MODULAR_CROSSING_BUDGET}"
            )
    cache: dict[int, BracketPair] = {}
    pair = _eval(e, modulus, cache)
    return pair


def _twist_chain(k: int, vertical: bool, modulus: int | None) -> BracketPair:
    gen = generator(1 if k > 0 else -1)
    acc = gen
    combine = vsum if vertical else hsum
    for _ in range(abs(k) - 1):
        acc = combine(acc, gen, modulus)
    if modulus is not None:
        acc = acc.reduce_mod(modulus)
    return acc


def _eval(e, modulus, cache) -> BracketPair:
    key = id(e)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if isinstance(e, ex.Twist):
        pair = _twist_chain(e.k, False, modulus)
    elif isinstance(e, ex.VTwist):
        pair = _twist_chain(e.k, True, modulus)
    elif isinstance(e, ex.Sum):
        pair = hsum(_eval(e.left, modulus, cache), _eval(e.right, modulus, cache), modulus)
    elif isinstance(e, ex.Star):
        pair = vsum(_eval(e.left, modulus, cache), _eval(e.right, modulus, cache), modulus)
    elif isinstance(e, ex.Mirror):
        pair = _eval(e.child, modulus, cache).mirror()
    elif isinstance(e, ex.Zero):
        pair = ZERO_TANGLE_PAIR
    elif isinstance(e, ex.Infinity):
        pair = INFINITY_TANGLE_PAIR
    else:
        raise TypeError(f"not a tangle expression: {e!r}")
    cache[key] = pair
    return pair

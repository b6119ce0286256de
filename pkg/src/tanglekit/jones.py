"""Jones polynomials from brackets.

The normalized bracket of an oriented diagram D with writhe w is
chi(D) = (-t^3)^(-w) * <D>; substituting t -> t^(-1/4) turns chi into the
Jones polynomial V.  V lives in quarter powers of t, so it gets its own
term map keyed by quarter-exponents (the coefficient of t^(q/4) sits at
key q); for knots all keys are multiples of 4.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import diagram as dg
from . import expr as ex
from .bracket import (
    BracketPair,
    den_closure,
    eval_expr,
    generator,
    num_closure,
    vsum,
)
from .errors import ResourceLimitError
from .laurent import LaurentPoly, Monomial

__all__ = [
    "QuarterLaurent",
    "KrReport",
    "normalized_bracket",
    "jones_from_chi",
    "congruent_to_one",
    "jones_of_Kr",
    "jones_of_link",
    "jones_of_expression",
    "DEFAULT_EXACT_R_BUDGET",
]

# Largest r for which jones_of_Kr computes exactly by default; coefficients
# reach 2^(2^(r-1)) bits of growth along the doubling tower.
DEFAULT_EXACT_R_BUDGET = 8


class QuarterLaurent:
    """A polynomial in t^(1/4): integer coefficients keyed by quarter-units."""

    __slots__ = ("_terms",)

    def __init__(self, terms=()):
        data = {}
        items = terms.items() if hasattr(terms, "items") else terms
        for q, c in items:
            c = data.get(q, 0) + c
            if c:
                data[q] = c
            elif q in data:
                del data[q]
        self._terms = data

    @property
    def is_zero(self):
        return not self._terms

    def items(self):
        return iter(self._terms.items())

    def coefficient(self, quarters: int) -> int:
        return self._terms.get(quarters, 0)

    def span(self) -> int:
        """Highest minus lowest exponent, in whole powers of t."""
        if not self._terms:
            raise ValueError("zero polynomial has no span")
        return (max(self._terms) - min(self._terms)) // 4

    def __eq__(self, other):
        if isinstance(other, QuarterLaurent):
            return self._terms == other._terms
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __sub__(self, other: int) -> "QuarterLaurent":
        out = dict(self._terms)
        c = out.get(0, 0) - other
        if c:
            out[0] = c
        else:
            out.pop(0, None)
        q = QuarterLaurent.__new__(QuarterLaurent)
        q._terms = out
        return q

    def format(self) -> str:
        """Like the integer rendering, with fractional exponents reduced."""
        if not self._terms:
            return "0"
        parts = []
        for q in sorted(self._terms):
            c = self._terms[q]
            mag = abs(c)
            if q == 0:
                body = str(mag)
            else:
                e = _quarter_str(q)
                tpart = "t" if e == "1" else f"t^{e}"
                body = tpart if mag == 1 else f"{mag}{tpart}"
            if not parts:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"QuarterLaurent({self.format()!r})"


def _quarter_str(q: int) -> str:
    if q % 4 == 0:
        return str(q // 4)
    if q % 2 == 0:
        return f"{q // 2}/2"
    return f"{q}/4"


def normalized_bracket(bracket: LaurentPoly, writhe: int) -> LaurentPoly:
    """chi = (-t^3)^(-writhe) * bracket."""
    sign = -1 if writhe % 2 else 1
    return bracket.shift(-3 * writhe).scale(sign)


def jones_from_chi(chi: LaurentPoly) -> QuarterLaurent:
    """Substitute t -> t^(-1/4): the term c*t^e lands on quarter-key -e."""
    return QuarterLaurent({-e: c for e, c in chi.items()})


def congruent_to_one(v: QuarterLaurent, m: int) -> bool:
    """Whether every coefficient of v - 1 is divisible by m."""
    if m < 1:
        raise ValueError("modulus must be positive")
    return all(c % m == 0 for _, c in (v - 1).items())


@dataclass(frozen=True)
class KrReport:
    """Everything the doubling-family knot K_r reports for one r.

    In modular mode the leading term is unknown (coefficients are residues),
    so chi_leading is None rather than a wrong value.
    """

    r: int
    chi: LaurentPoly
    chi_leading: Monomial | None
    jones_mod_trivial: bool
    crossing_bound: int


def jones_of_Kr(
    r: int,
    modulus: int | None = None,
    exact_budget: int = DEFAULT_EXACT_R_BUDGET,
) -> KrReport:
    """Jones data for the knot closing the r-fold doubling tower.

    The closure adds a single positive crossing whose denominator closure
    is a knot of writhe +1 (checked against the diagram trace for small r
    in the test suite), so chi = (-t^3)^(-1) * <closure>.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    if modulus is None and r > exact_budget:
        raise ResourceLimitError(
            f"exact mode is budgeted to r <= {exact_budget}; use a modulus"
        )
    mr = ex.build_named(f"M{r}")
    pair = vsum(generator(1), eval_expr(mr, modulus), modulus)
    bracket = den_closure(pair)
    if modulus is not None:
        bracket = bracket.reduce_mod(modulus)
    chi = normalized_bracket(bracket, 1)
    if modulus is not None:
        chi = chi.reduce_mod(modulus)
        trivial = congruent_to_one(jones_from_chi(chi), modulus)
        return KrReport(r, chi, None, trivial, 1 + 20 * 2 ** (r - 1))
    trivial = congruent_to_one(jones_from_chi(chi), 2**r)
    return KrReport(r, chi, chi.leading_term(), trivial, 1 + 20 * 2 ** (r - 1))


def jones_of_link(
    link: dg.LinkDiagram, cap: int = dg.DEFAULT_STATE_SUM_CAP
) -> tuple[QuarterLaurent, LaurentPoly, int, int]:
    """(V, chi, writhe, components) of a closed diagram via the state sum."""
    components = dg.component_count(link)
    bracket = dg.state_sum_bracket(link, cap)
    writhe = dg.orient_and_writhe(link, "first-strand")
    chi = normalized_bracket(bracket, writhe)
    return jones_from_chi(chi), chi, writhe, components


def jones_of_expression(
    e: ex.TangleExpr, closure: str, modulus: int | None = None
) -> dict:
    """Jones data for the num or den closure of a tangle expression.

    The bracket comes from the pair algebra (reduced mod m when a modulus
    is given); the writhe from tracing the expanded diagram under the
    first-strand convention.  Returns a dict of the printed fields;
    'congruent_to_one' appears only with a modulus.
    """
    pair = eval_expr(e, modulus)
    bracket = num_closure(pair) if closure == "num" else den_closure(pair)
    if modulus is not None:
        bracket = bracket.reduce_mod(modulus)
    d = dg.expand(e)
    link = dg.close(d, closure)
    writhe = dg.orient_and_writhe(link, "first-strand")
    components = dg.component_count(link)
    chi = normalized_bracket(bracket, writhe)
    if modulus is not None:
        chi = chi.reduce_mod(modulus)
    v = jones_from_chi(chi)
    out = {
        "closure": closure,
        "crossings": ex.crossing_count(e),
        "components": components,
        "writhe": writhe,
        "chi": chi,
        "v": v,
    }
    if modulus is not None:
        out["congruent_to_one"] = congruent_to_one(v, modulus)
    return out

"""Exact bracket-pair calculus on algebraic tangles.

The pair algebra lives in `bracket` on expressions from `expr`, with
Laurent-polynomial arithmetic in `laurent`.  `diagram` expands expressions
into explicit crossing-level diagrams and provides the brute-force
state-sum bracket used as an independent oracle.  `jones` normalizes
closures into Jones polynomials; `cli` is the command-line surface.
"""

from .bracket import (
    BracketPair,
    den_closure,
    eval_expr,
    generator,
    hsum,
    mirror_pair,
    num_closure,
    vsum,
)
from .errors import OrientationError, ParseError, ResourceLimitError
from .expr import (
    build_named,
    crossing_count,
    format_tangle,
    parse_tangle,
)
from .jones import (
    KrReport,
    QuarterLaurent,
    congruent_to_one,
    jones_from_chi,
    jones_of_Kr,
    jones_of_expression,
    jones_of_link,
    normalized_bracket,
)
from .laurent import DELTA, LaurentPoly, Monomial

__version__ = "0.1.0"

__all__ = [
    "BracketPair",
    "DELTA",
    "KrReport",
    "LaurentPoly",
    "Monomial",
    "OrientationError",
    "ParseError",
    "QuarterLaurent",
    "ResourceLimitError",
    "build_named",
    "congruent_to_one",
    "crossing_count",
    "den_closure",
    "eval_expr",
    "format_tangle",
    "generator",
    "hsum",
    "jones_from_chi",
    "jones_of_Kr",
    "jones_of_expression",
    "jones_of_link",
    "mirror_pair",
    "normalized_bracket",
    "num_closure",
    "parse_tangle",
    "vsum",
    "__version__",
]

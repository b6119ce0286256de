"""Planar diagrams underneath the tangle algebra.

A tangle diagram is a list of crossings over shared edge ids plus four open
boundary ends (NW, NE, SW, SE) and explicit arcs joining edge ids that were
glued during composition.  Every edge id occurs exactly twice among crossing
ports, arcs and the boundary, except that a boundary id's second occurrence
is the boundary itself.

A crossing stores its four edge ids counterclockwise with the under-strand
on ports 0 and 2 (so ports 1 and 3 carry the over-strand).  For the
one-crossing tangle of positive sign the over-strand runs NW to SE, and the
ports tuple reads (sw, se, ne, nw).

The state sum enumerates all 2^n smoothings with a binary counter (bit i is
crossing i; bit 0 selects the t-weighted smoothing), counts circles with a
union-find, and reproduces the bracket algebra independently.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, replace
from enum import Enum

from . import expr as ex
from .bracket import BracketPair
from .errors import OrientationError, ParseError, ResourceLimitError
from .laurent import DELTA, ONE, ZERO, LaurentPoly

__all__ = [
    "Crossing",
    "TangleDiagram",
    "LinkDiagram",
    "Pairing",
    "Connectivity",
    "expand",
    "close",
    "connectivity",
    "diagram_connectivity",
    "component_count",
    "orient_and_writhe",
    "annotate_signs",
    "state_sum_pair",
    "state_sum_bracket",
    "pd_read",
    "pd_write",
    "DEFAULT_STATE_SUM_CAP",
    "TREFOIL_PD",
]

DEFAULT_STATE_SUM_CAP = 24

# The knot-atlas code for the trefoil, bundled for sanity checks.
TREFOIL_PD = "X[1,4,2,5]\nX[3,6,4,1]\nX[5,2,6,3]\n"


@dataclass(frozen=True)
class Crossing:
    """Four edge ids counterclockwise; ports 0 and 2 are the under-strand.

    sign_hint is filled by annotate_signs once an orientation is chosen.
    """

    ports: tuple[int, int, int, int]
    sign_hint: int | None = None


@dataclass(frozen=True)
class TangleDiagram:
    crossings: tuple[Crossing, ...]
    boundary: tuple[int, int, int, int]  # NW, NE, SW, SE
    arcs: tuple[tuple[int, int], ...]
    free_loops: int = 0


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple[Crossing, ...]
    arcs: tuple[tuple[int, int], ...]
    free_loops: int = 0


class Pairing(Enum):
    ZERO_TYPE = "zero"
    INF_TYPE = "inf"
    CROSS_TYPE = "cross"


@dataclass(frozen=True)
class Connectivity:
    """Which boundary ends connect to which, plus closed loops inside."""

    pairing: Pairing
    loops: int


# -- expansion ---------------------------------------------------------------


def expand(e: ex.TangleExpr) -> TangleDiagram:
    """The planar diagram of a tangle expression, fresh edge ids from 0."""
    return _expand(e, itertools.count())


def _expand(e, ids) -> TangleDiagram:
    if isinstance(e, ex.Twist):
        return _chain(e.k, False, ids)
    if isinstance(e, ex.VTwist):
        return _chain(e.k, True, ids)
    if isinstance(e, ex.Sum):
        return _glue(_expand(e.left, ids), _expand(e.right, ids), False)
    if isinstance(e, ex.Star):
        return _glue(_expand(e.left, ids), _expand(e.right, ids), True)
    if isinstance(e, ex.Mirror):
        return _mirror_diagram(_expand(e.child, ids))
    if isinstance(e, ex.Zero):
        nw, ne, sw, se = (next(ids) for _ in range(4))
        return TangleDiagram((), (nw, ne, sw, se), ((nw, ne), (sw, se)))
    if isinstance(e, ex.Infinity):
        nw, ne, sw, se = (next(ids) for _ in range(4))
        return TangleDiagram((), (nw, ne, sw, se), ((nw, sw), (ne, se)))
    raise TypeError(f"not a tangle expression: {e!r}")


def _single(sign: int, ids) -> TangleDiagram:
    nw, ne, sw, se = (next(ids) for _ in range(4))
    ports = (sw, se, ne, nw) if sign > 0 else (se, ne, nw, sw)
    return TangleDiagram((Crossing(ports),), (nw, ne, sw, se), ())


def _chain(k: int, vertical: bool, ids) -> TangleDiagram:
    sign = 1 if k > 0 else -1
    d = _single(sign, ids)
    for _ in range(abs(k) - 1):
        d = _glue(d, _single(sign, ids), vertical)
    return d


def _glue(a: TangleDiagram, b: TangleDiagram, vertical: bool) -> TangleDiagram:
    anw, ane, asw, ase = a.boundary
    bnw, bne, bsw, bse = b.boundary
    if vertical:
        new_arcs = ((asw, bnw), (ase, bne))
        boundary = (anw, ane, bsw, bse)
    else:
        new_arcs = ((ane, bnw), (ase, bsw))
        boundary = (anw, bne, asw, bse)
    return TangleDiagram(
        a.crossings + b.crossings,
        boundary,
        a.arcs + b.arcs + new_arcs,
        a.free_loops + b.free_loops,
    )


def _mirror_diagram(d: TangleDiagram) -> TangleDiagram:
    flipped = tuple(
        Crossing((c.ports[1], c.ports[2], c.ports[3], c.ports[0]))
        for c in d.crossings
    )
    return TangleDiagram(flipped, d.boundary, d.arcs, d.free_loops)


def close(d: TangleDiagram, mode: str) -> LinkDiagram:
    """Close a tangle: "num" joins top and bottom pairs, "den" the sides."""
    nw, ne, sw, se = d.boundary
    if mode == "num":
        extra = ((nw, ne), (sw, se))
    elif mode == "den":
        extra = ((nw, sw), (ne, se))
    else:
        raise ValueError("closure mode must be 'num' or 'den'")
    return LinkDiagram(d.crossings, d.arcs + extra, d.free_loops)


# -- connectivity ------------------------------------------------------------

_Z, _I, _X = Pairing.ZERO_TYPE, Pairing.INF_TYPE, Pairing.CROSS_TYPE

_HSUM_TABLE = {
    (_Z, _Z): (_Z, 0), (_Z, _I): (_I, 0), (_I, _Z): (_I, 0), (_I, _I): (_I, 1),
    (_X, _X): (_Z, 0), (_Z, _X): (_X, 0), (_X, _Z): (_X, 0),
    (_I, _X): (_I, 0), (_X, _I): (_I, 0),
}
_VSUM_TABLE = {
    (_I, _I): (_I, 0), (_I, _Z): (_Z, 0), (_Z, _I): (_Z, 0), (_Z, _Z): (_Z, 1),
    (_X, _X): (_I, 0), (_I, _X): (_X, 0), (_X, _I): (_X, 0),
    (_Z, _X): (_Z, 0), (_X, _Z): (_Z, 0),
}


def connectivity(e: ex.TangleExpr) -> Connectivity:
    """End-pairing and loop count, composed algebraically (no diagram)."""
    return _conn(e, {})


def _conn(e, seen) -> Connectivity:
    key = id(e)
    hit = seen.get(key)
    if hit is not None:
        return hit
    if isinstance(e, (ex.Twist, ex.VTwist)):
        table = _VSUM_TABLE if isinstance(e, ex.VTwist) else _HSUM_TABLE
        pairing, loops = _X, 0
        for _ in range(abs(e.k) - 1):
            pairing, extra = table[pairing, _X]
            loops += extra
        out = Connectivity(pairing, loops)
    elif isinstance(e, (ex.Sum, ex.Star)):
        a = _conn(e.left, seen)
        b = _conn(e.right, seen)
        table = _HSUM_TABLE if isinstance(e, ex.Sum) else _VSUM_TABLE
        pairing, extra = table[a.pairing, b.pairing]
        out = Connectivity(pairing, a.loops + b.loops + extra)
    elif isinstance(e, ex.Mirror):
        out = _conn(e.child, seen)
    elif isinstance(e, ex.Zero):
        out = Connectivity(_Z, 0)
    elif isinstance(e, ex.Infinity):
        out = Connectivity(_I, 0)
    else:
        raise TypeError(f"not a tangle expression: {e!r}")
    seen[key] = out
    return out


def _union_strands(crossings, arcs, index):
    """Union-find over edge ids where strands pass through crossings."""
    parent = list(range(len(index)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for c in crossings:
        p = c.ports
        union(index[p[0]], index[p[2]])
        union(index[p[1]], index[p[3]])
    for a, b in arcs:
        union(index[a], index[b])
    return find


def _id_index(crossings, arcs, boundary=()):
    ids = set(boundary)
    for c in crossings:
        ids.update(c.ports)
    for a, b in arcs:
        ids.add(a)
        ids.add(b)
    return {e: i for i, e in enumerate(sorted(ids))}


def diagram_connectivity(d: TangleDiagram) -> Connectivity:
    """End-pairing and loop count read off the diagram by strand tracing."""
    index = _id_index(d.crossings, d.arcs, d.boundary)
    find = _union_strands(d.crossings, d.arcs, index)
    nw, ne, sw, se = (find(index[b]) for b in d.boundary)
    if nw == ne and sw == se and nw != sw:
        pairing = _Z
    elif nw == sw and ne == se and nw != ne:
        pairing = _I
    elif nw == se and ne == sw and nw != ne:
        pairing = _X
    else:
        raise ValueError("boundary ends do not pair into two strands")
    roots = {find(i) for i in range(len(index))}
    loops = len(roots) - 2 + d.free_loops
    return Connectivity(pairing, loops)


def component_count(link: LinkDiagram) -> int:
    """Number of closed strands in a link diagram."""
    index = _id_index(link.crossings, link.arcs)
    if not index:
        if link.free_loops == 0:
            raise ValueError("no components")
        return link.free_loops
    find = _union_strands(link.crossings, link.arcs, index)
    roots = {find(i) for i in range(len(index))}
    return len(roots) + link.free_loops


# -- orientation and writhe --------------------------------------------------

# Port i of a crossing sits at angle 225 + 90*i degrees; these are the
# corresponding unit corner positions used for the sign determinant.
_PORT_POS = ((-1, -1), (1, -1), (1, 1), (-1, 1))


def orient_and_writhe(d: TangleDiagram | LinkDiagram, convention: str) -> int:
    """Sum of crossing signs under the named orientation convention.

    "left-right" (tangles only): both strands run from the west ends
    (NW, SW) to the east ends; fails with OrientationError if an end pairs
    with the other end on its own side.  Closed loops inside the tangle,
    if any, are traversed in a fixed deterministic direction.

    "first-strand" (links or tangles): each component is traversed in the
    direction induced from its lowest edge id.  A knot's writhe does not
    depend on this choice; for multi-component links it is the documented
    deterministic convention.
    """
    signs = _crossing_signs(d, convention)
    return sum(signs)


def annotate_signs(d, convention: str):
    """A copy of the diagram with Crossing.sign_hint filled in."""
    signs = _crossing_signs(d, convention)
    crossings = tuple(replace(c, sign_hint=s) for c, s in zip(d.crossings, signs))
    return replace(d, crossings=crossings)


def _crossing_signs(d, convention: str) -> list[int]:
    boundary = d.boundary if isinstance(d, TangleDiagram) else ()
    if convention == "left-right" and not boundary:
        raise OrientationError("left-right orientation needs an open tangle")
    if convention not in ("left-right", "first-strand"):
        raise ValueError("convention must be 'left-right' or 'first-strand'")

    # occurrences[e] = both places edge e appears, in a fixed scan order
    occurrences: dict[int, list[tuple]] = {}
    for ci, c in enumerate(d.crossings):
        for pi, e in enumerate(c.ports):
            occurrences.setdefault(e, []).append(("c", ci, pi))
    for ai, (x, y) in enumerate(d.arcs):
        occurrences.setdefault(x, []).append(("a", ai, 0))
        occurrences.setdefault(y, []).append(("a", ai, 1))
    for bi, e in enumerate(boundary):
        occurrences.setdefault(e, []).append(("b", bi))
    for e, occ in occurrences.items():
        if len(occ) != 2:
            raise ValueError(f"edge {e} occurs {len(occ)} times, expected 2")

    visited: set[tuple] = set()
    entered: dict[int, list[int]] = {}

    def other(e, occ):
        first, second = occurrences[e]
        return second if occ == first else first

    def walk(occ):
        """Process occurrences along a strand until a boundary end or until
        the component closes back on an already-processed occurrence."""
        while occ not in visited:
            visited.add(occ)
            kind = occ[0]
            if kind == "b":
                return occ
            if kind == "c":
                ci, pi = occ[1], occ[2]
                entered.setdefault(ci, []).append(pi)
                exit_occ = ("c", ci, (pi + 2) % 4)
                e = d.crossings[ci].ports[(pi + 2) % 4]
            else:
                ai, side = occ[1], occ[2]
                exit_occ = ("a", ai, 1 - side)
                e = d.arcs[ai][1 - side]
            visited.add(exit_occ)
            occ = other(e, exit_occ)
        return None

    def walk_from_boundary(bi):
        visited.add(("b", bi))
        return walk(other(boundary[bi], ("b", bi)))

    if convention == "left-right" and boundary:
        end = walk_from_boundary(0)  # from NW eastward
        if end == ("b", 2):
            raise OrientationError("NW connects to SW; not left-right orientable")
        if ("b", 2) not in visited:
            walk_from_boundary(2)  # from SW eastward
    elif boundary:
        for bi in range(4):
            if ("b", bi) not in visited:
                walk_from_boundary(bi)

    # Remaining components are closed; seed deterministically by entering
    # the lowest unvisited edge id's first occurrence.
    for e in sorted(occurrences):
        first = occurrences[e][0]
        if first not in visited:
            walk(first)

    signs = []
    for ci in range(len(d.crossings)):
        ports = entered.get(ci, ())
        if len(ports) != 2:
            raise ValueError("incomplete traversal of a crossing")
        under_in = next(p for p in ports if p % 2 == 0)
        over_in = next(p for p in ports if p % 2 == 1)
        ux = _PORT_POS[(under_in + 2) % 4][0] - _PORT_POS[under_in][0]
        uy = _PORT_POS[(under_in + 2) % 4][1] - _PORT_POS[under_in][1]
        ox = _PORT_POS[(over_in + 2) % 4][0] - _PORT_POS[over_in][0]
        oy = _PORT_POS[(over_in + 2) % 4][1] - _PORT_POS[over_in][1]
        signs.append(1 if ox * uy - oy * ux > 0 else -1)
    return signs


# -- state sums --------------------------------------------------------------


def _compile_states(crossings, arcs, boundary, cap):
    """Contract arcs and renumber so each state is unions over 0..L-1."""
    n = len(crossings)
    if n > cap:
        raise ResourceLimitError(f"{n} crossings exceeds cap {cap}")
    index = _id_index(crossings, arcs, boundary)
    parent = list(range(len(index)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in arcs:
        ra, rb = find(index[a]), find(index[b])
        if ra != rb:
            parent[ra] = rb
    roots = sorted({find(i) for i in range(len(index))})
    compact = {r: i for i, r in enumerate(roots)}

    def node(e):
        return compact[find(index[e])]

    res = []
    for c in crossings:
        p0, p1, p2, p3 = (node(e) for e in c.ports)
        # bit 0: join (p0,p1) and (p2,p3), weight t; bit 1: the other way
        res.append(((p0, p1, p2, p3), (p0, p3, p1, p2)))
    ends = tuple(node(e) for e in boundary) if boundary else ()
    return res, len(roots), ends


def _count_states(res, size, ends, lo, hi):
    """Accumulate {(weight_bits, circles): multiplicity} over states [lo, hi).

    For tangles the key leads with the end pairing (0 or 1); cross-type
    pairings cannot occur in a planar smoothing and raise.
    """
    init = list(range(size))
    counts: dict[tuple, int] = {}
    for s in range(lo, hi):
        parent = init.copy()
        t = s
        for quad_a, quad_b in res:
            x, y, z, w = quad_b if t & 1 else quad_a
            t >>= 1
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            while parent[y] != y:
                parent[y] = parent[parent[y]]
                y = parent[y]
            if x != y:
                parent[x] = y
            while parent[z] != z:
                parent[z] = parent[parent[z]]
                z = parent[z]
            while parent[w] != w:
                parent[w] = parent[parent[w]]
                w = parent[w]
            if z != w:
                parent[z] = w
        components = 0
        for i in range(size):
            if parent[i] == i:
                components += 1
        if ends:
            e0, e1, e2, e3 = ends
            while parent[e0] != e0:
                e0 = parent[e0]
            while parent[e1] != e1:
                e1 = parent[e1]
            while parent[e2] != e2:
                e2 = parent[e2]
            while parent[e3] != e3:
                e3 = parent[e3]
            if e0 == e1 and e2 == e3 and e0 != e2:
                key = (0, s.bit_count(), components - 2)
            elif e0 == e2 and e1 == e3 and e0 != e1:
                key = (1, s.bit_count(), components - 2)
            else:
                raise ValueError("non-planar smoothing pairing")
        else:
            key = (s.bit_count(), components)
        counts[key] = counts.get(key, 0) + 1
    return counts


def _merge_counts(parts):
    total: dict[tuple, int] = {}
    for part in parts:
        for k, v in part.items():
            total[k] = total.get(k, 0) + v
    return total


def _state_counts(crossings, arcs, boundary, cap, workers):
    res, size, ends = _compile_states(crossings, arcs, boundary, cap)
    total = 1 << len(res)
    if workers <= 1 or total < (1 << 12):
        return _count_states(res, size, ends, 0, total), len(res)
    import multiprocessing as mp

    bounds = [total * i // workers for i in range(workers + 1)]
    jobs = [
        (res, size, ends, bounds[i], bounds[i + 1])
        for i in range(workers)
        if bounds[i] < bounds[i + 1]
    ]
    with mp.get_context("fork").Pool(len(jobs)) as pool:
        parts = pool.starmap(_count_states, jobs)
    return _merge_counts(parts), len(res)


def _delta_powers(max_c):
    powers = [ONE]
    for _ in range(max_c):
        powers.append(powers[-1] * DELTA)
    return powers


def state_sum_pair(
    d: TangleDiagram, cap: int = DEFAULT_STATE_SUM_CAP, workers: int = 1
) -> BracketPair:
    """Bracket pair by brute-force smoothing enumeration.

    Independent of the pair algebra: weights t / t^-1 per smoothing choice
    and one circle weight per closed circle beside the two open strands.
    """
    counts, n = _state_counts(d.crossings, d.arcs, d.boundary, cap, workers)
    free = d.free_loops
    deltas = _delta_powers(max((k[2] for k in counts), default=0) + free)
    f: dict[int, int] = {}
    g: dict[int, int] = {}
    for (which, ones, circles), mult in counts.items():
        acc = g if which else f
        exp = n - 2 * ones
        for e, c in deltas[circles + free].items():
            ce = c * mult
            acc[e + exp] = acc.get(e + exp, 0) + ce
    return BracketPair(
        LaurentPoly({e: c for e, c in f.items() if c}),
        LaurentPoly({e: c for e, c in g.items() if c}),
    )


def state_sum_bracket(
    link: LinkDiagram, cap: int = DEFAULT_STATE_SUM_CAP, workers: int = 1
) -> LaurentPoly:
    """Bracket polynomial of a closed diagram by smoothing enumeration.

    Normalized so a lone circle has bracket 1; every further circle
    multiplies by the circle weight.
    """
    if not link.crossings and not link.arcs:
        if link.free_loops == 0:
            raise ValueError("no components")
        return _delta_powers(link.free_loops - 1)[-1]
    counts, n = _state_counts(link.crossings, link.arcs, (), cap, workers)
    free = link.free_loops
    deltas = _delta_powers(max(k[1] for k in counts) + free)
    out: dict[int, int] = {}
    for (ones, circles), mult in counts.items():
        exp = n - 2 * ones
        for e, c in deltas[circles + free - 1].items():
            ce = c * mult
            out[e + exp] = out.get(e + exp, 0) + ce
    return LaurentPoly({e: c for e, c in out.items() if c})


# -- PD text format ----------------------------------------------------------

_PD_LINE = re.compile(r"X\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]")


def pd_read(text: str) -> LinkDiagram:
    """Read one diagram: one `X[a,b,c,d]` per line, CCW from an under edge.

    Blank lines and lines starting with '#' are ignored.  Every edge label
    must occur exactly twice.
    """
    crossings = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        m = _PD_LINE.fullmatch(line)
        if not m:
            raise ParseError(f"line {lineno}: not an X[a,b,c,d] crossing: {line!r}")
        labels = tuple(int(x) for x in m.groups())
        if 0 in labels:
            raise ParseError(f"line {lineno}: edge labels must be positive")
        crossings.append(Crossing(labels))
    if not crossings:
        raise ParseError("no components")
    seen: dict[int, int] = {}
    for c in crossings:
        for e in c.ports:
            seen[e] = seen.get(e, 0) + 1
    bad = sorted(e for e, k in seen.items() if k != 2)
    if bad:
        raise ParseError(f"edge label {bad[0]} occurs {seen[bad[0]]} times, expected 2")
    return LinkDiagram(tuple(crossings), ())


def pd_write(link: LinkDiagram) -> str:
    """Canonical PD text: arcs contracted away, labels 1.. in scan order."""
    if link.free_loops:
        raise ValueError("PD text cannot express crossingless circles")
    if not link.crossings:
        raise ValueError("PD text needs at least one crossing")
    index = _id_index(link.crossings, link.arcs)
    parent = list(range(len(index)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in link.arcs:
        ra, rb = find(index[a]), find(index[b])
        if ra != rb:
            parent[ra] = rb
    # an arc cycle that never meets a crossing is a crossingless circle,
    # which X-code lines cannot carry
    port_roots = {find(index[e]) for c in link.crossings for e in c.ports}
    for a, b in link.arcs:
        if find(index[a]) not in port_roots:
            raise ValueError("PD text cannot express crossingless circles")
    labels: dict[int, int] = {}
    lines = []
    for c in link.crossings:
        out = []
        for e in c.ports:
            r = find(index[e])
            if r not in labels:
                labels[r] = len(labels) + 1
            out.append(labels[r])
        lines.append(f"X[{out[0]},{out[1]},{out[2]},{out[3]}]")
    return "\n".join(lines) + "\n"

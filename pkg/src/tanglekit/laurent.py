"""Sparse Laurent polynomials in one variable t over the integers.

A polynomial is a map from integer exponents to nonzero arbitrary-precision
integer coefficients.  Values are immutable; every operation returns a new
polynomial in canonical form (no zero coefficients stored).

The canonical text rendering lists terms in ascending exponent order with
sign-separated terms, writes `t` and `t^-1` without an explicit `^1`, and
suppresses unit coefficients except on the constant term:

>>> print(LaurentPoly.parse("-2t^-6 + 2t^-2 - 2t^2 + t^6"))
-2t^-6 + 2t^-2 - 2t^2 + t^6
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator, Mapping, Union

import gmpy2
import numpy as np

from .errors import ParseError

__all__ = [
    "LaurentPoly",
    "Monomial",
    "ZERO",
    "ONE",
    "T",
    "T_INV",
    "DELTA",
]

TermsLike = Union[Mapping[int, int], Iterable[tuple[int, int]]]

# Below this many coefficient products, plain dict convolution beats packing.
_PACK_CUTOFF = 1 << 16


@dataclass(frozen=True)
class Monomial:
    """A single nonzero term c*t^e."""

    coefficient: int
    exponent: int

    def __post_init__(self):
        if self.coefficient == 0:
            raise ValueError("monomial coefficient must be nonzero")

    def as_poly(self) -> "LaurentPoly":
        return LaurentPoly({self.exponent: self.coefficient})

    def __str__(self) -> str:
        return self.as_poly().format()


class LaurentPoly:
    """An integer Laurent polynomial keyed by exponent.

    >>> p = LaurentPoly({2: 1, -4: -1, 0: 1})
    >>> print(p)
    -t^-4 + 1 + t^2
    >>> print(p.mirror())
    t^-2 + 1 - t^4
    >>> print(LaurentPoly({28: 2}) ** 4)
    16t^112
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: TermsLike = ()):
        data: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            if not isinstance(e, int) or not isinstance(c, int):
                raise TypeError("exponents and coefficients must be ints")
            c = data.get(e, 0) + c
            if c:
                data[e] = c
            elif e in data:
                del data[e]
        object.__setattr__(self, "_terms", data)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, data: dict[int, int]) -> "LaurentPoly":
        # Trusted constructor: `data` already canonical, ownership transferred.
        self = cls.__new__(cls)
        object.__setattr__(self, "_terms", data)
        object.__setattr__(self, "_hash", None)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- inspection ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(self._terms.items())

    def coefficient(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def leading_term(self) -> Monomial:
        """The term of highest exponent; errors on the zero polynomial."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms)
        return Monomial(self._terms[e], e)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(frozenset(self._terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- ring operations -------------------------------------------------

    def __add__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        big, small = self._terms, other._terms
        if len(big) < len(small):
            big, small = small, big
        data = dict(big)
        for e, c in small.items():
            c = data.get(e, 0) + c
            if c:
                data[e] = c
            else:
                del data[e]
        return LaurentPoly._raw(data)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(a) > len(b):
            a, b = b, a
        acc: dict[int, int] = {}
        get = acc.get
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                acc[e] = get(e, 0) + ca * cb
        return LaurentPoly._raw({e: c for e, c in acc.items() if c})

    __rmul__ = __mul__

    def scale(self, k: int) -> "LaurentPoly":
        if k == 0:
            return ZERO
        return LaurentPoly._raw({e: k * c for e, c in self._terms.items()})

    def square(self) -> "LaurentPoly":
        """self * self using the symmetric half of the convolution."""
        items = list(self._terms.items())
        acc: dict[int, int] = {}
        get = acc.get
        for i, (ea, ca) in enumerate(items):
            e2 = ea + ea
            acc[e2] = get(e2, 0) + ca * ca
            ca2 = 2 * ca
            for eb, cb in items[i + 1 :]:
                e = ea + eb
                acc[e] = get(e, 0) + ca2 * cb
        return LaurentPoly._raw({e: c for e, c in acc.items() if c})

    def __pow__(self, n: int) -> "LaurentPoly":
        """Repeated-squaring power.

        Negative powers are defined only for unit monomials (+-t^k), which is
        all the bracket normalization ever inverts.
        """
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("negative power of a non-monomial")
            ((e, c),) = self._terms.items()
            if c not in (1, -1):
                raise ValueError("negative power of a non-unit monomial")
            return LaurentPoly._raw({e * n: c ** (n & 1) if c == -1 else 1})
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base.square()
        return result

    def mirror(self) -> "LaurentPoly":
        """Substitute t -> t^-1 (negate every exponent)."""
        return LaurentPoly._raw({-e: c for e, c in self._terms.items()})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t^k."""
        if k == 0:
            return self
        return LaurentPoly._raw({e + k: c for e, c in self._terms.items()})

    # -- modular arithmetic ----------------------------------------------

    def reduce_mod(self, m: int) -> "LaurentPoly":
        """Coefficients reduced to canonical residues {0, ..., m-1}."""
        if m < 2:
            raise ValueError("modulus must be >= 2")
        data = {}
        for e, c in self._terms.items():
            c %= m
            if c:
                data[e] = c
        return LaurentPoly._raw(data)

    def mul_mod(self, other: "LaurentPoly", m: int) -> "LaurentPoly":
        """(self * other) reduced mod m, without the exact intermediate.

        Large dense operands are multiplied by Kronecker substitution: the
        coefficient lists are packed into single big integers, multiplied
        once by GMP, and the product sliced back into slots.  Sparse or
        small operands fall back to dict convolution.
        """
        if m < 2:
            raise ValueError("modulus must be >= 2")
        square = other is self
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(a) * len(b) <= _PACK_CUTOFF:
            prod = self.square() if square else self * other
            return prod.reduce_mod(m)
        packed = _packed_mul_mod(a, b, m, square)
        if packed is not None:
            return packed
        prod = self.square() if square else self * other
        return prod.reduce_mod(m)

    def square_mod(self, m: int) -> "LaurentPoly":
        return self.mul_mod(self, m)

    # -- text form ---------------------------------------------------------

    def format(self) -> str:
        """Canonical rendering; ascending exponents, one space around signs."""
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms):
            c = self._terms[e]
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                tpart = "t" if e == 1 else f"t^{e}"
                body = tpart if mag == 1 else f"{mag}{tpart}"
            if not parts:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(parts)

    @staticmethod
    def parse(text: str) -> "LaurentPoly":
        """Parse the canonical text form (liberally spaced).

        Grammar: `0`, or sign-separated terms where each term is an integer
        coefficient, `t`, `t^k`, or both.  Duplicate exponents accumulate.
        Raises ParseError with the offending offset.
        """
        return _parse_poly(text)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.format()!r})"


def _coerce(value) -> "LaurentPoly":
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, int):
        return LaurentPoly._raw({0: value} if value else {})
    return NotImplemented


# -- packed (Kronecker substitution) modular product -----------------------


def _packed_mul_mod(a: dict, b: dict, m: int, square: bool) -> "LaurentPoly | None":
    """Multiply coefficient dicts mod m through one big-integer product.

    Returns None when the operands are too sparse for dense packing to pay.
    """
    base_a, top_a = min(a), max(a)
    step = 0
    for e in a:
        step = gcd(step, e - base_a)
    if square:
        base_b, top_b = base_a, top_a
    else:
        base_b, top_b = min(b), max(b)
        for e in b:
            step = gcd(step, e - base_b)
    if step == 0:
        step = 1
    na = (top_a - base_a) // step + 1
    nb = (top_b - base_b) // step + 1
    if na > 4 * len(a) + 64 or nb > 4 * len(b) + 64:
        return None

    # Any output slot is a sum of at most min(na, nb) products of residues.
    bound = min(na, nb) * (m - 1) * (m - 1)
    slot = max(bound.bit_length() + 1, 8)

    pa = gmpy2.pack(_dense(a, base_a, step, na, m), slot)
    if square:
        prod = pa * pa
    else:
        pb = gmpy2.pack(_dense(b, base_b, step, nb, m), slot)
        prod = pa * pb
    if not prod:
        return ZERO

    out_base = base_a + base_b
    data: dict[int, int] = {}
    if slot <= 64:
        # Zero-pad the byte string to whole 64-bit words, widen each slot
        # to 64 bits by repacking, then let numpy slice and reduce.
        if slot != 64:
            prod = gmpy2.pack(gmpy2.unpack(prod, slot), 64)
        raw = int(prod).to_bytes(-(-prod.bit_length() // 64) * 8, "little")
        arr = np.frombuffer(raw, dtype=np.uint64).copy()
        arr %= np.uint64(m)
        nz = np.nonzero(arr)[0]
        exps = (nz * step + out_base).tolist()
        data = dict(zip(exps, arr[nz].tolist()))
    else:
        for i, v in enumerate(gmpy2.unpack(prod, slot)):
            c = int(v) % m
            if c:
                data[out_base + i * step] = c
    return LaurentPoly._raw(data)


def _dense(terms: dict, base: int, step: int, n: int, m: int) -> list[int]:
    out = [0] * n
    for e, c in terms.items():
        out[(e - base) // step] = c % m
    return out


# -- parser ----------------------------------------------------------------


def _parse_poly(text: str) -> LaurentPoly:
    data: dict[int, int] = {}
    i, n = 0, len(text)

    def skip_ws(i):
        while i < n and text[i].isspace():
            i += 1
        return i

    def read_int(i, what):
        start = i
        if i < n and text[i] == "-":
            i += 1
        if i >= n or not text[i].isdigit():
            raise ParseError(f"expected {what}", i)
        while i < n and text[i].isdigit():
            i += 1
        return int(text[start:i]), i

    i = skip_ws(i)
    if i >= n:
        raise ParseError("empty polynomial", i)

    first = True
    while True:
        sign = 1
        if first:
            if text[i] == "-":
                sign = -1
                i = skip_ws(i + 1)
        else:
            if text[i] == "+":
                pass
            elif text[i] == "-":
                sign = -1
            else:
                raise ParseError("expected '+' or '-'", i)
            i = skip_ws(i + 1)

        if i >= n:
            raise ParseError("dangling sign", i)

        coeff = None
        if text[i].isdigit():
            at = i
            coeff, i = read_int(i, "coefficient")
            if coeff == 0:
                if first and sign == 1 and skip_ws(i) >= n and len(data) == 0:
                    return ZERO
                raise ParseError("coefficient must be positive", at)
        exponent = 0
        if i < n and text[i] == "t":
            i += 1
            exponent = 1
            if i < n and text[i] == "^":
                exponent, i = read_int(i + 1, "exponent")
            if coeff is None:
                coeff = 1
        elif coeff is None:
            raise ParseError("expected a term", i)

        data[exponent] = data.get(exponent, 0) + sign * coeff
        first = False
        i = skip_ws(i)
        if i >= n:
            break
    return LaurentPoly({e: c for e, c in data.items() if c})


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
T = LaurentPoly({1: 1})
T_INV = LaurentPoly({-1: 1})

# Kauffman circle weight: removing a disjoint circle multiplies by this.
DELTA = LaurentPoly({-2: -1, 2: -1})

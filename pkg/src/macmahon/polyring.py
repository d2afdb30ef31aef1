"""Exact sparse polynomials in the matrix variables a_ij and the markers t_i.

Monomials are sorted tuples of (variable, exponent) pairs, where a variable
is the tuple ('a', i, j) or ('t', i); coefficients are exact ints or
`fractions.Fraction`s.  Nothing here is ever floating point.

Truncation and series arithmetic grade by total degree in the t variables
only; degrees in the a variables are never restricted.  `series_inverse`
inverts any polynomial whose t-degree-0 component is exactly 1.

The canonical term order used for printing and serialisation is graded
lexicographic on (t-degree, monomial).
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Mapping, Optional, Sequence, Union

VarKey = tuple
Monomial = tuple
Scalar = Union[int, Fraction]

_SCALARS = (int, Fraction)


def avar(i: int, j: int) -> VarKey:
    """Key of the matrix variable a_ij (1-based)."""
    if i < 1 or j < 1:
        raise ValueError("matrix variable indices are 1-based")
    return ("a", i, j)


def tvar(i: int) -> VarKey:
    """Key of the marker variable t_i (1-based)."""
    if i < 1:
        raise ValueError("marker variable index is 1-based")
    return ("t", i)


def var_name(var: VarKey) -> str:
    return "_".join(str(part) for part in var)


def mono_mul(left: Monomial, right: Monomial) -> Monomial:
    if not left:
        return right
    if not right:
        return left
    counts = dict(left)
    for var, exp in right:
        counts[var] = counts.get(var, 0) + exp
    return tuple(sorted(counts.items()))


def mono_t_degree(mono: Monomial) -> int:
    return sum(exp for var, exp in mono if var[0] == "t")


def word_t_monomial(word: Sequence[int]) -> Monomial:
    """The monomial t_{w_1} * ... * t_{w_l} attached to a word."""
    counts = Counter(word)
    return tuple(sorted((tvar(i), e) for i, e in counts.items()))


def _term_key(item: tuple) -> tuple:
    mono = item[0]
    return (mono_t_degree(mono), mono)


def format_scalar(value: Scalar) -> str:
    return str(value)


_RATIONAL_RE = re.compile(r"[+-]?\d+(/\d+)?\Z")


def parse_scalar(text: str) -> Scalar:
    """Parse an exact rational written as 'p' or 'p/q'; no decimal forms."""
    stripped = text.strip()
    if not _RATIONAL_RE.fullmatch(stripped):
        raise ValueError(f"{text!r} is not an exact rational of the form p or p/q")
    frac = Fraction(stripped)
    return int(frac) if frac.denominator == 1 else frac


def _normalise(value: Scalar) -> Scalar:
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    return value


class Poly:
    """Immutable sparse polynomial with exact coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, Scalar]] = None):
        cleaned = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff:
                    cleaned[mono] = _normalise(coeff)
        self.terms = cleaned

    @classmethod
    def _raw(cls, terms: dict) -> "Poly":
        # trusted constructor: terms already clean, adopted without copying
        poly = cls.__new__(cls)
        poly.terms = terms
        return poly

    @classmethod
    def zero(cls) -> "Poly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "Poly":
        return cls._raw({(): 1})

    @classmethod
    def constant(cls, value: Scalar) -> "Poly":
        return cls({(): value})

    @classmethod
    def variable(cls, var: VarKey) -> "Poly":
        return cls._raw({((var, 1),): 1})

    @classmethod
    def monomial(cls, mono: Monomial, coeff: Scalar = 1) -> "Poly":
        return cls({mono: coeff})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, _SCALARS):
            return self.terms == ({(): other} if other else {})
        return NotImplemented

    __hash__ = None

    def __neg__(self) -> "Poly":
        return Poly._raw({mono: -coeff for mono, coeff in self.terms.items()})

    def __add__(self, other) -> "Poly":
        if isinstance(other, _SCALARS):
            other = Poly.constant(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.terms:
            return other
        if not other.terms:
            return self
        acc = dict(self.terms)
        for mono, coeff in other.terms.items():
            total = acc.get(mono, 0) + coeff
            if total:
                acc[mono] = total
            else:
                acc.pop(mono, None)
        return Poly._raw(acc)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        if isinstance(other, _SCALARS):
            other = Poly.constant(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, _SCALARS):
            if not other:
                return Poly.zero()
            return Poly._raw({mono: _normalise(coeff * other) for mono, coeff in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        acc: dict = {}
        for mono1, coeff1 in self.terms.items():
            for mono2, coeff2 in other.terms.items():
                mono = mono_mul(mono1, mono2)
                total = acc.get(mono, 0) + coeff1 * coeff2
                if total:
                    acc[mono] = _normalise(total)
                else:
                    acc.pop(mono, None)
        return Poly._raw(acc)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Poly":
        if exponent < 0:
            raise ValueError("negative powers are not defined here")
        result = Poly.one()
        for _ in range(exponent):
            result = result * self
        return result

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {()}

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((), 0)

    def max_t_degree(self) -> int:
        return max((mono_t_degree(mono) for mono in self.terms), default=0)

    def t_components(self) -> dict[int, "Poly"]:
        """Split into homogeneous components by total t-degree."""
        parts: dict[int, dict] = {}
        for mono, coeff in self.terms.items():
            parts.setdefault(mono_t_degree(mono), {})[mono] = coeff
        return {degree: Poly._raw(terms) for degree, terms in sorted(parts.items())}

    def t_component(self, degree: int) -> "Poly":
        return Poly._raw({m: c for m, c in self.terms.items() if mono_t_degree(m) == degree})

    def truncate_t(self, cap: int) -> "Poly":
        return Poly._raw({m: c for m, c in self.terms.items() if mono_t_degree(m) <= cap})

    def subst(self, values: Mapping[VarKey, Union[Scalar, "Poly"]]) -> "Poly":
        """Substitute scalars or polynomials for some variables."""
        acc: dict = {}
        for mono, coeff in self.terms.items():
            kept = []
            scalar: Scalar = coeff
            poly_factor: Optional[Poly] = None
            for var, exp in mono:
                if var in values:
                    value = values[var]
                    if isinstance(value, Poly):
                        power = value ** exp
                        poly_factor = power if poly_factor is None else poly_factor * power
                    else:
                        scalar = scalar * value ** exp
                else:
                    kept.append((var, exp))
            term = Poly({tuple(kept): scalar})
            if poly_factor is not None:
                term = term * poly_factor
            for mono2, coeff2 in term.terms.items():
                total = acc.get(mono2, 0) + coeff2
                if total:
                    acc[mono2] = _normalise(total)
                else:
                    acc.pop(mono2, None)
        return Poly._raw(acc)

    def sorted_terms(self) -> list[tuple[Monomial, Scalar]]:
        return sorted(self.terms.items(), key=_term_key)

    def to_json_terms(self) -> list[dict]:
        return [
            {"coeff": format_scalar(coeff),
             "monomial": {var_name(var): exp for var, exp in mono}}
            for mono, coeff in self.sorted_terms()
        ]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for mono, coeff in self.sorted_terms():
            negative = coeff < 0
            magnitude = -coeff if negative else coeff
            if not mono:
                body = format_scalar(magnitude)
            else:
                mono_text = "*".join(
                    var_name(var) + (f"^{exp}" if exp > 1 else "")
                    for var, exp in mono
                )
                body = mono_text if magnitude == 1 else f"{format_scalar(magnitude)}*{mono_text}"
            if not pieces:
                pieces.append(("-" if negative else "") + body)
            else:
                pieces.append(("- " if negative else "+ ") + body)
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"Poly({self})"


def apply_transposition(poly: Poly, i: int) -> Poly:
    """Swap the markers t_i and t_{i+1} everywhere in `poly`."""
    if i < 1:
        raise ValueError("transposition index is 1-based")
    a, b = tvar(i), tvar(i + 1)
    swap = {a: b, b: a}
    acc: dict = {}
    for mono, coeff in poly.terms.items():
        new_mono = tuple(sorted((swap.get(var, var), exp) for var, exp in mono))
        acc[new_mono] = acc.get(new_mono, 0) + coeff
    return Poly(acc)


def elementary_sym(r: int, m: int) -> Poly:
    """Elementary symmetric polynomial e_r(t_1, ..., t_m).  Zero when r > m."""
    if r < 0:
        raise ValueError("degree must be nonnegative")
    if r == 0:
        return Poly.one()
    if r > m:
        return Poly.zero()
    terms = {
        tuple((tvar(i), 1) for i in subset): 1
        for subset in combinations(range(1, m + 1), r)
    }
    return Poly._raw(terms)


def complete_sym(r: int, m: int) -> Poly:
    """Complete homogeneous symmetric polynomial h_r(t_1, ..., t_m)."""
    if r < 0:
        raise ValueError("degree must be nonnegative")
    if r == 0:
        return Poly.one()
    terms = {}
    for multiset in combinations_with_replacement(range(1, m + 1), r):
        counts = Counter(multiset)
        terms[tuple(sorted((tvar(i), e) for i, e in counts.items()))] = 1
    return Poly._raw(terms)


@dataclass(frozen=True)
class TruncatedSeries:
    """A polynomial known only up to t-degree `cap` (inclusive)."""

    poly: Poly
    cap: int

    def __post_init__(self) -> None:
        if self.cap < 0:
            raise ValueError("cap must be nonnegative")
        object.__setattr__(self, "poly", self.poly.truncate_t(self.cap))

    def t_component(self, degree: int) -> Poly:
        return self.poly.t_component(degree)

    def __add__(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return TruncatedSeries(self.poly + other.poly, min(self.cap, other.cap))
        return TruncatedSeries(self.poly + other, self.cap)

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return TruncatedSeries(self.poly * other.poly, min(self.cap, other.cap))
        return TruncatedSeries(self.poly * other, self.cap)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return f"{self.poly} + O(t^{self.cap + 1})"


def series_inverse(poly: Poly, cap: int) -> TruncatedSeries:
    """Multiplicative inverse of `poly` modulo t-degree > cap.

    Requires the t-degree-0 component to be exactly 1; graded recursion on
    the t-degree then determines the inverse uniquely.
    """
    components = poly.t_components()
    if components.get(0) != Poly.one():
        raise ValueError("series inverse needs constant term 1")
    inverse: dict[int, Poly] = {0: Poly.one()}
    for degree in range(1, cap + 1):
        acc = Poly.zero()
        for lower in range(1, degree + 1):
            part = components.get(lower)
            if part is not None:
                acc = acc + part * inverse[degree - lower]
        inverse[degree] = -acc
    total = Poly.zero()
    for part in inverse.values():
        total = total + part
    return TruncatedSeries(total, cap)

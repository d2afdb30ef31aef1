"""Enumerative consequences: counting admissible words three ways.

L(l) denotes the number of admissible words of length l over {1..m} (no k
consecutive strictly decreasing letters; the weak variant forbids weakly
decreasing windows).  Three independent routes are implemented:

  dp        a run-length automaton on states (last letter, run length),
  transfer  walk counting on the graph of (k-1)-letter windows,
  series    coefficients of 1 / (1 - m t + C(m,k) t^k - C(m,k+1) t^{k+1}
            + C(m,2k) t^{2k} - ...), binomials replaced by
            C(m+r-1, r) in the weak variant.

`f_series` checks the refined, marker-per-letter version of the same
generating function against a term-by-term enumeration, `egf_check` the
exponential analogue counting permutations without long descent runs, and
`n_m_check` contrasts L with the plain m**l obtained when every generator
product is resummed through the all-ones matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product as iter_product
from fractions import Fraction
from math import comb, factorial
from typing import Optional, Sequence, Union

from .charpoly import SymMatrix
from .identity import first_factor
from .polyring import (
    Poly,
    TruncatedSeries,
    apply_transposition,
    complete_sym,
    elementary_sym,
    series_inverse,
    tvar,
    word_t_monomial,
)
from .words import (
    STRICT,
    WEAK,
    AlgebraParams,
    Word,
    _check_variant,
    enumerate_admissible,
    has_decreasing_run,
)

DP = "dp"
TRANSFER = "transfer"
SERIES = "series"
_METHODS = (DP, TRANSFER, SERIES)


@dataclass(frozen=True)
class CountTable:
    """Counts of admissible words for lengths 0..len(values)-1."""

    params: AlgebraParams
    variant: str
    method: str
    values: tuple[int, ...]

    def to_json_obj(self) -> dict:
        return {
            "m": self.params.m,
            "k": self.params.k,
            "variant": self.variant,
            "method": self.method,
            "values": [str(v) for v in self.values],
        }


@dataclass(frozen=True)
class TransferGraph:
    """Adjacency of length-(k-1) windows; a walk of length l - (k-1) is a word of length l."""

    params: AlgebraParams
    variant: str
    states: tuple[Word, ...]
    edges: dict

    def walk_counts(self, steps: int) -> dict[Word, int]:
        counts = {state: 1 for state in self.states}
        for _ in range(steps):
            nxt: dict[Word, int] = {}
            for state, count in counts.items():
                for target in self.edges[state]:
                    nxt[target] = nxt.get(target, 0) + count
            counts = nxt
        return counts


def build_transfer_graph(params: AlgebraParams, variant: str = STRICT) -> TransferGraph:
    _check_variant(variant)
    m, k = params.m, params.k
    strict = variant == STRICT
    states = tuple(iter_product(range(1, m + 1), repeat=k - 1))
    edges = {}
    for state in states:
        if strict:
            decreasing = all(state[s] > state[s + 1] for s in range(k - 2))
        else:
            decreasing = all(state[s] >= state[s + 1] for s in range(k - 2))
        outs = []
        for c in range(1, m + 1):
            # appending c is forbidden exactly when it completes a
            # decreasing window of length k
            if decreasing and (state[-1] > c if strict else state[-1] >= c):
                continue
            outs.append(state[1:] + (c,))
        edges[state] = tuple(outs)
    return TransferGraph(params, variant, states, edges)


def _count_dp(params: AlgebraParams, length: int, variant: str) -> list[int]:
    m, k = params.m, params.k
    strict = variant == STRICT
    values = [1]
    if length == 0:
        return values
    state = {(c, 1): 1 for c in range(1, m + 1)}
    values.append(m)
    for _ in range(2, length + 1):
        nxt: dict[tuple[int, int], int] = {}
        for (last, run), count in state.items():
            for c in range(1, m + 1):
                extends = last > c if strict else last >= c
                run2 = run + 1 if extends else 1
                if run2 == k:
                    continue
                key = (c, run2)
                nxt[key] = nxt.get(key, 0) + count
        state = nxt
        values.append(sum(state.values()))
    return values


def _count_transfer(params: AlgebraParams, length: int, variant: str) -> list[int]:
    m, k = params.m, params.k
    values = [m ** l for l in range(min(k - 1, length) + 1)]
    if length >= k - 1:
        graph = build_transfer_graph(params, variant)
        counts = {state: 1 for state in graph.states}
        for l in range(k, length + 1):
            nxt: dict[Word, int] = {}
            for state, count in counts.items():
                for target in graph.edges[state]:
                    nxt[target] = nxt.get(target, 0) + count
            counts = nxt
            values.append(sum(counts.values()))
    return values


def _univariate_denominator(params: AlgebraParams, length: int, variant: str) -> Poly:
    m, k = params.m, params.k
    strict = variant == STRICT
    terms = {(): 1}
    j = 0
    while k * j <= length:
        for eps in (0, 1):
            r = k * j + eps
            if r == 0 or r > length:
                continue
            count = comb(m, r) if strict else comb(m + r - 1, r)
            if count:
                terms[((tvar(1), r),)] = (-1) ** eps * count
        j += 1
    return Poly(terms)


def _count_series(params: AlgebraParams, length: int, variant: str) -> list[int]:
    inverse = series_inverse(_univariate_denominator(params, length, variant), length)
    values = []
    for l in range(length + 1):
        mono = () if l == 0 else ((tvar(1), l),)
        values.append(inverse.poly.terms.get(mono, 0))
    return values


def count_admissible(params: AlgebraParams, length: int, variant: str = STRICT,
                     method: str = DP) -> CountTable:
    """Count admissible words of each length 0..length by the chosen method."""
    _check_variant(variant)
    if length < 0:
        raise ValueError("length must be nonnegative")
    if method == DP:
        values = _count_dp(params, length, variant)
    elif method == TRANSFER:
        values = _count_transfer(params, length, variant)
    elif method == SERIES:
        values = _count_series(params, length, variant)
    else:
        raise ValueError(f"unknown method {method!r}, expected one of {_METHODS}")
    return CountTable(params, variant, method, tuple(values))


def f_denominator(params: AlgebraParams, cap: int, variant: str = STRICT) -> Poly:
    """The alternating sum 1 - e_1 + e_k - e_{k+1} + e_{2k} - ... (strict)
    or its complete-homogeneous analogue with h_r (weak, truncated at cap)."""
    _check_variant(variant)
    m, k = params.m, params.k
    strict = variant == STRICT
    bound = m if strict else cap
    total = Poly.zero()
    j = 0
    while k * j <= bound:
        for eps in (0, 1):
            r = k * j + eps
            if r > bound:
                continue
            part = elementary_sym(r, m) if strict else complete_sym(r, m)
            total = total + (-1) ** eps * part
        j += 1
    return total


@dataclass(frozen=True)
class FSeriesResult:
    params: AlgebraParams
    variant: str
    cap: int
    denominator: Poly
    lhs: TruncatedSeries
    rhs: TruncatedSeries
    equal: bool

    def to_json_obj(self) -> dict:
        return {
            "m": self.params.m,
            "k": self.params.k,
            "variant": self.variant,
            "cap": self.cap,
            "denominator": self.denominator.to_json_terms(),
            "lhs": self.lhs.poly.to_json_terms(),
            "rhs": self.rhs.poly.to_json_terms(),
            "equal": self.equal,
        }


def f_series(params: AlgebraParams, cap: int, variant: str = STRICT) -> FSeriesResult:
    """Compare sum over admissible words of t_{w_1}...t_{w_l} with the
    inverse of the alternating e- (or h-) sum, up to t-degree cap."""
    _check_variant(variant)
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    acc: dict = {}
    for length in range(cap + 1):
        for word in enumerate_admissible(params, length, variant):
            mono = word_t_monomial(word)
            acc[mono] = acc.get(mono, 0) + 1
    lhs = TruncatedSeries(Poly(acc), cap)
    denominator = f_denominator(params, cap, variant)
    rhs = series_inverse(denominator, cap)
    return FSeriesResult(params, variant, cap, denominator, lhs, rhs,
                         lhs.poly == rhs.poly)


def check_symmetry(series: Union[TruncatedSeries, Poly], m: int) -> bool:
    """True iff the polynomial is invariant under swapping adjacent markers."""
    poly = series.poly if isinstance(series, TruncatedSeries) else series
    return all(apply_transposition(poly, i) == poly for i in range(1, m))


def count_perms_no_long_descents(n: int, k: int) -> int:
    """Permutations of {1..n} whose strictly decreasing runs all have length < k."""
    if n < 0 or k < 2:
        raise ValueError("need n >= 0 and k >= 2")
    if n == 0:
        return 1
    return sum(
        1 for perm in permutations(range(1, n + 1))
        if not has_decreasing_run(perm, k)
    )


@dataclass(frozen=True)
class EgfReport:
    k: int
    cap: int
    brute_counts: tuple[int, ...]
    series_counts: tuple[int, ...]
    passed: bool

    def to_json_obj(self) -> dict:
        return {
            "k": self.k,
            "cap": self.cap,
            "brute_counts": [str(v) for v in self.brute_counts],
            "series_counts": [str(v) for v in self.series_counts],
            "pass": self.passed,
        }


def egf_check(k: int, cap: int) -> EgfReport:
    """Exponential analogue: n! times the x**n coefficient of
    1 / (sum of (-1)**eps x**(kj+eps) / (kj+eps)!) counts permutations of
    {1..n} without strictly decreasing runs of length k, for n <= cap."""
    if k < 2:
        raise ValueError("run length k must be at least 2")
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    terms: dict = {}
    j = 0
    while k * j <= cap:
        for eps in (0, 1):
            r = k * j + eps
            if r > cap:
                continue
            coeff = Fraction((-1) ** eps, factorial(r))
            mono = () if r == 0 else ((tvar(1), r),)
            terms[mono] = terms.get(mono, 0) + coeff
        j += 1
    inverse = series_inverse(Poly(terms), cap)
    series_counts = []
    for n in range(cap + 1):
        mono = () if n == 0 else ((tvar(1), n),)
        value = inverse.poly.terms.get(mono, 0) * factorial(n)
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise ArithmeticError(f"non-integer permutation count at n={n}")
            value = int(value)
        series_counts.append(value)
    brute_counts = [count_perms_no_long_descents(n, k) for n in range(cap + 1)]
    return EgfReport(k, cap, tuple(brute_counts), tuple(series_counts),
                     brute_counts == series_counts)


@dataclass(frozen=True)
class NmReport:
    """Row sums of the rewriting table for the all-ones matrix at k = m.

    `totals[l]` sums g(i) over admissible words of length l; the identity
    forces this to be m**l even though the number of admissible words is
    the much smaller L(l)."""

    m: int
    cap: int
    totals: tuple[int, ...]
    expected: tuple[int, ...]
    admissible_counts: tuple[int, ...]
    passed: bool

    def to_json_obj(self) -> dict:
        return {
            "m": self.m,
            "cap": self.cap,
            "totals": [str(v) for v in self.totals],
            "expected": [str(v) for v in self.expected],
            "admissible_counts": [str(v) for v in self.admissible_counts],
            "pass": self.passed,
        }


def n_m_check(m: int, cap: int) -> NmReport:
    params = AlgebraParams(m, m)
    table = first_factor(SymMatrix.ones(m), params, cap)
    totals = tuple(table.degree_totals())
    expected = tuple(m ** l for l in range(cap + 1))
    admissible = count_admissible(params, cap, STRICT, TRANSFER).values
    return NmReport(m, cap, totals, expected, admissible, totals == expected)

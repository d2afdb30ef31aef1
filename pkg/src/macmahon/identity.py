"""The master identity: first factor, and verification of the product.

For an m x m matrix A put y_i = sum_j a_ij x_j.  The coefficient of the
admissible monomial x_{i_1} ... x_{i_l} in the normal form of
y_{i_1} ... y_{i_l} is written g(i); the first factor of the identity is
the series sum over admissible words i of g(i) t_{i_1} ... t_{i_l}.  The
identity states that this series times the second factor (`charpoly`)
equals 1.

`first_factor` computes all g(i) up to a length cap in one sweep: the
normal form of y_{i_1} ... y_{i_l} is the normal form of the suffix
product left-multiplied by y_{i_1}, so vectors are shared across the up to
m words with a common suffix, and at the last level only the diagonal
coefficient of each vector is extracted.  When all rows of A are equal
(such as the all-ones matrix) every vector of a level coincides and one
vector per length suffices.

Everything is exact; no tolerances appear anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product
from typing import Mapping, Optional, Sequence, Union

from .charpoly import SymMatrix, alpha, enumerate_partial_perms, second_factor
from .polyring import Poly, TruncatedSeries, mono_mul, tvar, word_t_monomial
from .rewrite import _normal_form_terms
from .words import AlgebraParams, Word, is_admissible, validate_word

Coeff = Union[int, Fraction, Poly]

NUMERIC = "numeric"
SYMBOLIC = "symbolic"
COROLLARY = "corollary"


def _entry_coeff(entry: Poly) -> Coeff:
    return entry.constant_value() if entry.is_constant() else entry


def _strictly_decreasing(seq: Sequence[int]) -> bool:
    return all(seq[s] > seq[s + 1] for s in range(len(seq) - 1))


def _prepend_nf(cache: dict, params: AlgebraParams, j: int, w: Word) -> dict[Word, int]:
    # normal form of x_j * w for admissible w; only the front k-window of
    # (j,) + w can be non-admissible
    word = (j,) + w
    nf = cache.get(word)
    if nf is None:
        if len(word) >= params.k and _strictly_decreasing(word[:params.k]):
            nf = _normal_form_terms(word, params)
        else:
            nf = {word: 1}
        cache[word] = nf
    return nf


def _corrections(cache: dict, nf_cache: dict, params: AlgebraParams, w: Word):
    # For each j making (j,) + w non-admissible, the normal form of
    # x_j * w grouped by the suffix u[1:] of each resulting term u:
    # a list of (j, {suffix: [(first_letter, coeff), ...]}).
    entry = cache.get(w)
    if entry is None:
        entry = []
        if len(w) >= params.k - 1 and _strictly_decreasing(w[:params.k - 1]):
            for j in range(w[0] + 1, params.m + 1):
                grouped: dict[Word, list] = {}
                for u, coeff in _prepend_nf(nf_cache, params, j, w).items():
                    grouped.setdefault(u[1:], []).append((u[0], coeff))
                entry.append((j, grouped))
        cache[w] = entry
    return entry


def _valid_first_letters(suffix: Word, params: AlgebraParams) -> range:
    if len(suffix) >= params.k - 1 and _strictly_decreasing(suffix[:params.k - 1]):
        return range(1, suffix[0] + 1)
    return range(1, params.m + 1)


def _shared_row_table(row: list[Coeff], params: AlgebraParams, cap: int) -> dict[Word, Coeff]:
    # identical matrix rows: y_1 = ... = y_m, so the vector of normal-form
    # coefficients depends only on the word length
    m = params.m
    nf_cache: dict = {}
    table: dict[Word, Coeff] = {(): 1}
    vec: dict[Word, Coeff] = {(): 1}
    for _ in range(cap):
        nxt: dict[Word, Coeff] = {}
        for w, cw in vec.items():
            for j in range(1, m + 1):
                aij = row[j - 1]
                if not aij:
                    continue
                scale = aij * cw
                for w2, coeff in _prepend_nf(nf_cache, params, j, w).items():
                    total = nxt.get(w2, 0) + scale * coeff
                    if total:
                        nxt[w2] = total
                    else:
                        nxt.pop(w2, None)
        vec = nxt
        table.update(vec)
    return table


def _general_table(rows: list[list[Coeff]], params: AlgebraParams, cap: int) -> dict[Word, Coeff]:
    m = params.m
    nf_cache: dict = {}
    corrections_cache: dict = {}
    table: dict[Word, Coeff] = {(): 1}
    level: dict[Word, dict[Word, Coeff]] = {(): {(): 1}}
    for length in range(1, cap + 1):
        if length == cap:
            # last level: only the diagonal coefficient of each vector
            # contributes, so no new vectors are materialised
            for suffix, vec in level.items():
                acc: dict[tuple[int, int], Coeff] = {}
                for w, cw in vec.items():
                    for j, grouped in _corrections(corrections_cache, nf_cache, params, w):
                        bucket = grouped.get(suffix)
                        if bucket:
                            for c0, coeff in bucket:
                                key = (c0, j)
                                acc[key] = acc.get(key, 0) + cw * coeff
                diag = vec.get(suffix, 0)
                per_first: dict[int, Coeff] = {}
                if diag:
                    # the trivial part of x_j * w lands on the diagonal
                    # exactly when j is the first letter and w the suffix
                    for c0 in _valid_first_letters(suffix, params):
                        aij = rows[c0 - 1][c0 - 1]
                        if aij:
                            per_first[c0] = aij * diag
                for (c0, j), value in acc.items():
                    if not value:
                        continue
                    aij = rows[c0 - 1][j - 1]
                    if not aij:
                        continue
                    per_first[c0] = per_first.get(c0, 0) + aij * value
                for c0, value in per_first.items():
                    if value:
                        table[(c0,) + suffix] = value
            break
        nxt: dict[Word, dict[Word, Coeff]] = {}
        for suffix, vec in level.items():
            partials = []
            for j in range(1, m + 1):
                u: dict[Word, Coeff] = {}
                for w, cw in vec.items():
                    for w2, coeff in _prepend_nf(nf_cache, params, j, w).items():
                        total = u.get(w2, 0) + cw * coeff
                        if total:
                            u[w2] = total
                        else:
                            u.pop(w2, None)
                partials.append(u)
            for c0 in _valid_first_letters(suffix, params):
                row = rows[c0 - 1]
                vec2: dict[Word, Coeff] = {}
                for j in range(1, m + 1):
                    aij = row[j - 1]
                    if not aij:
                        continue
                    for w2, cu in partials[j - 1].items():
                        total = vec2.get(w2, 0) + aij * cu
                        if total:
                            vec2[w2] = total
                        else:
                            vec2.pop(w2, None)
                if not vec2:
                    continue
                word = (c0,) + suffix
                nxt[word] = vec2
                value = vec2.get(word)
                if value:
                    table[word] = value
        level = nxt
    return table


@dataclass(frozen=True)
class FirstFactorSeries:
    """All nonzero coefficients g(i) for admissible words of length <= cap."""

    params: AlgebraParams
    cap: int
    mode: str
    coeffs: dict

    def g(self, word: Sequence[int]) -> Poly:
        w = validate_word(word, self.params.m)
        if len(w) > self.cap:
            raise ValueError(f"word longer than cap {self.cap}")
        if not is_admissible(w, self.params):
            raise ValueError(f"word {w!r} is not admissible")
        value = self.coeffs.get(w, 0)
        return value if isinstance(value, Poly) else Poly.constant(value)

    def degree_totals(self) -> list[Coeff]:
        """Sum of g(i) over admissible words of each length 0..cap."""
        totals: list[Coeff] = [0] * (self.cap + 1)
        for w, value in self.coeffs.items():
            totals[len(w)] = totals[len(w)] + value
        return totals

    def series(self) -> TruncatedSeries:
        """The first factor as a polynomial in the t (and perhaps a) variables."""
        acc: dict = {}
        for w, value in self.coeffs.items():
            tmono = word_t_monomial(w)
            if isinstance(value, Poly):
                for mono, coeff in value.terms.items():
                    full = mono_mul(mono, tmono)
                    total = acc.get(full, 0) + coeff
                    if total:
                        acc[full] = total
                    else:
                        acc.pop(full, None)
            else:
                total = acc.get(tmono, 0) + value
                if total:
                    acc[tmono] = total
                else:
                    acc.pop(tmono, None)
        return TruncatedSeries(Poly(acc), self.cap)


def first_factor(matrix: SymMatrix, params: AlgebraParams, cap: int,
                 _force_general: bool = False) -> FirstFactorSeries:
    """Compute g(i) for every admissible word i with len(i) <= cap."""
    if matrix.m != params.m:
        raise ValueError(f"matrix size {matrix.m} does not match m={params.m}")
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    rows = [[_entry_coeff(e) for e in row] for row in matrix.entries]
    mode = NUMERIC if matrix.is_numeric() else SYMBOLIC
    if not _force_general and all(row == rows[0] for row in rows[1:]):
        table = _shared_row_table(rows[0], params, cap)
    else:
        table = _general_table(rows, params, cap)
    return FirstFactorSeries(params=params, cap=cap, mode=mode, coeffs=table)


def g_coefficient(matrix: SymMatrix, word: Sequence[int], params: AlgebraParams) -> Poly:
    """The coefficient g(i) of one admissible word, by incremental left-multiplication."""
    w = validate_word(word, params.m)
    if not is_admissible(w, params):
        raise ValueError(f"word {w!r} is not admissible")
    if matrix.m != params.m:
        raise ValueError(f"matrix size {matrix.m} does not match m={params.m}")
    rows = [[_entry_coeff(e) for e in row] for row in matrix.entries]
    nf_cache: dict = {}
    vec: dict[Word, Coeff] = {(): 1}
    for letter in reversed(w):
        row = rows[letter - 1]
        nxt: dict[Word, Coeff] = {}
        for s, cw in vec.items():
            for j in range(1, params.m + 1):
                aij = row[j - 1]
                if not aij:
                    continue
                scale = aij * cw
                for w2, coeff in _prepend_nf(nf_cache, params, j, s).items():
                    total = nxt.get(w2, 0) + scale * coeff
                    if total:
                        nxt[w2] = total
                    else:
                        nxt.pop(w2, None)
        vec = nxt
    value = vec.get(w, 0)
    return value if isinstance(value, Poly) else Poly.constant(value)


@dataclass(frozen=True)
class DegreeCheck:
    degree: int
    ok: bool
    residual_terms: int


@dataclass(frozen=True)
class VerificationReport:
    """Per-degree outcome of checking that a product of series equals 1."""

    params: AlgebraParams
    cap: int
    mode: str
    passed: bool
    per_degree: tuple[DegreeCheck, ...]
    first_failure: Optional[dict]

    def to_json_obj(self) -> dict:
        return {
            "params": {"m": self.params.m, "k": self.params.k},
            "cap": self.cap,
            "mode": self.mode,
            "pass": self.passed,
            "per_degree": [
                {"d": c.degree, "ok": c.ok, "residual_terms": c.residual_terms}
                for c in self.per_degree
            ],
            "first_failure": self.first_failure,
        }


def _report_from_residuals(params: AlgebraParams, cap: int, mode: str,
                           residuals: Sequence[Poly]) -> VerificationReport:
    checks = []
    first_failure = None
    for degree, residual in enumerate(residuals):
        ok = not residual
        checks.append(DegreeCheck(degree, ok, len(residual.terms)))
        if not ok and first_failure is None:
            first_failure = {"degree": degree, "residual": residual.to_json_terms()}
    return VerificationReport(
        params=params, cap=cap, mode=mode,
        passed=first_failure is None,
        per_degree=tuple(checks),
        first_failure=first_failure,
    )


def verify_master(matrix: SymMatrix, params: AlgebraParams, cap: int) -> VerificationReport:
    """Check first_factor(A) * second_factor(A) = 1 up to t-degree cap."""
    ff = first_factor(matrix, params, cap)
    product = ff.series() * second_factor(matrix, params)
    residuals = [
        product.t_component(d) - (1 if d == 0 else 0)
        for d in range(cap + 1)
    ]
    return _report_from_residuals(params, cap, ff.mode, residuals)


def _as_scalar_rows(assignment, m: int) -> list[list]:
    if isinstance(assignment, SymMatrix):
        if assignment.m != m:
            raise ValueError(f"matrix size {assignment.m} does not match m={m}")
        return assignment.scalar_rows()
    if isinstance(assignment, Mapping):
        rows = [[0] * m for _ in range(m)]
        for (i, j), value in assignment.items():
            if not (1 <= i <= m and 1 <= j <= m):
                raise ValueError(f"assignment key ({i},{j}) out of range")
            rows[i - 1][j - 1] = value
        return rows
    raise TypeError("assignment must be a numeric SymMatrix or a mapping (i, j) -> rational")


def verify_corollary(assignment, params: AlgebraParams, cap: int) -> VerificationReport:
    """Check the single-marker specialisation t_i = u of the identity.

    Both brackets are recomputed by routes independent of `first_factor`
    and `char_coeffs`: the degree-l coefficient of the first bracket sums
    normal-form coefficients over all m**l words, and the second bracket
    is expanded over partial permutations with sign
    (-1) ** (alpha(r) + r + inversions).
    """
    rows = _as_scalar_rows(assignment, params.m)
    m, k = params.m, params.k

    first = [1]
    for length in range(1, cap + 1):
        total = 0
        for j in iter_product(range(1, m + 1), repeat=length):
            for i, coeff in _normal_form_terms(j, params).items():
                weight = coeff
                for a, b in zip(i, j):
                    weight = weight * rows[a - 1][b - 1]
                total += weight
        first.append(total)

    second: dict[int, Coeff] = {}
    for r in range(m + 1):
        if r % k not in (0, 1):
            continue
        acc = 0
        for pp in enumerate_partial_perms(m, r):
            weight = 1
            for j, image in zip(pp.support, pp.images):
                weight = weight * rows[j - 1][image - 1]
            acc += (-1) ** pp.inv * weight
        second[r] = (-1) ** (alpha(r, k) + r) * acc

    residuals = []
    for d in range(cap + 1):
        conv = sum(
            first[l] * second[d - l]
            for l in range(d + 1) if d - l in second
        )
        value = conv - (1 if d == 0 else 0)
        if not value:
            residuals.append(Poly.zero())
        elif d == 0:
            residuals.append(Poly.constant(value))
        else:
            residuals.append(Poly.monomial(((tvar(1), d),), value))
    return _report_from_residuals(params, cap, COROLLARY, residuals)

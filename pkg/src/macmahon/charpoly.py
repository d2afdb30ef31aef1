"""Matrices over the polynomial ring and the second factor of the identity.

`char_coeffs` returns the coefficients c_0, ..., c_m of the characteristic
polynomial det(lambda*I - M) = sum_r c_r * lambda**(m-r), computed from
principal minors:

    c_r = (-1)**r * sum over r-subsets J of det(M restricted to J).

Expanding the minors over partial permutations gives the equivalent form

    c_r = (-1)**r * sum over partial permutations w with support size r
          of sgn(w) * product of M[j, w(j)],

which `enumerate_partial_perms` exposes so tests can cross-check the two.
Note the global (-1)**r: dropping it already fails for the 2x2 identity
matrix, where det(I - A) must vanish.

The second factor of the master identity keeps only the c_r(TA) with
r = 0 or 1 mod k, weighted by (-1)**alpha(r), alpha(r) = r - (r mod k).
For k = 2 every alpha is even and the sum telescopes to det(I - TA).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterator, Sequence, Union

from .polyring import Poly, Scalar, avar, parse_scalar, tvar
from .words import AlgebraParams, inversions

_MASK64 = (1 << 64) - 1


class MatrixFormatError(ValueError):
    """Raised when a matrix description is malformed."""


@dataclass(frozen=True)
class SymMatrix:
    """An m x m matrix with entries in the polynomial ring."""

    m: int
    entries: tuple[tuple[Poly, ...], ...]

    def __post_init__(self) -> None:
        if self.m < 1:
            raise MatrixFormatError("matrix size must be positive")
        if len(self.entries) != self.m or any(len(row) != self.m for row in self.entries):
            raise MatrixFormatError(f"entries must form an {self.m}x{self.m} grid")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Union[Poly, Scalar, str]]]) -> "SymMatrix":
        m = len(rows)
        grid = []
        for i, row in enumerate(rows, start=1):
            new_row = []
            for j, value in enumerate(row, start=1):
                try:
                    new_row.append(_as_poly(value))
                except (ValueError, TypeError, ZeroDivisionError):
                    raise MatrixFormatError(
                        f"entry ({i},{j}): {value!r} is not an exact rational"
                    ) from None
            grid.append(tuple(new_row))
        return cls(m, tuple(grid))

    @classmethod
    def identity(cls, m: int) -> "SymMatrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(m)] for i in range(m)])

    @classmethod
    def ones(cls, m: int) -> "SymMatrix":
        return cls.from_rows([[1] * m for _ in range(m)])

    @classmethod
    def symbolic(cls, m: int) -> "SymMatrix":
        return cls(m, tuple(
            tuple(Poly.variable(avar(i, j)) for j in range(1, m + 1))
            for i in range(1, m + 1)
        ))

    @classmethod
    def random(cls, m: int, seed: int, low: int = -3, high: int = 3) -> "SymMatrix":
        """Matrix with entries uniform on {low, ..., high}, from a SplitMix64 stream.

        The generator is fixed so identical seeds give identical matrices on
        any platform; out-of-range draws are rejected to keep the
        distribution exactly uniform.
        """
        span = high - low + 1
        bits = max(span - 1, 1).bit_length()
        stream = _splitmix64(seed)
        values = []
        while len(values) < m * m:
            word = next(stream)
            # each 64-bit word yields several independent `bits`-wide draws
            for shift in range(0, 64 - bits + 1, bits):
                draw = (word >> shift) & ((1 << bits) - 1)
                if draw < span:
                    values.append(low + draw)
                    if len(values) == m * m:
                        break
        rows = [values[i * m:(i + 1) * m] for i in range(m)]
        return cls.from_rows(rows)

    def entry(self, i: int, j: int) -> Poly:
        """1-based entry access."""
        return self.entries[i - 1][j - 1]

    def is_numeric(self) -> bool:
        return all(e.is_constant() for row in self.entries for e in row)

    def scalar_rows(self) -> list[list[Scalar]]:
        if not self.is_numeric():
            raise ValueError("matrix is not numeric")
        return [[e.constant_value() for e in row] for row in self.entries]


def _as_poly(value: Union[Poly, Scalar, str]) -> Poly:
    if isinstance(value, Poly):
        return value
    if isinstance(value, str):
        return Poly.constant(parse_scalar(value))
    if isinstance(value, (int, Fraction)):
        return Poly.constant(value)
    raise ValueError(f"unsupported entry {value!r}")


def _splitmix64(seed: int) -> Iterator[int]:
    state = seed & _MASK64
    while True:
        state = (state + 0x9E3779B97F4A7C15) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        yield z ^ (z >> 31)


def matrix_from_json_obj(obj) -> SymMatrix:
    """Build a matrix from the JSON form {"m": ..., "mode": ..., "entries": ...}.

    Numeric entries are exact rational strings like "3" or "-1/2" (plain
    ints are accepted too).  Mode "symbolic" ignores entries and produces
    the generic matrix of a_ij variables.
    """
    if not isinstance(obj, dict):
        raise MatrixFormatError("matrix description must be a JSON object")
    try:
        m = obj["m"]
    except KeyError:
        raise MatrixFormatError("matrix description lacks 'm'") from None
    if not isinstance(m, int) or m < 1:
        raise MatrixFormatError(f"matrix size {m!r} is not a positive integer")
    mode = obj.get("mode", "numeric")
    if mode == "symbolic":
        return SymMatrix.symbolic(m)
    if mode != "numeric":
        raise MatrixFormatError(f"unknown matrix mode {mode!r}")
    entries = obj.get("entries")
    if not isinstance(entries, list) or len(entries) != m or any(
        not isinstance(row, list) or len(row) != m for row in entries
    ):
        raise MatrixFormatError(f"'entries' must be an {m}x{m} array")
    for i, row in enumerate(entries, start=1):
        for j, value in enumerate(row, start=1):
            if not isinstance(value, (str, int)) or isinstance(value, bool):
                raise MatrixFormatError(
                    f"entry ({i},{j}): {value!r} is not an exact rational string"
                )
    return SymMatrix.from_rows(entries)


def scale_rows_by_t(matrix: SymMatrix) -> SymMatrix:
    """Multiply row i by the marker t_i: the matrix TA of the identity."""
    rows = []
    for i, row in enumerate(matrix.entries, start=1):
        t_i = Poly.variable(tvar(i))
        rows.append(tuple(t_i * entry for entry in row))
    return SymMatrix(matrix.m, tuple(rows))


def _submatrix_det(matrix: SymMatrix, subset: tuple[int, ...]) -> Poly:
    r = len(subset)
    total = Poly.zero()
    for perm in permutations(range(r)):
        sign = (-1) ** inversions(perm)
        product = Poly.one()
        for s in range(r):
            product = product * matrix.entries[subset[s]][subset[perm[s]]]
        total = total + sign * product
    return total


def determinant(matrix: SymMatrix) -> Poly:
    """Determinant by direct permutation expansion."""
    return _submatrix_det(matrix, tuple(range(matrix.m)))


def char_coeffs(matrix: SymMatrix) -> list[Poly]:
    """Coefficients [c_0, ..., c_m] of det(lambda*I - M) in falling powers."""
    coeffs = [Poly.one()]
    for r in range(1, matrix.m + 1):
        total = Poly.zero()
        for subset in combinations(range(matrix.m), r):
            total = total + _submatrix_det(matrix, subset)
        coeffs.append((-1) ** r * total)
    return coeffs


@dataclass(frozen=True)
class PartialPermutation:
    """A bijection of a subset of {1..m} onto itself.

    `support` is the sorted subset, `images` its pointwise images, and
    `inv` the inversion number of the image sequence, so the sign of the
    partial permutation is (-1) ** inv.
    """

    support: tuple[int, ...]
    images: tuple[int, ...]
    inv: int

    @classmethod
    def make(cls, support: Sequence[int], images: Sequence[int]) -> "PartialPermutation":
        sup = tuple(support)
        img = tuple(images)
        if sorted(sup) != list(sup) or sorted(img) != list(sup):
            raise ValueError("images must permute the sorted support")
        return cls(sup, img, inversions(img))

    def a_weight(self, matrix: SymMatrix) -> Poly:
        """The product of matrix entries A[j, w(j)] over the support."""
        product = Poly.one()
        for j, image in zip(self.support, self.images):
            product = product * matrix.entry(j, image)
        return product


def enumerate_partial_perms(m: int, r: int) -> Iterator[PartialPermutation]:
    """All partial permutations of {1..m} with support size r.

    There are C(m, r) * r! of them; the support runs lexicographically and
    the images lexicographically within each support.
    """
    if not 0 <= r <= m:
        raise ValueError(f"support size must lie in 0..{m}")
    for support in combinations(range(1, m + 1), r):
        for images in permutations(support):
            yield PartialPermutation.make(support, images)


def alpha(r: int, k: int) -> int:
    """The sign exponent alpha(r) = r - (r mod k) of the second factor."""
    if r < 0 or k < 2:
        raise ValueError("need r >= 0 and k >= 2")
    return r - (r % k)


def second_factor(matrix: SymMatrix, params: AlgebraParams) -> Poly:
    """The polynomial sum of (-1)**alpha(r) * c_r(TA) over r = 0, 1 mod k.

    For k = 2 this is exactly det(I - TA), the denominator of the classical
    master theorem.
    """
    if matrix.m != params.m:
        raise ValueError(f"matrix size {matrix.m} does not match m={params.m}")
    coeffs = char_coeffs(scale_rows_by_t(matrix))
    total = Poly.zero()
    for r in range(params.m + 1):
        if r % params.k in (0, 1):
            total = total + (-1) ** alpha(r, params.k) * coeffs[r]
    return total

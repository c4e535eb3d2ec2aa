"""Exact rational scalars and dense matrices.

Everything downstream (positivity tests, flag wedges, Maslov signatures,
root-space solves) runs on top of this module, so all arithmetic here is
exact: scalars are ``fractions.Fraction`` in canonical form, determinants go
through fraction-free Bareiss elimination on integer-cleared rows, and rank
uses division-free integer echelon with gcd stripping.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

Rational = Fraction


class ShapeError(ValueError):
    """Operand shapes are incompatible with the requested operation."""


class SingularMatrixError(ValueError):
    """A matrix is singular where an invertible one is required."""


class DomainError(ValueError):
    """An input lies outside the mathematical domain of the operation."""


def rat(x) -> Fraction:
    """Coerce ints, "p/q" strings, and Fractions to a canonical Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def rat_str(x: Fraction) -> str:
    """Serialize a rational as "p/q", or "p" when the denominator is 1."""
    return str(Fraction(x))


class RatMatrix:
    """Dense matrix of exact rationals, stored row-major and immutable.

    Instances behave as values: operators return fresh matrices and the
    entry tuples are never mutated, so sharing across threads is safe.
    """

    __slots__ = ("_rows", "rows", "cols")

    def __init__(self, rows):
        data = tuple(tuple(rat(x) for x in row) for row in rows)
        if not data or not data[0]:
            raise ShapeError("matrix must have at least one row and column")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise ShapeError("ragged rows in matrix literal")
        self._rows = data
        self.rows = len(data)
        self.cols = width

    # -- constructors ---------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def diagonal(cls, entries) -> "RatMatrix":
        ent = [rat(x) for x in entries]
        n = len(ent)
        return cls([[ent[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def column(cls, entries) -> "RatMatrix":
        return cls([[x] for x in entries])

    # -- basic protocol --------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        i, j = idx
        return self._rows[i][j]

    def row(self, i: int):
        return self._rows[i]

    def col(self, j: int):
        return tuple(r[j] for r in self._rows)

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other):
        return isinstance(other, RatMatrix) and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        body = "; ".join(" ".join(rat_str(x) for x in row) for row in self._rows)
        return f"RatMatrix({self.rows}x{self.cols}: {body})"

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return RatMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self._rows, other._rows)
            ]
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {self.shape} and {other.shape}")
        return RatMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self._rows, other._rows)
            ]
        )

    def __neg__(self) -> "RatMatrix":
        return RatMatrix([[-x for x in row] for row in self._rows])

    def __mul__(self, other):
        if isinstance(other, RatMatrix):
            return matmul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "RatMatrix":
        c = rat(c)
        return RatMatrix([[c * x for x in row] for row in self._rows])

    def transpose(self) -> "RatMatrix":
        return RatMatrix(list(zip(*self._rows)))

    # -- shape predicates ---------------------------------------------------

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self._rows[i][j] == self._rows[j][i]
            for i in range(self.rows)
            for j in range(i)
        )

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._rows for x in row)

    def submatrix(self, row_idx, col_idx) -> "RatMatrix":
        """Extract rows/cols by 0-based index sequences."""
        return RatMatrix(
            [[self._rows[i][j] for j in col_idx] for i in row_idx]
        )

    def to_float_rows(self):
        return [[float(x) for x in row] for row in self._rows]

    # -- linear algebra (delegates to module functions) ---------------------

    def det(self) -> Fraction:
        return det(self)

    def rank(self) -> int:
        return rank(self)

    def inverse(self) -> "RatMatrix":
        return inverse(self)

    def kernel(self):
        return kernel(self)


@dataclass(frozen=True)
class IndexSet:
    """Strictly increasing 1-based row/column indices inside an n-ambient."""

    indices: tuple
    ambient: int

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        object.__setattr__(self, "indices", idx)
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise DomainError(f"index set {idx} is not strictly increasing")
        if idx and (idx[0] < 1 or idx[-1] > self.ambient):
            raise DomainError(f"index set {idx} escapes ambient 1..{self.ambient}")

    def __len__(self):
        return len(self.indices)


def hstack(*mats: RatMatrix) -> RatMatrix:
    if len({m.rows for m in mats}) != 1:
        raise ShapeError("hstack operands disagree on row count")
    return RatMatrix(
        [sum((list(m.row(i)) for m in mats), []) for i in range(mats[0].rows)]
    )


def vstack(*mats: RatMatrix) -> RatMatrix:
    if len({m.cols for m in mats}) != 1:
        raise ShapeError("vstack operands disagree on column count")
    return RatMatrix([row for m in mats for row in m])


def matmul(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    bt = list(zip(*b._rows))
    return RatMatrix(
        [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a._rows]
    )


def transpose(m: RatMatrix) -> RatMatrix:
    return m.transpose()


def _integer_rows(m: RatMatrix):
    """Clear denominators row by row; return (int rows, product of row scales)."""
    out = []
    scale = 1
    for row in m._rows:
        d = 1
        for x in row:
            d = lcm(d, x.denominator)
        scale *= d
        out.append([int(x * d) for x in row])
    return out, scale


def det(m: RatMatrix) -> Fraction:
    """Exact determinant via fraction-free Bareiss elimination.

    Rows are scaled to integers first; the Bareiss recurrence then performs
    only exact integer divisions, which keeps intermediate growth at the
    size of the minors themselves instead of products of denominators.
    """
    if not m.is_square():
        raise ShapeError("determinant requires a square matrix")
    a, scale = _integer_rows(m)
    n = m.rows
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - aik * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return Fraction(sign * a[n - 1][n - 1], scale)


def _det_int(rows) -> int:
    """Bareiss determinant of an integer row-list (used by minors)."""
    a = [row[:] for row in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - aik * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def det_cofactor(m: RatMatrix) -> Fraction:
    """Laplace-expansion determinant; the independent oracle for ``det``."""
    if not m.is_square():
        raise ShapeError("determinant requires a square matrix")
    n = m.rows

    def rec(rows_idx, cols_idx):
        if len(rows_idx) == 1:
            return m[rows_idx[0], cols_idx[0]]
        total = Fraction(0)
        sign = 1
        r0 = rows_idx[0]
        rest = rows_idx[1:]
        for pos, c in enumerate(cols_idx):
            x = m[r0, c]
            if x:
                total += sign * x * rec(rest, cols_idx[:pos] + cols_idx[pos + 1 :])
            sign = -sign
        return total

    return rec(tuple(range(n)), tuple(range(n)))


def minor(m: RatMatrix, rows_i, cols_j) -> Fraction:
    """Determinant of the submatrix on 1-based index sets I, J (|I| = |J|)."""
    if not isinstance(rows_i, IndexSet):
        rows_i = IndexSet(tuple(rows_i), m.rows)
    if not isinstance(cols_j, IndexSet):
        cols_j = IndexSet(tuple(cols_j), m.cols)
    if len(rows_i) != len(cols_j):
        raise ShapeError("minor needs |I| = |J|")
    if rows_i.ambient != m.rows or cols_j.ambient != m.cols:
        raise DomainError("index set ambient disagrees with matrix shape")
    if len(rows_i) == 0:
        return Fraction(1)
    sub = m.submatrix(
        [i - 1 for i in rows_i.indices], [j - 1 for j in cols_j.indices]
    )
    return det(sub)


def compound(m: RatMatrix, k: int) -> RatMatrix:
    """k-th compound: the matrix of all k-minors in lexicographic order.

    Entry ((I),(J)) is minor(m, I, J); index sets are enumerated
    lexicographically so the compound of the identity is the identity of
    size C(n, k).  This is the matrix of the k-th exterior power in the
    wedge basis e_{r_1} ^ ... ^ e_{r_k}, r_1 < ... < r_k.
    """
    if not m.is_square():
        raise ShapeError("compound requires a square matrix")
    n = m.rows
    if not 1 <= k <= n:
        raise DomainError(f"compound order k={k} outside 1..{n}")
    ints, scale = _integer_rows(m)
    subsets = list(itertools.combinations(range(n), k))
    out = []
    for rows_i in subsets:
        out_row = []
        for cols_j in subsets:
            sub = [[ints[i][j] for j in cols_j] for i in rows_i]
            out_row.append(Fraction(_det_int(sub), 1))
        out.append(out_row)
    # each row of the compound picks up the scales of its k source rows
    result = []
    row_scales = []
    for row in m._rows:
        d = 1
        for x in row:
            d = lcm(d, x.denominator)
        row_scales.append(d)
    for rows_i, out_row in zip(subsets, out):
        s = 1
        for i in rows_i:
            s *= row_scales[i]
        result.append([x / s for x in out_row])
    return RatMatrix(result)


def rank(m: RatMatrix) -> int:
    """Exact rank by division-free integer echelon with gcd stripping."""
    a, _ = _integer_rows(m)
    rows, cols = m.rows, m.cols
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if a[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        for i in range(r + 1, rows):
            if a[i][c] == 0:
                continue
            p, q = a[r][c], a[i][c]
            a[i] = [p * a[i][j] - q * a[r][j] for j in range(cols)]
            g = 0
            for x in a[i]:
                g = gcd(g, x)
            if g > 1:
                a[i] = [x // g for x in a[i]]
        r += 1
        if r == rows:
            break
    return r


def _rref(rows):
    """Reduced row echelon form over Fractions; returns (rows, pivot cols)."""
    a = [list(r) for r in rows]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if a[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a, pivots


def kernel(m: RatMatrix):
    """Basis of the null space, returned as a list of column matrices."""
    a, pivots = _rref(m._rows)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * m.cols
        vec[f] = Fraction(1)
        for r, c in enumerate(pivots):
            vec[c] = -a[r][f]
        basis.append(RatMatrix.column(vec))
    return basis


def solve(a: RatMatrix, b):
    """Solve a x = b exactly; returns a column matrix or None if inconsistent.

    Underdetermined systems return the particular solution with free
    variables set to zero.
    """
    if isinstance(b, RatMatrix):
        if b.cols != 1:
            raise ShapeError("right-hand side must be a column")
        rhs = [row[0] for row in b]
    else:
        rhs = [rat(x) for x in b]
    if len(rhs) != a.rows:
        raise ShapeError("right-hand side length disagrees with matrix")
    aug = [list(row) + [rhs[i]] for i, row in enumerate(a._rows)]
    red, pivots = _rref(aug)
    for r in range(len(red)):
        if all(red[r][c] == 0 for c in range(a.cols)) and red[r][a.cols] != 0:
            return None
    sol = [Fraction(0)] * a.cols
    for r, c in enumerate(pivots):
        if c < a.cols:
            sol[c] = red[r][a.cols]
    return RatMatrix.column(sol)


def solve_matrix(a: RatMatrix, b: RatMatrix):
    """Solve a X = b column by column; None if any column is inconsistent."""
    cols = []
    for j in range(b.cols):
        x = solve(a, RatMatrix.column(b.col(j)))
        if x is None:
            return None
        cols.append(x)
    return hstack(*cols)


def inverse(m: RatMatrix) -> RatMatrix:
    if not m.is_square():
        raise ShapeError("inverse requires a square matrix")
    inv = solve_matrix(m, RatMatrix.identity(m.rows))
    if inv is None or rank(m) < m.rows:
        raise SingularMatrixError("matrix is singular")
    return inv


# -- JSON interchange ------------------------------------------------------


def matrix_to_json(m: RatMatrix):
    """Matrices serialize as arrays of arrays of "p/q" strings."""
    return [[rat_str(x) for x in row] for row in m]


def matrix_from_json(obj) -> RatMatrix:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise DomainError("matrix JSON must be a non-empty array of arrays")
    try:
        return RatMatrix(obj)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"bad rational entry in matrix JSON: {exc}") from exc

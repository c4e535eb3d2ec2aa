"""Totally positive matrices: membership, parametrization, factorization.

A square matrix is totally positive (TP) when every minor is positive.
The unipotent variant U^{>0} asks positivity only of the minors that are
not already forced to vanish by upper-triangularity.  Membership tests
here enumerate all minors, which is the honest definition and perfectly
affordable at desk scale (n <= 8).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exactmat import (
    DomainError,
    RatMatrix,
    ShapeError,
    det,
    hstack,
    inverse,
    matmul,
    minor,
    rat,
    vstack,
)


@dataclass(frozen=True)
class ReducedWord:
    """Word in the adjacent transpositions s_1..s_{n-1} of the symmetric group."""

    letters: tuple
    n: int

    def __post_init__(self):
        letters = tuple(int(i) for i in self.letters)
        object.__setattr__(self, "letters", letters)
        if any(not 1 <= i <= self.n - 1 for i in letters):
            raise DomainError(f"letters must lie in 1..{self.n - 1}")
        if len(letters) > self.n * (self.n - 1) // 2:
            raise DomainError("word longer than any reduced expression")

    def __len__(self):
        return len(self.letters)


@dataclass(frozen=True)
class TriFactorization:
    """Unit-lower x positive-diagonal x unit-upper factorization."""

    lower: RatMatrix
    diag: RatMatrix
    upper: RatMatrix

    def product(self) -> RatMatrix:
        return matmul(matmul(self.lower, self.diag), self.upper)


def _index_sets(n, k):
    return itertools.combinations(range(1, n + 1), k)


def is_totally_positive(m: RatMatrix) -> bool:
    """True iff every minor of every size is > 0."""
    if not m.is_square():
        raise ShapeError("total positivity is defined for square matrices")
    n = m.rows
    for k in range(1, n + 1):
        for rows_i in _index_sets(n, k):
            for cols_j in _index_sets(n, k):
                if minor(m, rows_i, cols_j) <= 0:
                    return False
    return True


def is_totally_nonnegative(m: RatMatrix) -> bool:
    """True iff every minor of every size is >= 0."""
    if not m.is_square():
        raise ShapeError("total nonnegativity is defined for square matrices")
    n = m.rows
    for k in range(1, n + 1):
        for rows_i in _index_sets(n, k):
            for cols_j in _index_sets(n, k):
                if minor(m, rows_i, cols_j) < 0:
                    return False
    return True


def is_unit_upper_triangular(m: RatMatrix) -> bool:
    return m.is_square() and all(
        m[i, j] == (1 if i == j else 0)
        for i in range(m.rows)
        for j in range(i + 1)
    )


def _forced_zero(rows_i, cols_j) -> bool:
    # minor (I, J) of an upper-triangular matrix vanishes identically
    # exactly when some i_l > j_l
    return any(i > j for i, j in zip(rows_i, cols_j))


def is_U_positive(u: RatMatrix) -> bool:
    """Membership in U^{>0}: all not-forced-zero minors are positive.

    For unit upper-triangular u the minor on (I, J) is identically zero
    on all of U iff i_l > j_l for some l; every remaining minor must be
    strictly positive.  For n = 3 this reproduces the four inequalities
    x > 0, y > 0, z > 0, xz - y > 0.
    """
    if not is_unit_upper_triangular(u):
        raise DomainError("is_U_positive expects a unit upper-triangular matrix")
    n = u.rows
    for k in range(1, n + 1):
        for rows_i in _index_sets(n, k):
            for cols_j in _index_sets(n, k):
                if _forced_zero(rows_i, cols_j):
                    continue
                if minor(u, rows_i, cols_j) <= 0:
                    return False
    return True


def generator_u(i: int, t, n: int) -> RatMatrix:
    """Elementary generator u_i(t) = I_n + t E_{i,i+1} (1-based i)."""
    if not 1 <= i <= n - 1:
        raise DomainError(f"generator index {i} outside 1..{n - 1}")
    t = rat(t)
    rows = [[Fraction(1) if r == c else Fraction(0) for c in range(n)] for r in range(n)]
    rows[i - 1][i] = t
    return RatMatrix(rows)


def generator_l(i: int, t, n: int) -> RatMatrix:
    """Lower-triangular counterpart I_n + t E_{i+1,i}."""
    return generator_u(i, t, n).transpose()


def longest_word(n: int) -> ReducedWord:
    """The explicit reduced word for the longest permutation.

    Runs (s_{n-1} s_{n-2} ... s_k) for k = 1, ..., n-1; length n(n-1)/2.
    For n = 4 this is (3, 2, 1, 3, 2, 3).
    """
    if n < 2:
        raise DomainError("longest word needs n >= 2")
    letters = []
    for k in range(1, n):
        letters.extend(range(n - 1, k - 1, -1))
    return ReducedWord(tuple(letters), n)


def param_F(word: ReducedWord, params) -> RatMatrix:
    """Product u_{i_1}(t_1) ... u_{i_k}(t_k) along the word."""
    params = [rat(t) for t in params]
    if len(params) != len(word):
        raise ShapeError(
            f"word length {len(word)} and parameter count {len(params)} differ"
        )
    out = RatMatrix.identity(word.n)
    for i, t in zip(word.letters, params):
        out = matmul(out, generator_u(i, t, word.n))
    return out


def whitney_factorize(m: RatMatrix) -> TriFactorization:
    """Factor a totally positive matrix as (unit lower)(positive diag)(unit upper).

    Follows the first-column elimination of the Whitney decomposition:
    repeatedly subtract the multiple a_{i,c}/a_{i-1,c} of row i-1 from row i,
    bottom row first, column by column.  The accumulated elementary lower
    transvections form the unit lower factor; for TP input every multiplier
    is positive, so that factor lies in O^{>0} and the upper factor in U^{>0}.
    """
    if not m.is_square():
        raise ShapeError("factorization requires a square matrix")
    n = m.rows
    work = [list(row) for row in m]
    lower = [
        [Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)
    ]
    for c in range(n - 1):
        for i in range(n - 1, c, -1):
            num = work[i][c]
            if num == 0:
                continue
            den = work[i - 1][c]
            if den == 0:
                raise DomainError(
                    "zero pivot during elimination; input is not totally positive"
                )
            f = num / den
            work[i] = [work[i][j] - f * work[i - 1][j] for j in range(n)]
            # accumulate L <- L (I + f E_{i,i-1}), a single column update
            for r in range(n):
                lower[r][i - 1] += f * lower[r][i]
    diag_entries = [work[i][i] for i in range(n)]
    if any(d <= 0 for d in diag_entries):
        raise DomainError("nonpositive pivot; input is not totally positive")
    upper = [[work[i][j] / diag_entries[i] for j in range(n)] for i in range(n)]
    return TriFactorization(
        lower=RatMatrix(lower),
        diag=RatMatrix.diagonal(diag_entries),
        upper=RatMatrix(upper),
    )


def gk_spectrum_check(m: RatMatrix, tol: float = 1e-9) -> bool:
    """Diagnostic for the Gantmacher-Krein spectrum shape.

    Numerically tests that the eigenvalues are real (imaginary part below
    tol), positive (real part above tol), and pairwise separated by more
    than tol.  Guaranteed to hold when the input is totally positive; this
    is a float oracle, not a certified decision procedure.
    """
    if not m.is_square():
        raise ShapeError("spectrum check requires a square matrix")
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    eigs = np.linalg.eigvals(np.array(m.to_float_rows()))
    if np.any(np.abs(eigs.imag) >= tol):
        return False
    reals = np.sort(eigs.real)
    if np.any(reals <= tol):
        return False
    if len(reals) > 1 and np.any(np.diff(reals) <= tol):
        return False
    return True


def sl2_positive(m: RatMatrix) -> bool:
    """Total positivity in SL(2): all four entries positive."""
    if m.shape != (2, 2):
        raise ShapeError("sl2_positive expects a 2x2 matrix")
    if det(m) != 1:
        raise DomainError("sl2_positive expects determinant 1")
    return all(m[i, j] > 0 for i in range(2) for j in range(2))


def _leading_minors_positive(m: RatMatrix) -> bool:
    return all(
        minor(m, tuple(range(1, k + 1)), tuple(range(1, k + 1))) > 0
        for k in range(1, m.rows + 1)
    )


def sp_positive_factor(n_mat: RatMatrix, m_mat: RatMatrix):
    """Block-Gaussian factorization of (I N; 0 I)(I 0; M I) inside Sp(2n)^{>0}.

    For symmetric positive definite N, M returns the three factors

        (I 0; M(I+NM)^{-1} I) (I+NM 0; 0 I-M(I+NM)^{-1}N) (I (I+NM)^{-1}N; 0 I)

    whose exact product reconstructs the input product.  I+NM is invertible
    for positive definite inputs.
    """
    if n_mat.shape != m_mat.shape or not n_mat.is_square():
        raise ShapeError("N and M must be square of equal size")
    for name, mat in (("N", n_mat), ("M", m_mat)):
        if not mat.is_symmetric():
            raise DomainError(f"{name} must be symmetric")
        if not _leading_minors_positive(mat):
            raise DomainError(f"{name} must be positive definite")
    n = n_mat.rows
    eye = RatMatrix.identity(n)
    zero = RatMatrix.zeros(n, n)
    core = eye + matmul(n_mat, m_mat)
    try:
        core_inv = inverse(core)
    except Exception as exc:  # cannot happen for PD inputs
        raise DomainError("I + NM is singular; inputs violate positivity") from exc
    v_block = matmul(m_mat, core_inv)
    w_block = matmul(core_inv, n_mat)
    h_lower = eye - matmul(matmul(m_mat, core_inv), n_mat)
    v = vstack(hstack(eye, zero), hstack(v_block, eye))
    h = vstack(hstack(core, zero), hstack(zero, h_lower))
    w = vstack(hstack(eye, w_block), hstack(zero, eye))
    product = matmul(
        vstack(hstack(eye, n_mat), hstack(zero, eye)),
        vstack(hstack(eye, zero), hstack(m_mat, eye)),
    )
    assert matmul(matmul(v, h), w) == product
    return v, h, w


def random_positive_params(k: int, rng, lo=1, hi=5):
    """k random positive rationals with numerator/denominator in [lo, hi]."""
    return [Fraction(rng.randint(lo, hi), rng.randint(lo, hi)) for _ in range(k)]


def random_totally_positive(n: int, rng) -> RatMatrix:
    """Random TP matrix as a Whitney product O^{>0} A^0 U^{>0}."""
    word = longest_word(n)
    u = param_F(word, random_positive_params(len(word), rng))
    l = param_F(word, random_positive_params(len(word), rng)).transpose()
    d = RatMatrix.diagonal(random_positive_params(n, rng))
    return matmul(matmul(l, d), u)

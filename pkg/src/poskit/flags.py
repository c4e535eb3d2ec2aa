"""Complete flags in Q^n: transversality, genericity, triple ratios, positivity.

A flag is stored as an invertible basis matrix; its i-dimensional piece is
the span of the first i columns.  Subspace comparisons are rank-based, so
two flags with different bases but equal column spans are the same flag.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .exactmat import (
    DomainError,
    RatMatrix,
    ShapeError,
    det,
    hstack,
    inverse,
    kernel,
    matmul,
    rank,
)
from .totpos import is_U_positive, is_unit_upper_triangular


@dataclass(frozen=True)
class Flag:
    """Complete flag represented by an invertible n x n basis matrix."""

    basis: RatMatrix

    def __post_init__(self):
        if not self.basis.is_square():
            raise ShapeError("flag basis must be square")
        if rank(self.basis) != self.basis.rows:
            raise DomainError("flag basis must be invertible")

    @property
    def n(self) -> int:
        return self.basis.rows

    def piece(self, i: int) -> RatMatrix:
        """Basis matrix (n x i) of the i-dimensional subspace F_i."""
        if not 1 <= i <= self.n:
            raise DomainError(f"flag piece {i} outside 1..{self.n}")
        return self.basis.submatrix(range(self.n), range(i))

    def __eq__(self, other):
        if not isinstance(other, Flag) or other.n != self.n:
            return NotImplemented
        for i in range(1, self.n):
            joint = hstack(self.piece(i), other.piece(i))
            if rank(joint) != i:
                return False
        return True

    def __hash__(self):
        return hash(self.n)


@dataclass(frozen=True)
class FlagTriple:
    first: Flag
    second: Flag
    third: Flag

    def __post_init__(self):
        if not self.first.n == self.second.n == self.third.n:
            raise ShapeError("flags in a triple must share an ambient dimension")

    @property
    def n(self) -> int:
        return self.first.n


def standard_ascending(n: int) -> Flag:
    """Flag with F_i = <e_1, ..., e_i>."""
    return Flag(RatMatrix.identity(n))


def standard_descending(n: int) -> Flag:
    """Flag with E_i = <e_n, ..., e_{n-i+1}>."""
    eye = RatMatrix.identity(n)
    return Flag(eye.submatrix(range(n), range(n - 1, -1, -1)))


def is_transverse(f1: Flag, f2: Flag) -> bool:
    """F1_i and F2_{n-i} intersect trivially for every 1 <= i < n."""
    if f1.n != f2.n:
        raise ShapeError("flags must share an ambient dimension")
    n = f1.n
    for i in range(1, n):
        joint = hstack(f1.piece(i), f2.piece(n - i))
        if rank(joint) != n:
            return False
    return True


def is_generic(triple: FlagTriple) -> bool:
    """Every split F1_a + F2_b + F3_c with a+b+c = n spans Q^n."""
    n = triple.n
    for a in range(n + 1):
        for b in range(n + 1 - a):
            c = n - a - b
            blocks = []
            if a:
                blocks.append(triple.first.piece(a))
            if b:
                blocks.append(triple.second.piece(b))
            if c:
                blocks.append(triple.third.piece(c))
            if rank(hstack(*blocks)) != n:
                return False
    return True


def act(g: RatMatrix, f: Flag) -> Flag:
    """g . (F_1, ..., F_{n-1}) = (gF_1, ..., gF_{n-1})."""
    if not g.is_square() or g.rows != f.n:
        raise ShapeError("group element shape disagrees with flag")
    if rank(g) != g.rows:
        raise DomainError("group element must be invertible")
    return Flag(matmul(g, f.basis))


def u_from_flag(t: Flag) -> RatMatrix:
    """Unique unit upper-triangular u with u . (standard descending) = t.

    Exists exactly when t is transverse to the standard ascending flag;
    column n-i+1 of u is the generator of T_i meet <e_1, ..., e_{n-i+1}>,
    normalized to have a 1 in position n-i+1 (the paper's induction,
    solved column by column).
    """
    n = t.n
    cols = [None] * n
    for i in range(1, n + 1):
        j = n - i + 1  # 1-based column of u being built
        piece = t.piece(i)
        # solve for x with (piece x) supported in coordinates 1..j
        if j < n:
            constraint = piece.submatrix(range(j, n), range(i))
            null = kernel(constraint)
            if len(null) != 1:
                raise DomainError(
                    "flag is not transverse to the standard ascending flag"
                )
            coeff = null[0]
        else:
            coeff = RatMatrix.column([1] + [0] * (i - 1))
        vec = matmul(piece, coeff)
        pivot = vec[j - 1, 0]
        if pivot == 0:
            raise DomainError("flag is not transverse to the standard ascending flag")
        cols[j - 1] = [vec[r, 0] / pivot for r in range(n)]
    return RatMatrix(list(zip(*cols)))


def block(u: RatMatrix, a: int, b: int, c: int) -> RatMatrix:
    """The c x c block in rows a+1..a+c, columns n-c+1..n (empty block -> None).

    Use block_det when the determinant is wanted: the empty 0 x 0 block has
    determinant 1 by convention.
    """
    n = u.rows
    if a < 0 or b < 0 or c < 0 or a + b + c != n:
        raise DomainError("block needs a, b, c >= 0 with a + b + c = n")
    if c == 0:
        return None
    return u.submatrix(range(a, a + c), range(n - c, n))


def block_det(u: RatMatrix, a: int, b: int, c: int) -> Fraction:
    sub = block(u, a, b, c)
    return Fraction(1) if sub is None else det(sub)


def _wedge(e: Flag, f: Flag, t: Flag, a: int, b: int, c: int) -> Fraction:
    """det [first a columns of E | first b of F | first c of T]."""
    blocks = []
    if a:
        blocks.append(e.piece(a))
    if b:
        blocks.append(f.piece(b))
    if c:
        blocks.append(t.piece(c))
    return det(hstack(*blocks))


def triple_ratio(e: Flag, f: Flag, t: Flag, a: int, b: int, c: int) -> Fraction:
    """The (a, b, c)-triple ratio of (E, F, T), a ratio of six wedge determinants.

    Independent of the basis chosen inside each flag and invariant under
    the simultaneous GL(n) action; defined when the triple is generic.
    """
    n = e.n
    if a < 1 or b < 1 or c < 1 or a + b + c != n:
        raise DomainError("triple ratio needs a, b, c >= 1 with a + b + c = n")
    num = (
        _wedge(e, f, t, a + 1, b, c - 1)
        * _wedge(e, f, t, a, b - 1, c + 1)
        * _wedge(e, f, t, a - 1, b + 1, c)
    )
    den = (
        _wedge(e, f, t, a - 1, b, c + 1)
        * _wedge(e, f, t, a, b + 1, c - 1)
        * _wedge(e, f, t, a + 1, b - 1, c)
    )
    if den == 0:
        raise DomainError("zero wedge in denominator: triple is not generic")
    return num / den


def _ratio_splits(n):
    for a in range(1, n - 1):
        for b in range(1, n - a):
            c = n - a - b
            if c >= 1:
                yield a, b, c


def is_BD_positive(triple: FlagTriple) -> bool:
    """Generic and all triple ratios positive."""
    if not is_generic(triple):
        return False
    return all(
        triple_ratio(triple.first, triple.second, triple.third, a, b, c) > 0
        for a, b, c in _ratio_splits(triple.n)
    )


def pair_to_standard(f1: Flag, f3: Flag) -> RatMatrix:
    """g with g . f1 = standard descending and g . f3 = standard ascending.

    Exists iff the pair is transverse: column i of g^{-1} generates the
    line (f3)_i meet (f1)_{n-i+1}.
    """
    if f1.n != f3.n:
        raise ShapeError("flags must share an ambient dimension")
    n = f1.n
    cols = []
    for i in range(1, n + 1):
        v_piece = f3.piece(i)
        w_piece = f1.piece(n - i + 1)
        joint = hstack(v_piece, w_piece)
        null = kernel(joint)
        if len(null) != 1:
            raise DomainError("flag pair is not transverse")
        coeff = null[0]
        vec = matmul(v_piece, RatMatrix.column([coeff[r, 0] for r in range(i)]))
        if vec.is_zero():
            raise DomainError("flag pair is not transverse")
        cols.append([vec[r, 0] for r in range(n)])
    h = RatMatrix(list(zip(*cols)))
    return inverse(h)


def _sign_conjugate(u: RatMatrix, signs) -> RatMatrix:
    # d u d^{-1} for d = diag(signs), signs in {+1, -1}
    n = u.rows
    return RatMatrix(
        [[signs[i] * u[i, j] * signs[j] for j in range(n)] for i in range(n)]
    )


def is_GW_positive(triple: FlagTriple) -> bool:
    """Positivity via reduction to (descending, u . descending, ascending).

    Reduces (first, third) to the standard transverse pair, extracts the
    unique unipotent u carrying the middle flag, and searches the sign
    patterns d in {+-1}^n (modulo the global sign) for d u d^{-1} in U^{>0}.
    Conjugation by a positive diagonal scales every minor positively, so
    sign patterns are the only freedom that matters.
    """
    if not is_transverse(triple.first, triple.third):
        return False
    g = pair_to_standard(triple.first, triple.third)
    middle = act(g, triple.second)
    if not is_transverse(middle, standard_ascending(triple.n)):
        return False
    u = u_from_flag(middle)
    n = triple.n
    for tail in itertools.product((1, -1), repeat=n - 1):
        signs = (1,) + tail
        if is_U_positive(_sign_conjugate(u, signs)):
            return True
    return False


def sign_lemma_check(u: RatMatrix, a: int, b: int, c: int) -> bool:
    """Check f^(a) ^ e^(b) ^ t^(c) = (-1)^(floor(b/2)+floor(c/2)+bc) det u(a,b,c).

    Generators are pinned to the proof's choices: f^(i) the first i
    standard vectors, e^(i) the last i in reverse, t^(i) the last i columns
    of u in reverse.
    """
    n = u.rows
    if not is_unit_upper_triangular(u):
        raise DomainError("sign lemma is about unit upper-triangular matrices")
    if a < 0 or b < 0 or c < 0 or a + b + c != n:
        raise DomainError("sign lemma needs a, b, c >= 0 with a + b + c = n")
    cols = []
    eye = RatMatrix.identity(n)
    for j in range(a):
        cols.append(eye.col(j))
    for j in range(b):
        cols.append(eye.col(n - 1 - j))
    for j in range(c):
        cols.append(u.col(n - 1 - j))
    lhs = det(RatMatrix(list(zip(*cols)))) if cols else Fraction(1)
    rhs = (-1) ** (b // 2 + c // 2 + b * c) * block_det(u, a, b, c)
    return lhs == rhs

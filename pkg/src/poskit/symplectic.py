"""Standard symplectic Q^{2n}, Lagrangians, and the Maslov index.

The symplectic form is w(x, y) = x^T J y with J = (0 I; -I 0).  The Maslov
index of a Lagrangian triple is the signature of Kashiwara's quadratic form
Q(x1, x2, x3) = w(x1, x2) + w(x2, x3) + w(x3, x1) on L1 x L2 x L3, computed
here by exact congruence diagonalization, so no tolerance enters anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactmat import (
    DomainError,
    RatMatrix,
    ShapeError,
    hstack,
    matmul,
    rank,
    solve_matrix,
    vstack,
)


@dataclass(frozen=True)
class SymplecticSpace:
    """Q^{2n} with the block form J = (0 I; -I 0)."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("symplectic space needs n >= 1")

    @property
    def j_matrix(self) -> RatMatrix:
        return standard_j(self.n)


def standard_j(n: int) -> RatMatrix:
    rows = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        rows[i][n + i] = Fraction(1)
        rows[n + i][i] = Fraction(-1)
    return RatMatrix(rows)


def omega_gram(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    """Pairing matrix (w(a_i, b_j))_{ij} of two column families."""
    if a.rows != b.rows or a.rows % 2:
        raise ShapeError("columns must live in the same Q^{2n}")
    return matmul(matmul(a.transpose(), standard_j(a.rows // 2)), b)


def is_lagrangian(basis: RatMatrix) -> bool:
    """Rank n and isotropy of a 2n x n column family, both exact."""
    if basis.rows % 2 or basis.cols != basis.rows // 2:
        return False
    if rank(basis) != basis.cols:
        return False
    return omega_gram(basis, basis).is_zero()


@dataclass(frozen=True)
class Lagrangian:
    """An n-dimensional isotropic subspace of Q^{2n}, given by a 2n x n basis."""

    basis: RatMatrix

    def __post_init__(self):
        if not is_lagrangian(self.basis):
            raise DomainError("basis does not span a Lagrangian subspace")

    @property
    def n(self) -> int:
        return self.basis.cols

    def __eq__(self, other):
        if not isinstance(other, Lagrangian) or other.n != self.n:
            return NotImplemented
        return rank(hstack(self.basis, other.basis)) == self.n

    def __hash__(self):
        return hash(self.n)


def standard_pair(n: int):
    """The Lagrangians span(e_1..e_n) and span(e_{n+1}..e_{2n})."""
    eye = RatMatrix.identity(2 * n)
    l_e = Lagrangian(eye.submatrix(range(2 * n), range(n)))
    l_f = Lagrangian(eye.submatrix(range(2 * n), range(n, 2 * n)))
    return l_e, l_f


def graph_lagrangian(s: RatMatrix) -> Lagrangian:
    """The graph {(v, Sv)} of a symmetric matrix S, always Lagrangian."""
    if not s.is_symmetric():
        raise DomainError("graph Lagrangians come from symmetric matrices")
    return Lagrangian(vstack(RatMatrix.identity(s.rows), s))


def signature(q: RatMatrix):
    """Signature (positives, negatives, zeros) by exact Lagrange reduction.

    Simultaneous row/column elimination over Q; when the active block has a
    zero diagonal but a nonzero off-diagonal entry, the hyperbolic step
    (add row and column j to i) manufactures a pivot, and the plane then
    contributes one positive and one negative square.
    """
    if not q.is_symmetric():
        raise ShapeError("signature requires a symmetric matrix")
    _, diag = congruence_diagonalize(q)
    pos = sum(1 for d in diag if d > 0)
    neg = sum(1 for d in diag if d < 0)
    zero = sum(1 for d in diag if d == 0)
    return pos, neg, zero


def congruence_diagonalize(q: RatMatrix):
    """Invertible C with C^T Q C diagonal; returns (C, diagonal entries)."""
    if not q.is_symmetric():
        raise ShapeError("congruence diagonalization requires symmetry")
    n = q.rows
    a = [list(row) for row in q]
    c = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]

    def col_op(dst, src, f):
        # column dst += f * column src, mirrored on rows of a
        for r in range(n):
            a[r][dst] += f * a[r][src]
        for r in range(n):
            a[dst][r] += f * a[src][r]
        for r in range(n):
            c[r][dst] += f * c[r][src]

    def col_swap(i, j):
        for r in range(n):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        a[i], a[j] = a[j], a[i]
        for r in range(n):
            c[r][i], c[r][j] = c[r][j], c[r][i]

    k = 0
    while k < n:
        pivot = next((l for l in range(k, n) if a[l][l] != 0), None)
        if pivot is None:
            hyperbolic = next(
                (
                    (i, j)
                    for i in range(k, n)
                    for j in range(i + 1, n)
                    if a[i][j] != 0
                ),
                None,
            )
            if hyperbolic is None:
                break  # remaining block is zero
            i, j = hyperbolic
            col_op(i, j, Fraction(1))
            continue
        if pivot != k:
            col_swap(pivot, k)
        d = a[k][k]
        for i in range(k + 1, n):
            if a[k][i] != 0:
                col_op(i, k, -a[k][i] / d)
        k += 1
    return RatMatrix(c), [a[i][i] for i in range(n)]


def maslov_index(l1: Lagrangian, l2: Lagrangian, l3: Lagrangian) -> int:
    """Signature of Kashiwara's form on L1 x L2 x L3.

    The Gram matrix is assembled from the three pairwise w-pairings; the
    symmetrizing factor 1/2 is dropped since it cannot change a signature.
    """
    if not l1.n == l2.n == l3.n:
        raise ShapeError("Lagrangians must share a symplectic space")
    n = l1.n
    w12 = omega_gram(l1.basis, l2.basis)
    w23 = omega_gram(l2.basis, l3.basis)
    w31 = omega_gram(l3.basis, l1.basis)
    zero = RatMatrix.zeros(n, n)
    gram = vstack(
        hstack(zero, w12, w31.transpose()),
        hstack(w12.transpose(), zero, w23),
        hstack(w31, w23.transpose(), zero),
    )
    pos, neg, _ = signature(gram)
    return pos - neg


def _projection_pair(l1: Lagrangian, l3: Lagrangian, l2: Lagrangian):
    """Coordinates of p_13 and p_31 applied to the basis of L2."""
    joint = hstack(l1.basis, l3.basis)
    if rank(joint) != 2 * l1.n:
        raise DomainError("L1 and L3 must be transverse")
    coords = solve_matrix(joint, l2.basis)
    n = l1.n
    a = coords.submatrix(range(n), range(n))
    b = coords.submatrix(range(n, 2 * n), range(n))
    return matmul(l1.basis, a), matmul(l3.basis, b)


def maslov_transverse(l1: Lagrangian, l2: Lagrangian, l3: Lagrangian) -> int:
    """Maslov index via the form S(x) = w(p_13 x, p_31 x) on L2.

    Needs only L1 transverse to L3; S is nondegenerate exactly when L2 is
    transverse to both.
    """
    if not l1.n == l2.n == l3.n:
        raise ShapeError("Lagrangians must share a symplectic space")
    p13, p31 = _projection_pair(l1, l3, l2)
    gram = omega_gram(p13, p31)
    if gram != gram.transpose():
        raise AssertionError("S-form Gram matrix failed to be symmetric")
    pos, neg, _ = signature(gram)
    return pos - neg


@dataclass(frozen=True)
class NormalForm:
    """Symplectic basis adapted to a transverse triple.

    Columns of ``basis`` are (p_1..p_n, q_1..q_n) with L1 = <p>, L2 = <q>
    and L3 = <p_i + c_i q_i>; basis^T J basis = J holds exactly.  The signs
    eps_i = sign(c_i) are sorted non-increasingly and tau = n - 2k with
    k = #{eps_i = +1}.  The magnitudes |c_i| cannot be normalized to 1
    without leaving Q (that last scaling needs square roots), so they are
    reported as found.
    """

    basis: RatMatrix
    k: int
    eps: tuple
    coeffs: tuple


def normal_form(l1: Lagrangian, l2: Lagrangian, l3: Lagrangian) -> NormalForm:
    if not l1.n == l2.n == l3.n:
        raise ShapeError("Lagrangians must share a symplectic space")
    n = l1.n
    for a, b in ((l1, l2), (l2, l3), (l1, l3)):
        if rank(hstack(a.basis, b.basis)) != 2 * n:
            raise DomainError("normal form needs a pairwise transverse triple")
    p13, p31 = _projection_pair(l1, l3, l2)
    gram = omega_gram(p13, p31)
    c, diag = congruence_diagonalize(gram)
    if any(d == 0 for d in diag):
        raise AssertionError("S-form degenerate on a transverse triple")
    # eps_i = sign of the L3-coefficient = -sign(d_i); put +1 first
    order = sorted(range(n), key=lambda i: (diag[i] > 0, i))
    c = c.submatrix(range(n), order)
    diag = [diag[i] for i in order]
    q_cols = matmul(l2.basis, c)
    # omega-dual basis of L1: w(p_i, q_j) = delta_ij
    pairing = omega_gram(l1.basis, q_cols)
    coeffs_in_l1 = solve_matrix(pairing.transpose(), RatMatrix.identity(n))
    if coeffs_in_l1 is None:
        raise AssertionError("L1/L2 pairing failed to invert on a transverse pair")
    p_cols = matmul(l1.basis, coeffs_in_l1)
    basis = hstack(p_cols, q_cols)
    j = standard_j(n)
    if matmul(matmul(basis.transpose(), j), basis) != j:
        raise AssertionError("constructed basis is not symplectic")
    coeffs = tuple(Fraction(-1, 1) / d for d in diag)
    eps = tuple(1 if x > 0 else -1 for x in coeffs)
    k = sum(1 for e in eps if e == 1)
    # L3 must be spanned by p_i + c_i q_i, exactly
    l3_cols = hstack(
        *[
            RatMatrix.column(
                [p_cols[r, i] + coeffs[i] * q_cols[r, i] for r in range(2 * n)]
            )
            for i in range(n)
        ]
    )
    if rank(hstack(l3_cols, l3.basis)) != n:
        raise AssertionError("normal form failed to reproduce L3")
    return NormalForm(basis=basis, k=k, eps=eps, coeffs=coeffs)


def chain_rule_defect(
    l1: Lagrangian, l2: Lagrangian, l3: Lagrangian, l4: Lagrangian
) -> int:
    """tau(L1,L2,L3) - tau(L1,L2,L4) - tau(L2,L3,L4) - tau(L3,L1,L4); always 0.

    The last term is taken in the cyclic order (L3, L1, L4): this is the
    orientation for which the cocycle identity actually holds (equivalently
    -tau(L1,L3,L4)), as pinned down by the exact n = 1 examples.
    """
    return (
        maslov_index(l1, l2, l3)
        - maslov_index(l1, l2, l4)
        - maslov_index(l2, l3, l4)
        - maslov_index(l3, l1, l4)
    )


def random_symplectic(n: int, rng, factors: int = 3) -> RatMatrix:
    """Random exact symplectic matrix.

    Product of the three generator families (I N; 0 I), (I 0; M I) with
    symmetric N, M and block-diagonal (A, A^{-T}); never built by numerical
    orthogonalization.
    """
    from .exactmat import inverse  # local import to avoid cycle noise

    eye = RatMatrix.identity(n)
    zero = RatMatrix.zeros(n, n)

    def rand_sym():
        vals = [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(i):
                vals[i][j] = vals[j][i]
        return RatMatrix(vals)

    def rand_invertible():
        while True:
            vals = [
                [Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)
            ]
            m = RatMatrix(vals)
            if rank(m) == n:
                return m

    g = RatMatrix.identity(2 * n)
    for _ in range(factors):
        upper = vstack(hstack(eye, rand_sym()), hstack(zero, eye))
        lower = vstack(hstack(eye, zero), hstack(rand_sym(), eye))
        a = rand_invertible()
        diag = vstack(hstack(a, zero), hstack(zero, inverse(a).transpose()))
        g = matmul(matmul(matmul(g, upper), lower), diag)
    return g


def random_lagrangian(n: int, rng) -> Lagrangian:
    """Random Lagrangian as a symplectic image of a standard one."""
    g = random_symplectic(n, rng)
    half = range(n) if rng.random() < 0.5 else range(n, 2 * n)
    return Lagrangian(g.submatrix(range(2 * n), half))

"""Classical real Lie algebras: sl(n), sp(2n), so(Q_{p,q}).

Each family carries a fixed, documented matrix basis, a diagonal maximal
abelian subspace, and a closed-form Killing form.  Restricted roots are
computed generically: the adjoint action of every a-basis element is
simultaneously block-diagonalized by exact eigenspace splitting (the
candidate eigenvalues of ad of a diagonal matrix are the pairwise
differences of its diagonal entries, so no numerical spectra are needed).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactmat import (
    DomainError,
    RatMatrix,
    ShapeError,
    hstack,
    kernel,
    matmul,
    rank,
    solve,
)


@dataclass(frozen=True)
class LieAlgebraSpec:
    """One of sl(n), sp(2n) (size = 2n), so(Q_{p,q}) with p <= q, p + q >= 3."""

    family: str
    params: tuple

    def __post_init__(self):
        if self.family not in ("sl", "sp", "so"):
            raise DomainError(f"unknown family {self.family!r}")
        p = tuple(int(x) for x in self.params)
        object.__setattr__(self, "params", p)
        if self.family == "sl":
            if len(p) != 1 or p[0] < 2:
                raise DomainError("sl(n) needs n >= 2")
        elif self.family == "sp":
            if len(p) != 1 or p[0] < 2 or p[0] % 2:
                raise DomainError("sp(2n) needs an even matrix size >= 2")
        else:
            if len(p) != 2 or not (0 < p[0] <= p[1]) or sum(p) < 3:
                raise DomainError("so(p,q) needs 0 < p <= q and p + q >= 3")

    @property
    def size(self) -> int:
        """Ambient matrix size."""
        return self.params[0] if self.family in ("sl", "sp") else sum(self.params)

    @property
    def label(self) -> str:
        if self.family == "so":
            return f"so({self.params[0]},{self.params[1]})"
        return f"{self.family}({self.params[0]})"

    def __str__(self):
        return self.label


def sl(n: int) -> LieAlgebraSpec:
    return LieAlgebraSpec("sl", (n,))


def sp(size: int) -> LieAlgebraSpec:
    """sp(size) with size = 2n the matrix dimension, e.g. sp(4)."""
    return LieAlgebraSpec("sp", (size,))


def so(p: int, q: int) -> LieAlgebraSpec:
    return LieAlgebraSpec("so", (p, q))


def _e(i, j, n):
    rows = [[Fraction(0)] * n for _ in range(n)]
    rows[i][j] = Fraction(1)
    return RatMatrix(rows)


def w_antidiag(p: int) -> RatMatrix:
    """The alternating antidiagonal W_p: entry (p+1-k, k) = (-1)^(k-1)."""
    rows = [[Fraction(0)] * p for _ in range(p)]
    for k in range(1, p + 1):
        rows[p - k][k - 1] = Fraction((-1) ** (k - 1))
    return RatMatrix(rows)


def q_form(p: int, q: int) -> RatMatrix:
    """The split-friendly symmetric form Q_{p,q} = (0 0 W_p; 0 -I 0; W_p^T 0 0)."""
    n = p + q
    w = w_antidiag(p)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(p):
        for j in range(p):
            rows[i][n - p + j] = w[i, j]
            rows[n - p + i][j] = w[j, i]
    for i in range(q - p):
        rows[p + i][p + i] = Fraction(-1)
    return RatMatrix(rows)


def bracket(x: RatMatrix, y: RatMatrix) -> RatMatrix:
    return matmul(x, y) - matmul(y, x)


def trace(m: RatMatrix) -> Fraction:
    return sum((m[i, i] for i in range(m.rows)), Fraction(0))


def membership(x: RatMatrix, spec: LieAlgebraSpec) -> bool:
    """Exact check of the defining linear equations of the family."""
    if not x.is_square() or x.rows != spec.size:
        return False
    if spec.family == "sl":
        return trace(x) == 0
    if spec.family == "sp":
        j = _sp_form(spec.size)
        return (matmul(x.transpose(), j) + matmul(j, x)).is_zero()
    qf = q_form(*spec.params)
    return (matmul(x.transpose(), qf) + matmul(qf, x)).is_zero()


def _sp_form(size: int) -> RatMatrix:
    n = size // 2
    rows = [[Fraction(0)] * size for _ in range(size)]
    for i in range(n):
        rows[i][n + i] = Fraction(1)
        rows[n + i][i] = Fraction(-1)
    return RatMatrix(rows)


def dim(spec: LieAlgebraSpec) -> int:
    if spec.family == "sl":
        n = spec.params[0]
        return n * n - 1
    if spec.family == "sp":
        n = spec.params[0] // 2
        return 2 * n * n + n
    n = spec.size
    return n * (n - 1) // 2


@lru_cache(maxsize=None)
def basis(spec: LieAlgebraSpec):
    """The fixed ordered basis used for all ad-matrix computations.

    sl(n): E_ij (i != j, row-major), then E_ii - E_{i+1,i+1}.
    sp(2n): blocks (E_ij, 0; 0, -E_ji), then symmetric B-part, then C-part.
    so(Q_{p,q}): Q (E_ij - E_ji) for i < j in lexicographic order
    (Q^{-1} = Q for this form, so these are the antisymmetrized units
    carried into the algebra).
    """
    n = spec.size
    out = []
    if spec.family == "sl":
        for i in range(n):
            for j in range(n):
                if i != j:
                    out.append(_e(i, j, n))
        for i in range(n - 1):
            out.append(_e(i, i, n) - _e(i + 1, i + 1, n))
    elif spec.family == "sp":
        half = n // 2
        for i in range(half):
            for j in range(half):
                out.append(_e(i, j, n) - _e(half + j, half + i, n))
        for i in range(half):
            for j in range(i, half):
                b = _e(i, half + j, n)
                if i != j:
                    b = b + _e(j, half + i, n)
                out.append(b)
        for i in range(half):
            for j in range(i, half):
                c = _e(half + i, j, n)
                if i != j:
                    c = c + _e(half + j, i, n)
                out.append(c)
    else:
        qf = q_form(*spec.params)
        for i in range(n):
            for j in range(i + 1, n):
                out.append(matmul(qf, _e(i, j, n) - _e(j, i, n)))
    if len(out) != dim(spec):
        raise AssertionError(f"basis size disagrees with dim for {spec}")
    return tuple(out)


@lru_cache(maxsize=None)
def _coordinate_solver(spec: LieAlgebraSpec):
    """Matrix whose columns are the flattened basis, for coordinate solves."""
    n = spec.size
    cols = []
    for b in basis(spec):
        cols.append([b[i, j] for i in range(n) for j in range(n)])
    return RatMatrix(list(zip(*cols)))


def coordinates(x: RatMatrix, spec: LieAlgebraSpec):
    """Coefficients of x in the fixed basis; DomainError if x is outside."""
    n = spec.size
    flat = [x[i, j] for i in range(n) for j in range(n)]
    sol = solve(_coordinate_solver(spec), flat)
    if sol is None:
        raise DomainError(f"matrix does not lie in {spec}")
    recon = sum(
        (sol[k, 0] * b for k, b in enumerate(basis(spec))),
        RatMatrix.zeros(n, n),
    )
    if recon != x:
        raise DomainError(f"matrix does not lie in {spec}")
    return [sol[k, 0] for k in range(dim(spec))]


def ad_matrix(x: RatMatrix, spec: LieAlgebraSpec) -> RatMatrix:
    """ad(x) in the fixed basis, acting on coordinate columns."""
    cols = [coordinates(bracket(x, b), spec) for b in basis(spec)]
    return RatMatrix(list(zip(*cols)))


def killing(x: RatMatrix, y: RatMatrix, spec: LieAlgebraSpec) -> Fraction:
    """Closed-form Killing form of the family.

    sl(n): 2n Tr(XY) (restriction of the gl form 2n Tr(XY) - 2 Tr X Tr Y),
    sp(2n): (2n + 2) Tr(XY), so(Q_{p,q}): (p + q - 2) Tr(XY).
    """
    if not membership(x, spec) or not membership(y, spec):
        raise DomainError(f"arguments must lie in {spec}")
    t = trace(matmul(x, y))
    if spec.family == "sl":
        return 2 * spec.params[0] * t
    if spec.family == "sp":
        return (spec.params[0] + 2) * t
    return (sum(spec.params) - 2) * t


def killing_via_ad(x: RatMatrix, y: RatMatrix, spec: LieAlgebraSpec) -> Fraction:
    """Tr(ad x . ad y) in the fixed basis; the oracle for ``killing``."""
    return trace(matmul(ad_matrix(x, spec), ad_matrix(y, spec)))


def cartan_involution(x: RatMatrix) -> RatMatrix:
    """theta(X) = -X^T."""
    return -x.transpose()


def cartan_split(x: RatMatrix, spec: LieAlgebraSpec):
    """X = k + p with k antisymmetric and p symmetric; both stay in the algebra."""
    if not membership(x, spec):
        raise DomainError(f"argument must lie in {spec}")
    k = (x - x.transpose()).scale(Fraction(1, 2))
    p = (x + x.transpose()).scale(Fraction(1, 2))
    if not (membership(k, spec) and membership(p, spec)):
        raise AssertionError("Cartan split left the algebra")
    return k, p


@lru_cache(maxsize=None)
def maximal_abelian(spec: LieAlgebraSpec):
    """Basis of the diagonal maximal abelian subspace a in p.

    sl(n): E_kk - E_{k+1,k+1}; sp(2n): diag(e_k, -e_k); so(Q_{p,q}):
    diag(lambda_1..lambda_p, 0, -lambda_p..-lambda_1) coordinate vectors.
    """
    n = spec.size
    if spec.family == "sl":
        out = [_e(k, k, n) - _e(k + 1, k + 1, n) for k in range(n - 1)]
    elif spec.family == "sp":
        half = n // 2
        out = [_e(k, k, n) - _e(half + k, half + k, n) for k in range(half)]
    else:
        p = spec.params[0]
        out = [_e(k, k, n) - _e(n - 1 - k, n - 1 - k, n) for k in range(p)]
    for a in out:
        if not membership(a, spec):
            raise AssertionError("abelian basis element escaped the algebra")
    for a, b in itertools.combinations(out, 2):
        if not bracket(a, b).is_zero():
            raise AssertionError("abelian basis fails to commute")
    return tuple(out)


def spec_rank(spec: LieAlgebraSpec) -> int:
    return len(maximal_abelian(spec))


@dataclass(frozen=True)
class RestrictedRoot:
    """A restricted root with its eigenspace.

    ``coeffs`` is the integer coefficient vector in the epsilon-basis of
    a^* (for sl(n) the epsilon vector has length n and sums to zero; for
    sp and so its length is the rank).
    """

    coeffs: tuple
    multiplicity: int
    space_basis: tuple

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                sign = "+" if c > 0 else "-"
                mag = abs(c)
                terms.append(f"{sign}{'' if mag == 1 else mag}e{i + 1}")
        label = "".join(terms).lstrip("+") or "0"
        return label


@dataclass(frozen=True)
class RootDecomposition:
    a_basis: tuple
    zero_space_basis: tuple  # Z_k(a), the part of g_0 beyond a
    roots: tuple
    simple: tuple
    dynkin: str
    spec: LieAlgebraSpec

    def root_by_coeffs(self, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        for r in self.roots:
            if r.coeffs == coeffs:
                return r
        raise DomainError(f"{coeffs} is not a restricted root of {self.spec}")

    def dimension_audit(self) -> bool:
        total = (
            len(self.a_basis)
            + len(self.zero_space_basis)
            + sum(r.multiplicity for r in self.roots)
        )
        return total == dim(self.spec)


def _eigenvalue_functional(spec, a_basis, values):
    """Convert the tuple (alpha(a_1), ..., alpha(a_r)) to epsilon coefficients."""
    if spec.family in ("sp", "so"):
        # epsilon_i(a_k) = delta_ik for these bases
        return tuple(int(v) for v in values)
    # sl(n): values v_k = c_k - c_{k+1} with sum c = 0
    n = spec.size
    cs = [Fraction(0)] * n
    for i in range(n - 1, 0, -1):
        cs[i - 1] = cs[i] + values[i - 1]
    shift = sum(cs, Fraction(0)) / n
    cs = [c - shift for c in cs]
    out = []
    for c in cs:
        if c.denominator != 1:
            raise AssertionError("sl root failed to be integral in the eps basis")
        out.append(int(c))
    return tuple(out)


def _split_by_ad(spec, subspaces, a_elt):
    """Refine coordinate subspaces into eigenspaces of ad(a_elt)."""
    admat = ad_matrix(a_elt, spec)
    n = spec.size
    candidates = sorted(
        {a_elt[i, i] - a_elt[j, j] for i in range(n) for j in range(n)}
    )
    from .exactmat import solve_matrix

    refined = []
    for basis_cols, values in subspaces:
        s = basis_cols.cols
        # restrict ad to the subspace: admat . B = B . R
        restricted = solve_matrix(basis_cols, matmul(admat, basis_cols))
        if restricted is None:
            raise AssertionError("ad failed to preserve a joint eigenspace")
        found = 0
        for c in candidates:
            shifted = restricted - RatMatrix.identity(s).scale(c)
            null = kernel(shifted)
            if not null:
                continue
            sub_cols = hstack(*[matmul(basis_cols, v) for v in null])
            refined.append((sub_cols, values + (c,)))
            found += len(null)
        if found != s:
            raise AssertionError("ad eigenvalues escaped the candidate set")
    return refined


@lru_cache(maxsize=None)
def restricted_roots(spec: LieAlgebraSpec) -> RootDecomposition:
    """Simultaneous ad-eigenspace decomposition of the algebra under a.

    Subspaces are refined one a-basis element at a time; candidate
    eigenvalues are the diagonal differences of that element, which is
    exhaustive because every a here is a diagonal matrix.  Roots are then
    reported as integer vectors in the epsilon-basis and matched against
    the family's simple system.
    """
    a_basis = maximal_abelian(spec)
    nfull = dim(spec)
    eye = RatMatrix.identity(nfull)
    subspaces = [(eye, ())]
    for a_elt in a_basis:
        subspaces = _split_by_ad(spec, subspaces, a_elt)
    roots = []
    zero_cols = None
    for cols, values in subspaces:
        if all(v == 0 for v in values):
            zero_cols = cols
            continue
        coeffs = _eigenvalue_functional(spec, a_basis, values)
        space = tuple(
            _matrix_from_coordinates(cols.col(j), spec) for j in range(cols.cols)
        )
        roots.append(
            RestrictedRoot(
                coeffs=coeffs, multiplicity=cols.cols, space_basis=space
            )
        )
    roots.sort(key=lambda r: r.coeffs, reverse=True)
    zero_basis = _zero_space_beyond_a(spec, zero_cols, a_basis)
    simple = _simple_roots(spec, roots)
    label = _dynkin_label(spec, simple)
    decomp = RootDecomposition(
        a_basis=a_basis,
        zero_space_basis=zero_basis,
        roots=tuple(roots),
        simple=simple,
        dynkin=label,
        spec=spec,
    )
    if not decomp.dimension_audit():
        raise AssertionError(f"dimension audit failed for {spec}")
    _verify_root_spaces(spec, decomp)
    return decomp


def _matrix_from_coordinates(coords, spec):
    n = spec.size
    out = RatMatrix.zeros(n, n)
    for c, b in zip(coords, basis(spec)):
        if c:
            out = out + b.scale(c)
    return out


def _zero_space_beyond_a(spec, zero_cols, a_basis):
    """Basis of Z_k(a): the centralizer of a inside g, minus a itself."""
    if zero_cols is None:
        return ()
    g0 = [
        _matrix_from_coordinates(zero_cols.col(j), spec)
        for j in range(zero_cols.cols)
    ]
    # quotient by a: keep the antisymmetric (compact) members; g0 = a + Z_k(a)
    out = []
    for m in g0:
        k_part = (m - m.transpose()).scale(Fraction(1, 2))
        if not k_part.is_zero():
            out.append(k_part)
    # de-duplicate into an actual basis via coordinates
    if not out:
        return ()
    cols = [coordinates(m, spec) for m in out]
    stacked = RatMatrix(list(zip(*cols)))
    pivot_cols = _independent_columns(stacked)
    return tuple(out[j] for j in pivot_cols)


def _independent_columns(m: RatMatrix):
    """Column indices forming a basis of the column space."""
    from .exactmat import _rref

    _, pivots = _rref(m._rows)
    return pivots


def _simple_roots(spec, roots):
    """The paper's simple systems, verified against the computed roots."""
    if spec.family == "sl":
        n = spec.size
        simple_coeffs = []
        for i in range(n - 1):
            v = [0] * n
            v[i], v[i + 1] = 1, -1
            simple_coeffs.append(tuple(v))
    elif spec.family == "sp":
        r = spec.params[0] // 2
        simple_coeffs = []
        for i in range(r - 1):
            v = [0] * r
            v[i], v[i + 1] = 1, -1
            simple_coeffs.append(tuple(v))
        last = [0] * r
        last[r - 1] = 2
        simple_coeffs.append(tuple(last))
    else:
        p, q = spec.params
        simple_coeffs = []
        for i in range(p - 1):
            v = [0] * p
            v[i], v[i + 1] = 1, -1
            simple_coeffs.append(tuple(v))
        last = [0] * p
        if p == q:
            if p >= 2:
                last[p - 2] = 1
            last[p - 1] = 1
        else:
            last[p - 1] = 1
        simple_coeffs.append(tuple(last))
    by_coeffs = {r.coeffs: r for r in roots}
    simple = []
    for c in simple_coeffs:
        if c not in by_coeffs:
            raise AssertionError(f"simple root {c} missing from computed roots")
        simple.append(by_coeffs[c])
    # every root must be a +-N combination of the simple ones
    for r in roots:
        combo = _expand_in_simple(r.coeffs, simple_coeffs)
        if combo is None:
            raise AssertionError(f"root {r.coeffs} not a signed N-combination")
    return tuple(simple)


def _expand_in_simple(coeffs, simple_coeffs):
    """Integer expansion of a root over the simple roots, or None.

    Returns the coefficient tuple when all coefficients are integers of a
    uniform sign (the defining property of a simple system).
    """
    mat = RatMatrix(list(zip(*simple_coeffs)))
    sol = solve(mat, list(coeffs))
    if sol is None:
        return None
    vals = [sol[i, 0] for i in range(len(simple_coeffs))]
    recon = [
        sum(v * s[i] for v, s in zip(vals, simple_coeffs))
        for i in range(len(coeffs))
    ]
    if recon != [Fraction(c) for c in coeffs]:
        return None
    if any(v.denominator != 1 for v in vals):
        return None
    ints = [int(v) for v in vals]
    if all(v >= 0 for v in ints) or all(v <= 0 for v in ints):
        return tuple(ints)
    return None


def expand_positive(decomp: RootDecomposition, root: RestrictedRoot):
    """Nonnegative-integer expansion over the simple roots, or None."""
    combo = _expand_in_simple(
        root.coeffs, tuple(r.coeffs for r in decomp.simple)
    )
    if combo is None or any(v < 0 for v in combo):
        return None
    return combo


@lru_cache(maxsize=None)
def _eps_gram(spec: LieAlgebraSpec) -> RatMatrix:
    """Killing-induced Gram matrix of the a-basis (pairing on a^*)."""
    a_basis = maximal_abelian(spec)
    return RatMatrix(
        [[killing(x, y, spec) for y in a_basis] for x in a_basis]
    )


def _functional_values(spec, coeffs):
    """alpha(a_k) for the root with the given epsilon coefficients."""
    if spec.family in ("sp", "so"):
        return [Fraction(c) for c in coeffs]
    return [Fraction(coeffs[k] - coeffs[k + 1]) for k in range(spec.size - 1)]


def root_pairing(spec: LieAlgebraSpec, alpha, beta) -> Fraction:
    """Killing-dual inner product of two a^*-functionals given in eps coords."""
    from .exactmat import inverse

    gram = _eps_gram(spec)
    ginv = inverse(gram)
    va = RatMatrix.column(_functional_values(spec, alpha))
    vb = RatMatrix.column(_functional_values(spec, beta))
    return matmul(matmul(va.transpose(), ginv), vb)[0, 0]


def cartan_integer(spec: LieAlgebraSpec, alpha, beta) -> int:
    """The Cartan integer 2 (beta, alpha) / (alpha, alpha).

    alpha and beta are epsilon-coefficient vectors; the inner product is
    induced by the Killing form on a^*.  The value is an integer whenever
    both arguments are restricted roots.
    """
    alpha = tuple(alpha)
    beta = tuple(beta)
    denom = root_pairing(spec, alpha, alpha)
    if denom == 0:
        raise DomainError("cartan_integer needs a nonzero first root")
    val = 2 * root_pairing(spec, beta, alpha) / denom
    if val.denominator != 1:
        raise DomainError("Cartan pairing is not integral; arguments are not roots")
    return int(val)


def _dynkin_label(spec, simple):
    """Classify the simple system from its Cartan integers.

    Bond multiplicities decide the shape; a single double bond is B or C
    according to whether the terminal root is the short or the long one.
    The structural shape is cross-checked against the family (D_3 = A_3 and
    D_2 = A_1 x A_1 keep their D name for so(p,p), as in the tables).
    """
    r = len(simple)
    coeffs = [s.coeffs for s in simple]
    bonds = {}
    for i in range(r):
        for j in range(i + 1, r):
            m = cartan_integer(spec, coeffs[i], coeffs[j]) * cartan_integer(
                spec, coeffs[j], coeffs[i]
            )
            if m:
                bonds[(i, j)] = m
    degrees = [0] * r
    for (i, j), _m in bonds.items():
        degrees[i] += 1
        degrees[j] += 1
    double_bonds = [k for k, m in bonds.items() if m == 2]
    if spec.family == "sl":
        if double_bonds or (r > 1 and max(degrees) > 2):
            raise AssertionError("unexpected sl Dynkin shape")
        return f"A{r}"
    if spec.family == "sp":
        if r == 1:
            return "C1"
        if len(double_bonds) != 1:
            raise AssertionError("sp diagram must carry one double bond")
        i, j = double_bonds[0]
        long_end = j if _root_norm(spec, coeffs[j]) > _root_norm(spec, coeffs[i]) else i
        if degrees[long_end] != 1:
            raise AssertionError("sp long root must sit at the diagram end")
        return f"C{r}"
    p, q = spec.params
    if p == q:
        if double_bonds:
            raise AssertionError("so(p,p) diagram must be simply laced")
        return f"D{p}"
    if p == 1:
        return "B1"
    if len(double_bonds) != 1:
        raise AssertionError("so(p,q) diagram must carry one double bond")
    i, j = double_bonds[0]
    short_end = j if _root_norm(spec, coeffs[j]) < _root_norm(spec, coeffs[i]) else i
    if degrees[short_end] != 1:
        raise AssertionError("so short root must sit at the diagram end")
    return f"B{p}"


def _root_norm(spec, coeffs) -> Fraction:
    return root_pairing(spec, coeffs, coeffs)


def simple_roots(spec: LieAlgebraSpec):
    return restricted_roots(spec).simple


def dynkin_type(spec: LieAlgebraSpec) -> str:
    return restricted_roots(spec).dynkin


def is_split(spec: LieAlgebraSpec) -> bool:
    """Split means the compact centralizer Z_k(a) vanishes."""
    return len(restricted_roots(spec).zero_space_basis) == 0


def _verify_root_spaces(spec, decomp):
    """Every root-space basis element satisfies [a, X] = alpha(a) X exactly."""
    for root in decomp.roots:
        values = _functional_values(spec, root.coeffs)
        for a_elt, val in zip(decomp.a_basis, values):
            for x in root.space_basis:
                if bracket(a_elt, x) != x.scale(val):
                    raise AssertionError(
                        f"root space of {root.coeffs} fails its eigen-equation"
                    )


# named basis of the SO(2,3) theta-exercise realization lives in thetapos

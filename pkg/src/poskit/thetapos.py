"""Theta-positive structure machinery.

Given a classical family and a subset Theta of its simple restricted roots,
this module assembles the parabolic-type decomposition g = u^opp + l + u,
the center z of the Levi factor, the weight spaces of u under z, and the
arithmetic admissibility criterion (one-dimensional root spaces plus even
Cartan pairings against the complement of Theta).

The two fully worked structures, SO(2,3) with Theta = {a_1} and Sp(4,R)
with Theta the long simple root, additionally ship their invariant cones:
the light-cone slice t(v) J v >= 0, v_1 >= 0 inside R^3, and the positive
semidefinite cone inside Sym(2).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exactmat import (
    DomainError,
    RatMatrix,
    ShapeError,
    det,
    inverse,
    kernel,
    matmul,
    minor,
    rat,
)
from .liealg import (
    LieAlgebraSpec,
    _expand_in_simple,
    _functional_values,
    bracket,
    cartan_integer,
    coordinates,
    dim,
    restricted_roots,
    so,
    sp,
)

SL2_ACTION_REASON = (
    "sharp-cone criterion fails: weight space carries an SL(2)-type action"
)


@dataclass
class ThetaReport:
    """Verdict and decomposition data for a Theta-positivity query."""

    spec: LieAlgebraSpec
    theta: tuple
    admits: bool
    reasons: dict
    u_theta_basis: tuple
    u_opp_basis: tuple
    l_theta_basis: tuple
    z_theta_basis: tuple
    weight_spaces: dict
    theta_weights: dict = field(default_factory=dict)
    cone_label: str = "not constructed"


def _validate_theta(spec, theta):
    decomp = restricted_roots(spec)
    r = len(decomp.simple)
    idx = tuple(sorted({int(i) for i in theta}))
    if any(not 1 <= i <= r for i in idx):
        raise DomainError(f"theta indices must lie in 1..{r}")
    return decomp, idx


def theta_decompose(spec: LieAlgebraSpec, theta) -> ThetaReport:
    """Assemble u_Theta, l_Theta, z_Theta and the z-weight spaces of u_Theta.

    Positive roots split according to whether their expansion over the
    simple system touches Theta; z_Theta is computed as the honest
    centralizer of l_Theta inside a by an exact linear solve, and the
    weight spaces group the u_Theta roots by their restriction to it.
    """
    decomp, idx = _validate_theta(spec, theta)
    simple_coeffs = tuple(s.coeffs for s in decomp.simple)
    theta_positions = {i - 1 for i in idx}

    positive, complement_span = [], []
    for root in decomp.roots:
        combo = _expand_in_simple(root.coeffs, simple_coeffs)
        if combo is None:
            raise AssertionError("root failed to expand over the simple system")
        if all(v >= 0 for v in combo) and any(v > 0 for v in combo):
            positive.append((root, combo))
    for root, combo in positive:
        if all(combo[p] == 0 for p in theta_positions):
            complement_span.append((root, combo))

    sigma_theta = [
        (root, combo)
        for root, combo in positive
        if any(combo[p] != 0 for p in theta_positions)
    ]
    u_basis = tuple(x for root, _ in sigma_theta for x in root.space_basis)
    u_opp_basis = tuple(
        x
        for root, _ in sigma_theta
        for x in decomp.root_by_coeffs(
            tuple(-c for c in root.coeffs)
        ).space_basis
    )
    l_basis = list(decomp.a_basis) + list(decomp.zero_space_basis)
    for root, _ in complement_span:
        l_basis.extend(root.space_basis)
        l_basis.extend(
            decomp.root_by_coeffs(tuple(-c for c in root.coeffs)).space_basis
        )
    l_basis = tuple(l_basis)

    z_basis, z_coords = _center_in_a(spec, decomp, l_basis)

    weight_spaces = {}
    weight_of_root = {}
    for root, _ in sigma_theta:
        vals = _functional_values(spec, root.coeffs)
        key = tuple(
            sum(c * v for c, v in zip(coords, vals)) for coords in z_coords
        )
        weight_spaces.setdefault(key, []).append(root)
        weight_of_root[root.coeffs] = key
    weight_spaces = {
        key: tuple(x for root in roots for x in root.space_basis)
        for key, roots in weight_spaces.items()
    }
    theta_weights = {
        i: weight_of_root[decomp.simple[i - 1].coeffs]
        for i in idx
        if decomp.simple[i - 1].coeffs in weight_of_root
    }

    if len(u_basis) + len(l_basis) + len(u_opp_basis) != dim(spec):
        raise AssertionError("u + l + u_opp dimension audit failed")

    report = ThetaReport(
        spec=spec,
        theta=idx,
        admits=True,
        reasons={},
        u_theta_basis=u_basis,
        u_opp_basis=u_opp_basis,
        l_theta_basis=l_basis,
        z_theta_basis=z_basis,
        weight_spaces=weight_spaces,
        theta_weights=theta_weights,
        cone_label=_cone_label(spec, idx),
    )
    return report


def _center_in_a(spec, decomp, l_basis):
    """Exact solve for z = Z(l_Theta) cap a; returns (matrices, a-coordinates)."""
    a_basis = decomp.a_basis
    rows = []
    n = spec.size
    for x in l_basis:
        brackets = [bracket(a_k, x) for a_k in a_basis]
        for i in range(n):
            for j in range(n):
                rows.append([b[i, j] for b in brackets])
    null = kernel(RatMatrix(rows))
    coords = [tuple(v[k, 0] for k in range(len(a_basis))) for v in null]
    mats = []
    for coord in coords:
        z = RatMatrix.zeros(n, n)
        for c, a_k in zip(coord, a_basis):
            if c:
                z = z + a_k.scale(c)
        mats.append(z)
    return tuple(mats), [tuple(c) for c in coords]


def _cone_label(spec, idx):
    if spec == so(2, 3) and idx == (1,):
        return "so23-lightcone"
    if spec == sp(4) and idx == _sp4_long_root_theta():
        return "sp4-psd"
    return "not constructed"


def _sp4_long_root_theta():
    """Index of the long simple root 2e_2 of sp(4) in the simple system."""
    decomp = restricted_roots(sp(4))
    for i, s in enumerate(decomp.simple, start=1):
        if s.coeffs == (0, 2):
            return (i,)
    raise AssertionError("sp(4) simple system lost its long root")


def admits_theta_positive(spec: LieAlgebraSpec, theta) -> ThetaReport:
    """Decide the positivity criterion and attach the decomposition.

    For each beta in Theta: (i) the restricted root space g_beta must be
    one-dimensional, and (ii) the Cartan integer 2 (beta, a) / (a, a) must
    be even for every simple root a outside Theta.  Both checks are pure
    exact arithmetic on the computed root data.
    """
    report = theta_decompose(spec, theta)
    decomp = restricted_roots(spec)
    reasons = {}
    admits = True
    for i in report.theta:
        beta = decomp.simple[i - 1]
        dim_one = beta.multiplicity == 1
        pairings = {}
        for j, alpha in enumerate(decomp.simple, start=1):
            if j in report.theta:
                continue
            value = cartan_integer(spec, alpha.coeffs, beta.coeffs)
            pairings[j] = value
        even = {j: v % 2 == 0 for j, v in pairings.items()}
        ok = dim_one and all(even.values())
        entry = {
            "dim_one": dim_one,
            "cartan_integers": pairings,
            "even": even,
            "ok": ok,
        }
        if not all(even.values()):
            entry["message"] = SL2_ACTION_REASON
        elif not dim_one:
            entry["message"] = (
                f"restricted root space has dimension {beta.multiplicity} > 1"
            )
        reasons[i] = entry
        admits = admits and ok
    report.admits = admits
    report.reasons = reasons
    if not admits:
        report.cone_label = "not constructed"
    return report


# -- the SO(2,3) worked realization ------------------------------------------
#
# Quadratic form, Chevalley-style generators and diagonal h of the exercise
# chapter; e_i spans the root space of a_1, a_2, a_1+a_2, a_1+2a_2 in turn.

SO23_Q = RatMatrix(
    [
        [0, 0, 0, 0, -1],
        [0, 0, 0, 1, 0],
        [0, 0, -1, 0, 0],
        [0, 1, 0, 0, 0],
        [-1, 0, 0, 0, 0],
    ]
)

SO23_J3 = RatMatrix([[0, 0, 1], [0, -1, 0], [1, 0, 0]])


def _unit(i, j):
    rows = [[Fraction(0)] * 5 for _ in range(5)]
    rows[i - 1][j - 1] = Fraction(1)
    return RatMatrix(rows)


SO23_E = (
    _unit(1, 2) + _unit(4, 5),
    _unit(2, 3) + _unit(3, 4),
    _unit(1, 3) - _unit(3, 5),
    _unit(1, 4) + _unit(2, 5),
)
SO23_F = tuple(e.transpose() for e in SO23_E)
SO23_H = (
    RatMatrix.diagonal([1, 0, 0, 0, -1]),
    RatMatrix.diagonal([0, 1, 0, -1, 0]),
)


def theta_exp(x: RatMatrix) -> RatMatrix:
    """Exact exponential of a nilpotent matrix (finite series).

    Nilpotency is verified by X^n = 0; anything else must go through the
    numeric path instead.
    """
    if not x.is_square():
        raise ShapeError("exponential requires a square matrix")
    n = x.rows
    power = x
    for _ in range(n - 1):
        if power.is_zero():
            break
        power = matmul(power, x)
    if not power.is_zero():
        raise DomainError("matrix is not nilpotent; use the numeric exponential")
    out = RatMatrix.identity(n)
    term = RatMatrix.identity(n)
    for k in range(1, n):
        term = matmul(term, x).scale(Fraction(1, k))
        if term.is_zero():
            break
        out = out + term
    return out


def so23_F1212(x, v, y, w) -> RatMatrix:
    """The positive-semigroup product x_1(x) x_2(v) x_1(y) x_2(w) in SO(2,3).

    Computed as an exact product of nilpotent exponentials; for positive
    parameters these elements sweep out the Theta-positive unipotent
    semigroup of the totally positive structure.
    """
    x, v, y, w = rat(x), rat(v), rat(y), rat(w)
    e1, e2 = SO23_E[0], SO23_E[1]
    return matmul(
        matmul(theta_exp(e1.scale(x)), theta_exp(e2.scale(v))),
        matmul(theta_exp(e1.scale(y)), theta_exp(e2.scale(w))),
    )


def so23_cone_contains(vec, strict: bool = False) -> bool:
    """Membership in the invariant cone {v : v^T J v >= 0, v_1 >= 0} of R^3."""
    v = [rat(t) for t in vec]
    if len(v) != 3:
        raise ShapeError("cone points live in R^3")
    norm = 2 * v[0] * v[2] - v[1] * v[1]
    if strict:
        return norm > 0 and v[0] > 0
    return norm >= 0 and v[0] >= 0


def so23_weight_element(vec) -> RatMatrix:
    """The u_{a_1} element (0 v^T 0; 0 0 Jv; 0 0 0) attached to v in R^3."""
    v = [rat(t) for t in vec]
    if len(v) != 3:
        raise ShapeError("weight vectors live in R^3")
    jv = matmul(SO23_J3, RatMatrix.column(v))
    rows = [[Fraction(0)] * 5 for _ in range(5)]
    for i in range(3):
        rows[0][1 + i] = v[i]
        rows[1 + i][4] = jv[i, 0]
    return RatMatrix(rows)


def so23_weight_vector(m: RatMatrix):
    """Inverse of so23_weight_element (shape-checked)."""
    v = [m[0, 1], m[0, 2], m[0, 3]]
    if so23_weight_element(v) != m:
        raise DomainError("matrix is not a u_{a_1} weight element")
    return v


def sp4_cone_contains(m: RatMatrix, strict: bool = False) -> bool:
    """Positive (semi)definiteness of a symmetric rational matrix.

    Strict definiteness uses Sylvester's leading-minor test; the closed
    cone needs all principal minors nonnegative (leading minors alone are
    not sufficient for semidefiniteness).
    """
    if not m.is_symmetric():
        raise DomainError("cone points are symmetric matrices")
    n = m.rows
    if strict:
        return all(
            minor(m, tuple(range(1, k + 1)), tuple(range(1, k + 1))) > 0
            for k in range(1, n + 1)
        )
    for k in range(1, n + 1):
        for subset in itertools.combinations(range(1, n + 1), k):
            if minor(m, subset, subset) < 0:
                return False
    return True


def _so23_numeric_rotation(rng):
    """Float exponential of a random multiple of e_2 - f_2 (compact direction)."""
    gen = SO23_E[1] - SO23_F[1]
    angle = rng.uniform(-1.5, 1.5)
    a = np.array(gen.to_float_rows()) * angle
    out = np.eye(5)
    term = np.eye(5)
    for k in range(1, 40):
        term = term @ a / k
        out = out + term
        if np.max(np.abs(term)) < 1e-18:
            break
    return out


def _rand_rat(rng, lo=-3, hi=3, den=3):
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def _rand_pos(rng, hi=4):
    return Fraction(rng.randint(1, hi), rng.randint(1, hi))


def _so23_cone_point(rng):
    if rng.random() < 0.1:
        return [Fraction(0)] * 3
    v1 = _rand_pos(rng)
    v2 = _rand_rat(rng)
    slack = Fraction(rng.randint(0, 4))
    v3 = (v2 * v2 + slack) / (2 * v1)
    return [v1, v2, v3]


def cone_invariance_sample(
    spec: LieAlgebraSpec, theta, trials: int, seed: int, tol: float = 1e-9
) -> bool:
    """Sampled check that the Levi action preserves the closed cone.

    SO(2,3), Theta = {a_1}: conjugates random light-cone points by products
    of exact diagonal and unipotent Levi factors and one numeric rotation
    from the so(J) direction (checked to tolerance ``tol``).  Sp(4), long
    root: acts by A M A^T with exact rational A of positive determinant and
    checks semidefiniteness exactly.  Raises for pairs without a
    constructed cone.
    """
    if trials < 1:
        raise DomainError("trials must be >= 1")
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    _, idx = _validate_theta(spec, theta)
    label = _cone_label(spec, idx)
    rng = random.Random(seed)
    if label == "so23-lightcone":
        return _so23_invariance(rng, trials, tol)
    if label == "sp4-psd":
        return _sp4_invariance(rng, trials)
    raise DomainError(f"no cone constructed for ({spec}, theta={idx})")


def _so23_invariance(rng, trials, tol):
    for _ in range(trials):
        vec = _so23_cone_point(rng)
        a, b = _rand_pos(rng), _rand_pos(rng)
        g = RatMatrix.diagonal([a, b, 1, 1 / b, 1 / a])
        g = matmul(g, theta_exp(SO23_E[1].scale(_rand_rat(rng))))
        g = matmul(g, theta_exp(SO23_F[1].scale(_rand_rat(rng))))
        x = so23_weight_element(vec)
        conj = matmul(matmul(g, x), inverse(g))
        image = so23_weight_vector(conj)
        if not so23_cone_contains(image):
            return False
        if rng.random() < 0.5:
            rot = _so23_numeric_rotation(rng)
            xf = np.array(conj.to_float_rows())
            conj_f = rot @ xf @ np.linalg.inv(rot)
            v = conj_f[0, 1:4]
            norm = 2 * v[0] * v[2] - v[1] ** 2
            scale = max(1.0, float(np.max(np.abs(v))) ** 2)
            if norm < -tol * scale or v[0] < -tol * max(1.0, abs(v[0])):
                return False
    return True


def _sp4_invariance(rng, trials):
    for _ in range(trials):
        r = RatMatrix([[_rand_rat(rng) for _ in range(2)] for _ in range(2)])
        m = matmul(r.transpose(), r)  # PSD by construction
        if rng.random() < 0.1:
            m = RatMatrix.zeros(2, 2)
        while True:
            a = RatMatrix([[_rand_rat(rng) for _ in range(2)] for _ in range(2)])
            if det(a) > 0:
                break
        image = matmul(matmul(a, m), a.transpose())
        if not sp4_cone_contains(image):
            return False
    return True

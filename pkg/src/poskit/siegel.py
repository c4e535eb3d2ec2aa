"""Siegel upper half-space and its bounded realization, in floating point.

X_n is the set of complex symmetric n x n matrices with positive definite
imaginary part; Sp(2n,R) acts by Z -> (AZ + B)(CZ + D)^{-1}.  The Cayley
transform c(Z) = (Z - iI)(Z + iI)^{-1} carries X_n onto the bounded domain
D_n = {W symmetric : I - conj(W) W > 0}, whose boundary stratifies by the
rank of I - conj(W) W (rank 0 being the Shilov boundary of symmetric
unitaries).

This module is numerical by design: all tests are tolerance-based with a
default eps of 1e-9, scaled by matrix norms.
"""

from __future__ import annotations

import numpy as np

from .exactmat import DomainError, ShapeError

DEFAULT_TOL = 1e-9


def _as_complex(z) -> np.ndarray:
    a = np.asarray(z, dtype=complex)
    if a.ndim != 2:
        raise ShapeError("expected a 2-d matrix")
    return a


def _as_real(g) -> np.ndarray:
    a = np.asarray(g, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] % 2:
        raise ShapeError("expected a square real matrix of even size")
    return a


def _check_tol(tol: float):
    if not tol > 0:
        raise DomainError("tolerance must be positive")


def _maxabs(a) -> float:
    return float(np.max(np.abs(a))) if a.size else 0.0


def standard_j(n: int) -> np.ndarray:
    j = np.zeros((2 * n, 2 * n))
    j[:n, n:] = np.eye(n)
    j[n:, :n] = -np.eye(n)
    return j


def in_siegel(z, tol: float = DEFAULT_TOL) -> bool:
    """Symmetric to tolerance with Im part positive definite beyond tol."""
    _check_tol(tol)
    z = _as_complex(z)
    if z.shape[0] != z.shape[1]:
        return False
    scale = max(1.0, _maxabs(z))
    if _maxabs(z - z.T) >= tol * scale:
        return False
    im = (z.imag + z.imag.T) / 2
    return float(np.min(np.linalg.eigvalsh(im))) > tol


def is_symplectic(g, tol: float = DEFAULT_TOL) -> bool:
    _check_tol(tol)
    g = _as_real(g)
    n = g.shape[0] // 2
    j = standard_j(n)
    scale = max(1.0, _maxabs(g) ** 2)
    return _maxabs(g.T @ j @ g - j) < tol * scale


def _blocks(g):
    n = g.shape[0] // 2
    return g[:n, :n], g[:n, n:], g[n:, :n], g[n:, n:]


def _symmetrize(z, tol):
    # stop asymmetry drift through repeated Moebius steps
    if _maxabs(z - z.T) < tol * max(1.0, _maxabs(z)):
        return (z + z.T) / 2
    return z


def mobius(g, z, tol: float = DEFAULT_TOL) -> np.ndarray:
    """g(Z) = (AZ + B)(CZ + D)^{-1} with postcondition checks.

    The result is symmetrized, verified to lie in the Siegel space, and its
    imaginary part is checked against the closed form
    (conj(Z)^T C + D^T)^{-1} Y (CZ + D)^{-1}.
    """
    _check_tol(tol)
    g = _as_real(g)
    z = _as_complex(z)
    if not is_symplectic(g, tol):
        raise DomainError("g is not symplectic to tolerance")
    if not in_siegel(z, tol):
        raise DomainError("Z is not in the Siegel space to tolerance")
    a, b, c, d = _blocks(g)
    cz_d = c @ z + d
    cond = np.linalg.cond(cz_d)
    if cond > 1.0 / tol:
        raise DomainError("CZ + D numerically singular; invalid input pair")
    result = (a @ z + b) @ np.linalg.inv(cz_d)
    result = _symmetrize(result, tol)
    # the image is interior mathematically; numerically an ill-conditioned g
    # may squash Im into roundoff, so enforce the closed condition at a
    # conditioning-aware threshold
    noise = max(tol, cond * cond * np.finfo(float).eps)
    scale = max(1.0, _maxabs(result))
    if _maxabs(result - result.T) >= noise * scale:
        raise AssertionError("Moebius image failed to be symmetric")
    im = (result.imag + result.imag.T) / 2
    if float(np.min(np.linalg.eigvalsh(im))) < -noise * scale:
        raise AssertionError("Moebius image left the closed Siegel space")
    y = (z.imag + z.imag.T) / 2
    w_formula = np.linalg.inv(z.conj().T @ c.T + d.T) @ y @ np.linalg.inv(cz_d)
    if _maxabs(result.imag - w_formula) >= noise * scale * 10:
        raise AssertionError("imaginary part disagrees with the closed form")
    return result


def stabilizes_iI(g, tol: float = DEFAULT_TOL) -> bool:
    """Membership in the stabilizer of iI, cross-checked as A = D, B = -C."""
    _check_tol(tol)
    g = _as_real(g)
    n = g.shape[0] // 2
    if not is_symplectic(g, tol):
        return False
    z = 1j * np.eye(n)
    moved = mobius(g, z, tol)
    scale = max(1.0, _maxabs(g))
    a, b, c, d = _blocks(g)
    block_form = _maxabs(a - d) < tol * scale and _maxabs(b + c) < tol * scale
    fixed = _maxabs(moved - z) < np.sqrt(tol)
    if block_form != fixed:
        raise AssertionError("block criterion and fixed-point test disagree")
    return fixed


def cayley(z) -> np.ndarray:
    """c(Z) = (Z - iI)(Z + iI)^{-1}, mapping X_n into the bounded domain."""
    z = _as_complex(z)
    n = z.shape[0]
    eye = np.eye(n)
    return (z - 1j * eye) @ np.linalg.inv(z + 1j * eye)


def cayley_inv(w, tol: float = DEFAULT_TOL) -> np.ndarray:
    """c^{-1}(W) = i (I + W)(I - W)^{-1}; boundary inputs (eigenvalue 1) error."""
    _check_tol(tol)
    w = _as_complex(w)
    n = w.shape[0]
    eye = np.eye(n)
    if np.linalg.cond(eye - w) > 1.0 / tol:
        raise DomainError("I - W numerically singular: boundary input")
    return 1j * (eye + w) @ np.linalg.inv(eye - w)


def _gram_defect(w) -> np.ndarray:
    """Hermitian part of I - conj(W) W."""
    w = _as_complex(w)
    a = np.eye(w.shape[0]) - w.conj().T @ w
    return (a + a.conj().T) / 2


def in_bounded(w, tol: float = DEFAULT_TOL) -> bool:
    """Interior of D_n: symmetric and I - conj(W) W positive definite."""
    _check_tol(tol)
    w = _as_complex(w)
    scale = max(1.0, _maxabs(w))
    if _maxabs(w - w.T) >= tol * scale:
        return False
    return float(np.min(np.linalg.eigvalsh(_gram_defect(w)))) > tol


def on_shilov(w, tol: float = DEFAULT_TOL) -> bool:
    """Shilov boundary: symmetric unitaries, i.e. I - conj(W) W = 0."""
    _check_tol(tol)
    w = _as_complex(w)
    scale = max(1.0, _maxabs(w))
    if _maxabs(w - w.T) >= tol * scale:
        return False
    return _maxabs(_gram_defect(w)) < np.sqrt(tol) * scale


def boundary_rank(w, tol: float = DEFAULT_TOL) -> int:
    """Rank of I - conj(W) W for W in the closure of D_n.

    Constant along orbits of the transported group action; rank n is the
    interior, rank 0 the Shilov boundary.  Decided against eps-scaled
    eigenvalue magnitudes of the Hermitian defect.
    """
    _check_tol(tol)
    w = _as_complex(w)
    defect = _gram_defect(w)
    eigs = np.linalg.eigvalsh(defect)
    scale = max(1.0, _maxabs(defect))
    thresh = np.sqrt(tol) * scale
    if float(np.min(eigs)) < -thresh:
        raise DomainError("W is outside the closed bounded domain")
    return int(np.sum(eigs > thresh))


CAYLEY_SCALAR = 1.0 + 1.0j  # principal branch of sqrt(2i)


def cayley_matrix(n: int) -> np.ndarray:
    """The symplectic Cayley element (1/sqrt(2i)) (I -iI; I iI)."""
    eye = np.eye(n)
    top = np.hstack([eye, -1j * eye])
    bottom = np.hstack([eye, 1j * eye])
    return np.vstack([top, bottom]) / CAYLEY_SCALAR


def conj_group_form(g, tol: float = DEFAULT_TOL) -> bool:
    """Test that c g c^{-1} has the block-conjugate shape (A B; conj B conj A)."""
    _check_tol(tol)
    g = _as_real(g)
    n = g.shape[0] // 2
    c = cayley_matrix(n)
    h = c @ g @ np.linalg.inv(c)
    a, b, c2, d = _blocks(h)
    scale = max(1.0, _maxabs(h))
    return _maxabs(c2 - b.conj()) < tol * scale and _maxabs(d - a.conj()) < tol * scale


def bounded_action(g_conj, w, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Fractional action of a conj-group element on the closed bounded domain."""
    _check_tol(tol)
    g_conj = np.asarray(g_conj, dtype=complex)
    w = _as_complex(w)
    a, b, c, d = _blocks(g_conj)
    cw_d = c @ w + d
    if np.linalg.cond(cw_d) > 1.0 / tol:
        raise DomainError("CW + D numerically singular")
    return (a @ w + b) @ np.linalg.inv(cw_d)


def random_symplectic_float(n: int, rng, spread: float = 0.6) -> np.ndarray:
    """Moderately-scaled random symplectic matrix for numeric tests.

    Product (I N; 0 I)(I 0; M I)(A 0; 0 A^{-T}) with small symmetric N, M
    and A near the identity, keeping the norm O(1) so that double precision
    supports the 1e-7 .. 1e-9 tolerances used in the checks.
    """

    def sym():
        base = np.array([[rng.uniform(-spread, spread) for _ in range(n)] for _ in range(n)])
        return (base + base.T) / 2

    a = np.eye(n) + np.array(
        [[rng.uniform(-spread, spread) / 2 for _ in range(n)] for _ in range(n)]
    )
    upper = np.block([[np.eye(n), sym()], [np.zeros((n, n)), np.eye(n)]])
    lower = np.block([[np.eye(n), np.zeros((n, n))], [sym(), np.eye(n)]])
    diag = np.block(
        [[a, np.zeros((n, n))], [np.zeros((n, n)), np.linalg.inv(a).T]]
    )
    return upper @ lower @ diag


def random_siegel_point(n: int, rng, spread: float = 1.0) -> np.ndarray:
    """Random interior point S + iT with T positive definite."""
    s = np.array([[rng.uniform(-spread, spread) for _ in range(n)] for _ in range(n)])
    s = (s + s.T) / 2
    r = np.array([[rng.uniform(-spread, spread) for _ in range(n)] for _ in range(n)])
    t = r @ r.T + np.eye(n) * 0.5
    return s + 1j * t


def classify(w, tol: float = DEFAULT_TOL) -> dict:
    """Interior / boundary-rank-r / Shilov classification of a domain point."""
    r = boundary_rank(w, tol)
    n = _as_complex(w).shape[0]
    interior = in_bounded(w, tol)
    return {
        "interior": bool(interior),
        "rank": int(r),
        "shilov": bool(r == 0),
        "n": n,
    }

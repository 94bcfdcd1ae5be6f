"""Closed-form enumeration of all complex eigenvectors of an odeco tensor.

For T = sum_{i<=l} lam_i v_i^(x)d with orthonormal v_i and nonzero lam_i,
the isolated eigenvectors are indexed by a nonempty support subset of the
terms together with a tuple of (d-2)-nd roots of unity: in the rotated
coordinates y_i = v_i . x the eigenvector has y_i = eta_i * lam_i^(-1/(d-2))
on the support and 0 elsewhere.  That gives ((d-1)^l - 1)/(d-2) isolated
projective eigenvectors; when l < n the orthogonal complement of the v_i
is an additional eigenvalue-zero eigenspace, returned as a basis.

Every eigenvector is reduced to a canonical projective representative
(unit norm, tiny coordinates snapped to zero, first nonzero coordinate
rotated to the positive real axis) so that sets of eigenvectors can be
compared deterministically.  A brute-force oracle for n = 2 cross-checks
the formula by factoring the eigen-determinant binary form.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .numkit import poly_roots
from .symtensor import OrthoDecomp, SymTensor, apply_power, frobenius_norm, tensor_from_decomp

__all__ = [
    "EigenPair",
    "EigenEnumeration",
    "eigen_count",
    "enumerate_eigenpairs",
    "eigen_residual",
    "oracle_eigen_n2",
    "canonical_vector",
    "projective_distance",
]

SNAP = 1e-12


@dataclass
class EigenPair:
    """One projective eigenvector in canonical form, with its eigenvalue.

    ``support`` holds the (0-based) indices of the decomposition terms the
    vector is built from and ``eta_exponents`` the powers of the primitive
    (d-2)-nd root of unity used on all but the last support index; both are
    empty for members of the eigenvalue-zero family.
    """

    w: np.ndarray
    lam: complex
    residual: float
    support: tuple[int, ...] = ()
    eta_exponents: tuple[int, ...] = ()


@dataclass
class EigenEnumeration:
    isolated: list[EigenPair]
    nullspace_basis: list[np.ndarray] = field(default_factory=list)
    expected_count: int = 0


def eigen_count(d: int, l: int) -> int:
    """((d-1)^l - 1)/(d-2), the number of isolated eigenvectors for l terms."""
    if d < 3:
        raise ValueError("count formula needs order >= 3 (degenerate at d = 2)")
    if l < 1:
        raise ValueError("need at least one term")
    count, rem = divmod((d - 1) ** l - 1, d - 2)
    assert rem == 0
    return count


def canonical_vector(w: np.ndarray) -> np.ndarray:
    """Canonical projective representative: unit norm, first nonzero coordinate positive real.

    Coordinates below 1e-12 (after normalization) are snapped to exact zero
    so that deduplication and set comparison are deterministic.
    """
    w = np.asarray(w, dtype=complex)
    norm = np.linalg.norm(w)
    if norm == 0:
        raise ValueError("cannot canonicalize the zero vector")
    w = w / norm
    w[np.abs(w) < SNAP] = 0.0
    w = w / np.linalg.norm(w)
    for x in w:
        if x != 0:
            w = w * (x.conjugate() / abs(x))
            break
    return w


def projective_distance(w1: np.ndarray, w2: np.ndarray) -> float:
    """Sine of the angle between complex lines (Fubini-Study metric)."""
    w1 = np.asarray(w1, dtype=complex)
    w2 = np.asarray(w2, dtype=complex)
    overlap = abs(np.vdot(w1, w2)) / (np.linalg.norm(w1) * np.linalg.norm(w2))
    return float(np.sqrt(max(0.0, 1.0 - overlap**2)))


def eigen_residual(T: SymTensor, w: np.ndarray) -> tuple[complex, float]:
    """Eigenvalue estimate and scaled eigen-equation residual for any vector.

    The eigenvalue is read off at the largest-modulus coordinate,
    ``lam = (T w^(d-1))_j / w_j``; the residual is
    ``||T w^(d-1) - lam w||_inf / (||T||_F ||w||^(d-1))``.
    """
    w = np.asarray(w, dtype=complex)
    if not np.any(w):
        raise ValueError("w must be nonzero")
    img = apply_power(T, w)
    j = int(np.argmax(np.abs(w)))
    lam = img[j] / w[j]
    scale = frobenius_norm(T) * np.linalg.norm(w) ** (T.d - 1)
    residual = float(np.max(np.abs(img - lam * w))) / scale
    return complex(lam), residual


def _nullspace_rows(basis: np.ndarray, n: int) -> list[np.ndarray]:
    l = basis.shape[0]
    if l >= n:
        return []
    _, _, vh = np.linalg.svd(basis, full_matrices=True)
    return [vh[i] for i in range(l, n)]


def enumerate_eigenpairs(
    decomp: OrthoDecomp, n: int, d: int, branch: int = 0
) -> EigenEnumeration:
    """All eigenvectors of the odeco tensor built from ``decomp`` on R^n.

    Emits one canonical eigenpair per nonempty support subset and per tuple
    of (d-2)-nd roots of unity, plus an orthonormal basis of the
    eigenvalue-zero complement when the decomposition has fewer than ``n``
    terms.  ``branch`` selects which (d-2)-nd root branch of
    ``lam^(-1/(d-2))`` is used; the canonical projective set is independent
    of it (the root-of-unity tuples reindex).
    """
    if d < 3:
        raise ValueError("enumeration needs order >= 3")
    lam = decomp.lambdas
    basis = decomp.basis
    l = decomp.k
    if basis.shape[1] != n:
        raise ValueError("basis rows have length %d, expected %d" % (basis.shape[1], n))
    if np.any(np.abs(lam) <= 1e-12):
        raise ValueError("all eigenvalues must be nonzero; drop zero terms first")

    T = tensor_from_decomp(decomp, d)
    root_count = d - 2
    zeta = np.exp(2j * np.pi / root_count)
    # principal branch of lam^(-1/(d-2)), optionally rotated to another fixed branch
    inv_roots = np.asarray(
        [complex(li) ** (-1.0 / root_count) * zeta**branch for li in lam]
    )

    isolated: list[EigenPair] = []
    for k in range(1, l + 1):
        for support in itertools.combinations(range(l), k):
            for etas in itertools.product(range(root_count), repeat=k - 1):
                y = np.zeros(l, dtype=complex)
                for idx, exp in zip(support[:-1], etas):
                    y[idx] = zeta**exp * inv_roots[idx]
                y[support[-1]] = inv_roots[support[-1]]
                w = canonical_vector(basis.T @ y)
                pair_lam, res = eigen_residual(T, w)
                isolated.append(EigenPair(w, pair_lam, res, support, tuple(etas)))

    return EigenEnumeration(
        isolated=isolated,
        nullspace_basis=_nullspace_rows(basis, n),
        expected_count=eigen_count(d, l),
    )


def _binary_form_coeffs(T: SymTensor) -> np.ndarray:
    """Coefficients c_a of g = x2 (T x^(d-1))_1 - x1 (T x^(d-1))_2 over x1^a x2^(d-a)."""
    d = T.d
    p1 = np.zeros(d)  # (T x^(d-1))_1 over x1^a x2^(d-1-a)
    p2 = np.zeros(d)
    for a in range(d):
        c = math.comb(d - 1, a)
        p1[a] = c * T[(a + 1, d - 1 - a)]
        p2[a] = c * T[(a, d - a)]
    g = np.zeros(d + 1)
    g[: d] += p1
    g[1:] -= p2
    return g


def oracle_eigen_n2(T: SymTensor, tol: float = 1e-10) -> list[np.ndarray]:
    """Brute-force projective eigenvectors of a binary tensor (n = 2).

    Forms the degree-d binary form whose vanishing says that ``T x^(d-1)``
    is parallel to ``x``, finds its roots in both affine charts with the
    simultaneous root finder, and returns the deduplicated canonical
    points.  Works for any tensor, odeco or not; this is the independent
    check against the closed-form enumeration.
    """
    if T.n != 2:
        raise ValueError("oracle is limited to n = 2")
    if T.d < 3:
        raise ValueError("oracle needs order >= 3")
    g = _binary_form_coeffs(T)
    span = float(np.max(np.abs(g)))
    if span == 0.0:
        raise ValueError("eigen form vanishes identically: every direction is an eigenvector")
    g = g / span
    g[np.abs(g) < 1e-13] = 0.0  # numerically-zero coefficients would fake near-infinity roots

    points: list[np.ndarray] = []

    def add(pt: np.ndarray) -> None:
        # root-finder noise sits well above the canonical snap level
        pt = np.where(np.abs(pt) < 1e-8 * np.max(np.abs(pt)), 0.0, pt)
        cand = canonical_vector(pt)
        merge_tol = max(1e-6, 5.0 * math.sqrt(tol))
        for existing in points:
            if projective_distance(existing, cand) < merge_tol:
                return
        points.append(cand)

    # chart x2 = 1: roots t of sum_a g_a t^a give points (t, 1)
    chart1 = np.trim_zeros(g, "b")
    if len(chart1) > 1:
        for t in poly_roots(chart1, tol=tol):
            add(np.array([t, 1.0]))
    # chart x1 = 1: roots s of sum_a g_{d-j} s^j give points (1, s); covers (1, 0)
    chart2 = np.trim_zeros(g[::-1], "b")
    if len(chart2) > 1:
        for s in poly_roots(chart2, tol=tol):
            add(np.array([1.0, s]))
    return points

"""Small numeric and exact-arithmetic kernels.

Three independent tools used across the package:

* seeded random orthonormal matrices (QR of a Gaussian matrix with a
  deterministic sign convention),
* exact integer matrix rank over the rationals (fraction-free elimination
  on arbitrary-precision integers, no floating point anywhere),
* simultaneous polynomial root finding (Durand-Kerner), used as a
  brute-force oracle elsewhere.

Real matrices are plain ``numpy.ndarray``; integer matrices are lists of
rows of Python ints so that entries never overflow.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

__all__ = [
    "random_orthonormal",
    "exact_integer_rank",
    "poly_roots",
    "RootFindingError",
]


class RootFindingError(RuntimeError):
    """Raised when the simultaneous root iteration fails to meet its residual bound."""


def random_orthonormal(n: int, seed: int) -> np.ndarray:
    """Return a deterministic random n-by-n orthonormal matrix.

    Orthonormalizes a seeded standard Gaussian matrix by Householder QR and
    fixes the sign ambiguity by making every diagonal entry of the
    triangular factor positive, so the result is a pure function of
    ``(n, seed)``.

    Parameters
    ----------
    n : int
        Dimension, must be >= 1.
    seed : int
        Seed for the Gaussian draw.

    Returns
    -------
    numpy.ndarray
        Matrix ``Q`` with ``Q.T @ Q = I`` to within 1e-12 per entry.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1, got %d" % n)
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs[np.newaxis, :]


def _strip_content(row: dict[int, int]) -> None:
    """Divide all values of a sparse integer row by their gcd, in place."""
    g = 0
    for v in row.values():
        g = math.gcd(g, v)
        if g == 1:
            return
    if g > 1:
        for c in row:
            row[c] //= g


def exact_integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals of an integer matrix, computed exactly.

    Fraction-free elimination on Python ints.  Rows are held sparsely and
    rescaled by their integer content after every update (rescaling a row
    by a nonzero rational never changes the rank, and it keeps the
    cross-multiplied entries small).  Pivots are chosen to disturb as few
    rows as possible, which matters for the large, very sparse coefficient
    matrices this is used on.  No floating point is involved at any step.

    Accepts any sequence of equal-length integer rows (lists, tuples, or
    an integer ndarray).
    """
    sparse: list[dict[int, int]] = []
    ncols = None
    for raw in rows:
        if ncols is None:
            ncols = len(raw)
        elif len(raw) != ncols:
            raise ValueError("ragged matrix: row lengths differ")
        row = {j: int(v) for j, v in enumerate(raw) if v}
        if row:
            sparse.append(row)
    if not sparse:
        return 0

    # column -> set of row ids currently supported there
    col_rows: dict[int, set[int]] = {}
    live: dict[int, dict[int, int]] = dict(enumerate(sparse))
    for rid, row in live.items():
        for c in row:
            col_rows.setdefault(c, set()).add(rid)

    rank = 0
    while live:
        # Cheapest pivot column, then the sparsest row supported on it.
        pc = min(col_rows, key=lambda c: (len(col_rows[c]), c))
        touched = col_rows[pc]
        pr = min(touched, key=lambda r: (len(live[r]), abs(live[r][pc]), r))
        pivot_row = live.pop(pr)
        pivot = pivot_row[pc]
        rank += 1

        for c in pivot_row:
            col_rows[c].discard(pr)
        for rid in list(touched):
            old = live[rid]
            mult = old[pc]
            for c in old:
                col_rows[c].discard(rid)
            row = {c: pivot * v for c, v in old.items()}
            for c, v in pivot_row.items():
                val = row.get(c, 0) - mult * v
                if val:
                    row[c] = val
                else:
                    row.pop(c, None)
            _strip_content(row)
            if row:
                live[rid] = row
                for c in row:
                    col_rows.setdefault(c, set()).add(rid)
            else:
                del live[rid]
        del col_rows[pc]
        for c in [c for c, s in col_rows.items() if not s]:
            del col_rows[c]
    return rank


def _cauchy_radius(coeffs: np.ndarray) -> float:
    lead = abs(coeffs[-1])
    return 1.0 + max(abs(coeffs[:-1])) / lead if len(coeffs) > 1 else 1.0


def poly_roots(coeffs: Sequence[complex], tol: float = 1e-10, max_iter: int = 1000) -> np.ndarray:
    """All complex roots of a polynomial, counted with multiplicity.

    Durand-Kerner simultaneous iteration started from perturbed roots of
    unity on the Cauchy bound circle.  Every returned root ``r`` satisfies
    ``|p(r)| <= tol * sum(|coeffs|) * max(1, |r|)**deg``; multiple roots
    come back as a cluster whose radius scales like ``tol**(1/m)``.

    Parameters
    ----------
    coeffs : sequence of complex
        Coefficients in ascending degree; the leading one must be nonzero.
    tol : float
        Relative residual bound for acceptance.

    Raises
    ------
    RootFindingError
        If the residual bound is not met within ``max_iter`` sweeps.
    """
    c = np.trim_zeros(np.asarray(coeffs, dtype=complex), "b")
    deg = len(c) - 1
    if deg < 1:
        raise ValueError("polynomial degree must be >= 1")

    radius = _cauchy_radius(c)
    k = np.arange(deg)
    z = radius * np.exp(2j * np.pi * (k + 0.357) / deg) * (1.0 + 1e-3 * k / max(deg, 1))

    scale = np.sum(np.abs(c))
    for _ in range(max_iter):
        pz = np.polyval(c[::-1], z)
        bound = tol * scale * np.maximum(1.0, np.abs(z)) ** deg
        if np.all(np.abs(pz) <= bound):
            return z
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        denom = c[-1] * np.prod(diff, axis=1)
        tiny = np.abs(denom) < 1e-300
        if np.any(tiny):
            denom[tiny] = 1e-300
        z = z - pz / denom
    raise RootFindingError(
        "root iteration did not meet the residual bound after %d sweeps" % max_iter
    )

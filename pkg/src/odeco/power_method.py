"""Robust-eigenvector iteration and full deflation decomposition.

The iteration repeatedly applies x -> T x^(d-1) / ||T x^(d-1)||.  On an
orthogonally decomposable tensor, almost every start converges to one of
the decomposition vectors; subtracting the recovered rank-one term and
repeating recovers the whole decomposition.

Convergence is tested projectively (sign-insensitive): for even order and
a negative eigenvalue the map oscillates between v and -v rather than
converging, so we accept either limit and flag the oscillation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .symtensor import (
    OrthoDecomp,
    SymTensor,
    apply_power,
    eval_form,
    frobenius_norm,
    tensor_from_decomp,
)

__all__ = [
    "IterationReport",
    "DecompositionReport",
    "DegenerateDirectionError",
    "power_iterate",
    "decompose",
    "rayleigh_eigenvalue",
]


class DegenerateDirectionError(RuntimeError):
    """The iterate was sent (numerically) to zero; restart from a new direction."""


@dataclass
class IterationReport:
    limit: np.ndarray
    iterations: int
    converged: bool
    sign_oscillation: bool = False


@dataclass
class DecompositionReport:
    decomp: OrthoDecomp
    residual_norm: float
    restarts_used: int
    converged: bool = True


def power_iterate(
    T: SymTensor,
    theta0: np.ndarray,
    tol: float = 1e-12,
    max_iter: int = 1000,
) -> IterationReport:
    """Iterate the normalized gradient map from a unit start vector.

    Declares convergence when ``min(||x_{k+1} - x_k||, ||x_{k+1} + x_k||)``
    drops below ``tol``; ``sign_oscillation`` is set when only the second
    condition holds (even order with a negative eigenvalue).

    Raises
    ------
    DegenerateDirectionError
        If ``||T x^(d-1)||`` falls below 1e-14 at some iterate.
    """
    theta = np.asarray(theta0, dtype=np.float64)
    if abs(np.linalg.norm(theta) - 1.0) > 1e-8:
        raise ValueError("start vector must be unit length")
    for k in range(1, max_iter + 1):
        image = apply_power(T, theta)
        norm = np.linalg.norm(image)
        if norm < 1e-14:
            raise DegenerateDirectionError(
                "iterate mapped to (near) zero after %d iterations" % k
            )
        new = image / norm
        step_minus = np.linalg.norm(new - theta)
        step_plus = np.linalg.norm(new + theta)
        theta = new
        if min(step_minus, step_plus) < tol:
            return IterationReport(theta, k, True, step_minus >= tol)
    return IterationReport(theta, max_iter, False)


def rayleigh_eigenvalue(T: SymTensor, v: np.ndarray) -> float:
    """Eigenvalue of a unit eigenvector candidate, as the form value T . v^d."""
    v = np.asarray(v, dtype=np.float64)
    if abs(np.linalg.norm(v) - 1.0) > 1e-8:
        raise ValueError("v must be unit length")
    return float(eval_form(T, v))


def _fix_sign(v: np.ndarray, lam: float, d: int) -> tuple[np.ndarray, float]:
    """First nonzero coordinate made positive; odd order moves the sign to lam."""
    for x in v:
        if abs(x) > 1e-8:
            if x < 0:
                return -v, (-lam if d % 2 == 1 else lam)
            break
    return v, lam


def _rank_one(v: np.ndarray, d: int) -> SymTensor:
    return tensor_from_decomp(OrthoDecomp(np.array([1.0]), v[np.newaxis, :]), d)


def decompose(
    T: SymTensor,
    tol: float = 1e-8,
    max_restarts: int | None = None,
    seed: int = 0,
    iter_tol: float = 1e-12,
    max_iter: int = 1000,
) -> DecompositionReport:
    """Full power-method decomposition with deflation.

    Repeatedly finds a robust eigenvector from random unit starts, computes
    its eigenvalue as the form value, subtracts the rank-one term, and stops
    once the deflated tensor drops below ``tol`` times the original
    Frobenius norm or ``n`` vectors have been found.  The result is sorted
    by ``|lambda|`` descending with each vector's first nonzero coordinate
    made positive.

    A recovered eigenvalue below ``1e-10 * ||T||_F`` is treated as the
    zero-remainder case and deflation stops.  If ``max_restarts`` random
    starts (default ``50 * n``) are exhausted first, the partial result is
    returned flagged ``converged=False`` (the input is likely not odeco).
    """
    if T.d < 3:
        raise ValueError("decompose requires order >= 3; use a matrix eigensolver for d = 2")
    if max_restarts is None:
        max_restarts = 50 * T.n
    rng = np.random.default_rng(seed)
    scale = frobenius_norm(T)
    current = T.copy()
    lambdas: list[float] = []
    vectors: list[np.ndarray] = []
    restarts = 0
    completed = True

    while len(vectors) < T.n and frobenius_norm(current) >= tol * scale:
        if restarts >= max_restarts:
            completed = False
            break
        restarts += 1
        start = rng.standard_normal(T.n)
        start /= np.linalg.norm(start)
        try:
            report = power_iterate(current, start, tol=iter_tol, max_iter=max_iter)
        except DegenerateDirectionError:
            continue
        if not report.converged:
            continue
        v = report.limit
        lam = float(eval_form(current, v))
        if abs(lam) < 1e-10 * scale:
            break
        v, lam = _fix_sign(v, lam, T.d)
        lambdas.append(lam)
        vectors.append(v)
        current = current - lam * _rank_one(v, T.d)

    if lambdas:
        order = np.argsort(-np.abs(lambdas))
        lam_arr = np.asarray(lambdas)[order]
        basis = np.vstack(vectors)[order]
    else:
        lam_arr = np.zeros(0)
        basis = np.zeros((0, T.n))
    decomp = OrthoDecomp(lam_arr, basis)
    residual = frobenius_norm(current)
    return DecompositionReport(decomp, residual, restarts, completed)

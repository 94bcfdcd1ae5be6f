"""Shared helpers for the test suite."""

from __future__ import annotations

import numpy as np

from odeco.symtensor import OrthoDecomp, SymTensor, eval_form


def finite_difference_gradient(T: SymTensor, x: np.ndarray, h: float = 1e-6) -> np.ndarray:
    """Central-difference gradient of the form value; the oracle for apply_power."""
    grad = np.zeros(T.n)
    for i in range(T.n):
        step = np.zeros(T.n)
        step[i] = h
        grad[i] = (eval_form(T, x + step) - eval_form(T, x - step)) / (2 * h)
    return grad


def canonical_pairs(decomp: OrthoDecomp, d: int) -> list[tuple[float, np.ndarray]]:
    """(lambda, v) pairs with first nonzero coordinate positive, |lambda| descending."""
    pairs = []
    for lam, v in zip(decomp.lambdas, decomp.basis):
        for x in v:
            if abs(x) > 1e-8:
                if x < 0:
                    v = -v
                    if d % 2 == 1:
                        lam = -lam
                break
        pairs.append((float(lam), v))
    pairs.sort(key=lambda p: -abs(p[0]))
    return pairs


def decomp_mismatch(found: OrthoDecomp, reference: OrthoDecomp, d: int) -> float:
    """Worst eigenvalue/vector error between two decompositions, after matching.

    Both sides are put in canonical sign convention, then each reference
    pair is greedily matched to its closest recovered pair.
    """
    a = canonical_pairs(found, d)
    b = canonical_pairs(reference, d)
    if len(a) != len(b):
        return float("inf")
    worst = 0.0
    remaining = list(a)
    for lam, v in b:
        errs = [max(abs(lam - lam2), float(np.max(np.abs(v - v2)))) for lam2, v2 in remaining]
        k = int(np.argmin(errs))
        worst = max(worst, errs[k])
        remaining.pop(k)
    return worst

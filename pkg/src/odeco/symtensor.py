"""Dense symmetric tensors stored by sorted multi-index.

A symmetric order-``d`` tensor on R^n is determined by one value per
degree-``d`` multi-index (exponent vector), so we store exactly the
``C(n+d-1, d)`` unique entries in ascending lexicographic order of the
exponent vectors.  All dense-tuple semantics (evaluation, gradients,
contraction, Frobenius norm) are recovered through multinomial weights.

The module also provides the scaled monomial coordinates ``u`` (entry
times d!), synthesis of orthogonally decomposable tensors from an
eigenvalue list plus an orthonormal basis, and JSON-dict interchange for
both tensors and decompositions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .numkit import random_orthonormal

__all__ = [
    "MultiIndex",
    "SymTensor",
    "UCoords",
    "OrthoDecomp",
    "multi_indices",
    "multinomial",
    "tensor_from_decomp",
    "apply_power",
    "eval_form",
    "to_ucoords",
    "from_ucoords",
    "contract_last",
    "random_odeco",
    "frobenius_norm",
    "is_orthonormal",
    "tensor_to_dict",
    "tensor_from_dict",
    "decomp_to_dict",
    "decomp_from_dict",
]

MultiIndex = tuple[int, ...]


def _compositions(n: int, d: int) -> Iterator[MultiIndex]:
    if n == 1:
        yield (d,)
        return
    for first in range(d + 1):
        for rest in _compositions(n - 1, d - first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def multi_indices(n: int, d: int) -> tuple[MultiIndex, ...]:
    """All degree-``d`` exponent vectors in ``n`` variables, lex ascending."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    return tuple(_compositions(n, d))


def multinomial(d: int, m: MultiIndex) -> int:
    """Number of index tuples collapsing to the exponent vector ``m``."""
    out = math.factorial(d)
    for mj in m:
        out //= math.factorial(mj)
    return out


@lru_cache(maxsize=None)
def _tables(n: int, d: int):
    exps = multi_indices(n, d)
    E = np.array(exps, dtype=np.int64)
    weights = np.array([multinomial(d, m) for m in exps], dtype=np.float64)
    pos = {m: i for i, m in enumerate(exps)}
    return exps, E, weights, pos


@lru_cache(maxsize=None)
def _lift_positions(n: int, d: int) -> np.ndarray:
    """Positions of ``m' + e_i`` in the degree-``d`` list, for degree-(d-1) ``m'``.

    Shape (n, C(n+d-2, d-1)); row ``i`` maps each degree-(d-1) multi-index
    to its bump by one in coordinate ``i``.
    """
    lower = multi_indices(n, d - 1)
    _, _, _, pos = _tables(n, d)
    up = np.empty((n, len(lower)), dtype=np.intp)
    for j, m in enumerate(lower):
        for i in range(n):
            bumped = m[:i] + (m[i] + 1,) + m[i + 1 :]
            up[i, j] = pos[bumped]
    return up


@dataclass
class SymTensor:
    """Symmetric order-``d`` tensor on R^n, one entry per sorted multi-index."""

    n: int
    d: int
    entries: np.ndarray

    def __post_init__(self):
        if self.n < 1 or self.d < 1:
            raise ValueError("need n >= 1 and d >= 1")
        self.entries = np.asarray(self.entries, dtype=np.float64)
        expected = len(multi_indices(self.n, self.d))
        if self.entries.shape != (expected,):
            raise ValueError(
                "entries must have length %d for n=%d, d=%d" % (expected, self.n, self.d)
            )

    @classmethod
    def zero(cls, n: int, d: int) -> "SymTensor":
        return cls(n, d, np.zeros(len(multi_indices(n, d))))

    def exponents(self) -> tuple[MultiIndex, ...]:
        return multi_indices(self.n, self.d)

    def __getitem__(self, m: MultiIndex) -> float:
        _, _, _, pos = _tables(self.n, self.d)
        return float(self.entries[pos[tuple(m)]])

    def copy(self) -> "SymTensor":
        return SymTensor(self.n, self.d, self.entries.copy())

    def __add__(self, other: "SymTensor") -> "SymTensor":
        self._check_compatible(other)
        return SymTensor(self.n, self.d, self.entries + other.entries)

    def __sub__(self, other: "SymTensor") -> "SymTensor":
        self._check_compatible(other)
        return SymTensor(self.n, self.d, self.entries - other.entries)

    def __mul__(self, scalar: float) -> "SymTensor":
        return SymTensor(self.n, self.d, self.entries * scalar)

    __rmul__ = __mul__

    def _check_compatible(self, other: "SymTensor") -> None:
        if (self.n, self.d) != (other.n, other.d):
            raise ValueError("shape mismatch: (%d,%d) vs (%d,%d)" % (self.n, self.d, other.n, other.d))

    def to_dense(self) -> np.ndarray:
        """Full (n,)*d array; intended for small n, d (tests, inspection)."""
        _, _, _, pos = _tables(self.n, self.d)
        out = np.empty((self.n,) * self.d)
        for idx in np.ndindex(*out.shape):
            m = [0] * self.n
            for i in idx:
                m[i] += 1
            out[idx] = self.entries[pos[tuple(m)]]
        return out


@dataclass
class UCoords:
    """Scaled monomial coordinates: value at ``m`` is d! times the tensor entry."""

    n: int
    d: int
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        expected = len(multi_indices(self.n, self.d))
        if self.values.shape != (expected,):
            raise ValueError("values must have length %d" % expected)


@dataclass
class OrthoDecomp:
    """Eigenvalue list plus orthonormal rows: the data of sum(lam_i v_i^(x)d)."""

    lambdas: np.ndarray
    basis: np.ndarray  # k x n, orthonormal rows

    def __post_init__(self):
        self.lambdas = np.atleast_1d(np.asarray(self.lambdas, dtype=np.float64))
        self.basis = np.atleast_2d(np.asarray(self.basis, dtype=np.float64))
        if self.basis.shape[0] != len(self.lambdas):
            raise ValueError("need one basis row per eigenvalue")

    @property
    def k(self) -> int:
        return len(self.lambdas)

    @property
    def n(self) -> int:
        return self.basis.shape[1]


def is_orthonormal(v: np.ndarray, tol: float = 1e-10) -> bool:
    g = v @ v.T
    return bool(np.max(np.abs(g - np.eye(v.shape[0]))) <= tol)


def tensor_from_decomp(decomp: OrthoDecomp, d: int) -> SymTensor:
    """Synthesize sum(lam_i v_i^(x)d) as a stored-unique-entry tensor.

    The entry at multi-index ``m`` is ``sum_i lam_i prod_j v_ij^m_j`` (an
    entry of the tensor itself, not of its u-coordinates).
    """
    if d < 2:
        raise ValueError("order must be >= 2")
    if not np.all(np.isfinite(decomp.lambdas)):
        raise ValueError("eigenvalues must be finite")
    if not is_orthonormal(decomp.basis):
        raise ValueError("basis rows are not orthonormal to 1e-10")
    n = decomp.n
    _, E, _, _ = _tables(n, d)
    # (k, K): each row i holds prod_j v_ij^m_j over all multi-indices m
    powers = np.prod(decomp.basis[:, np.newaxis, :] ** E[np.newaxis, :, :], axis=2)
    return SymTensor(n, d, decomp.lambdas @ powers)


def _monomials(n: int, d: int, x: np.ndarray) -> np.ndarray:
    _, E, _, _ = _tables(n, d)
    return np.prod(x[np.newaxis, :] ** E, axis=1)


def _as_vector(T: SymTensor, x) -> np.ndarray:
    x = np.asarray(x)
    if x.shape != (T.n,):
        raise ValueError("vector has length %s, expected %d" % (x.shape, T.n))
    return x


def apply_power(T: SymTensor, x) -> np.ndarray:
    """Contract ``T`` with ``d-1`` copies of ``x``; accepts real or complex ``x``.

    Coordinate ``i`` of the result is the sum over all index tuples
    ``(i, i_2, ..., i_d)`` of the corresponding entry times
    ``x_{i_2} ... x_{i_d}``, evaluated via the multinomial expansion over
    stored unique entries.
    """
    x = _as_vector(T, x)
    if T.d == 1:
        return T.entries[_lift_positions(T.n, 1)[:, 0]].astype(x.dtype if np.iscomplexobj(x) else float)
    _, _, w_low, _ = _tables(T.n, T.d - 1)
    p = _monomials(T.n, T.d - 1, x)
    return (T.entries[_lift_positions(T.n, T.d)] * w_low[np.newaxis, :]) @ p


def eval_form(T: SymTensor, x) -> float | complex:
    """Value of the degree-``d`` form of ``T`` at ``x`` (equals x . apply_power)."""
    x = _as_vector(T, x)
    _, _, w, _ = _tables(T.n, T.d)
    val = (T.entries * w) @ _monomials(T.n, T.d, x)
    return complex(val) if np.iscomplexobj(x) else float(val)


def to_ucoords(T: SymTensor) -> UCoords:
    return UCoords(T.n, T.d, T.entries * math.factorial(T.d))


def from_ucoords(u: UCoords) -> SymTensor:
    return SymTensor(u.n, u.d, u.values / math.factorial(u.d))


@lru_cache(maxsize=None)
def _pair_symmetrization(n: int, d: int):
    """Index and weight tables for symmetrizing the one-slot contraction.

    For every ordered pair (a, b) of degree-(d-1) multi-indices, returns the
    id of the total c = a + b and the number of ways to split the slots of c
    so that the first group has exponent vector a.
    """
    low = multi_indices(n, d - 1)
    E1 = np.array(low, dtype=np.int64)
    total = multi_indices(n, 2 * (d - 1))
    pos2 = {m: i for i, m in enumerate(total)}
    k1 = len(low)
    comb = np.zeros((2 * d - 1, 2 * d - 1), dtype=np.float64)
    for a in range(2 * d - 1):
        for b in range(a + 1):
            comb[a, b] = math.comb(a, b)
    csum = E1[:, np.newaxis, :] + E1[np.newaxis, :, :]  # (k1, k1, n)
    weights = np.prod(comb[csum, E1[:, np.newaxis, :]], axis=2).ravel()
    cid = np.array([pos2[tuple(c)] for c in csum.reshape(-1, n)], dtype=np.intp)
    return k1, len(total), cid, weights


def contract_last(T: SymTensor) -> tuple[np.ndarray, float]:
    """Contract ``T`` with itself along one slot and measure its asymmetry.

    Returns the square array ``M`` indexed by pairs of degree-(d-1)
    multi-indices, ``M[a, b] = sum_s T[a+e_s] T[b+e_s]``, together with the
    defect: the largest deviation of ``M`` from its full symmetrization
    over all 2(d-1) slots combined.  Orthogonally decomposable tensors have
    defect ~ 0 (up to roundoff times the squared Frobenius norm).
    """
    if T.d < 2:
        raise ValueError("order must be >= 2")
    a = T.entries[_lift_positions(T.n, T.d)]  # (n, k1): a[s, j] = T[m'_j + e_s]
    m = a.T @ a
    k1, n_total, cid, weights = _pair_symmetrization(T.n, T.d)
    flat = m.ravel()
    num = np.bincount(cid, weights=weights * flat, minlength=n_total)
    den = np.bincount(cid, weights=weights, minlength=n_total)
    sym = num / den
    defect = float(np.max(np.abs(flat - sym[cid]))) if flat.size else 0.0
    return m, defect


def frobenius_norm(T: SymTensor) -> float:
    """Square root of the multiplicity-weighted sum of squared unique entries."""
    _, _, w, _ = _tables(T.n, T.d)
    return float(np.sqrt((T.entries * T.entries) @ w))


def random_odeco(
    n: int,
    d: int,
    seed: int,
    lam_low: float = 0.5,
    lam_high: float = 1.5,
    allow_negative: bool | None = None,
) -> tuple[OrthoDecomp, SymTensor]:
    """Seeded random orthogonal decomposition and its synthesized tensor.

    Eigenvalue magnitudes are uniform in ``[lam_low, lam_high]``.  Signs are
    random for odd ``d`` (the eigenpair equivalence absorbs them); for even
    ``d`` they default to positive so that power iteration attracts, with
    ``allow_negative=True`` to exercise the sign-oscillation path.
    """
    if not (0 < lam_low <= lam_high):
        raise ValueError("need 0 < lam_low <= lam_high")
    if allow_negative is None:
        allow_negative = d % 2 == 1
    rng = np.random.default_rng(seed)
    basis = random_orthonormal(n, int(rng.integers(0, 2**63)))
    lam = rng.uniform(lam_low, lam_high, size=n)
    if allow_negative:
        lam *= rng.choice([-1.0, 1.0], size=n)
    decomp = OrthoDecomp(lam, basis)
    return decomp, tensor_from_decomp(decomp, d)


# -- JSON-dict interchange ---------------------------------------------------

def tensor_to_dict(T: SymTensor, coords: str = "t") -> dict:
    """Interchange form: explicit (index, value) pairs; zeros may be omitted."""
    if coords not in ("t", "u"):
        raise ValueError("coords must be 't' or 'u'")
    values = T.entries if coords == "t" else to_ucoords(T).values
    exps = multi_indices(T.n, T.d)
    return {
        "n": T.n,
        "d": T.d,
        "coords": coords,
        "entries": [
            {"index": list(m), "value": float(v)} for m, v in zip(exps, values) if v != 0.0
        ],
    }


def _require(data: dict, field: str):
    if field not in data:
        raise ValueError("tensor file is missing field '%s'" % field)
    return data[field]


def tensor_from_dict(data: dict) -> SymTensor:
    n = int(_require(data, "n"))
    d = int(_require(data, "d"))
    coords = data.get("coords", "t")
    if coords not in ("t", "u"):
        raise ValueError("field 'coords' must be 't' or 'u', got %r" % coords)
    _, _, _, pos = _tables(n, d)
    values = np.zeros(len(pos))
    for k, item in enumerate(_require(data, "entries")):
        if "index" not in item or "value" not in item:
            raise ValueError("field 'entries[%d]' needs 'index' and 'value'" % k)
        m = tuple(int(i) for i in item["index"])
        if m not in pos:
            raise ValueError(
                "field 'entries[%d].index' %r is not a degree-%d multi-index in %d variables"
                % (k, list(m), d, n)
            )
        values[pos[m]] = float(item["value"])
    if coords == "u":
        return from_ucoords(UCoords(n, d, values))
    return SymTensor(n, d, values)


def decomp_to_dict(decomp: OrthoDecomp, d: int) -> dict:
    return {
        "n": decomp.n,
        "d": d,
        "lambdas": [float(v) for v in decomp.lambdas],
        "basis": [float(v) for v in decomp.basis.ravel()],
    }


def decomp_from_dict(data: dict) -> tuple[OrthoDecomp, int]:
    n = int(_require(data, "n"))
    d = int(_require(data, "d"))
    lam = np.asarray(_require(data, "lambdas"), dtype=np.float64)
    flat = np.asarray(_require(data, "basis"), dtype=np.float64)
    if flat.size != lam.size * n:
        raise ValueError(
            "field 'basis' has %d entries, expected %d x %d" % (flat.size, lam.size, n)
        )
    return OrthoDecomp(lam, flat.reshape(len(lam), n)), d

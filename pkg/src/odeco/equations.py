"""The conjectured quadric equations of the odeco variety.

In the scaled monomial coordinates ``u`` (see :mod:`odeco.symtensor`), for
every quadruple of degree-(d-1) exponent vectors y, v, w, z with
``y + v = w + z`` there is one quadric

    sum_s  u[y+e_s] u[v+e_s] - u[w+e_s] u[z+e_s],

and these vanish on every orthogonally decomposable tensor.  This module
generates the full family and the smaller spanning family indexed by
``(y, v, i, j)``, evaluates the worst scaled residual of a tensor against
them, and certifies two exact integer ranks: the number of linearly
independent quadrics, and the rank of the Jacobian at the Fermat point
(whose corank gives the expected dimension of the variety).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .numkit import exact_integer_rank
from .symtensor import MultiIndex, UCoords, multi_indices

__all__ = [
    "Quadric",
    "generate_all_quadrics",
    "generate_spanning_subset",
    "residual",
    "coefficient_matrix",
    "independent_count",
    "jacobian_fermat_rank",
    "dimension_expected",
    "quadric_to_text",
    "quadric_to_dict",
]


@dataclass(frozen=True)
class Quadric:
    """Signed pair-of-monomial quadratic in the u-coordinates.

    ``terms`` holds (sign, a, b) with ``a <= b`` lexicographically, signs in
    {+1, -1}, cancelling terms already removed and the leading sign
    normalized to +1.  ``provenance`` records the (y, v, w, z) quadruple the
    quadric was generated from.
    """

    terms: tuple[tuple[int, MultiIndex, MultiIndex], ...]
    provenance: tuple[MultiIndex, MultiIndex, MultiIndex, MultiIndex]


def _bump(m: MultiIndex, s: int) -> MultiIndex:
    return m[:s] + (m[s] + 1,) + m[s + 1 :]


def _build_quadric(
    y: MultiIndex, v: MultiIndex, w: MultiIndex, z: MultiIndex
) -> Quadric | None:
    """Canonical quadric for one (y, v, w, z) choice, or None if it cancels."""
    n = len(y)
    acc: dict[tuple[MultiIndex, MultiIndex], int] = {}
    for s in range(n):
        for sign, p, q in ((1, _bump(y, s), _bump(v, s)), (-1, _bump(w, s), _bump(z, s))):
            key = (p, q) if p <= q else (q, p)
            c = acc.get(key, 0) + sign
            if c:
                acc[key] = c
            else:
                acc.pop(key, None)
    if not acc:
        return None
    items = sorted(acc.items())
    if items[0][1] < 0:
        items = [(key, -c) for key, c in items]
    return Quadric(
        terms=tuple((c, a, b) for (a, b), c in items),
        provenance=(y, v, w, z),
    )


@lru_cache(maxsize=None)
def generate_all_quadrics(n: int, d: int) -> tuple[Quadric, ...]:
    """Every quadric from unordered, deduplicated split choices, lex order.

    For each total exponent vector c of degree 2(d-1) and each unordered
    pair of distinct splits {y, v} != {w, z} with y+v = w+z = c, one
    canonical quadric is produced.  Empty for d = 2 (all splits of a
    degree-2 total coincide) and for n = 1 (a single multi-index per
    degree).
    """
    if n < 1 or d < 2:
        raise ValueError("need n >= 1 and d >= 2")
    lower = multi_indices(n, d - 1)
    out: list[Quadric] = []
    seen: set[tuple] = set()
    for c in multi_indices(n, 2 * (d - 1)):
        splits = []
        for y in lower:
            v = tuple(ci - yi for ci, yi in zip(c, y))
            if y <= v and all(x >= 0 for x in v):
                splits.append((y, v))
        for first in range(len(splits)):
            for second in range(first + 1, len(splits)):
                q = _build_quadric(*splits[first], *splits[second])
                if q is not None and q.terms not in seen:
                    seen.add(q.terms)
                    out.append(q)
    return tuple(out)


@lru_cache(maxsize=None)
def generate_spanning_subset(n: int, d: int) -> tuple[Quadric, ...]:
    """The spanning family indexed by (y, v, i, j): w = y+e_i-e_j, z = v-e_i+e_j.

    Requires y_j >= 1 and v_i >= 1 so the shifted exponents stay
    nonnegative; trivially-zero choices are dropped and duplicates
    canonicalized away.
    """
    if n < 1 or d < 2:
        raise ValueError("need n >= 1 and d >= 2")
    lower = multi_indices(n, d - 1)
    out: list[Quadric] = []
    seen: set[tuple] = set()
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for y in lower:
                if y[j] < 1:
                    continue
                w = list(y)
                w[i] += 1
                w[j] -= 1
                for v in lower:
                    if v[i] < 1:
                        continue
                    z = list(v)
                    z[i] -= 1
                    z[j] += 1
                    q = _build_quadric(y, v, tuple(w), tuple(z))
                    if q is not None and q.terms not in seen:
                        seen.add(q.terms)
                        out.append(q)
    return tuple(out)


@lru_cache(maxsize=None)
def _evaluation_arrays(n: int, d: int):
    quadrics = generate_all_quadrics(n, d)
    pos = {m: i for i, m in enumerate(multi_indices(n, d))}
    sign, ia, ib, starts = [], [], [], []
    for q in quadrics:
        starts.append(len(sign))
        for c, a, b in q.terms:
            sign.append(c)
            ia.append(pos[a])
            ib.append(pos[b])
    return (
        np.asarray(sign, dtype=np.float64),
        np.asarray(ia, dtype=np.intp),
        np.asarray(ib, dtype=np.intp),
        np.asarray(starts, dtype=np.intp),
    )


def residual(u: UCoords) -> float:
    """Worst quadric value at ``u``, scaled by the squared 2-norm of ``u``.

    Zero for every odeco tensor up to roundoff; order 1 on generic dense
    tensors.  The zero tensor trivially satisfies every equation, so it
    returns 0.
    """
    sign, ia, ib, starts = _evaluation_arrays(u.n, u.d)
    if len(starts) == 0:
        return 0.0
    scale = float(u.values @ u.values)
    if scale == 0.0:
        return 0.0
    vals = np.add.reduceat(sign * u.values[ia] * u.values[ib], starts)
    return float(np.max(np.abs(vals))) / scale


def coefficient_matrix(
    quadrics: tuple[Quadric, ...], n: int, d: int
) -> list[list[int]]:
    """Integer matrix of quadric coefficients over unordered monomial pairs."""
    monos = multi_indices(n, d)
    pos = {m: i for i, m in enumerate(monos)}
    k = len(monos)
    cols: dict[tuple[int, int], int] = {}
    col_id = 0
    for i in range(k):
        for j in range(i, k):
            cols[(i, j)] = col_id
            col_id += 1
    rows = []
    for q in quadrics:
        row = [0] * col_id
        for c, a, b in q.terms:
            row[cols[(pos[a], pos[b])]] = c
        rows.append(row)
    return rows


def independent_count(n: int, d: int) -> int:
    """Exact rank of the coefficient matrix of the full quadric family."""
    quadrics = generate_all_quadrics(n, d)
    if not quadrics:
        return 0
    return exact_integer_rank(coefficient_matrix(quadrics, n, d))


def _fermat_jacobian(quadrics: tuple[Quadric, ...], n: int, d: int) -> list[list[int]]:
    monos = multi_indices(n, d)
    pos = {m: i for i, m in enumerate(monos)}
    fact = math.factorial(d)
    point = [0] * len(monos)
    for i in range(n):
        axis = tuple(d if j == i else 0 for j in range(n))
        point[pos[axis]] = fact
    rows = []
    for q in quadrics:
        row = [0] * len(monos)
        for c, a, b in q.terms:
            row[pos[a]] += c * point[pos[b]]
            row[pos[b]] += c * point[pos[a]]
        rows.append(row)
    return rows


def jacobian_fermat_rank(n: int, d: int) -> tuple[int, int]:
    """Exact Jacobian rank of the full quadric family at the Fermat point.

    The Fermat point is the tensor with 1 on every diagonal entry
    (``u[d e_i] = d!``, all other coordinates 0).  Returns the computed
    rank together with the expected codimension
    ``C(n+d-1, d) - C(n+1, 2)``.
    """
    if n < 2 or d < 3:
        raise ValueError("need n >= 2 and d >= 3")
    rows = _fermat_jacobian(generate_all_quadrics(n, d), n, d)
    rank = exact_integer_rank(rows) if rows else 0
    expected = math.comb(n + d - 1, d) - math.comb(n + 1, 2)
    return rank, expected


def dimension_expected(n: int) -> int:
    """Dimension of the odeco variety: n(n+1)/2 (rotations plus scalings)."""
    if n < 1:
        raise ValueError("need n >= 1")
    return n * (n + 1) // 2


def _mono_text(m: MultiIndex) -> str:
    if max(m) <= 9:
        return "u" + "".join(str(i) for i in m)
    return "u(" + ",".join(str(i) for i in m) + ")"


def quadric_to_text(q: Quadric) -> str:
    parts = []
    for c, a, b in q.terms:
        mono = _mono_text(a) + "^2" if a == b else _mono_text(a) + "*" + _mono_text(b)
        if not parts:
            parts.append(mono if c > 0 else "-" + mono)
        else:
            parts.append(("+ " if c > 0 else "- ") + mono)
    return " ".join(parts)


def quadric_to_dict(q: Quadric) -> dict:
    y, v, w, z = q.provenance
    return {
        "terms": [{"sign": c, "a": list(a), "b": list(b)} for c, a, b in q.terms],
        "provenance": {"y": list(y), "v": list(v), "w": list(w), "z": list(z)},
    }
